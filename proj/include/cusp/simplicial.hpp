#pragma once
#include "cusp/chain_torsion.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cusp::simplicial {

using chain::BasedComplex;
using chain::CohomologyBasis;
using numerics::Matrix;

using Simplex = std::vector<int>;  // strictly increasing vertex labels

class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  // Closes the generators under faces; vertex labels are arbitrary nonnegative integers.
  static SimplicialComplex from_simplices(const std::vector<Simplex>& generators);

  int dimension() const { return static_cast<int>(simplices_.size()) - 1; }
  int count(int q) const;
  const std::vector<Simplex>& simplices(int q) const;
  std::vector<int> vertices() const;
  int index_of(const Simplex& s) const;  // -1 when absent
  bool contains(const Simplex& s) const { return index_of(s) >= 0; }
  int max_label() const;

  // Full subcomplex spanned by the given vertices, labels unchanged.
  SimplicialComplex full_subcomplex(const std::vector<int>& vertices) const;
  bool is_full_subcomplex(const SimplicialComplex& sub) const;
  int components() const;
  int euler_characteristic() const;

 private:
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, int>> index_;
};

// Rank-k flat system: holonomy h_ab on edges a < b; T_{a->b} = h_ab, T_{b->a} = h_ab^{-1}.
class FlatSystem {
 public:
  explicit FlatSystem(int rank = 1) : rank_(rank) {}
  int rank() const { return rank_; }
  void set_holonomy(int a, int b, const Matrix& h);
  Matrix transport(int from, int to) const;
  const std::map<std::pair<int, int>, Matrix>& edges() const { return hol_; }
  // h -> h^{-T}
  FlatSystem dual() const;
  // System on `target` whose transport along an edge (a, b) is T_{f(a) -> f(b)}.
  FlatSystem pullback(const SimplicialComplex& target, const std::vector<int>& vertex_map) const;
  // Cocycle condition on all triangles and |det h| = 1 on the edges of k; other edges are ignored.
  void validate(const SimplicialComplex& k) const;

 private:
  int rank_;
  std::map<std::pair<int, int>, Matrix> hol_;
};

// Cochain complex C^q = (R^k)^{#q-simplices}; the value on [v0 < ... < vq] lives in the fiber at v0.
BasedComplex twisted_complex(const SimplicialComplex& k, const FlatSystem& f);

// Matrix of the cochain map C^q(dst) -> C^q(src) induced by a vertex map src -> dst that is
// nondecreasing on every simplex; degenerate images give zero. The flat system on src must be
// the pullback of the one on dst.
Matrix cochain_pullback(const SimplicialComplex& src, const SimplicialComplex& dst, const std::vector<int>& vertex_map,
                        int rank, int q);

// ---------------------------------------------------------------------------
// Products and generators

SimplicialComplex circle(int n);
SimplicialComplex path(int n);            // n vertices in a row
SimplicialComplex simplex_boundary(int n);  // boundary of the n-simplex
// Staircase triangulation of A x B; vertex (a, b) gets label a * (B.max_label() + 1) + b.
SimplicialComplex product(const SimplicialComplex& a, const SimplicialComplex& b);
std::vector<int> product_projection_first(const SimplicialComplex& a, const SimplicialComplex& b);
// Adds an apex with the given label joined to every simplex of `base`.
SimplicialComplex add_cone(const SimplicialComplex& k, const SimplicialComplex& base, int apex);

// ---------------------------------------------------------------------------
// Cutting

struct CutResult {
  SimplicialComplex cut;        // M0, fresh consecutive labels
  SimplicialComplex link;       // Z, original labels
  SimplicialComplex boundary;   // Z+ and Z- inside M0
  std::vector<int> to_original; // M0 label -> K label
  std::vector<int> plus, minus; // K label of a Z vertex -> its copy in M0 (-1 otherwise)
  int pieces = 0;               // connected components of M0
};

// Z must be a full subcomplex with exactly two sides locally. `plus_side` optionally names
// vertices adjacent to Z that go with the + copy.
CutResult cut_along(const SimplicialComplex& k, const std::vector<int>& z_vertices,
                    const std::optional<std::vector<int>>& plus_side = std::nullopt);

// ---------------------------------------------------------------------------
// Truncated (lower middle perversity) cochains

struct ConedSpace {
  SimplicialComplex base;      // manifold with boundary
  SimplicialComplex boundary;  // full subcomplex of base, coned off
  int dimension = 0;           // m
  int cutoff() const { return (dimension - 1) >= 0 ? (dimension - 1) / 2 : -1; }
};

struct IntersectionComplex {
  BasedComplex complex;       // identity gram in the coordinates below
  std::vector<Matrix> embed;  // orthonormal columns spanning R^q inside C^q(base)
  int cutoff = 0;
};

// R^q = C^q(base) below the cutoff; at the cutoff, cochains whose restriction to the
// boundary is a cocycle; above it, cochains vanishing on the boundary.
IntersectionComplex intersection_complex(const ConedSpace& x, const FlatSystem& f);
// Truncated cone on a closed complex.
IntersectionComplex truncated_cone(const SimplicialComplex& link, const FlatSystem& f, int dimension);
// Cochains vanishing on the subcomplex.
BasedComplex relative_complex(const SimplicialComplex& k, const SimplicialComplex& sub, const FlatSystem& f);

// ---------------------------------------------------------------------------
// Cut identities

struct MayerVietorisMaps {
  std::vector<Matrix> incl, restrict_diff, connecting;  // i_q, j_q, boundary maps in harmonic bases
  std::vector<int> betti_m, betti_cut, betti_link;
  bool exact = false;
  std::string exactness_report;
};
MayerVietorisMaps mv_maps(const SimplicialComplex& k, const std::vector<int>& z_vertices, const FlatSystem& f,
                          const std::optional<std::vector<int>>& plus_side = std::nullopt);

// log of the product of nonzero singular values; 0 for the zero map.
double jq_perp_logdet(const Matrix& j);

struct CutIdentityReport {
  int m = 0, cutoff = 0;
  std::vector<int> betti_m, betti_cut, betti_link, betti_hat, betti_cone;
  double log_tau_m = 0, log_tau_cut = 0, log_itau_hat = 0, log_tau_link = 0, log_itau_cone = 0;
  double log_tau_h1 = 0, log_tau_h2 = 0;
  double milnor_cut_residual = 0, milnor_mv_residual = 0;
  double compat_cut = 0, compat_mv = 0;
  std::vector<double> log_jdet;  // per degree: j_q below the cutoff, diagonal connecting map above
  double sqrt2_term = 0;
  double rt3_rhs = 0, rt3_residual = 0;
  double rt10_rhs = 0, rt10_residual = 0;
  double rt10_residual_without_sqrt2 = 0;  // same identity with the sqrt(2) factors dropped
  bool witt = false;
};

// Builds M0, Z, the intersection complex and cone, the prescribed cohomology bases and both
// long exact sequences. `seed` drives the free part of the basis of H^q(M0) above the cutoff.
CutIdentityReport verify_cut_identities(const SimplicialComplex& k, const FlatSystem& f,
                                        const std::vector<int>& z_vertices, int m, unsigned long long seed = 1,
                                        const std::optional<std::vector<int>>& plus_side = std::nullopt);

// ---------------------------------------------------------------------------
// Subdivision

struct Subdivision {
  SimplicialComplex complex;
  FlatSystem system;
  std::vector<int> to_min_vertex;  // barycentre of sigma -> min vertex of sigma
  std::vector<Simplex> barycentres; // label -> simplex of the original
};
// Barycentres ordered by decreasing dimension so that the min-vertex map is order preserving.
Subdivision barycentric_subdivide(const SimplicialComplex& k, const FlatSystem& f);
// Pulls a cohomology basis back along the min-vertex map.
CohomologyBasis pull_basis(const Subdivision& s, const SimplicialComplex& k, const CohomologyBasis& mu);

struct SubdivisionCheck {
  double log_tau = 0, log_tau_subdivided = 0, defect = 0;
};
// Torsion with the harmonic basis against the subdivision with the pulled-back basis.
SubdivisionCheck subdivision_check(const SimplicialComplex& k, const FlatSystem& f);

// ---------------------------------------------------------------------------
// Built-in cases

struct CutCase {
  std::string name;
  SimplicialComplex complex;
  FlatSystem system;
  std::vector<int> z_vertices;
  int dimension = 0;
};
// "s1xs2", "s1xs2-twisted", "torus", "dumbbell"
CutCase builtin_case(const std::string& name);
std::vector<std::string> builtin_case_names();

}  // namespace cusp::simplicial
