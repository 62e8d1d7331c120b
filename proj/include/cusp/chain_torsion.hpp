#pragma once
#include "cusp/numerics.hpp"

#include <string>
#include <vector>

namespace cusp::chain {

using numerics::Matrix;
using numerics::Vector;

/// Finite cochain complex C^0 -> ... -> C^m with an inner product in each degree.
class BasedComplex {
 public:
  BasedComplex() = default;
  // diff[q] maps degree q to q+1 and has shape dims[q+1] x dims[q]; an empty gram
  // list means the identity in every degree.
  BasedComplex(std::vector<int> dims, std::vector<Matrix> diff, std::vector<Matrix> gram = {},
               double tol = 1e-12);

  int top_degree() const { return static_cast<int>(dims_.size()) - 1; }
  int dim(int q) const { return q < 0 || q > top_degree() ? 0 : dims_[q]; }
  const std::vector<int>& dims() const { return dims_; }
  // Differential from degree q to q+1; zero-size matrices outside the range.
  Matrix d(int q) const;
  Matrix gram(int q) const;
  bool has_identity_gram() const { return gram_.empty(); }
  double d_squared_defect() const;

  // Transposed differentials, reversed grading, inverse grams.
  BasedComplex dual() const;
  static BasedComplex direct_sum(const BasedComplex& a, const BasedComplex& b);
  static BasedComplex zero(int top_degree);

 private:
  std::vector<int> dims_;
  std::vector<Matrix> diff_;
  std::vector<Matrix> gram_;
};

/// Per degree a matrix whose columns are cocycles representing a basis of H^q.
struct CohomologyBasis {
  std::vector<Matrix> vectors;
  bool orthonormal = false;
  const Matrix& operator[](int q) const { return vectors.at(q); }
};

struct HodgeDegree {
  Matrix harmonic;  // columns orthonormal w.r.t. gram(q)
  Vector spectrum;  // nonzero Laplacian eigenvalues, ascending
};

std::vector<HodgeDegree> hodge_decompose(const BasedComplex& c, double rank_tol = numerics::kRankTol);
std::vector<int> betti_numbers(const BasedComplex& c, double rank_tol = numerics::kRankTol);
// Orthonormal harmonic cocycles in every degree.
CohomologyBasis harmonic_basis(const BasedComplex& c, double rank_tol = numerics::kRankTol);

struct TorsionReport {
  double log_torsion = 0.0;
  std::vector<double> per_degree_logdetprime;  // log det' of the combinatorial Laplacian
  double laplacian_term = 0.0;                 // -1/2 sum (-1)^q q logdet'
  double basis_factor = 0.0;                   // sum (-1)^q log |det W^q|, mu = W omega
  std::vector<int> betti;
};

// log tau = -1/2 sum_q (-1)^q q log det' Lap_q - sum_q (-1)^q log |det W^q|.
TorsionReport log_torsion(const BasedComplex& c, const CohomologyBasis& mu,
                          double rank_tol = numerics::kRankTol);
// Same, with W measured against an explicit orthonormal harmonic frame omega.
TorsionReport log_torsion(const BasedComplex& c, const CohomologyBasis& mu, const CohomologyBasis& omega,
                          double rank_tol = numerics::kRankTol);
// Same with the orthonormal harmonic basis (basis factor zero).
TorsionReport log_torsion(const BasedComplex& c, double rank_tol = numerics::kRankTol);

/// Coordinates of cohomology classes with respect to a chosen basis.
class CohomologyFrame {
 public:
  CohomologyFrame(const BasedComplex& c, int q, const Matrix& basis, const Matrix& omega);
  // Columns of z must be cocycles of degree q; returns their coordinates.
  Matrix coordinates(const Matrix& z) const;
  int dim() const { return static_cast<int>(basis_.cols()); }

 private:
  Matrix projector_;  // omega^T G
  Eigen::PartialPivLU<Matrix> lu_;
  Matrix basis_;
};

// Exact sequence of finite-dimensional spaces with the given bases taken as orthonormal.
// maps[i] : V_i -> V_{i+1}. Throws naming the first position where exactness fails.
BasedComplex les_as_complex(const std::vector<int>& dims, const std::vector<Matrix>& maps,
                            double rank_tol = numerics::kRankTol);

/// 0 -> sub -> total -> quot -> 0 with degreewise cochain maps.
struct ShortExactSequence {
  BasedComplex sub, total, quot;
  std::vector<Matrix> incl;  // incl[q]: sub^q -> total^q
  std::vector<Matrix> proj;  // proj[q]: total^q -> quot^q
};

// Throws if the maps are not chain maps or the sequence is not exact.
void validate(const ShortExactSequence& s, double tol = 1e-9);
// Largest |log volume| over degrees of [incl(e'), lift(e'')] in the total metric;
// zero when the inner products are compatible.
double compatibility_defect(const ShortExactSequence& s);

struct InducedLES {
  std::vector<Matrix> incl, proj, connecting;  // per degree, in the chosen bases
  BasedComplex complex;                        // grading 3q, 3q+1, 3q+2
};
InducedLES induced_les(const ShortExactSequence& s, const CohomologyBasis& mu_sub,
                       const CohomologyBasis& mu_total, const CohomologyBasis& mu_quot);

// |log tau(total) - log tau(sub) - log tau(quot) - log tau(H)|.
double milnor_check(const BasedComplex& sub, const CohomologyBasis& mu_sub, const BasedComplex& total,
                    const CohomologyBasis& mu_total, const BasedComplex& quot,
                    const CohomologyBasis& mu_quot, const BasedComplex& h);
double milnor_check(const ShortExactSequence& s, const CohomologyBasis& mu_sub,
                    const CohomologyBasis& mu_total, const CohomologyBasis& mu_quot);

// Random split short exact sequence with nontrivial connecting maps, gram = I.
ShortExactSequence random_split_ses(unsigned long long seed, int top_degree = 3, int max_pieces = 3);

struct MilnorSuiteResult {
  std::vector<double> residuals;
  double max_residual = 0.0;
};
// milnor_check over `count` random sequences (seeds seed, seed+1, ...) with random cohomology bases.
MilnorSuiteResult milnor_suite(unsigned long long seed, int count, int top_degree = 3);

}  // namespace cusp::chain
