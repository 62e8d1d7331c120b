#include "cusp/simplicial.hpp"

#include "cusp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace cusp::simplicial {

namespace {

std::string show(const Simplex& s) {
  std::string out = "[";
  for (size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "]";
}

}  // namespace

SimplicialComplex SimplicialComplex::from_simplices(const std::vector<Simplex>& generators) {
  std::vector<std::set<Simplex>> sets;
  for (Simplex s : generators) {
    if (s.empty()) fail(ErrorKind::InvalidArgument, "simplicial complex: empty simplex");
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      fail(ErrorKind::InvalidArgument, "simplicial complex: repeated vertex in " + show(s));
    if (s.front() < 0) fail(ErrorKind::InvalidArgument, "simplicial complex: negative vertex label");
    const int n = static_cast<int>(s.size());
    if (static_cast<int>(sets.size()) < n) sets.resize(n);
    // all nonempty faces
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      Simplex f;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) f.push_back(s[i]);
      sets[f.size() - 1].insert(f);
    }
  }
  SimplicialComplex k;
  k.simplices_.resize(sets.size());
  k.index_.resize(sets.size());
  for (size_t q = 0; q < sets.size(); ++q) {
    k.simplices_[q].assign(sets[q].begin(), sets[q].end());
    for (size_t i = 0; i < k.simplices_[q].size(); ++i) k.index_[q][k.simplices_[q][i]] = static_cast<int>(i);
  }
  return k;
}

int SimplicialComplex::count(int q) const {
  return q < 0 || q > dimension() ? 0 : static_cast<int>(simplices_[q].size());
}

const std::vector<Simplex>& SimplicialComplex::simplices(int q) const {
  static const std::vector<Simplex> none;
  return q < 0 || q > dimension() ? none : simplices_[q];
}

std::vector<int> SimplicialComplex::vertices() const {
  std::vector<int> v;
  for (const Simplex& s : simplices(0)) v.push_back(s[0]);
  return v;
}

int SimplicialComplex::index_of(const Simplex& s) const {
  const int q = static_cast<int>(s.size()) - 1;
  if (q < 0 || q > dimension()) return -1;
  auto it = index_[q].find(s);
  return it == index_[q].end() ? -1 : it->second;
}

int SimplicialComplex::max_label() const {
  int m = -1;
  for (const Simplex& s : simplices(0)) m = std::max(m, s[0]);
  return m;
}

SimplicialComplex SimplicialComplex::full_subcomplex(const std::vector<int>& vertices) const {
  std::set<int> keep(vertices.begin(), vertices.end());
  std::vector<Simplex> gens;
  for (int q = 0; q <= dimension(); ++q)
    for (const Simplex& s : simplices_[q])
      if (std::all_of(s.begin(), s.end(), [&](int v) { return keep.count(v) > 0; })) gens.push_back(s);
  for (int v : keep)
    if (index_of({v}) < 0) fail(ErrorKind::InvalidArgument, "full_subcomplex: vertex " + std::to_string(v) + " absent");
  return from_simplices(gens);
}

bool SimplicialComplex::is_full_subcomplex(const SimplicialComplex& sub) const {
  SimplicialComplex full = full_subcomplex(sub.vertices());
  for (int q = 0; q <= std::max(full.dimension(), sub.dimension()); ++q)
    if (full.simplices(q) != sub.simplices(q)) return false;
  return true;
}

int SimplicialComplex::components() const {
  std::vector<int> vs = vertices();
  std::map<int, int> parent;
  for (int v : vs) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const Simplex& e : simplices(1)) parent[find(e[0])] = find(e[1]);
  int n = 0;
  for (int v : vs)
    if (find(v) == v) ++n;
  return n;
}

int SimplicialComplex::euler_characteristic() const {
  int chi = 0;
  for (int q = 0; q <= dimension(); ++q) chi += (q % 2 ? -1 : 1) * count(q);
  return chi;
}

// ---------------------------------------------------------------------------

void FlatSystem::set_holonomy(int a, int b, const Matrix& h) {
  if (a == b) fail(ErrorKind::InvalidArgument, "holonomy on a loop edge");
  if (h.rows() != rank_ || h.cols() != rank_)
    fail(ErrorKind::InvalidArgument, "holonomy matrix must be " + std::to_string(rank_) + "x" + std::to_string(rank_));
  if (!h.allFinite()) fail(ErrorKind::InvalidArgument, "holonomy matrix has non-finite entries");
  if (a < b)
    hol_[{a, b}] = h;
  else
    hol_[{b, a}] = h.inverse();
}

Matrix FlatSystem::transport(int from, int to) const {
  if (from == to) return Matrix::Identity(rank_, rank_);
  if (from < to) {
    auto it = hol_.find({from, to});
    return it == hol_.end() ? Matrix::Identity(rank_, rank_) : it->second;
  }
  auto it = hol_.find({to, from});
  return it == hol_.end() ? Matrix::Identity(rank_, rank_) : Matrix(it->second.inverse());
}

FlatSystem FlatSystem::dual() const {
  FlatSystem out(rank_);
  for (const auto& [e, h] : hol_) out.hol_[e] = h.inverse().transpose();
  return out;
}

FlatSystem FlatSystem::pullback(const SimplicialComplex& target, const std::vector<int>& vertex_map) const {
  FlatSystem out(rank_);
  for (const Simplex& e : target.simplices(1)) {
    if (e[1] >= static_cast<int>(vertex_map.size())) fail(ErrorKind::InvalidArgument, "pullback: vertex map too short");
    Matrix h = transport(vertex_map[e[0]], vertex_map[e[1]]);
    if (!h.isIdentity(0.0)) out.hol_[{e[0], e[1]}] = h;
  }
  return out;
}

void FlatSystem::validate(const SimplicialComplex& k) const {
  for (const auto& [e, h] : hol_) {
    if (!k.contains({e.first, e.second})) continue;
    double det = h.determinant();
    if (std::abs(std::abs(det) - 1.0) > 1e-10)
      fail(ErrorKind::InvalidArgument, "holonomy on [" + std::to_string(e.first) + "," + std::to_string(e.second) +
                                           "] is not unimodular (|det| = " + std::to_string(std::abs(det)) + ")");
  }
  for (const Simplex& t : k.simplices(2)) {
    Matrix lhs = transport(t[1], t[2]) * transport(t[0], t[1]);
    Matrix rhs = transport(t[0], t[2]);
    if ((lhs - rhs).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, rhs.cwiseAbs().maxCoeff()))
      fail(ErrorKind::InvalidArgument, "holonomy violates the cocycle condition on " + show(t));
  }
}

// ---------------------------------------------------------------------------

BasedComplex twisted_complex(const SimplicialComplex& k, const FlatSystem& f) {
  f.validate(k);
  const int m = k.dimension();
  const int r = f.rank();
  std::vector<int> dims(std::max(m + 1, 1), 0);
  for (int q = 0; q <= m; ++q) dims[q] = r * k.count(q);
  std::vector<Matrix> diff(std::max(m, 0));
  for (int q = 0; q < m; ++q) {
    Matrix d = Matrix::Zero(dims[q + 1], dims[q]);
    const auto& upper = k.simplices(q + 1);
    for (size_t i = 0; i < upper.size(); ++i) {
      const Simplex& s = upper[i];
      for (int j = 0; j <= q + 1; ++j) {
        Simplex face = s;
        face.erase(face.begin() + j);
        const int col = k.index_of(face);
        Matrix block = j == 0 ? f.transport(s[1], s[0]) : Matrix((j % 2 ? -1.0 : 1.0) * Matrix::Identity(r, r));
        d.block(static_cast<Eigen::Index>(i) * r, static_cast<Eigen::Index>(col) * r, r, r) += block;
      }
    }
    diff[q] = d;
  }
  return BasedComplex(dims, diff);
}

Matrix cochain_pullback(const SimplicialComplex& src, const SimplicialComplex& dst, const std::vector<int>& vertex_map,
                        int rank, int q) {
  Matrix p = Matrix::Zero(static_cast<Eigen::Index>(rank) * src.count(q), static_cast<Eigen::Index>(rank) * dst.count(q));
  const auto& ss = src.simplices(q);
  for (size_t i = 0; i < ss.size(); ++i) {
    Simplex img;
    for (int v : ss[i]) {
      if (v >= static_cast<int>(vertex_map.size()) || vertex_map[v] < 0)
        fail(ErrorKind::InvalidArgument, "cochain_pullback: vertex " + std::to_string(v) + " unmapped");
      img.push_back(vertex_map[v]);
    }
    if (!std::is_sorted(img.begin(), img.end()))
      fail(ErrorKind::InvalidArgument, "cochain_pullback: vertex map reverses the order on " + show(ss[i]));
    if (std::adjacent_find(img.begin(), img.end()) != img.end()) continue;
    const int j = dst.index_of(img);
    if (j < 0) fail(ErrorKind::InvalidArgument, "cochain_pullback: image of " + show(ss[i]) + " is not a simplex");
    p.block(static_cast<Eigen::Index>(i) * rank, static_cast<Eigen::Index>(j) * rank, rank, rank).setIdentity();
  }
  return p;
}

// ---------------------------------------------------------------------------

SimplicialComplex circle(int n) {
  if (n < 3) fail(ErrorKind::InvalidArgument, "circle needs at least 3 vertices");
  std::vector<Simplex> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  e.push_back({0, n - 1});
  return SimplicialComplex::from_simplices(e);
}

SimplicialComplex path(int n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "path needs a vertex");
  std::vector<Simplex> e;
  if (n == 1) e.push_back({0});
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return SimplicialComplex::from_simplices(e);
}

SimplicialComplex simplex_boundary(int n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "simplex boundary needs n >= 1");
  std::vector<Simplex> faces;
  for (int skip = 0; skip <= n; ++skip) {
    Simplex s;
    for (int v = 0; v <= n; ++v)
      if (v != skip) s.push_back(v);
    faces.push_back(s);
  }
  return SimplicialComplex::from_simplices(faces);
}

SimplicialComplex product(const SimplicialComplex& a, const SimplicialComplex& b) {
  const int nb = b.max_label() + 1;
  std::vector<Simplex> gens;
  for (int p = 0; p <= a.dimension(); ++p)
    for (const Simplex& s : a.simplices(p))
      for (int r = 0; r <= b.dimension(); ++r)
        for (const Simplex& t : b.simplices(r)) {
          // monotone lattice paths from (0,0) to (p,r)
          std::vector<int> steps(p + r);
          std::fill(steps.begin(), steps.begin() + r, 1);
          std::sort(steps.begin(), steps.end());
          do {
            int i = 0, j = 0;
            Simplex chain{s[0] * nb + t[0]};
            for (int st : steps) {
              (st ? j : i)++;
              chain.push_back(s[i] * nb + t[j]);
            }
            gens.push_back(chain);
          } while (std::next_permutation(steps.begin(), steps.end()));
        }
  return SimplicialComplex::from_simplices(gens);
}

std::vector<int> product_projection_first(const SimplicialComplex& a, const SimplicialComplex& b) {
  const int nb = b.max_label() + 1;
  std::vector<int> map((a.max_label() + 1) * nb, -1);
  for (int u : a.vertices())
    for (int v : b.vertices()) map[u * nb + v] = u;
  return map;
}

SimplicialComplex add_cone(const SimplicialComplex& k, const SimplicialComplex& base, int apex) {
  if (k.contains({apex})) fail(ErrorKind::InvalidArgument, "add_cone: apex label already used");
  std::vector<Simplex> gens;
  for (int q = 0; q <= k.dimension(); ++q)
    for (const Simplex& s : k.simplices(q)) gens.push_back(s);
  for (int q = 0; q <= base.dimension(); ++q)
    for (Simplex s : base.simplices(q)) {
      s.push_back(apex);
      gens.push_back(s);
    }
  return SimplicialComplex::from_simplices(gens);
}

// ---------------------------------------------------------------------------

CutResult cut_along(const SimplicialComplex& k, const std::vector<int>& z_vertices,
                    const std::optional<std::vector<int>>& plus_side) {
  CutResult out;
  out.link = k.full_subcomplex(z_vertices);
  if (out.link.dimension() != k.dimension() - 1)
    fail(ErrorKind::Precondition, "cut_along: Z must have codimension one");
  std::set<int> z(z_vertices.begin(), z_vertices.end());
  // vertices adjacent to Z and the relation "share a simplex with a Z vertex"
  std::map<int, int> parent;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int q = 1; q <= k.dimension(); ++q)
    for (const Simplex& s : k.simplices(q)) {
      std::vector<int> outside;
      bool touches = false;
      for (int v : s) {
        if (z.count(v))
          touches = true;
        else
          outside.push_back(v);
      }
      if (!touches || outside.empty()) continue;
      for (int v : outside)
        if (!parent.count(v)) parent[v] = v;
      for (size_t i = 1; i < outside.size(); ++i) parent[find(outside[i])] = find(outside[0]);
    }
  std::map<int, int> side;  // adjacent vertex -> +1 / -1
  if (plus_side) {
    std::set<int> plus(plus_side->begin(), plus_side->end());
    for (auto& [v, p] : parent) side[v] = plus.count(v) ? 1 : -1;
    // every component must be on a single side
    for (auto& [v, p] : parent)
      if (side[v] != side[find(v)])
        fail(ErrorKind::Precondition, "cut_along: annotated side splits a component of the collar");
  } else {
    std::vector<int> roots;
    for (auto& [v, p] : parent)
      if (find(v) == v) roots.push_back(v);
    if (roots.size() != 2)
      fail(ErrorKind::Precondition, "cut_along: Z is not two-sided (" + std::to_string(roots.size()) +
                                        " collar components found); supply the plus side explicitly");
    int plus_root = find(parent.begin()->first);
    for (auto& [v, p] : parent) side[v] = find(v) == plus_root ? 1 : -1;
  }
  // new labels: old order, each Z vertex becomes (z+, z-)
  const int nmax = k.max_label() + 1;
  out.plus.assign(nmax, -1);
  out.minus.assign(nmax, -1);
  std::vector<int> relabel(nmax, -1);
  int next = 0;
  for (int v : k.vertices()) {
    if (z.count(v)) {
      out.plus[v] = next++;
      out.minus[v] = next++;
      out.to_original.push_back(v);
      out.to_original.push_back(v);
    } else {
      relabel[v] = next++;
      out.to_original.push_back(v);
    }
  }
  std::vector<Simplex> gens;
  for (int q = 0; q <= k.dimension(); ++q)
    for (const Simplex& s : k.simplices(q)) {
      int sd = 0;
      for (int v : s)
        if (!z.count(v)) {
          sd = side.count(v) ? side[v] : 0;
          if (sd) break;
        }
      bool z_only = std::all_of(s.begin(), s.end(), [&](int v) { return z.count(v) > 0; });
      if (z_only) {
        Simplex p, m;
        for (int v : s) {
          p.push_back(out.plus[v]);
          m.push_back(out.minus[v]);
        }
        gens.push_back(p);
        gens.push_back(m);
        continue;
      }
      Simplex t;
      for (int v : s) {
        if (z.count(v)) {
          if (!sd) fail(ErrorKind::Internal, "cut_along: simplex touching Z without a side");
          t.push_back(sd > 0 ? out.plus[v] : out.minus[v]);
        } else {
          t.push_back(relabel[v]);
        }
      }
      gens.push_back(t);
    }
  out.cut = SimplicialComplex::from_simplices(gens);
  std::vector<int> bverts;
  for (int v : z_vertices) {
    bverts.push_back(out.plus[v]);
    bverts.push_back(out.minus[v]);
  }
  out.boundary = out.cut.full_subcomplex(bverts);
  out.pieces = out.cut.components();
  // the two copies must not meet
  for (const Simplex& e : out.boundary.simplices(1)) {
    bool p0 = out.plus[out.to_original[e[0]]] == e[0];
    bool p1 = out.plus[out.to_original[e[1]]] == e[1];
    if (p0 != p1) fail(ErrorKind::Precondition, "cut_along: boundary copies of Z are joined by an edge");
  }
  return out;
}

// ---------------------------------------------------------------------------

Subdivision barycentric_subdivide(const SimplicialComplex& k, const FlatSystem& f) {
  Subdivision out;
  std::map<Simplex, int> label;
  for (int q = k.dimension(); q >= 0; --q)
    for (const Simplex& s : k.simplices(q)) {
      label[s] = static_cast<int>(out.barycentres.size());
      out.barycentres.push_back(s);
      out.to_min_vertex.push_back(s[0]);
    }
  // flags sigma_0 > sigma_1 > ... ; generate maximal flags from each top-level simplex recursively
  std::vector<Simplex> gens;
  std::vector<int> chain;
  auto extend = [&](auto&& self, const Simplex& s) -> void {
    chain.push_back(label[s]);
    if (s.size() == 1) {
      Simplex g(chain.begin(), chain.end());
      gens.push_back(g);
    } else {
      for (size_t i = 0; i < s.size(); ++i) {
        Simplex face = s;
        face.erase(face.begin() + i);
        self(self, face);
      }
    }
    chain.pop_back();
  };
  for (int q = 0; q <= k.dimension(); ++q)
    for (const Simplex& s : k.simplices(q)) extend(extend, s);
  out.complex = SimplicialComplex::from_simplices(gens);
  out.system = f.pullback(out.complex, out.to_min_vertex);
  return out;
}

CohomologyBasis pull_basis(const Subdivision& s, const SimplicialComplex& k, const CohomologyBasis& mu) {
  CohomologyBasis out;
  out.orthonormal = false;
  const int rank = s.system.rank();
  for (int q = 0; q <= s.complex.dimension(); ++q) {
    Matrix p = cochain_pullback(s.complex, k, s.to_min_vertex, rank, q);
    Matrix v = q < static_cast<int>(mu.vectors.size()) ? mu.vectors[q] : Matrix(p.cols(), 0);
    out.vectors.push_back(p * v);
  }
  return out;
}

SubdivisionCheck subdivision_check(const SimplicialComplex& k, const FlatSystem& f) {
  const BasedComplex c = twisted_complex(k, f);
  const CohomologyBasis mu = chain::harmonic_basis(c);
  SubdivisionCheck out;
  out.log_tau = chain::log_torsion(c, mu).log_torsion;
  const Subdivision sd = barycentric_subdivide(k, f);
  out.log_tau_subdivided = chain::log_torsion(twisted_complex(sd.complex, sd.system), pull_basis(sd, k, mu)).log_torsion;
  out.defect = std::abs(out.log_tau - out.log_tau_subdivided);
  return out;
}

}  // namespace cusp::simplicial
