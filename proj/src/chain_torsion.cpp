#include "cusp/chain_torsion.hpp"

#include "cusp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace cusp::chain {

using numerics::log_pseudo_det;

BasedComplex::BasedComplex(std::vector<int> dims, std::vector<Matrix> diff, std::vector<Matrix> gram,
                           double tol)
    : dims_(std::move(dims)), diff_(std::move(diff)), gram_(std::move(gram)) {
  const int m = top_degree();
  for (int n : dims_)
    if (n < 0) fail(ErrorKind::InvalidArgument, "complex: negative dimension");
  if (m < 0) {
    if (!diff_.empty()) fail(ErrorKind::InvalidArgument, "complex: differentials without degrees");
    return;
  }
  if (static_cast<int>(diff_.size()) != m)
    fail(ErrorKind::InvalidArgument, "complex: expected " + std::to_string(m) + " differentials");
  for (int q = 0; q < m; ++q) {
    if (diff_[q].rows() != dims_[q + 1] || diff_[q].cols() != dims_[q])
      fail(ErrorKind::InvalidArgument, "complex: differential " + std::to_string(q) + " has wrong shape");
    if (!diff_[q].allFinite()) fail(ErrorKind::InvalidArgument, "complex: non-finite differential");
  }
  if (!gram_.empty()) {
    if (static_cast<int>(gram_.size()) != m + 1)
      fail(ErrorKind::InvalidArgument, "complex: expected one gram matrix per degree");
    bool all_identity = true;
    for (int q = 0; q <= m; ++q) {
      const Matrix& g = gram_[q];
      if (g.rows() != dims_[q] || g.cols() != dims_[q])
        fail(ErrorKind::InvalidArgument, "complex: gram " + std::to_string(q) + " has wrong shape");
      if (dims_[q] == 0) continue;
      if (numerics::symmetry_defect(g) > 1e-12)
        fail(ErrorKind::InvalidArgument, "complex: gram " + std::to_string(q) + " not symmetric");
      Eigen::LLT<Matrix> llt(0.5 * (g + g.transpose()));
      if (llt.info() != Eigen::Success || numerics::eigvals_sym(g)(0) <= 0)
        fail(ErrorKind::InvalidArgument, "complex: gram " + std::to_string(q) + " not positive definite");
      if (!g.isIdentity(0.0)) all_identity = false;
    }
    if (all_identity) gram_.clear();
  }
  if (d_squared_defect() > tol)
    fail(ErrorKind::InvalidArgument, "complex: d o d != 0 (defect " + std::to_string(d_squared_defect()) + ")");
}

Matrix BasedComplex::d(int q) const {
  if (q < 0 || q >= top_degree()) return Matrix::Zero(dim(q + 1), dim(q));
  return diff_[q];
}

Matrix BasedComplex::gram(int q) const {
  if (gram_.empty() || q < 0 || q > top_degree()) return Matrix::Identity(dim(q), dim(q));
  return gram_[q];
}

double BasedComplex::d_squared_defect() const {
  double worst = 0.0;
  for (int q = 0; q + 1 < top_degree(); ++q) {
    if (diff_[q].size() == 0 || diff_[q + 1].size() == 0) continue;
    double scale = std::max(1.0, diff_[q + 1].norm() * diff_[q].norm());
    worst = std::max(worst, (diff_[q + 1] * diff_[q]).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

BasedComplex BasedComplex::dual() const {
  const int m = top_degree();
  std::vector<int> dims(m + 1);
  std::vector<Matrix> diff(std::max(m, 0));
  std::vector<Matrix> gram;
  for (int p = 0; p <= m; ++p) dims[p] = dims_[m - p];
  for (int p = 0; p < m; ++p) diff[p] = diff_[m - p - 1].transpose();
  if (!gram_.empty()) {
    gram.resize(m + 1);
    for (int p = 0; p <= m; ++p) {
      Matrix inv = gram_[m - p].inverse();
      gram[p] = 0.5 * (inv + inv.transpose());
    }
  }
  return BasedComplex(dims, diff, gram, 1e-9);
}

BasedComplex BasedComplex::direct_sum(const BasedComplex& a, const BasedComplex& b) {
  const int m = std::max(a.top_degree(), b.top_degree());
  std::vector<int> dims(m + 1);
  for (int q = 0; q <= m; ++q) dims[q] = a.dim(q) + b.dim(q);
  std::vector<Matrix> diff(std::max(m, 0));
  for (int q = 0; q < m; ++q) {
    Matrix d = Matrix::Zero(dims[q + 1], dims[q]);
    d.topLeftCorner(a.dim(q + 1), a.dim(q)) = a.d(q);
    d.bottomRightCorner(b.dim(q + 1), b.dim(q)) = b.d(q);
    diff[q] = d;
  }
  std::vector<Matrix> gram;
  if (!a.has_identity_gram() || !b.has_identity_gram()) {
    gram.resize(m + 1);
    for (int q = 0; q <= m; ++q) {
      Matrix g = Matrix::Zero(dims[q], dims[q]);
      g.topLeftCorner(a.dim(q), a.dim(q)) = a.gram(q);
      g.bottomRightCorner(b.dim(q), b.dim(q)) = b.gram(q);
      gram[q] = g;
    }
  }
  return BasedComplex(dims, diff, gram, 1e-9);
}

BasedComplex BasedComplex::zero(int top_degree) {
  std::vector<int> dims(top_degree + 1, 0);
  std::vector<Matrix> diff(std::max(top_degree, 0), Matrix(0, 0));
  return BasedComplex(dims, diff);
}

// ---------------------------------------------------------------------------

namespace {

// Coordinates in which every gram is the identity: x = L^{-T} y with G = L L^T.
struct OrthoFrame {
  std::vector<Matrix> to_orig;  // L^{-T}
  std::vector<Matrix> dt;       // differentials in orthonormal coordinates
  double scale = 0.0;           // largest differential norm, for rank decisions
};

OrthoFrame ortho_frame(const BasedComplex& c) {
  const int m = c.top_degree();
  OrthoFrame f;
  f.to_orig.resize(m + 1);
  f.dt.resize(std::max(m, 0));
  std::vector<Matrix> lt(m + 1);
  for (int q = 0; q <= m; ++q) {
    const int n = c.dim(q);
    if (c.has_identity_gram()) {
      f.to_orig[q] = Matrix::Identity(n, n);
      lt[q] = Matrix::Identity(n, n);
    } else {
      Eigen::LLT<Matrix> llt(c.gram(q));
      lt[q] = llt.matrixL().transpose();
      f.to_orig[q] = lt[q].inverse();
    }
  }
  for (int q = 0; q < m; ++q) {
    f.dt[q] = lt[q + 1] * c.d(q) * f.to_orig[q];
    if (f.dt[q].size() > 0) f.scale = std::max(f.scale, f.dt[q].cwiseAbs().maxCoeff());
  }
  return f;
}

Matrix dt_or_zero(const BasedComplex& c, const OrthoFrame& f, int q) {
  if (q < 0 || q >= c.top_degree()) return Matrix::Zero(c.dim(q + 1), c.dim(q));
  return f.dt[q];
}

Matrix laplacian(const BasedComplex& c, const OrthoFrame& f, int q) {
  Matrix up = dt_or_zero(c, f, q), down = dt_or_zero(c, f, q - 1);
  return up.transpose() * up + down * down.transpose();
}

}  // namespace

std::vector<int> betti_numbers(const BasedComplex& c, double rank_tol) {
  OrthoFrame f = ortho_frame(c);
  const int m = c.top_degree();
  std::vector<int> rank(std::max(m, 0));
  for (int q = 0; q < m; ++q) rank[q] = numerics::numerical_rank(f.dt[q], rank_tol, f.scale);
  std::vector<int> b(m + 1);
  for (int q = 0; q <= m; ++q)
    b[q] = c.dim(q) - (q < m ? rank[q] : 0) - (q > 0 ? rank[q - 1] : 0);
  return b;
}

std::vector<HodgeDegree> hodge_decompose(const BasedComplex& c, double rank_tol) {
  OrthoFrame f = ortho_frame(c);
  const std::vector<int> b = betti_numbers(c, rank_tol);
  const int m = c.top_degree();
  std::vector<HodgeDegree> out(m + 1);
  for (int q = 0; q <= m; ++q) {
    const int n = c.dim(q);
    if (n == 0) {
      out[q].harmonic = Matrix(0, 0);
      continue;
    }
    numerics::SpectralDecomposition s = numerics::eig_sym(laplacian(c, f, q));
    out[q].harmonic = f.to_orig[q] * s.eigenvectors.leftCols(b[q]);
    out[q].spectrum = s.eigenvalues.tail(n - b[q]);
  }
  return out;
}

CohomologyBasis harmonic_basis(const BasedComplex& c, double rank_tol) {
  OrthoFrame f = ortho_frame(c);
  const std::vector<int> b = betti_numbers(c, rank_tol);
  const int m = c.top_degree();
  CohomologyBasis out;
  out.orthonormal = true;
  out.vectors.resize(m + 1);
  for (int q = 0; q <= m; ++q) {
    const int n = c.dim(q);
    if (b[q] == 0) {
      out.vectors[q] = Matrix(n, 0);
      continue;
    }
    Matrix ker = numerics::eig_sym(laplacian(c, f, q)).eigenvectors.leftCols(b[q]);
    out.vectors[q] = f.to_orig[q] * ker;
  }
  return out;
}

// ---------------------------------------------------------------------------

CohomologyFrame::CohomologyFrame(const BasedComplex& c, int q, const Matrix& basis, const Matrix& omega)
    : basis_(basis) {
  if (basis.cols() != omega.cols())
    fail(ErrorKind::InvalidArgument, "cohomology basis in degree " + std::to_string(q) +
                                         " has wrong size (" + std::to_string(basis.cols()) + " vs " +
                                         std::to_string(omega.cols()) + ")");
  projector_ = omega.transpose() * c.gram(q);
  if (basis.cols() > 0) {
    Matrix w = projector_ * basis;
    if (numerics::singular_values(w).minCoeff() <= 1e-12 * std::max(1.0, w.norm()))
      fail(ErrorKind::InvalidArgument, "cohomology basis in degree " + std::to_string(q) + " is not a basis");
    lu_.compute(w);
  }
}

Matrix CohomologyFrame::coordinates(const Matrix& z) const {
  if (basis_.cols() == 0) return Matrix(0, z.cols());
  return lu_.solve(projector_ * z);
}

namespace {
void require_cocycles(const BasedComplex& c, int q, const Matrix& z, const char* who) {
  if (z.cols() == 0) return;
  if (z.rows() != c.dim(q))
    fail(ErrorKind::InvalidArgument, std::string(who) + ": basis vectors have wrong length in degree " +
                                         std::to_string(q));
  Matrix dz = c.d(q) * z;
  double scale = std::max(1.0, c.d(q).norm() * z.norm());
  if (dz.size() > 0 && dz.cwiseAbs().maxCoeff() > 1e-8 * scale)
    fail(ErrorKind::InvalidArgument, std::string(who) + ": basis vectors are not cocycles in degree " +
                                         std::to_string(q));
}
}  // namespace

namespace {
TorsionReport laplacian_part(const BasedComplex& c, const OrthoFrame& f, double rank_tol) {
  const int m = c.top_degree();
  TorsionReport r;
  std::vector<double> s(std::max(m, 0), 0.0);
  std::vector<int> rank(std::max(m, 0), 0);
  for (int q = 0; q < m; ++q) {
    numerics::PseudoDet pd = log_pseudo_det(f.dt[q], rank_tol, f.scale);
    s[q] = pd.log_value;
    rank[q] = pd.rank;
  }
  r.betti.resize(m + 1);
  r.per_degree_logdetprime.resize(m + 1);
  for (int q = 0; q <= m; ++q) {
    r.betti[q] = c.dim(q) - (q < m ? rank[q] : 0) - (q > 0 ? rank[q - 1] : 0);
    // nonzero Laplacian spectrum is the union of squared singular values of d_q and d_{q-1}
    r.per_degree_logdetprime[q] = 2.0 * ((q < m ? s[q] : 0.0) + (q > 0 ? s[q - 1] : 0.0));
    r.laplacian_term -= 0.5 * ((q % 2) ? -1.0 : 1.0) * q * r.per_degree_logdetprime[q];
  }
  return r;
}
}  // namespace

TorsionReport log_torsion(const BasedComplex& c, const CohomologyBasis& mu, double rank_tol) {
  const int m = c.top_degree();
  OrthoFrame f = ortho_frame(c);
  TorsionReport r = laplacian_part(c, f, rank_tol);
  bool any_cohomology = false;
  for (int b : r.betti) any_cohomology = any_cohomology || b > 0;
  if (any_cohomology || !mu.vectors.empty()) {
    if (static_cast<int>(mu.vectors.size()) != m + 1)
      fail(ErrorKind::InvalidArgument, "log_torsion: cohomology basis needs one entry per degree");
    for (int q = 0; q <= m; ++q) {
      if (mu[q].cols() != r.betti[q])
        fail(ErrorKind::InvalidArgument, "log_torsion: basis in degree " + std::to_string(q) + " has " +
                                             std::to_string(mu[q].cols()) + " vectors, cohomology has dimension " +
                                             std::to_string(r.betti[q]));
      if (r.betti[q] == 0) continue;
      require_cocycles(c, q, mu[q], "log_torsion");
      // |det W| is the volume of the harmonic parts of mu, so no explicit omega is needed:
      // strip the exact part by least squares against the incoming differential.
      Matrix h = f.to_orig[q].inverse() * mu[q];
      if (q > 0 && f.dt[q - 1].size() > 0) h -= f.dt[q - 1] * numerics::solve_ls(f.dt[q - 1], h);
      Vector sv = numerics::singular_values(h);
      if (sv.minCoeff() <= 1e-10 * std::max(1.0, sv.maxCoeff()))
        fail(ErrorKind::InvalidArgument, "log_torsion: mu is not a basis in degree " + std::to_string(q));
      double ld = 0.0;
      for (Eigen::Index i = 0; i < sv.size(); ++i) ld += std::log(sv(i));
      r.basis_factor += ((q % 2) ? -1.0 : 1.0) * ld;
    }
  }
  r.log_torsion = r.laplacian_term - r.basis_factor;
  return r;
}

TorsionReport log_torsion(const BasedComplex& c, const CohomologyBasis& mu, const CohomologyBasis& omega,
                          double rank_tol) {
  TorsionReport r = laplacian_part(c, ortho_frame(c), rank_tol);
  for (int q = 0; q <= c.top_degree(); ++q) {
    if (r.betti[q] == 0) continue;
    if (static_cast<int>(mu.vectors.size()) <= q || static_cast<int>(omega.vectors.size()) <= q)
      fail(ErrorKind::InvalidArgument, "log_torsion: cohomology basis needs one entry per degree");
    require_cocycles(c, q, mu[q], "log_torsion");
    CohomologyFrame frame(c, q, mu[q], omega[q]);
    Matrix w = omega[q].transpose() * c.gram(q) * mu[q];
    r.basis_factor += ((q % 2) ? -1.0 : 1.0) * numerics::log_abs_det(w);
  }
  r.log_torsion = r.laplacian_term - r.basis_factor;
  return r;
}

TorsionReport log_torsion(const BasedComplex& c, double rank_tol) {
  return log_torsion(c, harmonic_basis(c, rank_tol), rank_tol);
}

// ---------------------------------------------------------------------------

BasedComplex les_as_complex(const std::vector<int>& dims, const std::vector<Matrix>& maps, double rank_tol) {
  const int n = static_cast<int>(dims.size());
  if (n == 0) return BasedComplex::zero(0);
  if (static_cast<int>(maps.size()) != n - 1)
    fail(ErrorKind::InvalidArgument, "les_as_complex: need one map between consecutive spaces");
  for (int i = 0; i + 1 < n; ++i)
    if (maps[i].rows() != dims[i + 1] || maps[i].cols() != dims[i])
      fail(ErrorKind::InvalidArgument, "les_as_complex: map " + std::to_string(i) + " has wrong shape");
  double scale = 1.0;
  for (const Matrix& a : maps)
    if (a.size() > 0) scale = std::max(scale, a.cwiseAbs().maxCoeff());
  std::vector<Matrix> clean(maps);
  std::vector<int> rank(n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    rank[i] = numerics::numerical_rank(maps[i], std::max(rank_tol, 1e-9), scale);
    if (rank[i] == 0) clean[i].setZero();
  }
  for (int i = 0; i < n; ++i) {
    int r_in = i > 0 ? rank[i - 1] : 0;
    int r_out = i + 1 < n ? rank[i] : 0;
    if (r_in + r_out != dims[i])
      fail(ErrorKind::Precondition, "les_as_complex: sequence not exact at position " + std::to_string(i) +
                                        " (dim " + std::to_string(dims[i]) + ", incoming rank " +
                                        std::to_string(r_in) + ", outgoing rank " + std::to_string(r_out) + ")");
  }
  return BasedComplex(dims, clean, {}, 1e-8);
}

// ---------------------------------------------------------------------------

void validate(const ShortExactSequence& s, double tol) {
  const int m = std::max({s.sub.top_degree(), s.total.top_degree(), s.quot.top_degree()});
  if (static_cast<int>(s.incl.size()) != m + 1 || static_cast<int>(s.proj.size()) != m + 1)
    fail(ErrorKind::InvalidArgument, "short exact sequence: need maps in every degree");
  for (int q = 0; q <= m; ++q) {
    const Matrix& i = s.incl[q];
    const Matrix& p = s.proj[q];
    if (i.rows() != s.total.dim(q) || i.cols() != s.sub.dim(q) || p.rows() != s.quot.dim(q) ||
        p.cols() != s.total.dim(q))
      fail(ErrorKind::InvalidArgument, "short exact sequence: map shapes wrong in degree " + std::to_string(q));
    if (s.sub.dim(q) + s.quot.dim(q) != s.total.dim(q))
      fail(ErrorKind::Precondition, "short exact sequence: dimensions do not add in degree " + std::to_string(q));
    if (numerics::numerical_rank(i) != i.cols() || numerics::numerical_rank(p) != p.rows())
      fail(ErrorKind::Precondition, "short exact sequence: not injective/surjective in degree " + std::to_string(q));
    if (p.size() > 0 && i.size() > 0 && (p * i).cwiseAbs().maxCoeff() > tol)
      fail(ErrorKind::Precondition, "short exact sequence: proj o incl != 0 in degree " + std::to_string(q));
    if (q < m) {
      Matrix c1 = s.total.d(q) * i - s.incl[q + 1] * s.sub.d(q);
      Matrix c2 = s.quot.d(q) * p - s.proj[q + 1] * s.total.d(q);
      if ((c1.size() > 0 && c1.cwiseAbs().maxCoeff() > tol) || (c2.size() > 0 && c2.cwiseAbs().maxCoeff() > tol))
        fail(ErrorKind::Precondition, "short exact sequence: maps are not chain maps in degree " + std::to_string(q));
    }
  }
}

double compatibility_defect(const ShortExactSequence& s) {
  const int m = std::max({s.sub.top_degree(), s.total.top_degree(), s.quot.top_degree()});
  double worst = 0.0;
  for (int q = 0; q <= m; ++q) {
    if (s.total.dim(q) == 0) continue;
    Matrix on_sub = Eigen::LLT<Matrix>(s.sub.gram(q)).matrixL().transpose();
    Matrix on_quot = Eigen::LLT<Matrix>(s.quot.gram(q)).matrixL().transpose();
    Matrix bs = s.sub.dim(q) ? Matrix(on_sub.inverse()) : Matrix(0, 0);
    Matrix bq = s.quot.dim(q) ? Matrix(on_quot.inverse()) : Matrix(0, 0);
    Matrix cols(s.total.dim(q), s.total.dim(q));
    cols << s.incl[q] * bs, numerics::solve_ls(s.proj[q], bq);
    double logvol = 0.5 * numerics::log_abs_det(cols.transpose() * s.total.gram(q) * cols);
    worst = std::max(worst, std::abs(logvol));
  }
  return worst;
}

InducedLES induced_les(const ShortExactSequence& s, const CohomologyBasis& mu_sub,
                       const CohomologyBasis& mu_total, const CohomologyBasis& mu_quot) {
  validate(s);
  const int m = std::max({s.sub.top_degree(), s.total.top_degree(), s.quot.top_degree()});
  CohomologyBasis om_sub = harmonic_basis(s.sub), om_tot = harmonic_basis(s.total),
                  om_quot = harmonic_basis(s.quot);
  auto basis_or_empty = [](const CohomologyBasis& b, int q, int rows) {
    return q < static_cast<int>(b.vectors.size()) ? b.vectors[q] : Matrix(rows, 0);
  };
  auto frame = [&](const BasedComplex& c, const CohomologyBasis& mu, const CohomologyBasis& om, int q) {
    Matrix b = basis_or_empty(mu, q, c.dim(q));
    require_cocycles(c, q, b, "induced_les");
    return CohomologyFrame(c, q, b, basis_or_empty(om, q, c.dim(q)));
  };
  InducedLES out;
  std::vector<int> dims;
  std::vector<Matrix> maps;
  std::vector<CohomologyFrame> f_sub, f_tot, f_quot;
  for (int q = 0; q <= m + 1; ++q) {
    f_sub.push_back(frame(s.sub, mu_sub, om_sub, q));
    f_tot.push_back(frame(s.total, mu_total, om_tot, q));
    f_quot.push_back(frame(s.quot, mu_quot, om_quot, q));
  }
  for (int q = 0; q <= m; ++q) {
    Matrix bs = basis_or_empty(mu_sub, q, s.sub.dim(q));
    Matrix bt = basis_or_empty(mu_total, q, s.total.dim(q));
    Matrix bq = basis_or_empty(mu_quot, q, s.quot.dim(q));
    Matrix i = f_tot[q].coordinates(s.incl[q] * bs);
    Matrix p = f_quot[q].coordinates(s.proj[q] * bt);
    Matrix delta;
    if (q < m) {
      Matrix lift = numerics::solve_ls(s.proj[q], bq);
      Matrix y = s.total.d(q) * lift;
      Matrix w = numerics::solve_ls(s.incl[q + 1], y);
      if (y.size() > 0 && (s.incl[q + 1] * w - y).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, y.norm()))
        fail(ErrorKind::Numerical, "induced_les: connecting map lift failed in degree " + std::to_string(q));
      delta = f_sub[q + 1].coordinates(w);
    } else {
      delta = Matrix(0, bq.cols());
    }
    out.incl.push_back(i);
    out.proj.push_back(p);
    out.connecting.push_back(delta);
    dims.push_back(static_cast<int>(bs.cols()));
    dims.push_back(static_cast<int>(bt.cols()));
    dims.push_back(static_cast<int>(bq.cols()));
    maps.push_back(i);
    maps.push_back(p);
    if (q < m) maps.push_back(delta);
  }
  out.complex = les_as_complex(dims, maps);
  return out;
}

double milnor_check(const BasedComplex& sub, const CohomologyBasis& mu_sub, const BasedComplex& total,
                    const CohomologyBasis& mu_total, const BasedComplex& quot, const CohomologyBasis& mu_quot,
                    const BasedComplex& h) {
  double t_sub = log_torsion(sub, mu_sub).log_torsion;
  double t_tot = log_torsion(total, mu_total).log_torsion;
  double t_quot = log_torsion(quot, mu_quot).log_torsion;
  double t_h = log_torsion(h, CohomologyBasis{}).log_torsion;
  return std::abs(t_tot - t_sub - t_quot - t_h);
}

double milnor_check(const ShortExactSequence& s, const CohomologyBasis& mu_sub, const CohomologyBasis& mu_total,
                    const CohomologyBasis& mu_quot) {
  InducedLES les = induced_les(s, mu_sub, mu_total, mu_quot);
  return milnor_check(s.sub, mu_sub, s.total, mu_total, s.quot, mu_quot, les.complex);
}

// ---------------------------------------------------------------------------

ShortExactSequence random_split_ses(unsigned long long seed, int top_degree, int max_pieces) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(0, max_pieces);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const int m = top_degree;
  // pieces: solo classes, and pairs (degree q -> q+1) of kinds sub->sub, quot->quot, quot->sub
  std::vector<int> ns(m + 1, 0), nq(m + 1, 0);
  struct Pair { int q; bool src_sub, dst_sub; int src, dst; };
  std::vector<Pair> pairs;
  for (int q = 0; q <= m; ++q) {
    ns[q] += count(rng) % 2;
    nq[q] += count(rng) % 2;
  }
  for (int q = 0; q < m; ++q) {
    for (int kind = 0; kind < 3; ++kind) {
      int k = count(rng);
      for (int j = 0; j < k; ++j) {
        Pair p{q, kind == 0, kind != 1, 0, 0};
        p.src = p.src_sub ? ns[q]++ : nq[q]++;
        p.dst = p.dst_sub ? ns[q + 1]++ : nq[q + 1]++;
        pairs.push_back(p);
      }
    }
  }
  auto random_invertible = [&](int n) {
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = 0.4 * unif(rng);
    a += Matrix::Identity(n, n) * 1.5;
    return a;
  };
  std::vector<Matrix> t(m + 1), tinv(m + 1);
  for (int q = 0; q <= m; ++q) {
    int n = ns[q] + nq[q];
    Matrix tq = Matrix::Zero(n, n);
    tq.topLeftCorner(ns[q], ns[q]) = random_invertible(ns[q]);
    tq.bottomRightCorner(nq[q], nq[q]) = random_invertible(nq[q]);
    for (int i = 0; i < ns[q]; ++i)
      for (int j = 0; j < nq[q]; ++j) tq(i, ns[q] + j) = 0.5 * unif(rng);
    t[q] = tq;
    tinv[q] = tq.inverse();
  }
  std::vector<Matrix> e(m);
  for (int q = 0; q < m; ++q) e[q] = Matrix::Zero(ns[q + 1] + nq[q + 1], ns[q] + nq[q]);
  for (const Pair& p : pairs) {
    int col = p.src_sub ? p.src : ns[p.q] + p.src;
    int row = p.dst_sub ? p.dst : ns[p.q + 1] + p.dst;
    e[p.q](row, col) = 1.0 + 0.5 * unif(rng);
  }
  std::vector<int> dims_t(m + 1);
  std::vector<Matrix> d_tot(m), d_sub(m), d_quot(m);
  for (int q = 0; q <= m; ++q) dims_t[q] = ns[q] + nq[q];
  for (int q = 0; q < m; ++q) {
    d_tot[q] = t[q + 1] * e[q] * tinv[q];
    d_sub[q] = d_tot[q].topLeftCorner(ns[q + 1], ns[q]);
    d_quot[q] = d_tot[q].bottomRightCorner(nq[q + 1], nq[q]);
  }
  ShortExactSequence s;
  s.total = BasedComplex(dims_t, d_tot, {}, 1e-10);
  s.sub = BasedComplex(ns, d_sub, {}, 1e-10);
  s.quot = BasedComplex(nq, d_quot, {}, 1e-10);
  for (int q = 0; q <= m; ++q) {
    Matrix i = Matrix::Zero(dims_t[q], ns[q]);
    i.topRows(ns[q]) = Matrix::Identity(ns[q], ns[q]);
    Matrix p = Matrix::Zero(nq[q], dims_t[q]);
    p.rightCols(nq[q]) = Matrix::Identity(nq[q], nq[q]);
    s.incl.push_back(i);
    s.proj.push_back(p);
  }
  return s;
}

MilnorSuiteResult milnor_suite(unsigned long long seed, int count, int top_degree) {
  if (count < 1) fail(ErrorKind::InvalidArgument, "milnor_suite: count must be positive");
  MilnorSuiteResult out;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  // harmonic classes mixed by a random well-conditioned matrix, so the bases are not orthonormal
  auto skewed = [&](const BasedComplex& c) {
    CohomologyBasis h = harmonic_basis(c);
    for (auto& v : h.vectors) {
      const auto n = v.cols();
      Matrix a = Matrix::Identity(n, n) * 1.5;
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) += 0.4 * unif(rng);
      v = (v * a).eval();
    }
    h.orthonormal = false;
    return h;
  };
  for (int i = 0; i < count; ++i) {
    const ShortExactSequence s = random_split_ses(seed + static_cast<unsigned long long>(i), top_degree);
    validate(s);
    const double r = milnor_check(s, skewed(s.sub), skewed(s.total), skewed(s.quot));
    out.residuals.push_back(r);
    out.max_residual = std::max(out.max_residual, r);
  }
  return out;
}

}  // namespace cusp::chain

