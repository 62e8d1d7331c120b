#include "cusp/errors.hpp"
#include "cusp/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace cusp::simplicial {

using chain::CohomologyFrame;
using chain::ShortExactSequence;

namespace {

std::vector<int> identity_map(const SimplicialComplex& k) {
  std::vector<int> id(k.max_label() + 1);
  std::iota(id.begin(), id.end(), 0);
  return id;
}

// Unit vectors of the simplices of k that are not in sub.
Matrix interior_columns(const SimplicialComplex& k, const SimplicialComplex& sub, int rank, int q) {
  std::vector<int> keep;
  const auto& ss = k.simplices(q);
  for (size_t i = 0; i < ss.size(); ++i)
    if (!sub.contains(ss[i])) keep.push_back(static_cast<int>(i));
  Matrix e = Matrix::Zero(static_cast<Eigen::Index>(rank) * k.count(q), static_cast<Eigen::Index>(rank) * keep.size());
  for (size_t j = 0; j < keep.size(); ++j)
    e.block(static_cast<Eigen::Index>(keep[j]) * rank, static_cast<Eigen::Index>(j) * rank, rank, rank).setIdentity();
  return e;
}

BasedComplex restrict_to_span(const BasedComplex& c, const std::vector<Matrix>& embed) {
  const int m = c.top_degree();
  std::vector<int> dims(m + 1);
  std::vector<Matrix> diff(std::max(m, 0));
  for (int q = 0; q <= m; ++q) dims[q] = static_cast<int>(embed[q].cols());
  for (int q = 0; q < m; ++q) {
    Matrix de = c.d(q) * embed[q];
    Matrix inside = embed[q + 1] * (embed[q + 1].transpose() * de);
    if (de.size() > 0 && (de - inside).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, de.cwiseAbs().maxCoeff()))
      fail(ErrorKind::Internal, "truncated cochains are not closed under d in degree " + std::to_string(q));
    diff[q] = embed[q + 1].transpose() * de;
  }
  return BasedComplex(dims, diff, {}, 1e-9);
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  Matrix out(std::max(a.rows(), b.rows()), a.cols() + b.cols());
  if (a.cols()) out.leftCols(a.cols()) = a;
  if (b.cols()) out.rightCols(b.cols()) = b;
  return out;
}

Matrix columns(const Matrix& a, const std::vector<int>& idx) {
  Matrix out(a.rows(), static_cast<Eigen::Index>(idx.size()));
  for (size_t j = 0; j < idx.size(); ++j) out.col(j) = a.col(idx[j]);
  return out;
}

// Orthogonal rotations adapted to a linear map a: dom = [(ker a)^perp | ker a],
// cod = [im a | (im a)^perp]; within blocks ascending singular values, first nonzero entry positive.
struct AdaptedSvd {
  Matrix dom, cod;
  int rank = 0;
};

void fix_signs(Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (std::abs(m(i, j)) > 1e-12) {
        if (m(i, j) < 0) m.col(j) *= -1.0;
        break;
      }
}

AdaptedSvd adapted_svd(const Matrix& a) {
  AdaptedSvd out;
  const Eigen::Index r = a.rows(), c = a.cols();
  out.dom = Matrix::Identity(c, c);
  out.cod = Matrix::Identity(r, r);
  if (r == 0 || c == 0) return out;
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.rank = numerics::numerical_rank(a, 1e-9, 1.0);
  Matrix u = svd.matrixU(), v = svd.matrixV();
  // reverse the nonzero block to ascending order
  for (int j = 0; j < out.rank / 2; ++j) {
    u.col(j).swap(u.col(out.rank - 1 - j));
    v.col(j).swap(v.col(out.rank - 1 - j));
  }
  fix_signs(u);
  fix_signs(v);
  out.dom = v;
  out.cod = u;
  return out;
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i < hi; ++i) v.push_back(i);
  return v;
}

ShortExactSequence cut_sequence(const CutResult& cut, const BasedComplex& cm, const BasedComplex& cm0,
                                const BasedComplex& cz, const SimplicialComplex& k, int rank) {
  ShortExactSequence s;
  s.sub = cm;
  s.total = cm0;
  s.quot = cz;
  for (int q = 0; q <= k.dimension(); ++q) {
    s.incl.push_back(cochain_pullback(cut.cut, k, cut.to_original, rank, q));
    s.proj.push_back(cochain_pullback(cut.link, cut.cut, cut.plus, rank, q) -
                     cochain_pullback(cut.link, cut.cut, cut.minus, rank, q));
  }
  return s;
}

Matrix embed_at(const IntersectionComplex& ic, int q) {
  return q < static_cast<int>(ic.embed.size()) ? ic.embed[q] : Matrix(0, 0);
}

CohomologyBasis as_basis(std::vector<Matrix> v) {
  CohomologyBasis b;
  b.vectors = std::move(v);
  return b;
}

}  // namespace

IntersectionComplex intersection_complex(const ConedSpace& x, const FlatSystem& f) {
  if (!x.base.is_full_subcomplex(x.boundary))
    fail(ErrorKind::Precondition, "intersection_complex: the coned subcomplex must be a full subcomplex");
  IntersectionComplex out;
  out.cutoff = x.cutoff();
  const int rank = f.rank();
  BasedComplex c = twisted_complex(x.base, f);
  BasedComplex cb = twisted_complex(x.boundary, f);
  const std::vector<int> id = identity_map(x.base);
  const int m = x.base.dimension();
  for (int q = 0; q <= m; ++q) {
    const int n = c.dim(q);
    if (q < out.cutoff) {
      out.embed.push_back(Matrix::Identity(n, n));
    } else if (q == out.cutoff) {
      Matrix r = cochain_pullback(x.boundary, x.base, id, rank, q);
      Matrix z = cb.dim(q) ? numerics::null_space(cb.d(q)) : Matrix(0, 0);
      out.embed.push_back(hstack(interior_columns(x.base, x.boundary, rank, q), r.transpose() * z));
    } else {
      out.embed.push_back(interior_columns(x.base, x.boundary, rank, q));
    }
  }
  out.complex = restrict_to_span(c, out.embed);
  return out;
}

IntersectionComplex truncated_cone(const SimplicialComplex& link, const FlatSystem& f, int dimension) {
  return intersection_complex(ConedSpace{link, link, dimension}, f);
}

BasedComplex relative_complex(const SimplicialComplex& k, const SimplicialComplex& sub, const FlatSystem& f) {
  BasedComplex c = twisted_complex(k, f);
  std::vector<Matrix> embed;
  for (int q = 0; q <= k.dimension(); ++q) embed.push_back(interior_columns(k, sub, f.rank(), q));
  return restrict_to_span(c, embed);
}

double jq_perp_logdet(const Matrix& j) { return numerics::log_pseudo_det(j, 1e-9, 1.0).log_value; }

MayerVietorisMaps mv_maps(const SimplicialComplex& k, const std::vector<int>& z_vertices, const FlatSystem& f,
                          const std::optional<std::vector<int>>& plus_side) {
  CutResult cut = cut_along(k, z_vertices, plus_side);
  FlatSystem fm0 = f.pullback(cut.cut, cut.to_original);
  BasedComplex cm = twisted_complex(k, f), cm0 = twisted_complex(cut.cut, fm0), cz = twisted_complex(cut.link, f);
  ShortExactSequence s = cut_sequence(cut, cm, cm0, cz, k, f.rank());
  MayerVietorisMaps out;
  out.betti_m = chain::betti_numbers(cm);
  out.betti_cut = chain::betti_numbers(cm0);
  out.betti_link = chain::betti_numbers(cz);
  try {
    chain::InducedLES les =
        chain::induced_les(s, chain::harmonic_basis(cm), chain::harmonic_basis(cm0), chain::harmonic_basis(cz));
    out.incl = les.incl;
    out.restrict_diff = les.proj;
    out.connecting = les.connecting;
    out.exact = true;
    out.exactness_report = "exact";
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Precondition) throw;
    out.exact = false;
    out.exactness_report = e.what();
  }
  return out;
}

CutIdentityReport verify_cut_identities(const SimplicialComplex& k, const FlatSystem& f,
                                        const std::vector<int>& z_vertices, int m, unsigned long long seed,
                                        const std::optional<std::vector<int>>& plus_side) {
  if (m % 2 == 0) fail(ErrorKind::Precondition, "cut identities need an odd dimension (got " + std::to_string(m) + ")");
  if (k.dimension() != m)
    fail(ErrorKind::InvalidArgument, "complex has dimension " + std::to_string(k.dimension()) + ", expected " +
                                         std::to_string(m));
  const int kc = (m - 1) / 2;
  const int rank = f.rank();
  CutIdentityReport rep;
  rep.m = m;
  rep.cutoff = kc;

  CutResult cut = cut_along(k, z_vertices, plus_side);
  FlatSystem fm0 = f.pullback(cut.cut, cut.to_original);
  BasedComplex cm = twisted_complex(k, f);
  BasedComplex cm0 = twisted_complex(cut.cut, fm0);
  BasedComplex cz = twisted_complex(cut.link, f);
  BasedComplex cb = twisted_complex(cut.boundary, fm0);
  IntersectionComplex hat = intersection_complex(ConedSpace{cut.cut, cut.boundary, m}, fm0);
  IntersectionComplex cone_z = truncated_cone(cut.link, f, m);
  IntersectionComplex cone_b = truncated_cone(cut.boundary, fm0, m);

  ShortExactSequence ses1 = cut_sequence(cut, cm, cm0, cz, k, rank);
  rep.compat_cut = chain::compatibility_defect(ses1);

  CohomologyBasis om_m = chain::harmonic_basis(cm), om_m0 = chain::harmonic_basis(cm0),
                  om_z = chain::harmonic_basis(cz), om_hat = chain::harmonic_basis(hat.complex);
  rep.betti_m = chain::betti_numbers(cm);
  rep.betti_cut = chain::betti_numbers(cm0);
  rep.betti_link = chain::betti_numbers(cz);
  rep.betti_hat = chain::betti_numbers(hat.complex);
  rep.betti_cone = chain::betti_numbers(cone_z.complex);
  rep.betti_link.resize(m + 1, 0);
  rep.witt = rep.betti_link[kc] == 0;

  // maps in the orthonormal harmonic bases
  chain::InducedLES les_om = chain::induced_les(ses1, om_m, om_m0, om_z);
  auto frame = [](const BasedComplex& c, const CohomologyBasis& om, int q) {
    return CohomologyFrame(c, q, om[q], om[q]);
  };

  std::vector<Matrix> mu_hat(m + 1), mu_z(m + 1), jmat(m + 1);
  std::vector<std::vector<int>> hat_h(m + 1), z_h(m + 1);  // columns spanning the H_H parts
  std::vector<Matrix> ihat(m + 1), rz(m + 1);
  for (int q = 0; q <= m; ++q) {
    Matrix hat_vecs = hat.embed[q] * om_hat[q];
    const int bz = q < cz.top_degree() + 1 ? static_cast<int>(om_z[q].cols()) : 0;
    Matrix omz = q <= cz.top_degree() ? om_z[q] : Matrix(0, 0);
    if (q <= kc) {
      // j_q on the intersection-cohomology basis
      Matrix j = bz ? frame(cz, om_z, q).coordinates(ses1.proj[q] * hat_vecs) : Matrix(0, hat_vecs.cols());
      jmat[q] = j;
      AdaptedSvd a = adapted_svd(j);
      mu_hat[q] = om_hat[q] * a.dom;
      hat_h[q] = range(a.rank, static_cast<int>(hat_vecs.cols()));  // ker j
      mu_z[q] = bz ? Matrix(omz * a.cod) : Matrix(cz.dim(q), 0);
      z_h[q] = range(a.rank, bz);  // complement of im j
    } else {
      // push-forward of cochains vanishing on the boundary
      Matrix pushed = ses1.incl[q].transpose() * hat_vecs;
      ihat[q] = frame(cm, om_m, q).coordinates(pushed);
      AdaptedSvd a = adapted_svd(ihat[q]);
      mu_hat[q] = om_hat[q] * a.dom;
      hat_h[q] = range(0, a.rank);  // complement of ker
      if (bz) {
        Matrix rzq = cochain_pullback(cut.link, k, identity_map(k), rank, q);
        rz[q] = frame(cz, om_z, q).coordinates(rzq * om_m[q]);
        AdaptedSvd b = adapted_svd(rz[q]);
        mu_z[q] = omz * b.cod;
        z_h[q] = range(0, b.rank);  // image of restriction
      } else {
        mu_z[q] = Matrix(cz.dim(q), 0);
      }
    }
  }
  // coordinates of the prescribed basis of H^q(M) in the harmonic basis of M
  std::vector<Matrix> mu_m(m + 1), mu_m0(m + 1), nu_coords(m + 1);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int q = 0; q <= m; ++q) {
    const int bm = static_cast<int>(om_m[q].cols());
    Matrix cols(bm, 0);
    if (q <= kc) {
      Matrix targets = frame(cm0, om_m0, q).coordinates(hat.embed[q] * columns(mu_hat[q], hat_h[q]));
      Matrix lift = numerics::solve_ls(les_om.incl[q], targets);
      if (targets.size() && (les_om.incl[q] * lift - targets).cwiseAbs().maxCoeff() > 1e-8)
        fail(ErrorKind::Numerical, "cut identities: kernel of j_q does not lift to H^q(M)");
      cols = lift;
      if (q > 0 && !z_h[q - 1].empty()) {
        Matrix u = frame(cz, om_z, q - 1).coordinates(columns(mu_z[q - 1], z_h[q - 1]));
        cols = hstack(cols, les_om.connecting[q - 1] * u);
      }
      mu_m0[q] = hat.embed[q] * mu_hat[q];
    } else {
      Matrix a = ihat[q] * frame(hat.complex, om_hat, q).coordinates(columns(mu_hat[q], hat_h[q]));
      Matrix nu(bm, 0);
      if (!z_h[q].empty()) {
        Matrix u = frame(cz, om_z, q).coordinates(columns(mu_z[q], z_h[q]));
        nu = numerics::solve_ls(rz[q], u);
        if ((rz[q] * nu - u).cwiseAbs().maxCoeff() > 1e-8)
          fail(ErrorKind::Numerical, "cut identities: restriction to Z misses part of H_H(Z)");
      }
      cols = hstack(a, nu);
      // basis of H^q(M0): images of the nu classes, completed at random
      Matrix img = les_om.incl[q] * nu;
      const int b0 = static_cast<int>(om_m0[q].cols());
      Matrix extra(b0, b0 - img.cols());
      for (Eigen::Index i = 0; i < extra.rows(); ++i)
        for (Eigen::Index j = 0; j < extra.cols(); ++j) extra(i, j) = gauss(rng);
      mu_m0[q] = om_m0[q] * hstack(img, extra);
    }
    if (cols.cols() != bm)
      fail(ErrorKind::Numerical, "cut identities: prescribed basis of H^" + std::to_string(q) + "(M) has " +
                                     std::to_string(cols.cols()) + " vectors, expected " + std::to_string(bm));
    mu_m[q] = om_m[q] * cols;
  }

  // bases on the two boundary copies and on the cones
  std::vector<Matrix> mu_b(m + 1), mu_cz(m + 1), mu_cb(m + 1), mu_total(m + 1), mu_hat_r(m + 1);
  for (int q = 0; q <= m; ++q) {
    Matrix pp = cochain_pullback(cut.link, cut.boundary, cut.plus, rank, q);
    Matrix pm = cochain_pullback(cut.link, cut.boundary, cut.minus, rank, q);
    Matrix z = q <= cz.top_degree() ? mu_z[q] : Matrix(0, 0);
    mu_b[q] = hstack(pp.transpose() * z, pm.transpose() * z);
    if (q <= kc) {
      mu_cz[q] = embed_at(cone_z, q).transpose() * z;
      mu_cb[q] = embed_at(cone_b, q).transpose() * mu_b[q];
    } else {
      mu_cz[q] = Matrix(cone_z.complex.dim(q), 0);
      mu_cb[q] = Matrix(cone_b.complex.dim(q), 0);
    }
    Matrix t = Matrix::Zero(cm0.dim(q) + cone_b.complex.dim(q), mu_m0[q].cols() + mu_cb[q].cols());
    t.topLeftCorner(cm0.dim(q), mu_m0[q].cols()) = mu_m0[q];
    t.bottomRightCorner(cone_b.complex.dim(q), mu_cb[q].cols()) = mu_cb[q];
    mu_total[q] = t;
  }
  mu_z.resize(cz.top_degree() + 1);
  mu_b.resize(cb.top_degree() + 1);
  mu_cz.resize(cone_z.complex.top_degree() + 1);
  mu_cb.resize(cone_b.complex.top_degree() + 1);

  // Mayer-Vietoris sequence of the coned space
  ShortExactSequence ses2;
  ses2.sub = hat.complex;
  ses2.total = BasedComplex::direct_sum(cm0, cone_b.complex);
  ses2.quot = cb;
  const std::vector<int> id0 = identity_map(cut.cut);
  for (int q = 0; q <= m; ++q) {
    Matrix rb = cochain_pullback(cut.boundary, cut.cut, id0, rank, q);
    Matrix incl(ses2.total.dim(q), hat.complex.dim(q));
    incl << hat.embed[q], embed_at(cone_b, q).transpose() * rb * hat.embed[q];
    Matrix proj(cb.dim(q), ses2.total.dim(q));
    proj << rb, -embed_at(cone_b, q);
    ses2.incl.push_back(incl);
    ses2.proj.push_back(proj);
  }
  rep.compat_mv = chain::compatibility_defect(ses2);

  CohomologyBasis b_m = as_basis(mu_m), b_m0 = as_basis(mu_m0), b_z = as_basis(mu_z), b_hat = as_basis(mu_hat),
                  b_cz = as_basis(mu_cz), b_cb = as_basis(mu_cb), b_b = as_basis(mu_b), b_total = as_basis(mu_total);
  chain::InducedLES h1 = chain::induced_les(ses1, b_m, b_m0, b_z);
  chain::InducedLES h2 = chain::induced_les(ses2, b_hat, b_total, b_b);

  rep.log_tau_m = chain::log_torsion(cm, b_m).log_torsion;
  rep.log_tau_cut = chain::log_torsion(cm0, b_m0).log_torsion;
  rep.log_tau_link = chain::log_torsion(cz, b_z).log_torsion;
  rep.log_itau_hat = chain::log_torsion(hat.complex, b_hat).log_torsion;
  rep.log_itau_cone = chain::log_torsion(cone_z.complex, b_cz).log_torsion;
  rep.log_tau_h1 = chain::log_torsion(h1.complex, CohomologyBasis{}).log_torsion;
  rep.log_tau_h2 = chain::log_torsion(h2.complex, CohomologyBasis{}).log_torsion;
  const double tau_b = chain::log_torsion(cb, b_b).log_torsion;
  const double tau_cb = chain::log_torsion(cone_b.complex, b_cb).log_torsion;
  rep.milnor_cut_residual = std::abs(rep.log_tau_cut - rep.log_tau_m - rep.log_tau_link - rep.log_tau_h1);
  rep.milnor_mv_residual = std::abs(rep.log_tau_cut + tau_cb - rep.log_itau_hat - tau_b - rep.log_tau_h2);

  rep.rt3_rhs = rep.log_itau_hat + rep.log_tau_link - 2.0 * rep.log_itau_cone + rep.log_tau_h2 - rep.log_tau_h1;
  rep.rt3_residual = std::abs(rep.log_tau_m - rep.rt3_rhs);

  rep.log_jdet.assign(m + 1, 0.0);
  double jsum = 0.0;
  rep.sqrt2_term = 0.0;
  for (int q = 0; q <= m; ++q) {
    const double sign = q % 2 ? -1.0 : 1.0;
    if (q < kc) {
      rep.log_jdet[q] = jq_perp_logdet(jmat[q]);
    } else if (q > kc && q < static_cast<int>(h2.connecting.size()) && rep.betti_link[q] > 0) {
      const int bz = rep.betti_link[q];
      Matrix diag(2 * bz, bz);
      diag << Matrix::Identity(bz, bz), Matrix::Identity(bz, bz);
      rep.log_jdet[q] = jq_perp_logdet(h2.connecting[q] * diag);
    }
    jsum += sign * rep.log_jdet[q];
    if (q > kc) rep.sqrt2_term -= sign * rep.betti_link[q] * 0.5 * std::log(2.0);
  }
  rep.rt10_rhs = rep.log_itau_hat + rep.log_tau_link - 2.0 * rep.log_itau_cone + jsum + rep.sqrt2_term;
  rep.rt10_residual = std::abs(rep.log_tau_m - rep.rt10_rhs);
  rep.rt10_residual_without_sqrt2 = std::abs(rep.log_tau_m - rep.rt10_rhs + rep.sqrt2_term);
  return rep;
}

}  // namespace cusp::simplicial
