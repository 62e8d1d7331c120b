#pragma once
#include <Eigen/Dense>

#include <functional>

namespace cusp::numerics {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Default relative cutoff below which a singular value counts as zero.
inline constexpr double kRankTol = 1e-10;

struct SpectralDecomposition {
  Vector eigenvalues;  // ascending
  Matrix eigenvectors; // orthonormal columns
};

// Dense symmetric eigensolvers. eig_sym tries Householder/implicit QR first
// and falls back to cyclic Jacobi when that fails its residual check.
SpectralDecomposition eig_sym(const Matrix& a);
SpectralDecomposition eig_sym_jacobi(const Matrix& a);
Vector eigvals_sym(const Matrix& a);

double log_abs_det(const Matrix& a);

struct PseudoDet {
  double log_value = 0.0;
  int rank = 0;
};
// Sum of log singular values above rank_tol * max(sigma_max, scale); the zero map gives (0, 0).
PseudoDet log_pseudo_det(const Matrix& a, double rank_tol = kRankTol, double scale = 0.0);

Vector singular_values(const Matrix& a);
int numerical_rank(const Matrix& a, double rank_tol = kRankTol, double scale = 0.0);
// Orthonormal basis of ker(a) / of the column space of a.
Matrix null_space(const Matrix& a, double rank_tol = kRankTol);
Matrix range_basis(const Matrix& a, double rank_tol = kRankTol);
// Orthonormal basis of the orthogonal complement of span(b) inside span(basis);
// basis must have orthonormal columns.
Matrix complement_in(const Matrix& basis, const Matrix& b, double rank_tol = kRankTol);
// Least-squares solution of a x = b (minimum norm).
Matrix solve_ls(const Matrix& a, const Matrix& b);
double symmetry_defect(const Matrix& a);

// Symmetric tridiagonal eigenvalues (diagonal d, off-diagonal e), ascending.
Vector tridiag_eigenvalues(const Vector& d, const Vector& e);
Vector tridiag_eigenvalues_below(const Vector& d, const Vector& e, double upper);
Vector tridiag_lowest(const Vector& d, const Vector& e, int count);

// Special functions.
double log_gamma(double x);  // log|Gamma(x)|
double gamma_fn(double x);
double beta(double a, double b);
double erf(double x);
double erfc(double x);
double expint_e1(double x);
// zeta(-1/2) by the functional equation and an accelerated eta series at 3/2.
double zeta_minus_half();
// Second route: direct evaluation by an independent library implementation.
double zeta_minus_half_reference();
double zeta(double s);
// zeta'(-1) = 1/12 - log(Glaisher-Kinkelin constant).
double zeta_prime_minus_one();
inline constexpr double kEulerGamma = 0.57721566490153286061;

// Integral of f over [lo, hi]; either end may be infinite. Throws Numerical if the
// error estimate stays above tol * max(1, integral of |f|).
double adaptive_quad(const std::function<double(double)>& f, double lo, double hi, double tol);
// Finite interval with integrable endpoint singularities (double-exponential rule); f must be
// smooth and noise-free inside.
double endpoint_singular_quad(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace cusp::numerics
