#include "cusp/errors.hpp"
#include "cusp/numerics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace cusp;
using namespace cusp::numerics;

namespace {
Matrix random_matrix(int r, int c, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = n(rng);
  return m;
}
}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("tridiagonal eigenvalues agree with a dense solver") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int n : {1, 2, 7, 60}) {
      Vector d(n), e(std::max(n - 1, 0));
      for (int i = 0; i < n; ++i) d[i] = u(rng);
      for (int i = 0; i + 1 < n; ++i) e[i] = u(rng);
      Matrix t = Matrix::Zero(n, n);
      t.diagonal() = d;
      for (int i = 0; i + 1 < n; ++i) t(i, i + 1) = t(i + 1, i) = e[i];
      const Vector ref = Eigen::SelfAdjointEigenSolver<Matrix>(t).eigenvalues();
      const Vector got = tridiag_eigenvalues(d, e);
      CHECK((got - ref).cwiseAbs().maxCoeff() < 1e-12);
      const Vector low = tridiag_lowest(d, e, std::min(n, 3));
      CHECK((low - ref.head(low.size())).cwiseAbs().maxCoeff() < 1e-12);
      const Vector below = tridiag_eigenvalues_below(d, e, 0.0);
      int expected = 0;
      for (double x : ref) expected += x < 0.0;
      CHECK(below.size() == expected);
    }
  }

  TEST_CASE("symmetric eigensolvers reconstruct the matrix") {
    std::mt19937_64 rng(3);
    Matrix a = random_matrix(9, 9, rng);
    a = (a + a.transpose()).eval();
    for (const auto& sd : {eig_sym(a), eig_sym_jacobi(a)}) {
      const Matrix back = sd.eigenvectors * sd.eigenvalues.asDiagonal() * sd.eigenvectors.transpose();
      CHECK((back - a).cwiseAbs().maxCoeff() < 1e-10);
      for (int i = 0; i + 1 < sd.eigenvalues.size(); ++i) CHECK(sd.eigenvalues[i] <= sd.eigenvalues[i + 1]);
    }
  }

  TEST_CASE("pseudo-determinant, rank and null space") {
    std::mt19937_64 rng(5);
    const Matrix a = random_matrix(6, 3, rng) * random_matrix(3, 5, rng);  // rank 3
    CHECK(numerical_rank(a) == 3);
    const Matrix n = null_space(a);
    CHECK(n.cols() == 2);
    CHECK((a * n).norm() < 1e-10);
    CHECK((n.transpose() * n - Matrix::Identity(2, 2)).norm() < 1e-12);
    const Vector s = singular_values(a);
    double expected = 0;
    for (int i = 0; i < 3; ++i) expected += std::log(s[i]);
    const PseudoDet pd = log_pseudo_det(a);
    CHECK(pd.rank == 3);
    CHECK(pd.log_value == doctest::Approx(expected).epsilon(1e-12));
    CHECK(log_pseudo_det(Matrix::Zero(3, 2)).rank == 0);
    const Matrix r = range_basis(a);
    CHECK(r.cols() == 3);
    CHECK((r * r.transpose() * a - a).norm() < 1e-10);
  }

  TEST_CASE("complement and least squares") {
    std::mt19937_64 rng(9);
    const Matrix basis = Eigen::HouseholderQR<Matrix>(random_matrix(6, 4, rng)).householderQ() * Matrix::Identity(6, 4);
    const Matrix b = basis.leftCols(2) * random_matrix(2, 2, rng);
    const Matrix c = complement_in(basis, b);
    CHECK(c.cols() == 2);
    CHECK((c.transpose() * b).norm() < 1e-10);
    const Matrix a = random_matrix(7, 3, rng), rhs = random_matrix(7, 2, rng);
    const Matrix x = solve_ls(a, rhs);
    CHECK((a.transpose() * (a * x - rhs)).norm() < 1e-10);
    CHECK(log_abs_det(Matrix::Identity(4, 4) * 2.0) == doctest::Approx(4 * std::log(2.0)));
  }

  TEST_CASE("special function values") {
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(gamma_fn(-0.5) == doctest::Approx(-2 * std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(beta(1, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(log_gamma(10) == doctest::Approx(std::log(362880.0)).epsilon(1e-14));
    CHECK(numerics::erf(1.0) + numerics::erfc(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(expint_e1(1.0) == doctest::Approx(0.21938393439552027368).epsilon(1e-14));
    CHECK(zeta(2.0) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-14));
    CHECK(zeta_minus_half() == doctest::Approx(-0.20788622497735456602).epsilon(1e-13));
    CHECK(zeta_minus_half_reference() == doctest::Approx(zeta_minus_half()).epsilon(1e-13));
    CHECK(zeta_prime_minus_one() == doctest::Approx(-0.16542114370045092921).epsilon(1e-13));
  }

  TEST_CASE("quadrature") {
    CHECK(adaptive_quad([](double x) { return x * x; }, 0, 1, 1e-12) == doctest::Approx(1.0 / 3).epsilon(1e-13));
    CHECK(adaptive_quad([](double x) { return std::exp(-x); }, 0, INFINITY, 1e-12) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(adaptive_quad([](double x) { return std::exp(-x * x); }, -INFINITY, INFINITY, 1e-12) ==
          doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
    // 1/sqrt(x) has an endpoint singularity
    CHECK(endpoint_singular_quad([](double x) { return 1 / std::sqrt(x); }, 0, 1, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-10));
  }
}
