#pragma once
#include <string>
#include <vector>

namespace cusp::model {

// Link data for an odd-dimensional cusp degeneration. Indices run over q = 0..v for b, bplus
// and bH, and over q = 0..m for jdet (absolute determinants, 1 for a zero map).
struct BettiProfile {
  int m = 0;
  std::vector<int> b, bplus, bH;
  std::vector<double> jdet;

  int v() const { return m - 1; }
  int betti(int q) const;
  int betti_plus(int q) const;
  int betti_harmonic(int q) const;
  double log_jdet(int q) const;
  int euler_characteristic() const;
  // Shapes, b = bplus + bH, positive jdet, Witt; throws Precondition naming the degree.
  void validate() const;
};

// Beta(q, 1/2) = Gamma(q) Gamma(1/2) / Gamma(q + 1/2).
double c_const(double q);

// log det(-P(-a) P(a)): log c_|a| - sign(a) log(2|a|), and 0 at a = 0.
double logdet_model(double a);

// Contribution of the b-operator on the link cohomology (sum over q != v/2, q <= v).
double at_db(int v, const std::vector<int>& b);
// Poincare-dual form, sum over q < v/2 (orthogonal holonomy).
double at_db_orth(int v, const std::vector<int>& b);

// Small-eigenvalue contribution (sum over q != v/2, q <= m).
double at_small(int m, const std::vector<int>& bplus, const std::vector<double>& jdet);
double at_small_orth(int m, const std::vector<int>& bplus, const std::vector<double>& jdet);

// Finite part of the harmonic-basis change.
double harmonic_correction(int m, const std::vector<int>& bH);
double harmonic_correction_orth(int m, const std::vector<int>& bH);

// The full correction with the c-terms cancelled; m odd.
double at_assembly(const BettiProfile& p);
double at_assembly_orth(const BettiProfile& p);

struct CmDefect {
  double log2_term = 0.0;       // -sum_{q > (m-1)/2} (-1)^q b_q/4 log 2
  double dimension_term = 0.0;  // -sum_{q != (m-1)/2} (-1)^q b_q/4 |m-1-2q| log|m-1-2q|
  double total = 0.0;
};
struct CmDefectPair {
  CmDefect general;
  CmDefect euclidean;  // -chi/8 log 2 and the half-range sum
};
// Defect between analytic and intersection torsion on a cusp manifold; m odd, Witt.
CmDefectPair cm_defect(int m, const std::vector<int>& b);
// The same sums for the cut-open closed manifold, with b_q/2 in place of b_q/4.
CmDefect cm_defect_cut(int m, const std::vector<int>& b);

// Analytic torsion of an even-dimensional cusp manifold with Euclidean Witt coefficients.
double even_cusp_at(int m, const std::vector<int>& b);

// 2 int_0^a sqrt(t/pi) exp(-t s^2) ds = erf(a sqrt(t)).
double strint_rhs(double a, double t);
// Same integral by quadrature.
double strint_quadrature(double a, double t);

enum class TraceKind { P0, P1m1 };
// Renormalized heat traces: log 2 / sqrt(pi t), and e^{-t} times that.
double rtr_closed(TraceKind kind, double t);
TraceKind trace_kind_from_string(const std::string& s);

// -Gamma(-1/2) zeta(-1/2) / (16 pi); `reference` selects the library zeta route.
double wolpert_c1(bool reference = false);

// (V1 + V2) / (pi V1 V2)
double burger_coeff(double v1, double v2);

struct SmallEigenRate {
  double coefficient = 0.0;
  int exponent = 0;
};
// lambda ~ coefficient * eps^exponent for one small eigenvalue in degree q < (m-1)/2.
SmallEigenRate small_eig_rate(int m, int q, double jnorm_sq);

struct LogProductAsymptotic {
  double log_coefficient = 0.0;  // log of the eps-independent factor
  int exponent = 0;              // total power of eps
};
// Product of all positive small eigenvalues in degree q.
LogProductAsymptotic small_eig_log_product(const BettiProfile& p, int q);

// log of the extra factor relating tau(M) to the intersection torsions in the cut identity:
// sum_q (-1)^q log jdet_q - sum_{q > (m-1)/2} (-1)^q b_q/2 log 2.
double rt10_correction(const BettiProfile& p);
// Euclidean form: 2 sum_{q < (m-1)/2} (-1)^q log jdet_q - chi(Z)/4 log 2.
double rt10a_correction(const BettiProfile& p);

// Profile with b_{v-q} = b_q and jdet_{m-1-q} = jdet_q, Witt, drawn from a seeded generator.
BettiProfile random_profile(unsigned long long seed, int m, bool mirrored);

}  // namespace cusp::model
