#include "cusp/model_formulas.hpp"

#include "cusp/errors.hpp"
#include "cusp/numerics.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace cusp::model {

namespace {

double sign_of(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }
double parity(int q) { return (q % 2 == 0) ? 1.0 : -1.0; }

int at_or_zero(const std::vector<int>& v, int q) {
  return (q >= 0 && q < static_cast<int>(v.size())) ? v[q] : 0;
}

double log_at_or_zero(const std::vector<double>& v, int q) {
  if (q < 0 || q >= static_cast<int>(v.size())) return 0.0;
  if (!(v[q] > 0)) fail(ErrorKind::Precondition, "jdet must be positive in degree " + std::to_string(q));
  return std::log(v[q]);
}

// c_{|v/2 - q|}, the argument being a half-integer or integer
double c_offset(int v, int q) { return c_const(std::abs(0.5 * v - q)); }

bool is_middle(int v, int q) { return v % 2 == 0 && q == v / 2; }

void require_witt(int v, const std::vector<int>& b, const char* name) {
  if (v % 2 == 0 && at_or_zero(b, v / 2) != 0)
    fail(ErrorKind::Precondition, std::string("Witt condition fails: ") + name + " is nonzero in the middle degree " +
                                      std::to_string(v / 2));
}

void require_nonnegative(const std::vector<int>& b, const char* name) {
  for (size_t q = 0; q < b.size(); ++q)
    if (b[q] < 0) fail(ErrorKind::InvalidArgument, std::string(name) + " is negative in degree " + std::to_string(q));
}

void require_odd(int m, const char* who) {
  if (m < 1 || m % 2 == 0) fail(ErrorKind::Precondition, std::string(who) + ": dimension must be odd");
}

}  // namespace

// ---------------------------------------------------------------------------

int BettiProfile::betti(int q) const { return at_or_zero(b, q); }
int BettiProfile::betti_plus(int q) const { return at_or_zero(bplus, q); }
int BettiProfile::betti_harmonic(int q) const { return at_or_zero(bH, q); }
double BettiProfile::log_jdet(int q) const { return log_at_or_zero(jdet, q); }

int BettiProfile::euler_characteristic() const {
  int chi = 0;
  for (size_t q = 0; q < b.size(); ++q) chi += static_cast<int>(parity(static_cast<int>(q))) * b[q];
  return chi;
}

void BettiProfile::validate() const {
  if (m < 1) fail(ErrorKind::InvalidArgument, "profile: m must be at least 1");
  const size_t n = static_cast<size_t>(m);  // q = 0..v
  if (b.size() != n) fail(ErrorKind::InvalidArgument, "profile: b needs " + std::to_string(n) + " entries");
  if (!bplus.empty() && bplus.size() != n)
    fail(ErrorKind::InvalidArgument, "profile: bplus needs " + std::to_string(n) + " entries");
  if (!bH.empty() && bH.size() != n)
    fail(ErrorKind::InvalidArgument, "profile: bH needs " + std::to_string(n) + " entries");
  if (jdet.size() > n + 1) fail(ErrorKind::InvalidArgument, "profile: jdet has more than m + 1 entries");
  require_nonnegative(b, "b");
  require_nonnegative(bplus, "bplus");
  require_nonnegative(bH, "bH");
  for (int q = 0; q < m; ++q)
    if ((!bplus.empty() || !bH.empty()) && betti_plus(q) + betti_harmonic(q) != betti(q))
      fail(ErrorKind::InvalidArgument, "profile: b != bplus + bH in degree " + std::to_string(q));
  for (size_t q = 0; q < jdet.size(); ++q) log_at_or_zero(jdet, static_cast<int>(q));
  if (jdet.size() == n + 1 && jdet[n] != 1.0)
    fail(ErrorKind::InvalidArgument, "profile: j_m maps into H^m(Z) = 0, so jdet[m] must be 1");
  require_witt(v(), b, "b");
}

// ---------------------------------------------------------------------------

double c_const(double q) {
  if (!(q > 0)) fail(ErrorKind::InvalidArgument, "c_const: argument must be positive");
  return numerics::beta(q, 0.5);
}

double logdet_model(double a) {
  if (a == 0.0) return 0.0;
  return std::log(c_const(std::abs(a))) - sign_of(a) * std::log(2.0 * std::abs(a));
}

double at_db(int v, const std::vector<int>& b) {
  if (v < 0) fail(ErrorKind::InvalidArgument, "at_db: v must be nonnegative");
  require_nonnegative(b, "b");
  require_witt(v, b, "b");
  double s = 0.0;
  for (int q = 0; q <= v; ++q) {
    if (is_middle(v, q) || at_or_zero(b, q) == 0) continue;
    s += parity(q) * at_or_zero(b, q) *
         (std::log(c_offset(v, q)) + (2 * q + 1) * sign_of(2 * q - v) * std::log(std::abs(v - 2 * q)));
  }
  return 0.5 * s;
}

double at_db_orth(int v, const std::vector<int>& b) {
  if (v < 0) fail(ErrorKind::InvalidArgument, "at_db_orth: v must be nonnegative");
  require_witt(v, b, "b");
  double s = 0.0;
  for (int q = 0; 2 * q < v; ++q) {
    const double l = std::log(v - 2 * q);
    if (v % 2 == 0)
      s += parity(q) * at_or_zero(b, q) * (std::log(c_offset(v, q)) + (v - 2 * q) * l);
    else
      s += parity(q) * at_or_zero(b, q) * (-(v + 1) * l);
  }
  return s;
}

double at_small(int m, const std::vector<int>& bplus, const std::vector<double>& jdet) {
  const int v = m - 1;
  require_witt(v, bplus, "bplus");
  double s = 0.0;
  for (int q = 0; q <= m; ++q) {
    if (is_middle(v, q)) continue;
    double term = 2.0 * log_at_or_zero(jdet, q);
    if (at_or_zero(bplus, q) != 0) term -= at_or_zero(bplus, q) * std::log(c_offset(v, q));
    s += parity(q) * term;
  }
  return 0.5 * s;
}

double at_small_orth(int m, const std::vector<int>& bplus, const std::vector<double>& jdet) {
  const int v = m - 1;
  require_witt(v, bplus, "bplus");
  if (v % 2 != 0) return 0.0;
  double s = 0.0;
  for (int q = 0; 2 * q < v; ++q)
    s += parity(q) * (-at_or_zero(bplus, q) * std::log(c_offset(v, q)) + 2.0 * log_at_or_zero(jdet, q));
  return s;
}

double harmonic_correction(int m, const std::vector<int>& bH) {
  const int v = m - 1;
  require_witt(v, bH, "bH");
  double s = 0.0;
  for (int q = 0; q <= m; ++q) {
    if (is_middle(v, q) || at_or_zero(bH, q) == 0) continue;
    s += parity(q) * at_or_zero(bH, q) * std::log(c_offset(v, q));
  }
  return -0.5 * s;
}

double harmonic_correction_orth(int m, const std::vector<int>& bH) {
  const int v = m - 1;
  require_witt(v, bH, "bH");
  double s = 0.0;
  for (int q = 0; 2 * q < v; ++q) s += parity(q) * at_or_zero(bH, q) * std::log(c_offset(v, q));
  return -s;
}

double at_assembly(const BettiProfile& p) {
  require_odd(p.m, "at_assembly");
  p.validate();
  const int v = p.v();
  double s = 0.0;
  for (int q = 0; q <= v; ++q) {
    if (is_middle(v, q)) continue;
    s += parity(q) *
         (2.0 * p.log_jdet(q) + p.betti(q) * (2 * q + 1) * sign_of(2 * q - v) * std::log(std::abs(v - 2 * q)));
  }
  return 0.5 * s;
}

double at_assembly_orth(const BettiProfile& p) {
  require_odd(p.m, "at_assembly_orth");
  p.validate();
  const int v = p.v();
  double s = 0.0;
  for (int q = 0; q <= v / 2 - 1; ++q)
    s += parity(q) * (2.0 * p.log_jdet(q) + p.betti(q) * (v - 2 * q) * std::log(v - 2 * q));
  return s;
}

namespace {
CmDefect defect_sums(int m, const std::vector<int>& b, double weight) {
  require_odd(m, "cm_defect");
  require_nonnegative(b, "b");
  require_witt(m - 1, b, "b");
  CmDefect d;
  for (int q = 0; q <= m - 1; ++q) {
    const int bq = at_or_zero(b, q);
    if (bq == 0) continue;
    if (2 * q > m - 1) d.log2_term -= parity(q) * bq * weight * std::log(2.0);
    if (2 * q == m - 1) continue;
    const int k = std::abs(m - 1 - 2 * q);
    d.dimension_term -= parity(q) * bq * weight * k * std::log(k);
  }
  d.total = d.log2_term + d.dimension_term;
  return d;
}
}  // namespace

CmDefectPair cm_defect(int m, const std::vector<int>& b) {
  CmDefectPair out;
  out.general = defect_sums(m, b, 0.25);
  int chi = 0;
  for (int q = 0; q <= m - 1; ++q) chi += static_cast<int>(parity(q)) * at_or_zero(b, q);
  out.euclidean.log2_term = -chi / 8.0 * std::log(2.0);
  for (int q = 0; q <= (m - 1) / 2 - 1; ++q) {
    const int k = m - 1 - 2 * q;
    out.euclidean.dimension_term -= 0.5 * parity(q) * at_or_zero(b, q) * k * std::log(k);
  }
  out.euclidean.total = out.euclidean.log2_term + out.euclidean.dimension_term;
  return out;
}

CmDefect cm_defect_cut(int m, const std::vector<int>& b) { return defect_sums(m, b, 0.5); }

double even_cusp_at(int m, const std::vector<int>& b) {
  if (m < 2 || m % 2 != 0) fail(ErrorKind::Precondition, "even_cusp_at: dimension must be even");
  require_nonnegative(b, "b");
  double s = 0.0;
  for (int q = 0; 2 * q < m - 1; ++q) s += parity(q) * at_or_zero(b, q) * std::log(m - 1 - 2 * q);
  return 0.5 * m * s;
}

double strint_rhs(double a, double t) {
  if (!(t > 0)) fail(ErrorKind::InvalidArgument, "strint_rhs: t must be positive");
  return numerics::erf(a * std::sqrt(t));
}

double strint_quadrature(double a, double t) {
  if (!(t > 0)) fail(ErrorKind::InvalidArgument, "strint_quadrature: t must be positive");
  if (a == 0.0) return 0.0;
  const double k = std::sqrt(t / std::numbers::pi);
  double mag = 2.0 * numerics::adaptive_quad([&](double s) { return k * std::exp(-t * s * s); }, 0.0,
                                             std::abs(a), 1e-14);
  return a > 0 ? mag : -mag;
}

double rtr_closed(TraceKind kind, double t) {
  if (!(t > 0)) fail(ErrorKind::InvalidArgument, "rtr_closed: t must be positive");
  const double base = std::log(2.0) / std::sqrt(std::numbers::pi * t);
  return kind == TraceKind::P0 ? base : std::exp(-t) * base;
}

TraceKind trace_kind_from_string(const std::string& s) {
  if (s == "P0") return TraceKind::P0;
  if (s == "P1m1") return TraceKind::P1m1;
  fail(ErrorKind::InvalidArgument, "unknown trace kind '" + s + "' (expected P0 or P1m1)");
}

double wolpert_c1(bool reference) {
  const double z = reference ? numerics::zeta_minus_half_reference() : numerics::zeta_minus_half();
  return -numerics::gamma_fn(-0.5) * z / (16.0 * std::numbers::pi);
}

double burger_coeff(double v1, double v2) {
  if (!(v1 > 0) || !(v2 > 0)) fail(ErrorKind::InvalidArgument, "burger_coeff: volumes must be positive");
  return (v1 + v2) / (std::numbers::pi * v1 * v2);
}

SmallEigenRate small_eig_rate(int m, int q, double jnorm_sq) {
  if (q < 0 || 2 * q >= m - 1)
    fail(ErrorKind::Precondition, "small_eig_rate: need 0 <= q < (m-1)/2, got q = " + std::to_string(q));
  if (jnorm_sq < 0) fail(ErrorKind::InvalidArgument, "small_eig_rate: squared norm must be nonnegative");
  return {jnorm_sq / c_const(0.5 * (m - 1) - q), m - 1 - 2 * q};
}

LogProductAsymptotic small_eig_log_product(const BettiProfile& p, int q) {
  const int m = p.m;
  if (q < 0 || q > m) fail(ErrorKind::InvalidArgument, "small_eig_log_product: degree out of range");
  const double half_v = 0.5 * p.v();
  LogProductAsymptotic out;
  auto add = [&](int r, int eps_power, double c_arg) {
    const int n = p.betti_plus(r);
    if (r < 0) return;
    if (n > 0) out.log_coefficient -= n * std::log(c_const(c_arg));
    out.log_coefficient += 2.0 * p.log_jdet(r);
    out.exponent += n * eps_power;
  };
  if (2 * q <= m - 1) {
    add(q, m - 1 - 2 * q, half_v - q);
    add(q - 1, m + 1 - 2 * q, half_v - (q - 1));
  } else if (2 * q == m) {
    add(m / 2 - 1, 1, 0.5);
    out.log_coefficient += 2.0 * p.log_jdet(m / 2);
    if (p.betti_plus(m / 2 + 1) > 0) out.log_coefficient -= p.betti_plus(m / 2 + 1) * std::log(c_const(0.5));
    out.exponent += p.betti_plus(m / 2 + 1);
  } else {
    add(q - 1, 2 * (q - 1) - p.v(), (q - 1) - half_v);
    add(q, 2 * q - p.v(), q - half_v);
  }
  return out;
}

double rt10_correction(const BettiProfile& p) {
  require_odd(p.m, "rt10_correction");
  p.validate();
  double s = 0.0;
  for (int q = 0; q <= p.m; ++q) s += parity(q) * p.log_jdet(q);
  for (int q = 0; q <= p.v(); ++q)
    if (2 * q > p.m - 1) s -= parity(q) * p.betti(q) * 0.5 * std::log(2.0);
  return s;
}

double rt10a_correction(const BettiProfile& p) {
  require_odd(p.m, "rt10a_correction");
  p.validate();
  double s = 0.0;
  for (int q = 0; 2 * q < p.m - 1; ++q) s += 2.0 * parity(q) * p.log_jdet(q);
  return s - p.euler_characteristic() / 4.0 * std::log(2.0);
}

BettiProfile random_profile(unsigned long long seed, int m, bool mirrored) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(0, 3);
  std::uniform_real_distribution<double> det(0.2, 3.0);
  BettiProfile p;
  p.m = m;
  const int v = m - 1;
  p.b.assign(v + 1, 0);
  p.bplus.assign(v + 1, 0);
  p.bH.assign(v + 1, 0);
  p.jdet.assign(m + 1, 1.0);
  for (int q = 0; q <= v; ++q) {
    if (mirrored && q > v - q) {
      p.bplus[q] = p.bplus[v - q];
      p.bH[q] = p.bH[v - q];
    } else if (!is_middle(v, q)) {
      p.bplus[q] = dim(rng);
      p.bH[q] = dim(rng);
    }
    p.b[q] = p.bplus[q] + p.bH[q];
  }
  for (int q = 0; q < m; ++q) {
    if (is_middle(v, q)) continue;
    if (mirrored && q > m - 1 - q)
      p.jdet[q] = p.jdet[m - 1 - q];
    else
      p.jdet[q] = det(rng);
  }
  return p;
}

}  // namespace cusp::model
