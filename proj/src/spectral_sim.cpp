#include "cusp/spectral_sim.hpp"

#include "cusp/errors.hpp"
#include "cusp/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cusp::sim {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

void Grid1D::validate(bool acceptance) const {
  if (!(half_width > 0) || !std::isfinite(half_width))
    fail(ErrorKind::InvalidArgument, "grid: half width must be positive, got " + num(half_width));
  if (n < 100) fail(ErrorKind::InvalidArgument, "grid: need at least 100 interior points, got " + std::to_string(n));
  if (acceptance && spacing() > 0.05)
    fail(ErrorKind::GuardRail, "grid: spacing " + num(spacing()) + " exceeds 0.05");
}

double required_half_width(double t) { return 8.0 * std::sqrt(t) + 20.0; }

Grid1D trace_grid(double t, int n) { return Grid1D{required_half_width(t), n}; }

double model_potential(double a, double u) {
  const double s = 1.0 / std::cosh(u);
  return a * a - (a * a + a) * s * s;
}

SchrodingerOp1D discretize(double a, const Grid1D& grid) {
  grid.validate();
  SchrodingerOp1D op;
  op.a = a;
  op.grid = grid;
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  op.diag.resize(grid.n);
  op.offdiag.setConstant(grid.n - 1, -inv_h2);
  for (int i = 0; i < grid.n; ++i) op.diag[i] = 2.0 * inv_h2 + model_potential(a, grid.point(i));
  return op;
}

Vector SchrodingerOp1D::eigenvalues() const { return numerics::tridiag_eigenvalues(diag, offdiag); }

Vector SchrodingerOp1D::lowest(int count) const { return numerics::tridiag_lowest(diag, offdiag, count); }

double paired_exp_difference(const Vector& x, const Vector& y, double t) {
  if (x.size() != y.size()) fail(ErrorKind::Internal, "paired_exp_difference: spectra differ in length");
  // Pairing termwise keeps the cancellation between nearly equal high eigenvalues exact-ish.
  double sum = 0.0, comp = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double term = -std::expm1(-t * (y[i] - x[i])) * std::exp(-t * x[i]);
    // e^{-tx} - e^{-ty} = e^{-tx} (1 - e^{-t(y-x)})
    const double yk = term - comp;
    const double s = sum + yk;
    comp = (s - sum) - yk;
    sum = s;
  }
  return sum;
}

double relative_heat_trace(double a, double t, const Grid1D& grid, bool enforce_truncation) {
  if (!(t > 0)) fail(ErrorKind::InvalidArgument, "relative_heat_trace: t must be positive");
  grid.validate();
  if (enforce_truncation && grid.half_width < required_half_width(t))
    fail(ErrorKind::GuardRail, "relative_heat_trace: half width " + num(grid.half_width) + " below 8 sqrt(t) + 20 = " +
                                   num(required_half_width(t)));
  if (a == 0.0) return 0.0;
  const Vector ep = discretize(a, grid).eigenvalues();
  const Vector em = discretize(-a, grid).eigenvalues();
  return paired_exp_difference(ep, em, t);
}

RelativeLogDet relative_logdet(double a, const Grid1D& grid, const MellinOptions& opt) {
  if (a == 0.0) fail(ErrorKind::InvalidArgument, "relative_logdet: a must be nonzero");
  if (!(opt.small_t > 0 && opt.small_t * opt.fit_span < opt.split))
    fail(ErrorKind::InvalidArgument, "relative_logdet: need 0 < small_t * fit_span < split");
  grid.validate();

  Vector ep, em;
  {
    std::vector<Vector> spectra(2);
    parallel::for_each_index(2, [&](std::size_t k) { spectra[k] = discretize(k == 0 ? a : -a, grid).eigenvalues(); });
    ep = spectra[0];
    em = spectra[1];
  }
  // The bound state of the positive weight stands in for the L^2 kernel.
  const bool positive = a > 0;
  const double lambda0 = positive ? ep[0] : em[0];
  const double sign = positive ? -1.0 : 1.0;  // the kernel term enters f with this sign
  const double f0 = sign;

  auto f = [&](double t) { return paired_exp_difference(ep, em, t) + sign * std::exp(-t * lambda0); };

  RelativeLogDet out;
  out.zero_mode = lambda0;
  out.target = -2.0 * (a > 0 ? 1.0 : -1.0) * std::log(2.0 * std::abs(a));

  // f - f0 ~ c sqrt(t) + d t^{3/2} near 0; least squares on [small_t, fit_span * small_t].
  const int samples = 16;
  Eigen::MatrixXd design(samples, 2);
  Eigen::VectorXd rhs(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = opt.small_t * std::pow(opt.fit_span, static_cast<double>(i) / (samples - 1));
    design(i, 0) = std::sqrt(t);
    design(i, 1) = t * std::sqrt(t);
    rhs[i] = f(t) - f0;
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  out.sqrt_coefficient = coef[0];
  const double ts = opt.small_t;
  const double head = 2.0 * coef[0] * std::sqrt(ts) + (2.0 / 3.0) * coef[1] * ts * std::sqrt(ts);

  const double near = numerics::adaptive_quad([&](double t) { return (f(t) - f0) / t; }, ts, opt.split, opt.tol);

  // The tail decays like exp(-gap t); stop once it is far below the tolerance.
  const double gap = positive ? std::min(ep[1], em[0]) : std::min(ep[0], em[1]);
  const double t_end = std::max(opt.split * 2.0, 40.0 / gap);
  const double far = numerics::adaptive_quad([&](double t) { return f(t) / t; }, opt.split, t_end, opt.tol);

  const double zeta_prime = numerics::kEulerGamma * f0 + head + near + far;
  out.value = -zeta_prime;

  double spectral = 0.0;
  for (Eigen::Index i = 0; i < ep.size(); ++i) {
    const bool skip_p = positive && i == 0;
    const bool skip_m = !positive && i == 0;
    if (!skip_p) spectral += std::log(ep[i]);
    if (!skip_m) spectral -= std::log(em[i]);
  }
  out.spectral_value = spectral;
  if (!std::isfinite(out.value))
    fail(ErrorKind::Numerical, "relative_logdet: Mellin integral is not finite");
  return out;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0 && hi > lo) || count < 2) fail(ErrorKind::InvalidArgument, "log_spaced: need 0 < lo < hi, count >= 2");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  out.back() = hi;
  return out;
}

namespace {

struct VolumeFit {
  double c0, c1, residual;
};

VolumeFit fit_end_volume(double delta_min, double delta_max, int points) {
  const auto deltas = log_spaced(delta_min, delta_max, points);
  Eigen::MatrixXd design(points, 4);
  Eigen::VectorXd rhs(points);
  for (int i = 0; i < points; ++i) {
    const double d = deltas[i];
    // rho = exp(-y) on [d, 1/2] makes the integrand smooth; the square-root end goes to tanh-sinh
    // with the singular point moved to 0, where the nodes resolve it.
    const double lower = numerics::adaptive_quad([](double y) { return 1.0 / std::sqrt(-std::expm1(-2.0 * y)); },
                                                 std::log(2.0), -std::log(d), 1e-14);
    const double upper = numerics::endpoint_singular_quad(
        [](double w) { return 1.0 / ((1.0 - w) * std::sqrt(w * (2.0 - w))); }, 0.0, 0.5, 1e-13);  // rho = 1 - w
    const double value = lower + upper;
    design(i, 0) = 1.0;
    design(i, 1) = std::log(d);
    design(i, 2) = d * d;
    design(i, 3) = d * d * d * d;
    rhs[i] = value;
  }
  const Eigen::Vector4d c = design.colPivHouseholderQr().solve(rhs);
  const double residual = (design * c - rhs).cwiseAbs().maxCoeff();
  return {c[0], c[1], residual};
}

}  // namespace

RenormVolume renorm_volume_check(double delta_max, double delta_min, int points) {
  if (!(delta_min > 0 && delta_max > delta_min && delta_max < 1) || points < 6)
    fail(ErrorKind::InvalidArgument, "renorm_volume_check: need 0 < delta_min < delta_max < 1 and >= 6 points");
  const VolumeFit base = fit_end_volume(delta_min, delta_max, points);
  const VolumeFit half = fit_end_volume(delta_min / 2, delta_max / 2, points);
  RenormVolume out;
  out.per_end_constant = base.c0;
  out.per_end_slope = base.c1;
  out.finite_part = 2.0 * base.c0;
  out.slope = 2.0 * base.c1;
  out.halving_change = std::abs(2.0 * half.c0 - out.finite_part);
  out.fit_residual = std::max(base.residual, half.residual);
  if (out.fit_residual > 1e-8)
    fail(ErrorKind::Numerical, "renorm_volume_check: fit residual " + num(out.fit_residual) + " too large");
  return out;
}

void HeatTraceSeries::validate() const {
  if (t.size() != values.size()) fail(ErrorKind::InvalidArgument, "heat trace series: t and values differ in length");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(values[i]))
      fail(ErrorKind::InvalidArgument, "heat trace series: non-finite entry");
    if (i > 0 && !(t[i] > t[i - 1])) fail(ErrorKind::InvalidArgument, "heat trace series: t not increasing");
  }
  if (provenance != "numeric" && provenance != "closed-form")
    fail(ErrorKind::InvalidArgument, "heat trace series: provenance must be numeric or closed-form");
}

}  // namespace cusp::sim
