#include "cusp/surface.hpp"

#include "cusp/errors.hpp"
#include "cusp/model_formulas.hpp"
#include "cusp/parallel.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cusp::sim {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// C-infinity step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x) {
  if (x <= 0) return 0.0;
  if (x >= 1) return 1.0;
  const double g0 = std::exp(-1.0 / x), g1 = std::exp(-1.0 / (1.0 - x));
  return g0 / (g0 + g1);
}

// Offset that makes the round profile equal 1 (the eps -> 0 neck radius at x = 1) at the seam.
double sphere_offset(double radius, double period) { return radius * std::asin(period / (2.0 * kPi * radius)); }

// Neck continued past its end, sigma >= 0 from the seam: eps cosh(S + sigma) with eps sinh S = 1.
double neck_continuation(double eps, double sigma) {
  return std::sqrt(1.0 + eps * eps) * std::cosh(sigma) + std::sinh(sigma);
}

double cap_profile(double eps, double radius, double collar, double period, double sigma) {
  const double round = (2.0 * kPi / period) * radius * std::sin((sigma + sphere_offset(radius, period)) / radius);
  const double phi = smooth_step(sigma / collar);
  if (phi == 0.0) return neck_continuation(eps, sigma);
  if (phi == 1.0) return round;
  return (1.0 - phi) * neck_continuation(eps, sigma) + phi * round;
}

// Second derivative of cap_profile in sigma, exact.
double cap_profile_dd(double eps, double radius, double collar, double period, double sigma) {
  const double c = std::sqrt(1.0 + eps * eps);
  const double n0 = c * std::cosh(sigma) + std::sinh(sigma), n1 = c * std::sinh(sigma) + std::cosh(sigma);
  const double arg = (sigma + sphere_offset(radius, period)) / radius;
  const double amp = (2.0 * kPi / period) * radius;
  const double p0 = amp * std::sin(arg), p1 = amp * std::cos(arg) / radius, p2 = -p0 / (radius * radius);
  const double x = sigma / collar;
  if (x <= 0) return n0;  // n'' = n
  if (x >= 1) return p2;
  // phi = logistic(z), z = 1/(1-x) - 1/x
  const double z = 1.0 / (1.0 - x) - 1.0 / x;
  const double z1 = 1.0 / ((1.0 - x) * (1.0 - x)) + 1.0 / (x * x);
  const double z2 = 2.0 / std::pow(1.0 - x, 3) - 2.0 / (x * x * x);
  const double L = 1.0 / (1.0 + std::exp(-z));
  const double phi = L;
  const double phi1 = L * (1.0 - L) * z1 / collar;
  const double phi2 = (L * (1.0 - L) * (1.0 - 2.0 * L) * z1 * z1 + L * (1.0 - L) * z2) / (collar * collar);
  return (1.0 - phi) * n0 + phi * p2 + 2.0 * phi1 * (p1 - n1) + phi2 * (p0 - n0);
}

double cap_length(double radius, double period) { return kPi * radius - sphere_offset(radius, period); }
double bulb_half_length(double radius, double period) { return 0.5 * kPi * radius - sphere_offset(radius, period); }

double quad(const std::function<double(double)>& f, double lo, double hi) {
  return numerics::adaptive_quad(f, lo, hi, 1e-12);
}

// Integral of the cap profile over [0, end], split where the blend switches on and off.
double cap_integral(const std::function<double(double)>& g, double collar, double end) {
  return quad(g, 0.0, collar) + quad(g, collar, end);
}

}  // namespace

void NeckSurface::validate() const {
  if (!(theta_period > 0)) fail(ErrorKind::InvalidArgument, "surface: theta period must be positive");
  if (topology == SurfaceTopology::Sphere) {
    if (!(cap_left > 0)) fail(ErrorKind::InvalidArgument, "surface: sphere radius must be positive");
    return;
  }
  if (!(eps >= 1e-4 && eps <= 1.0)) fail(ErrorKind::InvalidArgument, "surface: eps must lie in [1e-4, 1], got " + num(eps));
  if (!(collar > 0)) fail(ErrorKind::InvalidArgument, "surface: collar width must be positive");
  std::vector<double> radii{cap_left};
  if (topology == SurfaceTopology::Dumbbell) radii.push_back(cap_right);
  for (double r : radii) {
    if (!(2.0 * kPi * r > theta_period))
      fail(ErrorKind::InvalidArgument, "surface: cap radius " + num(r) + " too small to meet the neck");
    const double room = topology == SurfaceTopology::Handle ? bulb_half_length(r, theta_period) : cap_length(r, theta_period);
    if (!(collar < room))
      fail(ErrorKind::InvalidArgument, "surface: collar " + num(collar) + " does not fit in cap of radius " + num(r));
    for (int i = 0; i <= 400; ++i) {
      const double sigma = room * i / 400.0;
      if (i < 400 && !(cap_profile(eps, r, collar, theta_period, sigma) > 0))
        fail(ErrorKind::InvalidArgument, "surface: blended profile is not positive");
    }
  }
}

double NeckSurface::neck_half_length() const {
  return topology == SurfaceTopology::Sphere ? 0.0 : std::asinh(1.0 / eps);
}

double NeckSurface::s_begin() const {
  switch (topology) {
    case SurfaceTopology::Dumbbell: return -neck_half_length() - cap_length(cap_left, theta_period);
    default: return 0.0;
  }
}

double NeckSurface::s_end() const {
  switch (topology) {
    case SurfaceTopology::Dumbbell: return neck_half_length() + cap_length(cap_right, theta_period);
    case SurfaceTopology::Handle: return neck_half_length() + bulb_half_length(cap_left, theta_period);
    case SurfaceTopology::Sphere: return kPi * cap_left;
  }
  return 0.0;
}

double NeckSurface::radius(double s) const {
  if (topology == SurfaceTopology::Sphere) return (2.0 * kPi / theta_period) * cap_left * std::sin(s / cap_left);
  const double S = neck_half_length();
  if (std::abs(s) <= S) return eps * std::cosh(s);
  if (s > S) {
    const double r = topology == SurfaceTopology::Dumbbell ? cap_right : cap_left;
    return cap_profile(eps, r, collar, theta_period, s - S);
  }
  return cap_profile(eps, cap_left, collar, theta_period, -s - S);
}

double NeckSurface::radius_second_derivative(double s) const {
  if (topology == SurfaceTopology::Sphere) return -radius(s) / (cap_left * cap_left);
  const double S = neck_half_length();
  if (std::abs(s) <= S) return eps * std::cosh(s);
  if (s > S) {
    const double r = topology == SurfaceTopology::Dumbbell ? cap_right : cap_left;
    return cap_profile_dd(eps, r, collar, theta_period, s - S);
  }
  return cap_profile_dd(eps, cap_left, collar, theta_period, -s - S);
}

double NeckSurface::area() const {
  const double P = theta_period;
  if (topology == SurfaceTopology::Sphere) return 4.0 * kPi * cap_left * cap_left;
  auto cap_area = [&](double r, double end) {
    return P * cap_integral([&](double sg) { return cap_profile(eps, r, collar, P, sg); }, collar, end);
  };
  if (topology == SurfaceTopology::Handle)
    return 2.0 * (P + cap_area(cap_left, bulb_half_length(cap_left, P)));
  // the neck x in [-1, 1] has area element dx dtheta
  return 2.0 * P + cap_area(cap_left, cap_length(cap_left, P)) + cap_area(cap_right, cap_length(cap_right, P));
}

int NeckSurface::euler_characteristic() const { return topology == SurfaceTopology::Handle ? 0 : 2; }

std::pair<double, double> NeckSurface::limit_piece_areas() const {
  if (topology != SurfaceTopology::Dumbbell)
    fail(ErrorKind::Precondition, "surface: only a dumbbell separates into two pieces");
  const double P = theta_period;
  auto piece = [&](double r) {
    const double cap = cap_integral([&](double sg) { return cap_profile(0.0, r, collar, P, sg); }, collar, cap_length(r, P));
    return P * (1.0 + cap);
  };
  return {piece(cap_left), piece(cap_right)};
}

double NeckSurface::heat_coefficient_t1() const {
  const double P = theta_period;
  if (topology == SurfaceTopology::Sphere) return 4.0 * kPi / (cap_left * cap_left) / (60.0 * kPi);
  // K = -r''/r; K^2 dA = P r''^2 / r ds. On the neck K = -1.
  const double S = neck_half_length();
  auto density = [&](double s) {
    const double r = radius(s);
    const double rpp = radius_second_derivative(s);
    return r > 0 ? P * rpp * rpp / r : 0.0;
  };
  const double neck_part = 2.0 * P;  // K^2 = 1 over the neck area 2P
  // Past the collar the cap is exactly round: K^2 = 1/R^4.
  auto cap_part = [&](double sign, double radius, double end) {
    // only enters multiplied by t_min, so a loose tolerance is plenty
    const double blend = numerics::adaptive_quad([&](double sg) { return density(sign * (S + sg)); }, 0.0, collar, 1e-8);
    const double round = quad([&](double sg) { return cap_profile(eps, radius, collar, P, sg); }, collar, end);
    return blend + P * round / std::pow(radius, 4);
  };
  double total;
  if (topology == SurfaceTopology::Handle) {
    total = 2.0 * (P + cap_part(1.0, cap_left, bulb_half_length(cap_left, P)));
  } else {
    total = neck_part + cap_part(-1.0, cap_left, cap_length(cap_left, P)) +
            cap_part(1.0, cap_right, cap_length(cap_right, P));
  }
  return total / (60.0 * kPi);
}

NeckSurface builtin_surface(const std::string& name, double eps) {
  NeckSurface s;
  s.eps = eps;
  if (name == "symmetric") {
    s.topology = SurfaceTopology::Dumbbell;
  } else if (name == "asymmetric") {
    s.topology = SurfaceTopology::Dumbbell;
    s.cap_left = 0.8;
    s.cap_right = 1.5;
  } else if (name == "handle") {
    s.topology = SurfaceTopology::Handle;
  } else if (name == "sphere") {
    s.topology = SurfaceTopology::Sphere;
  } else {
    fail(ErrorKind::InvalidArgument, "unknown surface '" + name + "'");
  }
  s.validate();
  return s;
}

std::vector<std::string> builtin_surface_names() { return {"symmetric", "asymmetric", "handle", "sphere"}; }

ModeProblem mode_problem(const NeckSurface& s, int k, double h, bool reflection_odd) {
  if (k < 0) fail(ErrorKind::InvalidArgument, "mode_problem: mode must be nonnegative");
  if (!(h > 0)) fail(ErrorKind::InvalidArgument, "mode_problem: spacing must be positive");
  const double a = s.s_begin(), b = s.s_end();
  const int n = std::max(16, static_cast<int>(std::ceil((b - a) / h)));
  const double hh = (b - a) / n;
  const bool poles = s.topology != SurfaceTopology::Handle;

  std::vector<double> face(n + 1), centre(n);
  for (int j = 0; j <= n; ++j) face[j] = std::max(0.0, s.radius(a + j * hh));
  if (poles) {
    face[0] = 0.0;
    face[n] = 0.0;
  }
  for (int i = 0; i < n; ++i) centre[i] = s.radius(a + (i + 0.5) * hh);
  const double omega = 2.0 * kPi * k / s.theta_period;

  // Flux form: -(r u')' + omega^2 u / r against the mass r ds, then symmetrized by the
  // half-density scaling W^{-1/2} A W^{-1/2}.
  numerics::Vector diag(n), off(n - 1);
  for (int i = 0; i < n; ++i) {
    double left = face[i] / hh, right = face[i + 1] / hh;
    if (!poles) {
      const double end_weight = reflection_odd ? 2.0 : 0.0;  // Dirichlet face at half a cell, or no flux
      if (i == 0) left = end_weight * face[0] / hh;
      if (i == n - 1) right = end_weight * face[n] / hh;
    }
    const double mass = centre[i] * hh;
    diag[i] = (left + right + omega * omega * hh / centre[i]) / mass;
    if (i + 1 < n) off[i] = -(face[i + 1] / hh) / std::sqrt(mass * centre[i + 1] * hh);
  }
  return ModeProblem{std::move(diag), std::move(off), k == 0 ? 1 : 2};
}

std::vector<double> NeckSpectrum::values() const {
  std::vector<double> v;
  v.reserve(entries.size());
  for (const auto& e : entries) v.push_back(e.value);
  return v;
}

namespace {

std::vector<bool> classes_of(const NeckSurface& s) {
  if (s.topology == SurfaceTopology::Handle) return {false, true};
  return {false};
}

void merge_mode(std::vector<SpectrumEntry>& all, const NeckSurface& s, int k, int count, double h) {
  for (bool odd : classes_of(s)) {
    const ModeProblem p = mode_problem(s, k, h, odd);
    const numerics::Vector ev = numerics::tridiag_lowest(p.diag, p.offdiag, count);
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      for (int m = 0; m < p.multiplicity; ++m) all.push_back({ev[i], k, odd});
  }
}

void keep_lowest(std::vector<SpectrumEntry>& all, int count) {
  std::stable_sort(all.begin(), all.end(), [](const SpectrumEntry& x, const SpectrumEntry& y) {
    if (x.value != y.value) return x.value < y.value;
    if (x.mode != y.mode) return x.mode < y.mode;
    return x.odd < y.odd;
  });
  if (static_cast<int>(all.size()) > count) all.resize(count);
}

double lowest_in_mode(const NeckSurface& s, int k, double h) {
  double lo = std::numeric_limits<double>::infinity();
  for (bool odd : classes_of(s)) {
    const ModeProblem p = mode_problem(s, k, h, odd);
    lo = std::min(lo, numerics::tridiag_lowest(p.diag, p.offdiag, 1)[0]);
  }
  return lo;
}

}  // namespace

NeckSpectrum neck_spectrum(const NeckSurface& s, int count, double h, int k_max) {
  s.validate();
  if (count < 1) fail(ErrorKind::InvalidArgument, "neck_spectrum: count must be positive");
  NeckSpectrum out;
  std::vector<SpectrumEntry> all;
  if (k_max < 0) {
    // The lowest eigenvalue of mode k grows with k, so stop at the first mode that cannot enter.
    for (int k = 0;; ++k) {
      if (static_cast<int>(all.size()) >= count && lowest_in_mode(s, k, h) > all.back().value) {
        out.modes_used = k;
        break;
      }
      merge_mode(all, s, k, count, h);
      keep_lowest(all, count);
      if (k > 100000) fail(ErrorKind::Numerical, "neck_spectrum: mode search did not terminate");
    }
  } else {
    for (int k = 0; k <= k_max; ++k) merge_mode(all, s, k, count, h);
    keep_lowest(all, count);
    std::vector<SpectrumEntry> more = all;
    merge_mode(more, s, k_max + 1, count, h);
    keep_lowest(more, count);
    for (std::size_t i = 0; i < std::min(all.size(), more.size()); ++i)
      out.cutoff_movement = std::max(out.cutoff_movement, std::abs(all[i].value - more[i].value));
    if (more.size() != all.size()) out.cutoff_movement = std::numeric_limits<double>::infinity();
    out.modes_used = k_max + 1;
    if (out.cutoff_movement > 1e-8)
      fail(ErrorKind::GuardRail, "neck_spectrum: mode cutoff " + std::to_string(k_max) + " moves the spectrum by " +
                                     num(out.cutoff_movement));
  }
  out.entries = std::move(all);
  return out;
}

GapScan gap_scan(const std::vector<double>& ascending, double min_ratio, double zero_tol) {
  GapScan g;
  std::vector<double> pos;
  for (double v : ascending) {
    if (std::abs(v) <= zero_tol)
      ++g.zeros;
    else if (v > 0)
      pos.push_back(v);
  }
  if (pos.empty()) fail(ErrorKind::Numerical, "gap_scan: no positive eigenvalues");
  double best = 0.0;
  std::size_t at = 0;
  for (std::size_t i = 0; i + 1 < pos.size(); ++i) {
    const double ratio = pos[i + 1] / pos[i];
    if (ratio > best) {
      best = ratio;
      at = i;
    }
  }
  if (best < min_ratio) {
    g.delta = 0.5 * pos[0];
    g.small = 0;
  } else {
    g.delta = std::sqrt(pos[at] * pos[at + 1]);
    g.small = static_cast<int>(at + 1);
  }
  return g;
}

int count_small(const std::vector<double>& ascending, double delta, double zero_tol) {
  int n = 0;
  for (double v : ascending)
    if (v > zero_tol && v < delta) ++n;
  return n;
}

SmallEigenFit small_eig_fit(const NeckSurface& base, const std::vector<double>& eps_list, double h) {
  if (eps_list.size() < 3) fail(ErrorKind::InvalidArgument, "small_eig_fit: need at least three eps values");
  std::vector<double> eps = eps_list;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  if (eps.front() < 10.0 * eps.back() * (1.0 - 1e-12))
    fail(ErrorKind::InvalidArgument, "small_eig_fit: eps list must span at least one decade");

  SmallEigenFit fit;
  fit.eps = eps;
  std::vector<std::vector<double>> spectra(eps.size());
  parallel::for_each_index(eps.size(), [&](std::size_t i) {
    NeckSurface s = base;
    s.eps = eps[i];
    spectra[i] = neck_spectrum(s, 20, h).values();
  });
  fit.delta = gap_scan(spectra.front()).delta;
  for (const auto& sp : spectra) {
    fit.small_counts.push_back(count_small(sp, fit.delta));
    double first = 0.0;
    for (double v : sp)
      if (v > 1e-9) {
        first = v;
        break;
      }
    fit.lambda1.push_back(first);
  }

  // three smallest eps
  const std::size_t n = eps.size();
  double sxx = 0, sxy = 0;
  Eigen::Matrix<double, 3, 2> design;
  Eigen::Vector3d ratio;
  for (std::size_t j = 0; j < 3; ++j) {
    const std::size_t i = n - 1 - j;
    sxx += eps[i] * eps[i];
    sxy += eps[i] * fit.lambda1[i];
    design(j, 0) = 1.0;
    design(j, 1) = eps[i];
    ratio[j] = fit.lambda1[i] / eps[i];
  }
  fit.slope_through_origin = sxy / sxx;
  const Eigen::Vector2d c = design.colPivHouseholderQr().solve(ratio);
  fit.extrapolated = c[0];
  fit.drift = (ratio.maxCoeff() - ratio.minCoeff()) / std::abs(ratio.mean());

  if (base.topology == SurfaceTopology::Dumbbell) {
    auto [v1, v2] = base.limit_piece_areas();
    fit.v1 = v1;
    fit.v2 = v2;
    fit.predicted = model::burger_coeff(v1, v2);
  }
  return fit;
}

namespace {

struct GridSum {
  double e1_sum = 0.0;
  int modes = 0;
  long count = 0;
  int zeros = 0;
};

GridSum e1_sum_on_grid(const NeckSurface& s, double h, double t, double lambda_cut) {
  // Modes are independent; collect per-mode partial sums and reduce in mode order.
  std::vector<GridSum> parts;
  const int batch = std::max(1, parallel::thread_count());
  for (int k0 = 0;; k0 += batch) {
    std::vector<GridSum> chunk(batch);
    std::vector<char> empty(batch, 0);
    parallel::for_each_index(batch, [&](std::size_t j) {
      const int k = k0 + static_cast<int>(j);
      GridSum g;
      bool any = false;
      for (bool odd : classes_of(s)) {
        const ModeProblem p = mode_problem(s, k, h, odd);
        const numerics::Vector ev = numerics::tridiag_eigenvalues_below(p.diag, p.offdiag, lambda_cut);
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
          any = true;
          if (k == 0 && i == 0 && std::abs(ev[i]) < 1e-6) {
            ++g.zeros;
            continue;
          }
          if (ev[i] <= 0) fail(ErrorKind::Numerical, "surface_logdet: nonpositive eigenvalue in mode " + std::to_string(k));
          g.e1_sum += p.multiplicity * numerics::expint_e1(t * ev[i]);
          g.count += p.multiplicity;
        }
      }
      empty[j] = any ? 0 : 1;
      chunk[j] = g;
    });
    bool done = false;
    for (int j = 0; j < batch; ++j) {
      if (empty[j]) {
        done = true;
        break;
      }
      parts.push_back(chunk[j]);
    }
    if (done) break;
  }
  GridSum total;
  total.modes = static_cast<int>(parts.size());
  for (const auto& g : parts) {
    total.e1_sum += g.e1_sum;
    total.count += g.count;
    total.zeros += g.zeros;
  }
  return total;
}

// exp(-x) I_0(x), by the library for moderate x and the asymptotic series beyond.
double scaled_bessel_i0(double x) {
  if (x < 200.0) return std::exp(-x) * boost::math::cyl_bessel_i(0, x);
  const double y = 1.0 / (8.0 * x);
  // 1 + sum ((2k-1)!!)^2 / (k! (8x)^k)
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 8; ++k) {
    term *= (2.0 * k - 1.0) * (2.0 * k - 1.0) * y / k;
    sum += term;
  }
  return sum / std::sqrt(2.0 * kPi * x);
}

// The three-point stencil in s replaces the 1-D heat density 1/sqrt(4 pi t) by
// exp(-x) I_0(x) / h with x = 2t/h^2. This is the integral over [t_min, inf) of the resulting
// excess of the discrete heat trace, divided by t.
double lattice_weyl_excess(double area, double h, double t_min) {
  auto excess = [&](double u) {
    const double t = std::exp(u);
    const double x = 2.0 * t / (h * h);
    return area / std::sqrt(4.0 * kPi * t) * (scaled_bessel_i0(x) / h - 1.0 / std::sqrt(4.0 * kPi * t));
  };
  const double u0 = std::log(t_min);
  return numerics::adaptive_quad(excess, u0, u0 + 8.0, 1e-11) + numerics::adaptive_quad(excess, u0 + 8.0, u0 + 40.0, 1e-11);
}

}  // namespace

SurfaceLogDet surface_logdet(const NeckSurface& s, const SurfaceLogDetOptions& opt) {
  s.validate();
  if (!(opt.h >= 0 && opt.h_per_sqrt_t > 0 && opt.t_min_factor > 0 && opt.t_min_cap > 0 && opt.cutoff > 0))
    fail(ErrorKind::InvalidArgument, "surface_logdet: options must be positive");
  SurfaceLogDet out;
  const double P = s.theta_period;
  const double neck_scale = s.topology == SurfaceTopology::Sphere ? 1.0 : P * s.eps;
  out.t_min = std::min(opt.t_min_cap, opt.t_min_factor * neck_scale * neck_scale);
  out.area = s.area();
  out.euler = s.euler_characteristic();
  const double t = out.t_min;
  out.h = opt.h > 0 ? opt.h : std::min(0.02, opt.h_per_sqrt_t * std::sqrt(t));
  const double lambda_cut = opt.cutoff / t;
  const double a_m1 = out.area / (4.0 * kPi);
  const double a_0 = out.euler / 6.0;
  const double a_1 = s.heat_coefficient_t1();

  auto logdet_on = [&](double h) {
    const GridSum g = e1_sum_on_grid(s, h, t, lambda_cut);
    const double length = s.s_end() - s.s_begin();
    const double spacing = length / std::max(16.0, std::ceil(length / h));  // as in mode_problem
    if (g.zeros != 1)
      fail(ErrorKind::Numerical, "surface_logdet: expected one zero eigenvalue, found " + std::to_string(g.zeros));
    out.modes = std::max(out.modes, g.modes);
    out.eigenvalues = std::max(out.eigenvalues, g.count);
    const double zeta_prime =
        g.e1_sum - lattice_weyl_excess(out.area, spacing, t) - a_m1 / t + (a_0 - 1.0) * (numerics::kEulerGamma + std::log(t)) + a_1 * t;
    return -zeta_prime;
  };
  out.coarse = logdet_on(out.h);
  if (opt.richardson) {
    out.fine = logdet_on(out.h / 2.0);
    out.logdet = (4.0 * out.fine - out.coarse) / 3.0;
  } else {
    out.fine = out.coarse;
    out.logdet = out.coarse;
  }
  return out;
}

LogDetFit fit_logdet_series(const std::vector<double>& eps, const std::vector<double>& logdet, double max_condition) {
  if (eps.size() != logdet.size() || eps.size() < 4)
    fail(ErrorKind::InvalidArgument, "logdet fit: need at least four (eps, logdet) pairs");
  const auto n = static_cast<Eigen::Index>(eps.size());
  Eigen::MatrixXd design(n, 4);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double e = eps[i];
    if (!(e > 0 && e < 1)) fail(ErrorKind::InvalidArgument, "logdet fit: eps must lie in (0, 1)");
    design(i, 0) = 1.0 / e;
    design(i, 1) = std::log(std::log(1.0 / e));
    design(i, 2) = std::log(e);
    design(i, 3) = 1.0;
    rhs[i] = logdet[i];
  }
  // column scaling before the conditioning check
  Eigen::VectorXd scale = design.colwise().norm().transpose();
  Eigen::MatrixXd scaled = design * scale.cwiseInverse().asDiagonal();
  const Eigen::VectorXd sv = numerics::singular_values(scaled);
  LogDetFit f;
  f.eps = eps;
  f.logdet = logdet;
  f.condition = sv.maxCoeff() / sv.minCoeff();
  if (!(f.condition <= max_condition))
    fail(ErrorKind::Numerical, "logdet fit: design condition number " + num(f.condition) + " above " + num(max_condition));
  const Eigen::VectorXd c = scaled.colPivHouseholderQr().solve(rhs).cwiseQuotient(scale);
  f.c_inv_eps = c[0];
  f.c_loglog = c[1];
  f.c_log = c[2];
  f.c_const = c[3];
  // monotone: log det decreases as eps decreases
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < eps.size(); ++i) pts.emplace_back(eps[i], logdet[i]);
  std::sort(pts.begin(), pts.end());
  f.monotone = true;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (!(pts[i].second < pts[i + 1].second)) f.monotone = false;
  return f;
}

LogDetFit logdet_surface_fit(const NeckSurface& base, const std::vector<double>& eps_list, const SurfaceLogDetOptions& opt,
                             double max_condition) {
  if (base.topology == SurfaceTopology::Sphere) fail(ErrorKind::InvalidArgument, "logdet fit: the sphere has no neck");
  std::vector<double> values(eps_list.size());
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    NeckSurface s = base;
    s.eps = eps_list[i];
    values[i] = surface_logdet(s, opt).logdet;
  }
  return fit_logdet_series(eps_list, values, max_condition);
}

double sphere_logdet(double radius) {
  if (!(radius > 0)) fail(ErrorKind::InvalidArgument, "sphere_logdet: radius must be positive");
  return 0.5 - 4.0 * numerics::zeta_prime_minus_one() + (4.0 / 3.0) * std::log(radius);
}

}  // namespace cusp::sim
