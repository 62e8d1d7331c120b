#pragma once
#include "cusp/numerics.hpp"

#include <string>
#include <vector>

namespace cusp::sim {

using numerics::Vector;

// Uniform Dirichlet grid on [-L, L] with n interior points.
struct Grid1D {
  double half_width = 20.0;
  int n = 4000;

  double spacing() const { return 2.0 * half_width / (n + 1); }
  double point(int i) const { return -half_width + (i + 1) * spacing(); }
  // n >= 100, L > 0; `acceptance` additionally requires h <= 0.05.
  void validate(bool acceptance = false) const;
};

// The truncation rule for the relative heat trace at time t: L = 8 sqrt(t) + 20.
double required_half_width(double t);
Grid1D trace_grid(double t, int n = 4000);

// -d^2/du^2 + a^2 - (a^2 + a) sech^2 u with Dirichlet ends, central differences.
struct SchrodingerOp1D {
  double a = 0.0;
  Grid1D grid;
  Vector diag, offdiag;

  Vector eigenvalues() const;  // ascending
  Vector lowest(int count) const;
};

double model_potential(double a, double u);
SchrodingerOp1D discretize(double a, const Grid1D& grid);

// sum_i (exp(-t x_i) - exp(-t y_i)) for two ascending spectra of equal length, paired termwise.
double paired_exp_difference(const Vector& x, const Vector& y, double t);

// tr(exp(-t A(a)) - exp(-t A(-a))) on one grid. Throws GuardRail when the grid is shorter
// than required_half_width(t) and `enforce_truncation` is set.
double relative_heat_trace(double a, double t, const Grid1D& grid, bool enforce_truncation = true);

struct MellinOptions {
  double split = 1.0;        // M_0 on (0, split], M_inf beyond
  double small_t = 0.05;     // below this the integrand is extrapolated by c sqrt(t)
  double fit_span = 4.0;     // the sqrt(t) coefficient is fitted on [small_t, fit_span * small_t]
  double tol = 1e-9;
};

struct RelativeLogDet {
  double value = 0.0;          // Mellin evaluation, log det A(a) - log det A(-a), kernel removed
  double spectral_value = 0.0; // the same difference summed directly over the discrete spectra
  double target = 0.0;         // -2 sign(a) log(2|a|)
  double zero_mode = 0.0;      // discrete eigenvalue standing in for the L^2 kernel
  double sqrt_coefficient = 0.0;
};
RelativeLogDet relative_logdet(double a, const Grid1D& grid, const MellinOptions& opt = {});

struct RenormVolume {
  double finite_part = 0.0;   // both ends: twice the per-end constant
  double slope = 0.0;         // log-delta coefficient, both ends
  double per_end_constant = 0.0;
  double per_end_slope = 0.0;
  double halving_change = 0.0;  // change of finite_part when the delta grid is halved
  double fit_residual = 0.0;    // max abs residual of the fit
};
// Finite part of 2 * int_delta^1 d rho / (rho sqrt(1 - rho^2)) as delta -> 0, by least squares
// on c0 + c1 log delta + c2 delta^2 over a log-spaced delta grid.
RenormVolume renorm_volume_check(double delta_max = 0.05, double delta_min = 1e-4, int points = 24);

// Sampled heat-trace data, e.g. for CSV export.
struct HeatTraceSeries {
  std::vector<double> t, values;
  std::string provenance;  // "numeric" or "closed-form"
  void validate() const;
};
std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace cusp::sim
