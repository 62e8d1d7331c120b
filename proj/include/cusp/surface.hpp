#pragma once
#include "cusp/numerics.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cusp::sim {

enum class SurfaceTopology {
  Dumbbell,  // neck closed off by a round cap on each side
  Handle,    // neck whose two ends are joined through one bulb (a torus)
  Sphere,    // round sphere, no neck; solver check
};

// Surface of revolution ds^2 + r(s)^2 dtheta^2 with theta of period `theta_period`.
// The neck is r = eps cosh s for |s| <= asinh(1/eps), i.e. x = eps sinh s on [-1, 1] with
// metric dx^2/(x^2+eps^2) + (x^2+eps^2) dtheta^2. Past either end the profile is blended
// (C-infinity step over `collar`) into a round sphere of the given radius which closes at a pole.
struct NeckSurface {
  SurfaceTopology topology = SurfaceTopology::Dumbbell;
  double eps = 1e-3;
  double cap_left = 1.0, cap_right = 1.0;  // round-cap radii; the handle bulb uses cap_left
  double collar = 1.0;
  double theta_period = 1.0;

  void validate() const;
  double neck_half_length() const;  // asinh(1/eps) in arclength
  // Arclength domain. Dumbbell and sphere: pole to pole. Handle: neck centre to bulb equator
  // (a fundamental domain for the two reflections).
  double s_begin() const;
  double s_end() const;
  double radius(double s) const;
  double radius_second_derivative(double s) const;
  double area() const;
  int euler_characteristic() const;
  // Areas of the two sides as eps -> 0: cap plus the half neck x in [0, 1] (area element dx dtheta).
  std::pair<double, double> limit_piece_areas() const;
  // (1 / 60 pi) * integral of K^2 dA: the t-coefficient of the heat trace.
  double heat_coefficient_t1() const;
};

// "symmetric", "asymmetric", "handle", "sphere"
NeckSurface builtin_surface(const std::string& name, double eps);
std::vector<std::string> builtin_surface_names();

struct ModeProblem {
  numerics::Vector diag, offdiag;  // symmetric tridiagonal after the half-density transform
  int multiplicity = 1;
};
// Finite-volume discretization of mode k on a cell-centred grid of spacing about h.
// `reflection_odd` selects Dirichlet ends for the handle's odd class.
ModeProblem mode_problem(const NeckSurface& s, int k, double h, bool reflection_odd = false);

struct SpectrumEntry {
  double value = 0.0;
  int mode = 0;
  bool odd = false;  // handle reflection class
};

struct NeckSpectrum {
  std::vector<SpectrumEntry> entries;  // lowest `count`, counted with multiplicity, ascending
  int modes_used = 0;
  double cutoff_movement = 0.0;  // change of the list when one more mode is added
  std::vector<double> values() const;
};

// Laplace spectrum on functions assembled over Fourier modes. k_max < 0 picks the cutoff
// automatically; otherwise GuardRail is thrown when mode k_max + 1 moves the list by > 1e-8.
NeckSpectrum neck_spectrum(const NeckSurface& s, int count = 20, double h = 0.01, int k_max = -1);

struct GapScan {
  double delta = 0.0;  // threshold between small and large eigenvalues
  int small = 0;       // positive eigenvalues below delta
  int zeros = 0;       // eigenvalues treated as zero
};
// Largest ratio gap between consecutive positive eigenvalues; a ratio below `min_ratio`
// means there is no small cluster and delta sits below the first positive eigenvalue.
GapScan gap_scan(const std::vector<double>& ascending, double min_ratio = 20.0, double zero_tol = 1e-9);
int count_small(const std::vector<double>& ascending, double delta, double zero_tol = 1e-9);

struct SmallEigenFit {
  std::vector<double> eps, lambda1;
  std::vector<int> small_counts;
  double delta = 0.0;
  double slope_through_origin = 0.0;  // least squares lambda = c eps on the three smallest eps
  double extrapolated = 0.0;          // lambda/eps = c0 + c1 eps on the same points, c0
  double drift = 0.0;                 // relative spread of lambda/eps over the fit points
  double v1 = 0.0, v2 = 0.0, predicted = 0.0;
};
SmallEigenFit small_eig_fit(const NeckSurface& base, const std::vector<double>& eps_list, double h = 0.01);

struct SurfaceLogDetOptions {
  double h = 0.0;              // coarse spacing, 0 for h_per_sqrt_t * sqrt(t_min); Richardson uses h, h/2
  double h_per_sqrt_t = 0.45;
  double t_min_factor = 1.0 / 20.0;  // t_min = factor * (theta_period * eps)^2, capped below
  double t_min_cap = 2e-3;
  double cutoff = 36.0;        // eigenvalues kept up to cutoff / t_min
  bool richardson = true;
};

struct SurfaceLogDet {
  double logdet = 0.0;     // -zeta'(0), zero mode removed
  double coarse = 0.0, fine = 0.0;  // single-grid values before extrapolation
  double t_min = 0.0;
  double h = 0.0;
  double area = 0.0;
  int euler = 0;
  int modes = 0;
  long eigenvalues = 0;
};
// zeta'(0) from the heat trace: with Theta(t) = A/(4 pi t) + chi/6 + a1 t + ...,
// zeta'(0) = sum_{lambda > 0} E1(t lambda) - A/(4 pi t) + (chi/6 - 1)(gamma + log t) + a1 t + O(t^2)
// at t = t_min, exactly up to the truncated expansion.
SurfaceLogDet surface_logdet(const NeckSurface& s, const SurfaceLogDetOptions& opt = {});

struct LogDetFit {
  std::vector<double> eps, logdet;
  double c_inv_eps = 0, c_loglog = 0, c_log = 0, c_const = 0;
  double condition = 0;
  bool monotone = false;
};
// Least squares on {1/eps, log log(1/eps), log eps, 1}; Numerical error when the scaled
// design is worse conditioned than max_condition.
LogDetFit logdet_surface_fit(const NeckSurface& base, const std::vector<double>& eps_list,
                             const SurfaceLogDetOptions& opt = {}, double max_condition = 1e8);
LogDetFit fit_logdet_series(const std::vector<double>& eps, const std::vector<double>& logdet,
                            double max_condition = 1e8);

// log det' of the round unit sphere Laplacian: 1/2 - 4 zeta'(-1); radius R adds (4/3) log R.
double sphere_logdet(double radius);

}  // namespace cusp::sim
