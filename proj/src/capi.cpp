#include "cusp_torsion.h"

#include "cusp/chain_torsion.hpp"
#include "cusp/errors.hpp"
#include "cusp/io.hpp"
#include "cusp/model_formulas.hpp"
#include "cusp/parallel.hpp"
#include "cusp/simplicial.hpp"
#include "cusp/spectral_sim.hpp"
#include "cusp/surface.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>
#include <vector>

struct cusp_profile {
  cusp::model::BettiProfile p;
};
struct cusp_complex {
  cusp::chain::BasedComplex c;
};
struct cusp_space {
  cusp::io::SimplicialInput in;
};
struct cusp_surface {
  cusp::sim::NeckSurface s;
};

namespace {

using namespace cusp;

thread_local std::string g_last_error;

cusp_status to_status(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return CUSP_ERR_INVALID_ARGUMENT;
    case ErrorKind::Precondition: return CUSP_ERR_PRECONDITION;
    case ErrorKind::Parse: return CUSP_ERR_PARSE;
    case ErrorKind::Numerical: return CUSP_ERR_NUMERICAL;
    case ErrorKind::GuardRail: return CUSP_ERR_GUARD_RAIL;
    case ErrorKind::Internal: return CUSP_ERR_INTERNAL;
  }
  return CUSP_ERR_INTERNAL;
}

template <class F>
cusp_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return CUSP_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.kind());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return CUSP_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CUSP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CUSP_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return CUSP_ERR_INTERNAL;
  }
}

void need(const void* p, const char* name) {
  if (!p) fail(ErrorKind::InvalidArgument, std::string(name) + " is null");
}

std::vector<int> ints(const int* p, size_t n) {
  if (n && !p) fail(ErrorKind::InvalidArgument, "array is null");
  return std::vector<int>(p, p + n);
}
std::vector<double> doubles(const double* p, size_t n) {
  if (n && !p) fail(ErrorKind::InvalidArgument, "array is null");
  return std::vector<double>(p, p + n);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// b, bplus, bH symmetric under q -> v - q and jdet under q -> m - 1 - q
bool mirrored(const model::BettiProfile& p) {
  const int v = p.v();
  for (int q = 0; q <= v; ++q)
    if (p.betti(q) != p.betti(v - q) || p.betti_plus(q) != p.betti_plus(v - q) ||
        p.betti_harmonic(q) != p.betti_harmonic(v - q))
      return false;
  for (int q = 0; q <= p.m - 1; ++q)
    if (std::abs(p.log_jdet(q) - p.log_jdet(p.m - 1 - q)) > 1e-14) return false;
  return true;
}

io::json parse(const char* text) {
  need(text, "json text");
  return io::parse_json(text);
}

}  // namespace

extern "C" {

const char* cusp_last_error(void) { return g_last_error.c_str(); }
const char* cusp_version(void) { return "1.0.0"; }
void cusp_set_threads(int n) { parallel::set_thread_count(n); }
void cusp_string_free(char* s) { std::free(s); }

cusp_status cusp_c_const(double q, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = model::c_const(q);
  });
}

cusp_status cusp_logdet_model(double a, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = model::logdet_model(a);
  });
}

cusp_status cusp_at_db(int v, const int* b, size_t nb, int orthogonal, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = orthogonal ? model::at_db_orth(v, ints(b, nb)) : model::at_db(v, ints(b, nb));
  });
}

cusp_status cusp_at_small(int m, const int* bplus, size_t nbp, const double* jdet, size_t nj, int orthogonal,
                          double* out) {
  return guarded([&] {
    need(out, "out");
    const auto bp = ints(bplus, nbp);
    const auto jd = doubles(jdet, nj);
    *out = orthogonal ? model::at_small_orth(m, bp, jd) : model::at_small(m, bp, jd);
  });
}

cusp_status cusp_harmonic_correction(int m, const int* bh, size_t nbh, int orthogonal, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = orthogonal ? model::harmonic_correction_orth(m, ints(bh, nbh)) : model::harmonic_correction(m, ints(bh, nbh));
  });
}

cusp_status cusp_even_cusp_at(int m, const int* b, size_t nb, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = model::even_cusp_at(m, ints(b, nb));
  });
}

cusp_status cusp_strint_rhs(double a, double t, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = model::strint_rhs(a, t);
  });
}

cusp_status cusp_strint_quadrature(double a, double t, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = model::strint_quadrature(a, t);
  });
}

cusp_status cusp_rtr_closed(const char* kind, double t, double* out) {
  return guarded([&] {
    need(out, "out");
    need(kind, "kind");
    *out = model::rtr_closed(model::trace_kind_from_string(kind), t);
  });
}

cusp_status cusp_wolpert_c1(int reference_route, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = model::wolpert_c1(reference_route != 0);
  });
}

cusp_status cusp_burger_coeff(double v1, double v2, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = model::burger_coeff(v1, v2);
  });
}

cusp_status cusp_cm_defect_eval(int m, const int* b, size_t nb, cusp_cm_defect* out) {
  return guarded([&] {
    need(out, "out");
    const auto d = model::cm_defect(m, ints(b, nb));
    *out = {d.general.log2_term,   d.general.dimension_term,   d.general.total,
            d.euclidean.log2_term, d.euclidean.dimension_term, d.euclidean.total};
  });
}

cusp_status cusp_small_eig_rate_eval(int m, int q, double jnorm_sq, cusp_small_eig_rate* out) {
  return guarded([&] {
    need(out, "out");
    const auto r = model::small_eig_rate(m, q, jnorm_sq);
    *out = {r.coefficient, r.exponent};
  });
}

cusp_status cusp_profile_from_json(const char* json_text, cusp_profile** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    auto p = io::profile_from_json(parse(json_text));
    p.validate();
    *out = new cusp_profile{std::move(p)};
  });
}

cusp_status cusp_profile_random(uint64_t seed, int m, int mirrored, cusp_profile** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    *out = new cusp_profile{model::random_profile(seed, m, mirrored != 0)};
  });
}

cusp_status cusp_profile_to_json(const cusp_profile* p, char** out) {
  return guarded([&] {
    need(p, "profile");
    need(out, "out");
    *out = copy_string(io::profile_to_json(p->p).dump());
  });
}

void cusp_profile_free(cusp_profile* p) { delete p; }

cusp_status cusp_profile_assembly(const cusp_profile* p, cusp_assembly_report* out) {
  return guarded([&] {
    need(p, "profile");
    need(out, "out");
    const auto& b = p->p;
    b.validate();
    cusp_assembly_report r{};
    r.at_db = model::at_db(b.v(), b.b);
    r.at_small = model::at_small(b.m, b.bplus, b.jdet);
    r.harmonic_correction = model::harmonic_correction(b.m, b.bH);
    r.assembly = model::at_assembly(b);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.at_db_orth = r.at_small_orth = r.harmonic_correction_orth = r.assembly_orth = nan;
    if (b.v() % 2 == 0 && mirrored(b)) {
      r.at_db_orth = model::at_db_orth(b.v(), b.b);
      r.at_small_orth = model::at_small_orth(b.m, b.bplus, b.jdet);
      r.harmonic_correction_orth = model::harmonic_correction_orth(b.m, b.bH);
      r.assembly_orth = model::at_assembly_orth(b);
    }
    r.rt10_correction = model::rt10_correction(b);
    r.rt10a_correction = model::rt10a_correction(b);
    *out = r;
  });
}

cusp_status cusp_complex_from_json(const char* json_text, cusp_complex** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    *out = new cusp_complex{io::complex_from_json(parse(json_text))};
  });
}

void cusp_complex_free(cusp_complex* c) { delete c; }

cusp_status cusp_complex_top_degree(const cusp_complex* c, int* out) {
  return guarded([&] {
    need(c, "complex");
    need(out, "out");
    *out = c->c.top_degree();
  });
}

cusp_status cusp_complex_betti(const cusp_complex* c, int* betti, size_t cap, size_t* count) {
  return guarded([&] {
    need(c, "complex");
    need(count, "count");
    const auto b = chain::betti_numbers(c->c);
    *count = b.size();
    if (cap) need(betti, "betti");
    for (size_t i = 0; i < b.size() && i < cap; ++i) betti[i] = b[i];
  });
}

cusp_status cusp_complex_log_torsion(const cusp_complex* c, cusp_torsion_report* out) {
  return guarded([&] {
    need(c, "complex");
    need(out, "out");
    const auto r = chain::log_torsion(c->c);
    *out = {r.log_torsion, r.laplacian_term, r.basis_factor};
  });
}

cusp_status cusp_milnor_suite(uint64_t seed, int count, double* max_residual) {
  return guarded([&] {
    need(max_residual, "max_residual");
    if (count < 1) fail(ErrorKind::InvalidArgument, "milnor suite: count must be positive");
    *max_residual = chain::milnor_suite(seed, count).max_residual;
  });
}

cusp_status cusp_space_builtin(const char* name, cusp_space** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = nullptr;
    auto c = simplicial::builtin_case(name);
    io::SimplicialInput in{std::move(c.complex), std::move(c.system), c.dimension, std::move(c.z_vertices), {}};
    *out = new cusp_space{std::move(in)};
  });
}

cusp_status cusp_space_from_json(const char* json_text, cusp_space** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    auto in = io::simplicial_from_json(parse(json_text));
    in.system.validate(in.complex);
    *out = new cusp_space{std::move(in)};
  });
}

void cusp_space_free(cusp_space* s) { delete s; }

cusp_status cusp_space_verify_cut(const cusp_space* s, uint64_t seed, cusp_cut_report* out) {
  return guarded([&] {
    need(s, "space");
    need(out, "out");
    const auto& in = s->in;
    if (in.z_vertices.empty()) fail(ErrorKind::InvalidArgument, "cut identities: no collar vertices given");
    const int m = in.dimension >= 0 ? in.dimension : in.complex.dimension();
    const auto r = simplicial::verify_cut_identities(in.complex, in.system, in.z_vertices, m, seed, in.plus_side);
    cusp_cut_report c{};
    c.dimension = r.m;
    c.cutoff = r.cutoff;
    c.witt = r.witt ? 1 : 0;
    c.log_tau_m = r.log_tau_m;
    c.log_tau_cut = r.log_tau_cut;
    c.log_itau_hat = r.log_itau_hat;
    c.log_tau_link = r.log_tau_link;
    c.log_itau_cone = r.log_itau_cone;
    c.log_tau_h1 = r.log_tau_h1;
    c.log_tau_h2 = r.log_tau_h2;
    c.milnor_cut_residual = r.milnor_cut_residual;
    c.milnor_mv_residual = r.milnor_mv_residual;
    c.rt3_rhs = r.rt3_rhs;
    c.rt3_residual = r.rt3_residual;
    c.rt10_rhs = r.rt10_rhs;
    c.rt10_residual = r.rt10_residual;
    c.rt10_residual_without_sqrt2 = r.rt10_residual_without_sqrt2;
    c.sqrt2_term = r.sqrt2_term;
    *out = c;
  });
}

cusp_status cusp_space_subdivision(const cusp_space* s, int part, cusp_subdivision_report* out) {
  return guarded([&] {
    need(s, "space");
    need(out, "out");
    const auto& in = s->in;
    simplicial::SubdivisionCheck r;
    if (part == 0) {
      r = simplicial::subdivision_check(in.complex, in.system);
    } else if (part == 1 || part == 2) {
      if (in.z_vertices.empty()) fail(ErrorKind::InvalidArgument, "subdivision: no collar vertices given");
      if (part == 1) {
        const auto cut = simplicial::cut_along(in.complex, in.z_vertices, in.plus_side);
        r = simplicial::subdivision_check(cut.cut, in.system.pullback(cut.cut, cut.to_original));
      } else {
        r = simplicial::subdivision_check(in.complex.full_subcomplex(in.z_vertices), in.system);
      }
    } else {
      fail(ErrorKind::InvalidArgument, "subdivision: part must be 0, 1 or 2");
    }
    *out = {r.log_tau, r.log_tau_subdivided, r.defect};
  });
}

cusp_status cusp_relative_heat_trace(double a, double t, double half_width, int n, double* out) {
  return guarded([&] {
    need(out, "out");
    sim::Grid1D g = sim::trace_grid(t, n > 0 ? n : 4000);
    if (half_width > 0) g.half_width = half_width;
    g.validate();
    *out = sim::relative_heat_trace(a, t, g);
  });
}

cusp_status cusp_relative_logdet_eval(double a, double half_width, int n, cusp_relative_logdet* out) {
  return guarded([&] {
    need(out, "out");
    const sim::Grid1D g{half_width > 0 ? half_width : 40.0, n > 0 ? n : 8000};
    g.validate();
    const auto r = sim::relative_logdet(a, g);
    *out = {r.value, r.spectral_value, r.target, r.zero_mode};
  });
}

cusp_status cusp_renorm_volume_eval(cusp_renorm_volume* out) {
  return guarded([&] {
    need(out, "out");
    const auto r = sim::renorm_volume_check();
    *out = {r.finite_part, r.slope, r.per_end_constant, r.per_end_slope, r.halving_change, r.fit_residual};
  });
}

cusp_status cusp_box_eigen_error(double half_width, int n, double* out) {
  return guarded([&] {
    need(out, "out");
    const sim::Grid1D g{half_width, n};
    g.validate();
    const double exact = std::pow(M_PI / (2.0 * half_width), 2);
    *out = sim::discretize(0.0, g).lowest(1)[0] - exact;
  });
}

cusp_status cusp_surface_builtin(const char* name, double eps, cusp_surface** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = nullptr;
    *out = new cusp_surface{sim::builtin_surface(name, eps)};
  });
}

cusp_status cusp_surface_from_json(const char* json_text, double eps, cusp_surface** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    *out = new cusp_surface{io::surface_from_json(parse(json_text), eps)};
  });
}

void cusp_surface_free(cusp_surface* s) { delete s; }

cusp_status cusp_surface_set_eps(cusp_surface* s, double eps) {
  return guarded([&] {
    need(s, "surface");
    sim::NeckSurface t = s->s;
    t.eps = eps;
    t.validate();
    s->s = t;
  });
}

cusp_status cusp_surface_area(const cusp_surface* s, double* area, double* v1, double* v2) {
  return guarded([&] {
    need(s, "surface");
    if (area) *area = s->s.area();
    if (v1 || v2) {
      const auto [a, b] = s->s.limit_piece_areas();
      if (v1) *v1 = a;
      if (v2) *v2 = b;
    }
  });
}

cusp_status cusp_neck_spectrum(const cusp_surface* s, int count, double h, int k_max, double* values, int* modes_used) {
  return guarded([&] {
    need(s, "surface");
    need(values, "values");
    if (count < 1) fail(ErrorKind::InvalidArgument, "neck spectrum: count must be positive");
    const auto sp = sim::neck_spectrum(s->s, count, h > 0 ? h : 0.01, k_max);
    const auto v = sp.values();
    for (int i = 0; i < count; ++i) values[i] = i < static_cast<int>(v.size()) ? v[i] : std::nan("");
    if (modes_used) *modes_used = sp.modes_used;
  });
}

cusp_status cusp_gap_scan_eval(const double* ascending, size_t n, cusp_gap_scan* out) {
  return guarded([&] {
    need(out, "out");
    const auto g = sim::gap_scan(doubles(ascending, n));
    *out = {g.delta, g.small, g.zeros};
  });
}

cusp_status cusp_small_eig_fit_eval(const cusp_surface* s, const double* eps, size_t n, double h,
                                    cusp_small_eig_fit* out, double* lambda1, int* small_counts) {
  return guarded([&] {
    need(s, "surface");
    need(out, "out");
    const auto f = sim::small_eig_fit(s->s, doubles(eps, n), h > 0 ? h : 0.01);
    *out = {f.delta, f.slope_through_origin, f.extrapolated, f.drift, f.v1, f.v2, f.predicted, f.eps.size()};
    for (size_t i = 0; i < f.eps.size(); ++i) {
      if (lambda1) lambda1[i] = f.lambda1[i];
      if (small_counts) small_counts[i] = f.small_counts[i];
    }
  });
}

cusp_status cusp_surface_logdet_eval(const cusp_surface* s, double h, double t_min_factor, cusp_surface_logdet* out) {
  return guarded([&] {
    need(s, "surface");
    need(out, "out");
    sim::SurfaceLogDetOptions opt;
    if (h > 0) opt.h = h;
    if (t_min_factor > 0) opt.t_min_factor = t_min_factor;
    const auto r = sim::surface_logdet(s->s, opt);
    *out = {r.logdet, r.coarse, r.fine, r.t_min, r.h, r.area, r.euler, r.modes};
  });
}

cusp_status cusp_logdet_fit_series(const double* eps, const double* logdet, size_t n, cusp_logdet_fit* out) {
  return guarded([&] {
    need(out, "out");
    const auto f = sim::fit_logdet_series(doubles(eps, n), doubles(logdet, n));
    *out = {f.c_inv_eps, f.c_loglog, f.c_log, f.c_const, f.condition, f.monotone ? 1 : 0};
  });
}

cusp_status cusp_sphere_logdet(double radius, double* out) {
  return guarded([&] {
    need(out, "out");
    if (!(radius > 0)) fail(ErrorKind::InvalidArgument, "sphere radius must be positive");
    *out = sim::sphere_logdet(radius);
  });
}

}  // extern "C"
