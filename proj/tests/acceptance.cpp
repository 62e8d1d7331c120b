// One line per acceptance criterion. Exit status is the number of failing criteria unless
// --report-only is given, in which case it is nonzero only when a criterion could not run.
#include "cusp_torsion.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct RunError {
  std::string what;
};

void ok(cusp_status s) {
  if (s != CUSP_OK) throw RunError{cusp_last_error()};
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

const double kLog2 = std::log(2.0);

Outcome closed_form_determinants() {
  double d0, dm, dp;
  ok(cusp_logdet_model(0.0, &d0));
  ok(cusp_logdet_model(-1.0, &dm));
  ok(cusp_logdet_model(1.0, &dp));
  const double value_err = std::max({std::abs(d0), std::abs(dm - 2 * kLog2), std::abs(dp)});
  double identity_err = 0;
  for (int i = 1; i <= 12; ++i) {
    const double a = 0.25 * i;
    double p, m, c;
    ok(cusp_logdet_model(a, &p));
    ok(cusp_logdet_model(-a, &m));
    ok(cusp_c_const(a, &c));
    identity_err = std::max(identity_err, std::abs(p + m - 2 * std::log(c)));
    identity_err = std::max(identity_err, std::abs(p - m + 2 * std::log(2 * a)));
  }
  return {value_err <= 4e-16 && identity_err <= 1e-12,
          fmt("values (0, 2 log 2, 0) off by %.2e; sum/difference identities max error %.2e on a = 0.25..3",
              value_err, identity_err)};
}

Outcome relative_heat_trace() {
  double worst = 0, worst_a = 0, worst_t = 0;
  for (double a : {0.5, 1.0, 2.0})
    for (double t : {0.1, 0.5, 1.0, 4.0, 9.0}) {
      double v, e;
      ok(cusp_relative_heat_trace(a, t, 0.0, 4000, &v));
      ok(cusp_strint_rhs(a, t, &e));
      if (std::abs(v - e) > worst) {
        worst = std::abs(v - e);
        worst_a = a;
        worst_t = t;
      }
    }
  return {worst <= 1e-3, fmt("max |numeric - erf(a sqrt t)| = %.2e at a = %g, t = %g (tol 1e-3)", worst, worst_a, worst_t)};
}

Outcome relative_determinant() {
  std::string d;
  bool pass = true;
  for (double a : {0.5, 1.0, 1.5}) {
    cusp_relative_logdet r;
    ok(cusp_relative_logdet_eval(a, 40.0, 8000, &r));
    const double err = std::abs(r.value - r.target);
    pass = pass && err <= 0.02;
    d += fmt("%sa=%g: %.6f vs %.6f", d.empty() ? "" : "; ", a, r.value, r.target);
  }
  return {pass, d + " (tol 0.02)"};
}

Outcome renormalized_volume() {
  cusp_renorm_volume r;
  ok(cusp_renorm_volume_eval(&r));
  const double err = std::abs(r.finite_part - 2 * kLog2);
  return {err <= 1e-6, fmt("finite part %.12f vs 2 log 2, error %.2e (tol 1e-6)", r.finite_part, err)};
}

Outcome combinatorial_identities() {
  double milnor;
  ok(cusp_milnor_suite(7, 100, &milnor));
  double rt3 = 0, rt10 = 0, rt10_plain = 0, subdiv = 0;
  for (const char* name : {"s1xs2", "s1xs2-twisted"}) {
    cusp_space* s = nullptr;
    ok(cusp_space_builtin(name, &s));
    cusp_cut_report r;
    const cusp_status st = cusp_space_verify_cut(s, 1, &r);
    if (st == CUSP_OK) {
      rt3 = std::max(rt3, r.rt3_residual);
      rt10 = std::max(rt10, r.rt10_residual);
      rt10_plain = std::max(rt10_plain, r.rt10_residual_without_sqrt2);
      for (int part = 0; part < 3; ++part) {
        cusp_subdivision_report sd;
        if (cusp_space_subdivision(s, part, &sd) != CUSP_OK) {
          cusp_space_free(s);
          throw RunError{cusp_last_error()};
        }
        subdiv = std::max(subdiv, sd.defect);
      }
    }
    cusp_space_free(s);
    ok(st);
  }
  const bool pass = milnor <= 1e-9 && rt3 <= 1e-8 && rt10 <= 1e-8 && subdiv <= 1e-8;
  return {pass, fmt("milnor %.1e, rt3 %.1e, rt10 %.3e (%.1e without the sqrt 2 factors; 1/2 log 2 = %.3e), "
                    "subdivision %.1e",
                    milnor, rt3, rt10, rt10_plain, 0.5 * kLog2, subdiv)};
}

Outcome assembly_identity() {
  double worst = 0, worst_orth = 0;
  int orth_cases = 0;
  for (unsigned long long seed = 1; seed <= 50; ++seed) {
    for (int mirrored = 0; mirrored <= 1; ++mirrored) {
      cusp_profile* p = nullptr;
      ok(cusp_profile_random(seed, 3 + 2 * static_cast<int>(seed % 3), mirrored, &p));
      cusp_assembly_report r;
      const cusp_status st = cusp_profile_assembly(p, &r);
      cusp_profile_free(p);
      ok(st);
      worst = std::max(worst, std::abs(r.at_db + r.at_small + r.harmonic_correction - r.assembly));
      if (mirrored) {
        if (!std::isfinite(r.assembly_orth)) throw RunError{"mirrored profile without orthogonal form"};
        ++orth_cases;
        worst_orth = std::max({worst_orth, std::abs(r.at_db_orth - r.at_db), std::abs(r.at_small_orth - r.at_small),
                               std::abs(r.harmonic_correction_orth - r.harmonic_correction),
                               std::abs(r.assembly_orth - r.assembly)});
      }
    }
  }
  return {worst <= 1e-12 && worst_orth <= 1e-12,
          fmt("assembly residual %.1e over 100 profiles; orthogonal forms differ by %.1e over %d mirrored profiles",
              worst, worst_orth, orth_cases)};
}

Outcome dumbbell_small_eigenvalue() {
  const std::vector<double> eps{4e-2, 2e-2, 1e-2, 4e-3, 2e-3, 1e-3};
  cusp_surface* s = nullptr;
  ok(cusp_surface_builtin("symmetric", eps.front(), &s));
  cusp_small_eig_fit f;
  std::vector<double> lambda(eps.size());
  std::vector<int> small(eps.size());
  const cusp_status st = cusp_small_eig_fit_eval(s, eps.data(), eps.size(), 0.01, &f, lambda.data(), small.data());
  cusp_surface_free(s);
  ok(st);
  const double rel = std::abs(f.extrapolated - f.predicted) / f.predicted;

  cusp_surface* h = nullptr;
  ok(cusp_surface_builtin("handle", 1e-3, &h));
  std::vector<double> values(20);
  const cusp_status hs = cusp_neck_spectrum(h, 20, 0.01, -1, values.data(), nullptr);
  cusp_surface_free(h);
  ok(hs);
  cusp_gap_scan g;
  ok(cusp_gap_scan_eval(values.data(), values.size(), &g));
  bool one_small = true;
  for (int c : small) one_small = one_small && c == 1;
  return {rel <= 0.05 && g.small == 0 && one_small,
          fmt("lambda1/eps -> %.6f vs (V1+V2)/(pi V1 V2) = %.6f, rel %.2e (tol 5%%); handle small eigenvalues: %d",
              f.extrapolated, f.predicted, rel, g.small)};
}

Outcome determinant_blow_up() {
  const std::vector<double> eps{0.6, 0.4, 0.25, 0.16, 0.1, 0.06};
  std::vector<double> logdet;
  cusp_surface* s = nullptr;
  ok(cusp_surface_builtin("symmetric", eps.front(), &s));
  for (double e : eps) {
    cusp_surface_logdet r;
    cusp_status st = cusp_surface_set_eps(s, e);
    if (st == CUSP_OK) st = cusp_surface_logdet_eval(s, 0, 0, &r);
    if (st != CUSP_OK) {
      cusp_surface_free(s);
      throw RunError{cusp_last_error()};
    }
    logdet.push_back(r.logdet);
  }
  cusp_surface_free(s);
  cusp_logdet_fit f;
  ok(cusp_logdet_fit_series(eps.data(), logdet.data(), eps.size(), &f));
  double c1;
  ok(cusp_wolpert_c1(0, &c1));
  const double rel = std::abs(f.c_inv_eps - c1) / std::abs(c1);
  std::string series;
  for (std::size_t i = 0; i < eps.size(); ++i) series += fmt("%s%.4f", i ? ", " : "", logdet[i]);
  return {f.monotone && f.c_inv_eps < 0 && rel <= 0.3,
          fmt("log det [%s] monotone: %s; 1/eps coefficient %.4f (negative: %s) vs %.5f, rel %.3g (tol 0.3)",
              series.c_str(), f.monotone ? "yes" : "no", f.c_inv_eps, f.c_inv_eps < 0 ? "yes" : "no", c1, rel)};
}

std::string g_oracle_path;

Outcome even_dimension() {
  double circle, four;
  const int b2[] = {1, 1};
  const int b4[] = {1, 0, 0, 1};
  ok(cusp_even_cusp_at(2, b2, 2, &circle));
  ok(cusp_even_cusp_at(4, b4, 4, &four));
  const double closed = std::max(std::abs(circle), std::abs(four - 2 * std::log(3.0)));
  if (g_oracle_path.empty()) return {false, fmt("closed form error %.1e; no oracle file given (--oracle)", closed)};
  std::ifstream in(g_oracle_path);
  if (!in) throw RunError{"cannot open oracle file " + g_oracle_path};
  const auto j = nlohmann::json::parse(in);
  double worst = 0;
  int n = 0;
  for (const auto& c : j.at("cases")) {
    const auto b = c.at("b").get<std::vector<int>>();
    double v;
    ok(cusp_even_cusp_at(c.at("m").get<int>(), b.data(), b.size(), &v));
    worst = std::max(worst, std::abs(v - c.at("value").get<double>()));
    ++n;
  }
  return {closed <= 1e-14 && worst <= 1e-12 && n >= 2,
          fmt("values 0 and 2 log 3 off by %.1e; %d oracle cases agree to %.1e", closed, n, worst)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance report"};
  bool report_only = false;
  std::vector<int> only;
  app.add_flag("--report-only", report_only, "exit 0 whenever every criterion ran");
  app.add_option("--oracle", g_oracle_path, "JSON written by the even-dimension oracle script");
  app.add_option("--only", only, "criteria to run")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"closed-form determinants", closed_form_determinants},
      {"relative heat trace", relative_heat_trace},
      {"relative determinant", relative_determinant},
      {"renormalized volume", renormalized_volume},
      {"combinatorial identities", combinatorial_identities},
      {"assembly identity", assembly_identity},
      {"dumbbell small eigenvalue", dumbbell_small_eigenvalue},
      {"determinant blow-up", determinant_blow_up},
      {"even-dimension closed form", even_dimension},
  };
  const std::set<int> selected(only.begin(), only.end());
  int failed = 0, broken = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const RunError& e) {
      o = {false, "did not run: " + e.what};
      ++broken;
    } catch (const std::exception& e) {
      o = {false, std::string("did not run: ") + e.what()};
      ++broken;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("criterion %d %s  %s: %s [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return report_only ? (broken ? 1 : 0) : failed;
}
