// Batch front end over the C API. Exit codes: 0 pass, 2 input error, 3 tolerance exceeded,
// 4 guard rail or numerical failure.
#include "cusp_torsion.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using json = nlohmann::ordered_json;

enum Exit { kPass = 0, kInput = 2, kTolerance = 3, kGuard = 4 };

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void input_error(const std::string& m) { throw CliError{kInput, m}; }

void check(cusp_status s) {
  if (s == CUSP_OK) return;
  const std::string msg = cusp_last_error();
  switch (s) {
    case CUSP_ERR_INVALID_ARGUMENT:
    case CUSP_ERR_PRECONDITION:
    case CUSP_ERR_PARSE: throw CliError{kInput, msg};
    default: throw CliError{kGuard, msg};
  }
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
};
using Profile = Handle<cusp_profile, cusp_profile_free>;
using Complex = Handle<cusp_complex, cusp_complex_free>;
using Space = Handle<cusp_space, cusp_space_free>;
using Surface = Handle<cusp_surface, cusp_surface_free>;

// ---- output --------------------------------------------------------------------------

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

// nlohmann prints the shortest round-trip form; reports use 17 significant digits instead.
void emit(const json& j, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        emit(it.value(), out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      bool scalars = true;
      for (const auto& v : j) scalars = scalars && !v.is_structured();
      if (scalars) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          emit(j[i], out, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit(j[i], out, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? number(x) : "null";
      return;
    }
    default: out += j.dump();
  }
}

std::string render(const json& j) {
  std::string out;
  emit(j, out, 0);
  return out + "\n";
}

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : width_(header.size()) { row(header); }
  void row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw CliError{kGuard, "csv row width mismatch"};
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text_ += ',';
      text_ += cells[i];
    }
    text_ += '\n';
  }
  const std::string& text() const { return text_; }

 private:
  std::size_t width_;
  std::string text_;
};

// ---- shared options ------------------------------------------------------------------

struct Context {
  std::string config_path, out_path;
  std::uint64_t seed = 1;
  std::vector<std::string> tol_args;
  int threads = 0;

  std::map<std::string, double> tolerances;
  std::optional<json> config;
  std::string config_text;

  void prepare() {
    if (threads < 0) input_error("--threads must be nonnegative");
    if (threads > 0) cusp_set_threads(threads);
    if (!config_path.empty()) {
      std::ifstream in(config_path, std::ios::binary);
      if (!in) input_error("cannot open config '" + config_path + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      config_text = ss.str();
      try {
        config = json::parse(config_text);
      } catch (const json::parse_error& e) {
        input_error(config_path + ": malformed JSON: " + e.what());
      }
      if (config->is_object() && config->contains("tolerances")) {
        const auto& t = config->at("tolerances");
        if (!t.is_object()) input_error("config: tolerances must be an object");
        for (auto it = t.begin(); it != t.end(); ++it) {
          if (!it.value().is_number()) input_error("config: tolerance '" + it.key() + "' is not a number");
          set_tolerance(it.key(), it.value().get<double>());
        }
      }
    }
    for (const auto& arg : tol_args) {
      const auto eq = arg.find('=');
      if (eq == std::string::npos || eq == 0) input_error("--tol expects NAME=VALUE, got '" + arg + "'");
      const std::string value = arg.substr(eq + 1);
      double v = 0;
      const auto r = std::from_chars(value.data(), value.data() + value.size(), v);
      if (r.ec != std::errc() || r.ptr != value.data() + value.size()) input_error("--tol: bad value in '" + arg + "'");
      set_tolerance(arg.substr(0, eq), v);
    }
  }

  void set_tolerance(std::string name, double v) {
    for (auto& c : name)
      if (c == '-') c = '_';
    if (!(v > 0) || !std::isfinite(v)) input_error("tolerance '" + name + "' must be positive");
    tolerances[name] = v;
  }

  double tol(const std::string& name, double fallback) const {
    auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
  }

  // Config value for key when the flag was not given on the command line.
  template <class T>
  void from_config(const char* key, T& target, const CLI::Option* flag) const {
    if (flag && flag->count()) return;
    if (!config || !config->is_object() || !config->contains(key)) return;
    try {
      target = config->at(key).get<T>();
    } catch (const json::exception& e) {
      input_error(std::string("config: bad value for '") + key + "': " + e.what());
    }
  }

  void write(const std::string& text) const {
    if (out_path.empty() || out_path == "-") {
      std::cout << text << std::flush;
      return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) input_error("cannot write '" + out_path + "'");
    out << text;
  }
};

std::string surface_name(std::string n) {
  if (n.rfind("dumbbell-", 0) == 0) n = n.substr(9);
  return n;
}

const char* kTolNames[] = {"assembly", "rt3", "rt10", "milnor", "subdivision", "rel_trace",
                           "rel_logdet", "renorm_vol", "small_eig", "c1_rel"};

void reject_unknown_tolerances(const Context& ctx) {
  for (const auto& [name, v] : ctx.tolerances) {
    bool known = false;
    for (const char* k : kTolNames) known = known || name == k;
    if (!known) input_error("unknown tolerance '" + name + "'");
  }
}

// ---- modelop -------------------------------------------------------------------------

struct ModelArgs {
  double a = 0;
  int v = -1, m = -1;
  std::vector<int> betti, bplus, bh;
  std::vector<double> jdet;
  bool orthogonal = false, random = false, mirrored = false;
};

int run_modelop(const std::string& what, const ModelArgs& x, Context& ctx) {
  json out;
  auto need_m = [&] {
    if (x.m < 0) input_error(what + ": --m is required");
  };
  if (what == "logdet") {
    double v;
    check(cusp_logdet_model(x.a, &v));
    out["a"] = x.a;
    out["logdet"] = v;
  } else if (what == "at-db") {
    const int v = x.v >= 0 ? x.v : (x.m >= 1 ? x.m - 1 : -1);
    if (v < 0) input_error("at-db: --v (or --m) is required");
    double r;
    check(cusp_at_db(v, x.betti.data(), x.betti.size(), x.orthogonal, &r));
    out["v"] = v;
    out["at_db"] = r;
  } else if (what == "at-small") {
    need_m();
    double r;
    check(cusp_at_small(x.m, x.bplus.data(), x.bplus.size(), x.jdet.data(), x.jdet.size(), x.orthogonal, &r));
    out["m"] = x.m;
    out["at_small"] = r;
  } else if (what == "assembly") {
    Profile p;
    if (x.random) {
      need_m();
      check(cusp_profile_random(ctx.seed, x.m, x.mirrored, &p.p));
    } else if (ctx.config) {
      check(cusp_profile_from_json(ctx.config_text.c_str(), &p.p));
    } else {
      need_m();
      json pj{{"m", x.m}, {"b", x.betti}, {"bplus", x.bplus}, {"bH", x.bh}, {"jdet", x.jdet}};
      if (x.bplus.empty() && x.bh.empty()) {
        pj["bplus"] = x.betti;
        pj["bH"] = std::vector<int>(x.betti.size(), 0);
      }
      check(cusp_profile_from_json(pj.dump().c_str(), &p.p));
    }
    char* text = nullptr;
    check(cusp_profile_to_json(p.p, &text));
    out["profile"] = json::parse(text);
    cusp_string_free(text);
    cusp_assembly_report r;
    check(cusp_profile_assembly(p.p, &r));
    const double residual = std::abs(r.at_db + r.at_small + r.harmonic_correction - r.assembly);
    const double tol = ctx.tol("assembly", 1e-12);
    out["at_db"] = r.at_db;
    out["at_small"] = r.at_small;
    out["harmonic_correction"] = r.harmonic_correction;
    out["assembly"] = r.assembly;
    out["residual"] = residual;
    bool pass = residual <= tol;
    if (std::isfinite(r.assembly_orth)) {
      const double orth_residual = std::max({std::abs(r.at_db_orth - r.at_db), std::abs(r.at_small_orth - r.at_small),
                                             std::abs(r.harmonic_correction_orth - r.harmonic_correction)});
      out["orthogonal"] = {{"at_db", r.at_db_orth},
                           {"at_small", r.at_small_orth},
                           {"harmonic_correction", r.harmonic_correction_orth},
                           {"assembly", r.assembly_orth},
                           {"residual", orth_residual}};
      pass = pass && orth_residual <= tol;
    }
    out["cut_correction"] = r.rt10_correction;
    out["cut_correction_euclidean"] = r.rt10a_correction;
    out["tolerance"] = tol;
    out["pass"] = pass;
    ctx.write(render(out));
    return pass ? kPass : kTolerance;
  } else if (what == "cm-defect") {
    need_m();
    cusp_cm_defect d;
    check(cusp_cm_defect_eval(x.m, x.betti.data(), x.betti.size(), &d));
    out["m"] = x.m;
    out["general"] = {{"log2_term", d.log2_term}, {"dimension_term", d.dimension_term}, {"total", d.total}};
    out["euclidean"] = {{"log2_term", d.euclidean_log2_term},
                        {"dimension_term", d.euclidean_dimension_term},
                        {"total", d.euclidean_total}};
  } else if (what == "even-at") {
    need_m();
    double r;
    check(cusp_even_cusp_at(x.m, x.betti.data(), x.betti.size(), &r));
    out["m"] = x.m;
    out["even_at"] = r;
  } else if (what == "constants") {
    double c1, w, wr, s;
    check(cusp_c_const(1.0, &c1));
    check(cusp_wolpert_c1(0, &w));
    check(cusp_wolpert_c1(1, &wr));
    check(cusp_sphere_logdet(1.0, &s));
    out["c1"] = c1;
    out["wolpert_c1"] = w;
    out["wolpert_c1_reference"] = wr;
    out["log2"] = std::log(2.0);
    out["unit_sphere_logdet"] = s;
  } else {
    input_error("unknown modelop '" + what + "'");
  }
  ctx.write(render(out));
  return kPass;
}

// ---- torsion -------------------------------------------------------------------------

void load_space(const Context& ctx, const std::string& name, Space& s) {
  if (ctx.config) {
    check(cusp_space_from_json(ctx.config_text.c_str(), &s.p));
  } else {
    check(cusp_space_builtin(name.c_str(), &s.p));
  }
}

int run_torsion_verify(const std::string& identity, const std::string& name, int count, Context& ctx) {
  json out;
  out["identity"] = identity;
  bool pass = true;
  if (identity == "milnor") {
    double worst;
    check(cusp_milnor_suite(ctx.seed, count, &worst));
    const double tol = ctx.tol("milnor", 1e-9);
    out["seed"] = ctx.seed;
    out["sequences"] = count;
    out["max_residual"] = worst;
    out["residual"] = worst;
    out["tolerance"] = tol;
    pass = worst <= tol;
  } else if (identity == "rt3" || identity == "rt10") {
    Space s;
    load_space(ctx, name, s);
    cusp_cut_report r;
    check(cusp_space_verify_cut(s.p, ctx.seed, &r));
    const bool rt3 = identity == "rt3";
    const double tol = ctx.tol(identity, 1e-8);
    out["case"] = ctx.config ? ctx.config_path : name;
    out["lhs"] = r.log_tau_m;
    out["rhs"] = rt3 ? r.rt3_rhs : r.rt10_rhs;
    out["residual"] = rt3 ? r.rt3_residual : r.rt10_residual;
    if (!rt3) {
      out["sqrt2_term"] = r.sqrt2_term;
      out["residual_without_sqrt2"] = r.rt10_residual_without_sqrt2;
    }
    out["tolerance"] = tol;
    out["terms"] = {{"log_tau_m", r.log_tau_m},         {"log_tau_cut", r.log_tau_cut},
                    {"log_itau_hat", r.log_itau_hat},   {"log_tau_link", r.log_tau_link},
                    {"log_itau_cone", r.log_itau_cone}, {"log_tau_h1", r.log_tau_h1},
                    {"log_tau_h2", r.log_tau_h2},       {"milnor_cut_residual", r.milnor_cut_residual},
                    {"milnor_mv_residual", r.milnor_mv_residual}};
    out["dimension"] = r.dimension;
    out["witt"] = r.witt != 0;
    pass = (rt3 ? r.rt3_residual : r.rt10_residual) <= tol;
  } else if (identity == "subdivision") {
    Space s;
    load_space(ctx, name, s);
    const double tol = ctx.tol("subdivision", 1e-8);
    json parts = json::array();
    double worst = 0;
    const char* labels[] = {"whole", "cut", "link"};
    for (int part = 0; part < 3; ++part) {
      cusp_subdivision_report r;
      const cusp_status st = cusp_space_subdivision(s.p, part, &r);
      if (st == CUSP_ERR_INVALID_ARGUMENT && part > 0) break;  // no collar data
      check(st);
      parts.push_back({{"part", labels[part]}, {"lhs", r.log_tau}, {"rhs", r.log_tau_subdivided}, {"residual", r.defect}});
      worst = std::max(worst, r.defect);
    }
    out["case"] = ctx.config ? ctx.config_path : name;
    out["parts"] = parts;
    out["residual"] = worst;
    out["tolerance"] = tol;
    pass = worst <= tol;
  } else {
    input_error("unknown identity '" + identity + "' (rt3, rt10, milnor, subdivision)");
  }
  out["pass"] = pass;
  ctx.write(render(out));
  return pass ? kPass : kTolerance;
}

int run_torsion_log(Context& ctx) {
  if (!ctx.config) input_error("torsion log: --config with a cochain complex is required");
  Complex c;
  check(cusp_complex_from_json(ctx.config_text.c_str(), &c.p));
  std::size_t count = 0;
  check(cusp_complex_betti(c.p, nullptr, 0, &count));
  std::vector<int> betti(count);
  check(cusp_complex_betti(c.p, betti.data(), betti.size(), &count));
  cusp_torsion_report r;
  check(cusp_complex_log_torsion(c.p, &r));
  json out;
  out["betti"] = betti;
  out["log_torsion"] = r.log_torsion;
  out["laplacian_term"] = r.laplacian_term;
  out["basis_factor"] = r.basis_factor;
  ctx.write(render(out));
  return kPass;
}

// ---- sim -----------------------------------------------------------------------------

struct SimArgs {
  std::vector<double> a, t, eps;
  int n = 0, count = 20;
  double half_width = 0, h = 0;
  std::string surface = "symmetric";
  CLI::Option *a_opt = nullptr, *t_opt = nullptr, *eps_opt = nullptr, *n_opt = nullptr, *l_opt = nullptr,
              *h_opt = nullptr, *count_opt = nullptr, *case_opt = nullptr;
};

void load_surface(const Context& ctx, const SimArgs& x, double eps, Surface& s) {
  if (ctx.config && ctx.config->is_object() && ctx.config->contains("surface") && !(x.case_opt && x.case_opt->count())) {
    const std::string text = ctx.config->at("surface").dump();
    check(cusp_surface_from_json(text.c_str(), eps, &s.p));
  } else {
    check(cusp_surface_builtin(surface_name(x.surface).c_str(), eps, &s.p));
  }
}

int run_sim(const std::string& what, SimArgs x, Context& ctx) {
  ctx.from_config("a", x.a, x.a_opt);
  ctx.from_config("t", x.t, x.t_opt);
  ctx.from_config("eps", x.eps, x.eps_opt);
  ctx.from_config("n", x.n, x.n_opt);
  ctx.from_config("half_width", x.half_width, x.l_opt);
  ctx.from_config("h", x.h, x.h_opt);
  ctx.from_config("count", x.count, x.count_opt);
  ctx.from_config("case", x.surface, x.case_opt);

  bool pass = true;
  if (what == "rel-trace") {
    if (x.a.empty()) x.a = {0.5, 1.0, 2.0};
    if (x.t.empty()) x.t = {0.1, 0.5, 1.0, 4.0, 9.0};
    const double tol = ctx.tol("rel_trace", 1e-3);
    Csv csv({"a", "t", "half_width", "n", "numeric", "closed_form", "abs_error", "rel_error", "pass"});
    for (double a : x.a)
      for (double t : x.t) {
        double v, exact;
        check(cusp_relative_heat_trace(a, t, x.half_width, x.n, &v));
        check(cusp_strint_rhs(a, t, &exact));
        const double L = x.half_width > 0 ? x.half_width : 8.0 * std::sqrt(t) + 20.0;
        const double err = std::abs(v - exact);
        const bool ok = err <= tol;
        pass = pass && ok;
        csv.row({number(a), number(t), number(L), std::to_string(x.n > 0 ? x.n : 4000), number(v), number(exact),
                 number(err), number(err / std::abs(exact)), ok ? "1" : "0"});
      }
    ctx.write(csv.text());
  } else if (what == "rel-logdet") {
    if (x.a.empty()) x.a = {0.5, 1.0, 1.5};
    const double tol = ctx.tol("rel_logdet", 0.02);
    Csv csv({"a", "numeric", "spectral", "closed_form", "abs_error", "rel_error", "zero_mode", "pass"});
    for (double a : x.a) {
      cusp_relative_logdet r;
      check(cusp_relative_logdet_eval(a, x.half_width, x.n, &r));
      const double err = std::abs(r.value - r.target);
      const bool ok = err <= tol;
      pass = pass && ok;
      csv.row({number(a), number(r.value), number(r.spectral_value), number(r.target), number(err),
               number(err / std::abs(r.target)), number(r.zero_mode), ok ? "1" : "0"});
    }
    ctx.write(csv.text());
  } else if (what == "renorm-vol") {
    cusp_renorm_volume r;
    check(cusp_renorm_volume_eval(&r));
    const double tol = ctx.tol("renorm_vol", 1e-6);
    const double exact = 2.0 * std::log(2.0);
    const double err = std::abs(r.finite_part - exact);
    pass = err <= tol;
    Csv csv({"quantity", "numeric", "closed_form", "abs_error", "rel_error", "pass"});
    csv.row({"finite_part", number(r.finite_part), number(exact), number(err), number(err / exact), pass ? "1" : "0"});
    csv.row({"log_delta_slope", number(r.slope), number(-2.0), number(std::abs(r.slope + 2.0)),
             number(std::abs(r.slope + 2.0) / 2.0), ""});
    csv.row({"halving_change", number(r.halving_change), number(0.0), number(std::abs(r.halving_change)), "", ""});
    ctx.write(csv.text());
  } else if (what == "neck") {
    if (x.eps.empty()) x.eps = {1e-3};
    Csv csv({"eps", "index", "eigenvalue", "class", "predicted", "rel_error"});
    for (double eps : x.eps) {
      Surface s;
      load_surface(ctx, x, eps, s);
      std::vector<double> values(x.count);
      int modes = 0;
      check(cusp_neck_spectrum(s.p, x.count, x.h, -1, values.data(), &modes));
      cusp_gap_scan g;
      check(cusp_gap_scan_eval(values.data(), values.size(), &g));
      double v1 = 0, v2 = 0, predicted = NAN;
      // only a separating neck has the two-piece prediction
      if (g.small == 1 && cusp_surface_area(s.p, nullptr, &v1, &v2) == CUSP_OK) {
        double c;
        check(cusp_burger_coeff(v1, v2, &c));
        predicted = c * eps;
      }
      for (int i = 0; i < x.count; ++i) {
        const double v = values[i];
        const char* cls = v <= 1e-9 ? "zero" : v < g.delta ? "small" : "large";
        const bool small = std::string(cls) == "small";
        csv.row({number(eps), std::to_string(i), number(v), cls, small && std::isfinite(predicted) ? number(predicted) : "",
                 small && std::isfinite(predicted) ? number(std::abs(v - predicted) / predicted) : ""});
      }
    }
    ctx.write(csv.text());
  } else if (what == "small-eig") {
    if (x.eps.empty()) x.eps = {4e-2, 2e-2, 1e-2, 4e-3, 2e-3, 1e-3};
    Surface s;
    load_surface(ctx, x, x.eps.front(), s);
    cusp_small_eig_fit f;
    std::vector<double> lambda(x.eps.size());
    std::vector<int> small(x.eps.size());
    check(cusp_small_eig_fit_eval(s.p, x.eps.data(), x.eps.size(), x.h, &f, lambda.data(), small.data()));
    std::vector<double> eps = x.eps;
    std::sort(eps.begin(), eps.end(), std::greater<>());
    const double tol = ctx.tol("small_eig", 0.05);
    const bool has_prediction = f.predicted > 0;
    const double rel = has_prediction ? std::abs(f.extrapolated - f.predicted) / f.predicted : NAN;
    if (has_prediction) pass = rel <= tol;
    Csv csv({"eps", "lambda1", "lambda1_over_eps", "small_count", "extrapolated", "predicted", "rel_error", "pass"});
    for (std::size_t i = 0; i < eps.size(); ++i)
      csv.row({number(eps[i]), number(lambda[i]), number(lambda[i] / eps[i]), std::to_string(small[i]),
               number(f.extrapolated), has_prediction ? number(f.predicted) : "",
               has_prediction ? number(rel) : "", has_prediction ? (pass ? "1" : "0") : ""});
    ctx.write(csv.text());
  } else if (what == "logdet-fit") {
    if (x.eps.empty()) x.eps = {0.6, 0.4, 0.25, 0.16, 0.1, 0.06};
    std::vector<double> logdet;
    Csv csv({"eps", "logdet", "coarse", "fine", "t_min", "h", "fit_value", "residual"});
    std::vector<cusp_surface_logdet> rows;
    for (double eps : x.eps) {
      Surface s;
      load_surface(ctx, x, eps, s);
      cusp_surface_logdet r;
      check(cusp_surface_logdet_eval(s.p, x.h, 0, &r));
      rows.push_back(r);
      logdet.push_back(r.logdet);
    }
    cusp_logdet_fit f;
    check(cusp_logdet_fit_series(x.eps.data(), logdet.data(), logdet.size(), &f));
    double c1;
    check(cusp_wolpert_c1(0, &c1));
    const double tol = ctx.tol("c1_rel", 0.3);
    const double rel = std::abs(f.c_inv_eps - c1) / std::abs(c1);
    pass = f.monotone && f.c_inv_eps < 0 && rel <= tol;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double e = x.eps[i];
      const double fit = f.c_inv_eps / e + f.c_loglog * std::log(std::log(1.0 / e)) + f.c_log * std::log(e) + f.c_const;
      csv.row({number(e), number(rows[i].logdet), number(rows[i].coarse), number(rows[i].fine), number(rows[i].t_min),
               number(rows[i].h), number(fit), number(rows[i].logdet - fit)});
    }
    ctx.write(csv.text());
    std::cerr << "fit: c_inv_eps " << number(f.c_inv_eps) << ", reference " << number(c1) << ", relative difference "
              << number(rel) << ", monotone " << (f.monotone ? "yes" : "no") << "\n";
  } else {
    input_error("unknown sim command '" + what + "'");
  }
  return pass ? kPass : kTolerance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Torsion and spectral checks for manifolds with cusps"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  app.add_option("--config", ctx.config_path, "JSON input or parameter file");
  app.add_option("--out", ctx.out_path, "output path, '-' for stdout");
  app.add_option("--seed", ctx.seed, "seed for randomized suites");
  app.add_option("--tol", ctx.tol_args, "tolerance override NAME=VALUE")->allow_extra_args(false);
  app.add_option("--threads", ctx.threads, "worker threads");
  app.set_version_flag("--version", std::string(cusp_version()));

  std::function<int()> action;

  // modelop
  auto* modelop = app.add_subcommand("modelop", "closed-form model quantities (JSON)");
  modelop->require_subcommand(1);
  ModelArgs mx;
  const std::pair<const char*, const char*> model_ops[] = {
      {"logdet", "log det of the model operator with weight a"},
      {"at-db", "torsion term from the link Betti numbers"},
      {"at-small", "small-eigenvalue torsion term"},
      {"assembly", "assembly identity for a Betti profile"},
      {"cm-defect", "cut defect, general and Euclidean forms"},
      {"even-at", "even-dimensional cusp term"},
      {"constants", "reference constants"}};
  for (const auto& [name, help] : model_ops) {
    auto* sub = modelop->add_subcommand(name, help);
    const std::string what = name;
    if (what == "logdet") sub->add_option("--a", mx.a, "weight a")->required();
    if (what == "at-db") sub->add_option("--v", mx.v, "link dimension");
    if (what != "logdet" && what != "constants") sub->add_option("--m", mx.m, "manifold dimension");
    if (what == "at-db" || what == "assembly" || what == "cm-defect" || what == "even-at")
      sub->add_option("--betti", mx.betti, "comma separated Betti numbers")->delimiter(',');
    if (what == "at-small" || what == "assembly") {
      sub->add_option("--bplus", mx.bplus, "Betti numbers of the image part")->delimiter(',');
      sub->add_option("--jdet", mx.jdet, "restriction-map determinants")->delimiter(',');
    }
    if (what == "assembly") {
      sub->add_option("--bH", mx.bh, "Betti numbers of the harmonic part")->delimiter(',');
      sub->add_flag("--random", mx.random, "draw a random Witt profile from --seed");
      sub->add_flag("--mirrored", mx.mirrored, "random profile with Poincare symmetry");
    }
    if (what == "at-db" || what == "at-small") sub->add_flag("--orthogonal", mx.orthogonal, "orthogonal holonomy form");
    sub->callback([&, what] { action = [&, what] { return run_modelop(what, mx, ctx); }; });
  }

  // torsion
  auto* torsion = app.add_subcommand("torsion", "combinatorial torsion and cut identities (JSON)");
  torsion->require_subcommand(1);
  auto* verify = torsion->add_subcommand("verify", "check an identity");
  std::string identity, case_name = "s1xs2";
  int count = 100;
  verify->add_option("identity", identity, "rt3 | rt10 | milnor | subdivision")->required();
  verify->add_option("--case", case_name, "built-in case: s1xs2, s1xs2-twisted, torus, dumbbell");
  verify->add_option("--n", count, "number of random sequences (milnor)");
  verify->callback([&] { action = [&] { return run_torsion_verify(identity, case_name, count, ctx); }; });
  auto* tlog = torsion->add_subcommand("log", "log torsion of a cochain complex given by --config");
  tlog->callback([&] { action = [&] { return run_torsion_log(ctx); }; });

  // sim
  auto* simc = app.add_subcommand("sim", "numerical spectral checks (CSV)");
  simc->require_subcommand(1);
  std::map<std::string, SimArgs> sims;
  const std::pair<const char*, const char*> sim_ops[] = {
      {"rel-trace", "relative heat trace against erf(a sqrt t)"},
      {"rel-logdet", "relative log det of the weighted operator"},
      {"renorm-vol", "renormalized volume fit"},
      {"neck", "lowest eigenvalues of a necked surface"},
      {"small-eig", "small eigenvalue versus neck width"},
      {"logdet-fit", "surface log det over shrinking necks and its fit"}};
  for (const auto& [name, help] : sim_ops) {
    auto* sub = simc->add_subcommand(name, help);
    const std::string what = name;
    SimArgs& sx = sims[what];
    if (what == "rel-trace" || what == "rel-logdet") {
      sx.a_opt = sub->add_option("--a", sx.a, "weights")->delimiter(',');
      sx.n_opt = sub->add_option("--n", sx.n, "interior grid points");
      sx.l_opt = sub->add_option("--half-width", sx.half_width, "box half width L");
    }
    if (what == "rel-trace") sx.t_opt = sub->add_option("--t", sx.t, "times")->delimiter(',');
    if (what == "neck" || what == "small-eig" || what == "logdet-fit") {
      sx.case_opt = sub->add_option("--case", sx.surface, "symmetric, asymmetric, handle, sphere");
      sx.eps_opt = sub->add_option("--eps", sx.eps, "neck widths")->delimiter(',');
      sx.h_opt = sub->add_option("--spacing", sx.h, "grid spacing h");
    }
    if (what == "neck") sx.count_opt = sub->add_option("--count", sx.count, "eigenvalues to list");
    sub->callback([&, what] { action = [&, what] { return run_sim(what, sims.at(what), ctx); }; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    ctx.prepare();
    reject_unknown_tolerances(ctx);
    if (!action) input_error("no command given");
    return action();
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kGuard;
  }
}
