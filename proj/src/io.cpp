#include "cusp/io.hpp"

#include "cusp/errors.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cusp::io {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { fail(ErrorKind::Parse, what); }

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) parse_fail(where + ": missing \"" + key + "\"");
  return j.at(key);
}

template <class T>
T as(const json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    parse_fail(where + ": " + e.what());
  }
}

numerics::Matrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where + ": matrix must be a list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  numerics::Matrix m;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto row = as<std::vector<double>>(j[r], where);
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      m.resize(rows, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      parse_fail(where + ": ragged matrix rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  if (cols < 0) m.resize(0, 0);
  return m;
}

json matrix_to_json(const numerics::Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(what + ": malformed JSON: " + e.what());
  }
}

json load_json(const std::string& path) { return parse_json(read_file(path), path); }

chain::BasedComplex complex_from_json(const json& j) {
  const std::string where = "complex";
  const auto dims = as<std::vector<int>>(require(j, "dims", where), where + ".dims");
  const json& dj = require(j, "differentials", where);
  if (!dj.is_array()) parse_fail(where + ": differentials must be a list");
  std::vector<numerics::Matrix> diff;
  for (std::size_t q = 0; q < dj.size(); ++q) {
    numerics::Matrix m = matrix_from_json(dj[q], where + ".differentials[" + std::to_string(q) + "]");
    // an empty list stands for the zero map of the right shape
    if (m.size() == 0 && q + 1 < dims.size()) m = numerics::Matrix::Zero(dims[q + 1], dims[q]);
    diff.push_back(std::move(m));
  }
  std::vector<numerics::Matrix> grams;
  if (j.contains("grams")) {
    const json& gj = j.at("grams");
    if (!gj.is_array()) parse_fail(where + ": grams must be a list");
    for (std::size_t q = 0; q < gj.size(); ++q)
      grams.push_back(matrix_from_json(gj[q], where + ".grams[" + std::to_string(q) + "]"));
  }
  try {
    return chain::BasedComplex(dims, std::move(diff), std::move(grams));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidArgument) parse_fail(where + ": " + e.what());
    throw;
  }
}

json complex_to_json(const chain::BasedComplex& c) {
  json j;
  j["dims"] = c.dims();
  json diffs = json::array();
  for (int q = 0; q < c.top_degree(); ++q) diffs.push_back(matrix_to_json(c.d(q)));
  j["differentials"] = std::move(diffs);
  if (!c.has_identity_gram()) {
    json grams = json::array();
    for (int q = 0; q <= c.top_degree(); ++q) grams.push_back(matrix_to_json(c.gram(q)));
    j["grams"] = std::move(grams);
  }
  return j;
}

SimplicialInput simplicial_from_json(const json& j) {
  const std::string where = "simplicial complex";
  SimplicialInput in;
  const auto simplices = as<std::vector<std::vector<int>>>(require(j, "simplices", where), where + ".simplices");
  if (simplices.empty()) parse_fail(where + ": no simplices");
  for (const auto& s : simplices)
    for (int v : s)
      if (v < 0) parse_fail(where + ": vertex labels must be nonnegative");
  std::vector<simplicial::Simplex> sorted;
  for (auto s : simplices) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) parse_fail(where + ": repeated vertex in a simplex");
    sorted.push_back(std::move(s));
  }
  in.complex = simplicial::SimplicialComplex::from_simplices(sorted);
  if (j.contains("vertices")) {
    const int n = as<int>(j.at("vertices"), where + ".vertices");
    if (n != static_cast<int>(in.complex.vertices().size()))
      parse_fail(where + ": vertex count " + std::to_string(n) + " does not match the simplices");
  }
  const int rank = j.contains("rank") ? as<int>(j.at("rank"), where + ".rank") : 1;
  if (rank < 1) parse_fail(where + ": rank must be positive");
  in.system = simplicial::FlatSystem(rank);
  if (j.contains("holonomy")) {
    const json& hj = j.at("holonomy");
    if (!hj.is_array()) parse_fail(where + ": holonomy must be a list");
    for (const json& e : hj) {
      const auto edge = as<std::vector<int>>(require(e, "edge", where + ".holonomy"), where + ".holonomy.edge");
      if (edge.size() != 2) parse_fail(where + ": holonomy edge must have two vertices");
      numerics::Matrix m;
      const json& mj = require(e, "matrix", where + ".holonomy");
      if (mj.is_number()) {
        m = numerics::Matrix::Constant(1, 1, mj.get<double>());
      } else {
        m = matrix_from_json(mj, where + ".holonomy.matrix");
      }
      if (m.rows() != rank || m.cols() != rank) parse_fail(where + ": holonomy matrix must be rank x rank");
      int a = edge[0], b = edge[1];
      if (a > b) {
        std::swap(a, b);
        m = m.inverse().eval();
      }
      in.system.set_holonomy(a, b, m);
    }
  }
  if (j.contains("dimension")) in.dimension = as<int>(j.at("dimension"), where + ".dimension");
  if (j.contains("collar")) {
    const json& cj = j.at("collar");
    in.z_vertices = as<std::vector<int>>(require(cj, "z", where + ".collar"), where + ".collar.z");
    if (cj.contains("plus_side")) in.plus_side = as<std::vector<int>>(cj.at("plus_side"), where + ".collar.plus_side");
  }
  return in;
}

json simplicial_to_json(const SimplicialInput& in) {
  json j;
  json simplices = json::array();
  const int top = in.complex.dimension();
  // maximal simplices suffice; faces are regenerated on load
  for (int q = top; q >= 0; --q)
    for (const auto& s : in.complex.simplices(q)) {
      bool maximal = true;
      if (q < top)
        for (const auto& t : in.complex.simplices(q + 1))
          if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
            maximal = false;
            break;
          }
      if (maximal) simplices.push_back(s);
    }
  j["simplices"] = std::move(simplices);
  j["vertices"] = in.complex.vertices().size();
  j["rank"] = in.system.rank();
  json hol = json::array();
  for (const auto& [edge, m] : in.system.edges()) hol.push_back({{"edge", {edge.first, edge.second}}, {"matrix", matrix_to_json(m)}});
  j["holonomy"] = std::move(hol);
  if (in.dimension >= 0) j["dimension"] = in.dimension;
  if (!in.z_vertices.empty()) {
    j["collar"]["z"] = in.z_vertices;
    if (in.plus_side) j["collar"]["plus_side"] = *in.plus_side;
  }
  return j;
}

model::BettiProfile profile_from_json(const json& j) {
  const std::string where = "betti profile";
  model::BettiProfile p;
  p.m = as<int>(require(j, "m", where), where + ".m");
  p.b = as<std::vector<int>>(require(j, "b", where), where + ".b");
  if (j.contains("bplus")) p.bplus = as<std::vector<int>>(j.at("bplus"), where + ".bplus");
  if (j.contains("bH")) p.bH = as<std::vector<int>>(j.at("bH"), where + ".bH");
  if (j.contains("jdet")) p.jdet = as<std::vector<double>>(j.at("jdet"), where + ".jdet");
  return p;
}

json profile_to_json(const model::BettiProfile& p) {
  return json{{"m", p.m}, {"b", p.b}, {"bplus", p.bplus}, {"bH", p.bH}, {"jdet", p.jdet}};
}

sim::NeckSurface surface_from_json(const json& j, double eps) {
  const std::string where = "surface";
  sim::NeckSurface s;
  if (j.is_string()) return sim::builtin_surface(j.get<std::string>(), eps);
  if (j.contains("builtin")) {
    s = sim::builtin_surface(as<std::string>(j.at("builtin"), where + ".builtin"), eps);
  } else {
    const auto topo = as<std::string>(require(j, "topology", where), where + ".topology");
    if (topo == "dumbbell")
      s.topology = sim::SurfaceTopology::Dumbbell;
    else if (topo == "handle")
      s.topology = sim::SurfaceTopology::Handle;
    else if (topo == "sphere")
      s.topology = sim::SurfaceTopology::Sphere;
    else
      parse_fail(where + ": unknown topology '" + topo + "'");
  }
  s.eps = eps;
  if (j.contains("cap_left")) s.cap_left = as<double>(j.at("cap_left"), where + ".cap_left");
  if (j.contains("cap_right")) s.cap_right = as<double>(j.at("cap_right"), where + ".cap_right");
  if (j.contains("radius")) s.cap_left = s.cap_right = as<double>(j.at("radius"), where + ".radius");
  if (j.contains("collar")) s.collar = as<double>(j.at("collar"), where + ".collar");
  if (j.contains("theta_period")) s.theta_period = as<double>(j.at("theta_period"), where + ".theta_period");
  s.validate();
  return s;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
  if (header.empty()) fail(ErrorKind::InvalidArgument, "csv: empty header");
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) fail(ErrorKind::Internal, "csv: row width does not match the header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ += ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n") != std::string::npos) {
      out_ += '"';
      for (char ch : c) {
        if (ch == '"') out_ += '"';
        out_ += ch;
      }
      out_ += '"';
    } else {
      out_ += c;
    }
  }
  out_ += '\n';
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  out << text;
}

}  // namespace cusp::io
