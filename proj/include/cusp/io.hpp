#pragma once
#include "cusp/chain_torsion.hpp"
#include "cusp/model_formulas.hpp"
#include "cusp/simplicial.hpp"
#include "cusp/surface.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cusp::io {

using json = nlohmann::json;

// Reads a whole file; Parse error when it cannot be opened.
std::string read_file(const std::string& path);
json parse_json(const std::string& text, const std::string& what = "input");
json load_json(const std::string& path);

// {"dims": [..], "differentials": [[[row], ..], ..], "grams": optional, same layout}
chain::BasedComplex complex_from_json(const json& j);
json complex_to_json(const chain::BasedComplex& c);

// {"simplices": [[0,1,2], ..], "rank": k, "holonomy": [{"edge": [a, b], "matrix": [[..]]}, ..],
//  "dimension": m, "collar": {"z": [..], "plus_side": [..]}}; only "simplices" is required.
struct SimplicialInput {
  simplicial::SimplicialComplex complex;
  simplicial::FlatSystem system;
  int dimension = -1;
  std::vector<int> z_vertices;
  std::optional<std::vector<int>> plus_side;
};
SimplicialInput simplicial_from_json(const json& j);
json simplicial_to_json(const SimplicialInput& in);

// {"m": 3, "b": [..], "bplus": [..], "bH": [..], "jdet": [..]}
model::BettiProfile profile_from_json(const json& j);
json profile_to_json(const model::BettiProfile& p);

// {"builtin": "symmetric"} or {"topology": "dumbbell", "cap_left": .., "cap_right": ..,
//  "collar": .., "theta_period": ..}; eps is set separately.
sim::NeckSurface surface_from_json(const json& j, double eps);

// 17 significant digits with '.' as the decimal point, whatever the locale.
std::string format_number(double x);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  std::string str() const { return out_; }

 private:
  std::size_t width_;
  std::string out_;
};

// Writes text to path, or to stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& text);

}  // namespace cusp::io
