#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

#include "json.hpp"
#include "morreylab/grid.hpp"
#include "morreylab/spaces.hpp"
#include "morreylab/verify.hpp"
#include "morreylab/weight.hpp"
#include "morreylab/weights.hpp"

namespace morreylab {

/// GridFunction CSV: a `n,J,L` header, the header values, then one value per line.
/// A first line holding the numbers directly is also accepted. Margin defaults to L/4.
GridFunction parse_grid_function(std::istream& in, const std::string& source,
                                 double margin = -1.0);
GridFunction read_grid_function(const std::string& path, double margin = -1.0);
std::string format_grid_function(const GridFunction& f);
void write_grid_function(const std::string& path, const GridFunction& f);

/// `power:x0=..,gamma=..` (2D center as `a;b`, x0 defaults to 0) or `sampled:<csv path>`.
Weight parse_weight_spec(const std::string& text, int dim);

using SpaceSpec = std::variant<MorreyParams, OscillationParams>;
/// `morrey:p=..,kappa=..,u=..,v=..` or `osc:beta=..,p=..,w=..`; omitted weights are unit.
SpaceSpec parse_space_spec(const std::string& text, int dim);

/// Flat key = value run configuration.
struct RunConfig {
  std::string command = "verify";
  std::string id = "THM1";
  int n = 1;
  int j1 = 9;
  int j2 = 10;
  double half_width = 2.0;
  double margin = 0.5;
  int shifts = 3;
  ParamSet params;
  std::uint64_t seed = 20240601;
  int count = 20;
  /// Empty, or a proposition id P3.7 / P4.4 / P5.2 to run after the sweep.
  std::string pointwise;
  std::string out;

  bool operator==(const RunConfig&) const = default;
};

/// Unknown keys and malformed values raise ParseError. Parameter keys missing from the
/// text fall back to the defaults of the configured id.
RunConfig parse_run_config(const std::string& text);
std::string format_run_config(const RunConfig& cfg);

nlohmann::json to_json(const ParamSet& ps);
nlohmann::json to_json(const VerificationReport& rep);
nlohmann::json to_json(const WeightClassReport& rep, const Grid& grid);
nlohmann::json cube_json(const Grid& grid, const GridCube& q);

}  // namespace morreylab
