#include "morreylab/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <limits>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "morreylab/errors.hpp"
#include "morreylab/format.hpp"

namespace morreylab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

template <class Error>
double to_double(const std::string& raw, const std::string& what) {
  const std::string text = trim(raw);
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = text.data();
  if (!text.empty() && text[0] == '+') ++first;
  const auto res = std::from_chars(first, text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw Error("bad number '" + text + "' for " + what);
  return v;
}

template <class Error>
long long to_integer(const std::string& raw, const std::string& what) {
  const std::string text = trim(raw);
  long long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw Error("bad integer '" + text + "' for " + what);
  return v;
}

bool is_number(const std::string& s) {
  double v;
  const std::string t = trim(s);
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  return !t.empty() && res.ec == std::errc() && res.ptr == t.data() + t.size();
}

}  // namespace

GridFunction parse_grid_function(std::istream& in, const std::string& source, double margin) {
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    line = trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw ParseError(source + ": empty file");
  std::size_t at = 0;
  std::vector<std::string> head = split(lines[at], ',');
  if (head.size() == 3 && trim(head[0]) == "n" && trim(head[1]) == "J" && trim(head[2]) == "L") {
    ++at;
    if (at >= lines.size()) throw ParseError(source + ": missing header values");
    head = split(lines[at], ',');
  }
  if (head.size() != 3 || !is_number(head[0]) || !is_number(head[1]) || !is_number(head[2]))
    throw ParseError(source + ": header must be n,J,L");
  ++at;
  const auto n = to_integer<ParseError>(head[0], "n");
  const auto j = to_integer<ParseError>(head[1], "J");
  const double half = to_double<ParseError>(head[2], "L");
  std::vector<double> values;
  for (; at < lines.size(); ++at) {
    values.push_back(to_double<ParseError>(lines[at], source + " line " + std::to_string(at + 1)));
  }
  try {
    const DomainBox box(static_cast<int>(n), half, margin < 0.0 ? half / 4.0 : margin);
    return GridFunction(Grid(box, static_cast<int>(j)), std::move(values));
  } catch (const ParameterError& e) {
    throw ParseError(source + ": " + e.what());
  }
}

GridFunction read_grid_function(const std::string& path, double margin) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_grid_function(in, path, margin);
}

std::string format_grid_function(const GridFunction& f) {
  const Grid& g = f.grid();
  std::ostringstream os;
  os << "n,J,L\n" << g.dim() << ',' << g.level() << ',' << format_number(g.box().half_width) << '\n';
  char buf[40];
  for (double v : f.values()) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf << '\n';
  }
  return os.str();
}

void write_grid_function(const std::string& path, const GridFunction& f) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << format_grid_function(f);
  if (!out) throw ParseError("write failed for '" + path + "'");
}

namespace {

// Splits "k1=v1,k2=v2,..." where a value may itself contain commas: a token whose key is not
// one of the expected top-level keys continues the previous value.
std::map<std::string, std::string> split_fields(const std::string& body,
                                                const std::set<std::string>& keys,
                                                const std::string& kind) {
  std::map<std::string, std::string> out;
  std::string last;
  for (const std::string& raw : split(body, ',')) {
    const std::string tok = trim(raw);
    if (tok.empty()) continue;
    const auto eq = tok.find('=');
    const std::string key = eq == std::string::npos ? "" : trim(tok.substr(0, eq));
    if (keys.count(key) != 0) {
      if (out.count(key) != 0) throw ParameterError(kind + ": duplicate key '" + key + "'");
      out[key] = trim(tok.substr(eq + 1));
      last = key;
    } else if (!last.empty()) {
      out[last] += "," + tok;
    } else {
      throw ParameterError(kind + ": unexpected '" + tok + "'");
    }
  }
  return out;
}

}  // namespace

Weight parse_weight_spec(const std::string& raw, int dim) {
  const std::string text = trim(raw);
  const auto colon = text.find(':');
  const std::string kind = trim(text.substr(0, colon));
  const std::string body = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "sampled") {
    if (trim(body).empty()) throw ParameterError("sampled weight needs a CSV path");
    const GridFunction f = read_grid_function(trim(body));
    if (f.grid().dim() != dim) throw ParameterError("sampled weight has the wrong dimension");
    return Weight::sampled(f);
  }
  if (kind != "power") throw ParameterError("unknown weight spec '" + text + "'");
  const auto fields = split_fields(body, {"x0", "gamma"}, "weight spec");
  Point center{0.0, 0.0};
  if (auto it = fields.find("x0"); it != fields.end()) {
    const auto parts = split(it->second, ';');
    if (static_cast<int>(parts.size()) != dim) throw ParameterError("x0 needs " + std::to_string(dim) + " coordinates");
    for (int a = 0; a < dim; ++a) center[a] = to_double<ParameterError>(parts[a], "x0");
  }
  const auto g = fields.find("gamma");
  if (g == fields.end()) throw ParameterError("power weight needs gamma");
  return Weight::power(dim, center, to_double<ParameterError>(g->second, "gamma"));
}

SpaceSpec parse_space_spec(const std::string& raw, int dim) {
  const std::string text = trim(raw);
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParameterError("space spec needs a kind prefix");
  const std::string kind = trim(text.substr(0, colon));
  const std::string body = text.substr(colon + 1);
  auto weight_or_unit = [&](const std::map<std::string, std::string>& f, const std::string& k) {
    const auto it = f.find(k);
    return it == f.end() ? Weight::unit(dim) : parse_weight_spec(it->second, dim);
  };
  if (kind == "morrey") {
    const auto f = split_fields(body, {"p", "kappa", "u", "v"}, "morrey spec");
    if (f.count("p") == 0 || f.count("kappa") == 0)
      throw ParameterError("morrey spec needs p and kappa");
    return MorreyParams(to_double<ParameterError>(f.at("p"), "p"),
                        to_double<ParameterError>(f.at("kappa"), "kappa"),
                        weight_or_unit(f, "u"), weight_or_unit(f, "v"));
  }
  if (kind == "osc") {
    const auto f = split_fields(body, {"beta", "p", "w"}, "osc spec");
    const double beta = f.count("beta") ? to_double<ParameterError>(f.at("beta"), "beta") : 0.0;
    const double p = f.count("p") ? to_double<ParameterError>(f.at("p"), "p") : 1.0;
    return OscillationParams(beta, p, weight_or_unit(f, "w"));
  }
  throw ParameterError("unknown space kind '" + kind + "'");
}

namespace {

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "command", "id",    "n",     "J1",   "J2",    "L",     "margin", "shifts", "alpha",
      "beta",    "p",     "kappa", "delta", "gamma", "r",     "seed",   "count",  "pointwise",
      "out"};
  return keys;
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  const auto& known = config_keys();
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ParseError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    kv[key] = trim(line.substr(eq + 1));
  }
  RunConfig cfg;
  auto num = [&](const std::string& k) { return to_double<ParseError>(kv.at(k), k); };
  auto integer = [&](const std::string& k) { return to_integer<ParseError>(kv.at(k), k); };
  if (kv.count("command")) cfg.command = kv["command"];
  if (kv.count("id")) cfg.id = kv["id"];
  try {
    cfg.params = default_params(parse_bound_id(cfg.id));
  } catch (const ParameterError& e) {
    throw ParseError(e.what());
  }
  if (kv.count("n")) cfg.n = static_cast<int>(integer("n"));
  cfg.params.n = cfg.n;
  if (kv.count("J1")) cfg.j1 = static_cast<int>(integer("J1"));
  if (kv.count("J2")) cfg.j2 = static_cast<int>(integer("J2"));
  if (kv.count("L")) cfg.half_width = num("L");
  if (kv.count("margin")) cfg.margin = num("margin");
  if (kv.count("shifts")) cfg.shifts = static_cast<int>(integer("shifts"));
  if (kv.count("alpha")) cfg.params.alpha = num("alpha");
  if (kv.count("beta")) cfg.params.beta = num("beta");
  if (kv.count("p")) cfg.params.p = num("p");
  if (kv.count("kappa")) cfg.params.kappa = num("kappa");
  if (kv.count("delta")) cfg.params.delta = num("delta");
  if (kv.count("gamma")) cfg.params.gamma = num("gamma");
  if (kv.count("r")) cfg.params.r = num("r");
  if (kv.count("seed")) {
    const std::string& s = kv["seed"];
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
      throw ParseError("bad seed '" + s + "'");
    cfg.seed = v;
  }
  if (kv.count("count")) cfg.count = static_cast<int>(integer("count"));
  if (kv.count("pointwise")) cfg.pointwise = kv["pointwise"];
  if (kv.count("out")) cfg.out = kv["out"];
  return cfg;
}

std::string format_run_config(const RunConfig& cfg) {
  std::ostringstream os;
  auto put = [&](const std::string& k, const std::string& v) { os << k << " = " << v << '\n'; };
  put("command", cfg.command);
  put("id", cfg.id);
  put("n", std::to_string(cfg.n));
  put("J1", std::to_string(cfg.j1));
  put("J2", std::to_string(cfg.j2));
  put("L", format_number(cfg.half_width));
  put("margin", format_number(cfg.margin));
  put("shifts", std::to_string(cfg.shifts));
  put("alpha", format_number(cfg.params.alpha));
  put("beta", format_number(cfg.params.beta));
  put("p", format_number(cfg.params.p));
  put("kappa", format_number(cfg.params.kappa));
  put("delta", format_number(cfg.params.delta));
  put("gamma", format_number(cfg.params.gamma));
  if (cfg.params.r) put("r", format_number(*cfg.params.r));
  put("seed", std::to_string(cfg.seed));
  put("count", std::to_string(cfg.count));
  if (!cfg.pointwise.empty()) put("pointwise", cfg.pointwise);
  if (!cfg.out.empty()) put("out", cfg.out);
  return os.str();
}

namespace {

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

}  // namespace

nlohmann::json to_json(const ParamSet& ps) {
  nlohmann::json j;
  j["n"] = ps.n;
  j["alpha"] = ps.alpha;
  j["beta"] = ps.beta;
  j["p"] = ps.p;
  j["kappa"] = ps.kappa;
  j["delta"] = ps.delta;
  j["gamma"] = ps.gamma;
  j["r"] = ps.r_used();
  j["p_dual"] = number(ps.p_dual());
  j["q"] = number(ps.q());
  j["s"] = number(ps.s());
  j["r_w"] = number(ps.r_w());
  return j;
}

nlohmann::json to_json(const VerificationReport& rep) {
  nlohmann::json j;
  j["id"] = rep.id;
  j["params"] = to_json(rep.params);
  j["hypotheses"] = nlohmann::json::array();
  for (const Verdict& v : rep.hypotheses) {
    j["hypotheses"].push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
  }
  j["ratios"] = nlohmann::json::array();
  for (const RatioEntry& r : rep.ratios) {
    nlohmann::json e{{"input", r.input}};
    e["value"] = r.value ? number(*r.value) : nlohmann::json(nullptr);
    if (!r.note.empty()) e["note"] = r.note;
    j["ratios"].push_back(e);
  }
  j["sup_ratio"] = number(rep.sup_ratio);
  j["drift"] = rep.drift ? number(*rep.drift) : nlohmann::json(nullptr);
  j["drift_threshold"] = rep.drift_threshold;
  j["levels"] = nlohmann::json::array();
  for (const auto& [level, sup] : rep.levels) {
    j["levels"].push_back({{"J", level}, {"sup_ratio", number(sup)}});
  }
  if (!rep.source_space.empty()) j["source_space"] = rep.source_space;
  if (!rep.target_space.empty()) j["target_space"] = rep.target_space;
  if (!rep.symbol_space.empty()) j["symbol_space"] = rep.symbol_space;
  j["seconds"] = rep.seconds;
  return j;
}

nlohmann::json cube_json(const Grid& grid, const GridCube& q) {
  const Cube c = to_cube(grid, q);
  nlohmann::json center = nlohmann::json::array();
  for (int a = 0; a < grid.dim(); ++a) center.push_back(c.center[a]);
  return {{"center", center}, {"side", c.side}};
}

nlohmann::json to_json(const WeightClassReport& rep, const Grid& grid) {
  return {{"class", to_string(rep.cls)},
          {"params", rep.params},
          {"constant", number(rep.constant)},
          {"cube", cube_json(grid, rep.cube)}};
}

}  // namespace morreylab
