#include "morreylab/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "morreylab/corpus.hpp"
#include "morreylab/errors.hpp"
#include "morreylab/io.hpp"
#include "morreylab/operators.hpp"
#include "morreylab/spaces.hpp"
#include "morreylab/verify.hpp"
#include "morreylab/weights.hpp"

namespace morreylab {

namespace {

struct OpArgs {
  std::string name;
  std::string in;
  std::string out;
  std::string b;
  std::string weight;
  double alpha = 0.5;
  double beta = 0.0;
  double r = 1.0;
  double delta = 0.5;
  int shifts = 3;
  bool full = false;
};

struct NormArgs {
  std::string space;
  std::string in;
  int shifts = 3;
};

struct WeightArgs {
  std::string weight;
  std::string cls = "ap";
  double p = 2.0;
  double q = 4.0;
  double r = 2.0;
  int n = 1;
  int level = 12;
  double half_width = 1.0;
  int shifts = 3;
  bool oracle = false;
};

struct VerifyArgs {
  std::string id;
  std::string config;
  std::string out;
  std::string pointwise;
  int j1 = 0;
  int j2 = 0;
  int shifts = 0;
  long long seed = -1;
  int count = 0;
};

struct CorpusArgs {
  int n = 1;
  int level = 9;
  double half_width = 2.0;
  double margin = 0.5;
  std::uint64_t seed = 20240601;
  int count = 20;
  std::string out_dir;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << text;
  if (!f) throw ParseError("write failed for '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

int cmd_op(const OpArgs& a, std::ostream& out) {
  if (a.name != "ialpha" && a.name != "commutator") parse_maximal_variant(a.name);
  const GridFunction f = read_grid_function(a.in);
  const Grid& g = f.grid();
  const CubeFamily family = a.full ? make_full_family(g) : make_cube_family(g, a.shifts);
  auto weight = [&] {
    if (a.weight.empty()) throw ParameterError("operator '" + a.name + "' needs --w");
    return parse_weight_spec(a.weight, g.dim());
  };
  GridFunction result = f;
  if (a.name == "ialpha") {
    result = fractional_integral(f, FracIntConfig(g.dim(), a.alpha));
  } else if (a.name == "commutator") {
    if (a.b.empty()) throw ParameterError("commutator needs --b");
    const FracIntConfig cfg(g.dim(), a.alpha);
    result = commutator(read_grid_function(a.b), f, cfg);
  } else {
    MaximalConfig cfg;
    switch (parse_maximal_variant(a.name)) {
      case MaximalVariant::kPlain:
        cfg = MaximalConfig::plain();
        break;
      case MaximalVariant::kFractional:
        cfg = MaximalConfig::fractional(a.beta, a.r);
        break;
      case MaximalVariant::kWeighted:
        cfg = MaximalConfig::weighted(weight());
        break;
      case MaximalVariant::kFractionalWeighted:
        cfg = MaximalConfig::fractional_weighted(a.beta, a.r, weight());
        break;
      case MaximalVariant::kDelta:
        cfg = MaximalConfig::delta_variant(a.delta);
        break;
      case MaximalVariant::kSharpDelta:
        cfg = MaximalConfig::sharp_delta(a.delta);
        break;
    }
    result = maximal(f, cfg, family);
  }
  if (!a.out.empty()) write_grid_function(a.out, result);
  const auto vals = result.values();
  const auto hi = std::max_element(vals.begin(), vals.end());
  const auto lo = std::min_element(vals.begin(), vals.end());
  const auto cell = static_cast<std::size_t>(hi - vals.begin());
  nlohmann::json center = nlohmann::json::array();
  const Point x = g.cell_center(cell);
  for (int k = 0; k < g.dim(); ++k) center.push_back(x[k]);
  nlohmann::json j{{"operator", a.name},
                   {"min", *lo},
                   {"max", *hi},
                   {"argmax_cell", cell},
                   {"argmax_center", center},
                   {"hash", result.content_hash()}};
  if (!a.out.empty()) j["out"] = a.out;
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_norm(const NormArgs& a, std::ostream& out) {
  const GridFunction f = read_grid_function(a.in);
  const Grid& g = f.grid();
  const SpaceSpec spec = parse_space_spec(a.space, g.dim());
  const CubeFamily family = make_cube_family(g, a.shifts);
  const NormResult r = std::holds_alternative<MorreyParams>(spec)
                           ? morrey_norm(f, std::get<MorreyParams>(spec), family)
                           : oscillation_norm(f, std::get<OscillationParams>(spec), family);
  nlohmann::json j{{"space", a.space}, {"value", r.value}, {"cube", cube_json(g, r.cube)}};
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_weights(const WeightArgs& a, std::ostream& out, std::ostream& err) {
  const Weight w = parse_weight_spec(a.weight, a.n);
  const Grid grid = w.is_power()
                        ? Grid(DomainBox(a.n, a.half_width, a.half_width / 4.0), a.level)
                        : w.samples().grid();
  const CubeFamily family = make_cube_family(grid, a.shifts);
  const WeightClass cls = parse_weight_class(a.cls);
  std::vector<double> params;
  switch (cls) {
    case WeightClass::kAp:
      params = {a.p};
      break;
    case WeightClass::kApq:
      params = {a.p, a.q};
      break;
    case WeightClass::kRh:
      params = {a.r};
      break;
  }
  std::optional<bool> verdict;
  if (a.oracle) verdict = power_membership(w, cls, params);
  nlohmann::json j{{"weight", w.spec()}};
  try {
    WeightClassReport rep{};
    switch (cls) {
      case WeightClass::kAp:
        rep = ap_constant(w, a.p, family);
        break;
      case WeightClass::kApq:
        rep = apq_constant(w, a.p, a.q, family);
        break;
      case WeightClass::kRh:
        rep = rh_constant(w, a.r, family);
        break;
    }
    j.update(to_json(rep, grid));
  } catch (const NotIntegrableError& e) {
    if (!verdict) throw;
    j["class"] = to_string(cls);
    j["params"] = params;
    j["constant"] = nullptr;
    j["error"] = e.what();
    j["oracle"] = *verdict;
    j["agree"] = !*verdict;
    out << j.dump(2) << '\n';
    if (*verdict) {
      err << "oracle disagreement: numeric constant diverges but the weight is a member\n";
      return kExitOracle;
    }
    err << e.what() << '\n';
    return kExitNotIntegrable;
  }
  if (verdict) {
    j["oracle"] = *verdict;
    j["agree"] = *verdict;
  }
  out << j.dump(2) << '\n';
  if (verdict && !*verdict) {
    err << "oracle disagreement: numeric constant is finite but the weight is not a member\n";
    return kExitOracle;
  }
  return kExitOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  std::string text = a.config.empty() ? std::string() : read_text(a.config);
  if (!a.id.empty()) text += "\nid = " + a.id + "\n";
  RunConfig cfg = parse_run_config(text);
  if (a.j1 > 0) cfg.j1 = a.j1;
  if (a.j2 > 0) cfg.j2 = a.j2;
  if (a.shifts > 0) cfg.shifts = a.shifts;
  if (a.seed >= 0) cfg.seed = static_cast<std::uint64_t>(a.seed);
  if (a.count > 0) cfg.count = a.count;
  if (!a.pointwise.empty()) cfg.pointwise = a.pointwise;
  if (!a.out.empty()) cfg.out = a.out;

  const BoundId id = parse_bound_id(cfg.id);
  auto emit = [&](const nlohmann::json& j) {
    if (cfg.out.empty()) {
      out << j.dump(2) << '\n';
    } else {
      write_text(cfg.out, j.dump(2) + "\n");
      out << "report written to " << cfg.out << '\n';
    }
  };

  const auto verdicts = check_hypotheses(cfg.params, id);
  if (!all_pass(verdicts)) {
    VerificationReport rep;
    rep.id = cfg.id;
    rep.params = cfg.params;
    rep.hypotheses = verdicts;
    emit(to_json(rep));
    for (const Verdict& v : verdicts) {
      if (!v.pass) err << v.name << " failed (" << v.detail << ")\n";
    }
    return kExitHypotheses;
  }

  const Corpus corpus =
      generate_corpus(DomainBox(cfg.n, cfg.half_width, cfg.margin), cfg.seed, cfg.count);
  SweepOptions opt;
  opt.shifts = cfg.shifts;
  const VerificationReport rep = refinement_drift(id, cfg.params, corpus, cfg.j1, cfg.j2, opt);
  nlohmann::json j = to_json(rep);
  bool exceeded = !std::isfinite(rep.sup_ratio) || (rep.drift && *rep.drift > rep.drift_threshold);
  if (!cfg.pointwise.empty()) {
    const PropId pid = parse_prop_id(cfg.pointwise);
    const auto pv = check_pointwise_hypotheses(pid, cfg.params);
    if (!all_pass(pv)) {
      VerificationReport prep;
      prep.id = cfg.pointwise;
      prep.params = cfg.params;
      prep.hypotheses = pv;
      j["pointwise"] = to_json(prep);
      emit(j);
      for (const Verdict& v : pv) {
        if (!v.pass) err << v.name << " failed (" << v.detail << ")\n";
      }
      return kExitHypotheses;
    }
    const VerificationReport prep = pointwise_sweep(pid, cfg.params, corpus, cfg.j1, cfg.j2, opt);
    j["pointwise"] = to_json(prep);
    exceeded = exceeded || !std::isfinite(prep.sup_ratio) ||
               (prep.drift && *prep.drift > prep.drift_threshold);
  }
  emit(j);
  if (exceeded) {
    err << "drift threshold exceeded\n";
    return kExitDrift;
  }
  return kExitOk;
}

int cmd_corpus(const CorpusArgs& a, std::ostream& out) {
  const DomainBox box(a.n, a.half_width, a.margin);
  const Grid grid(box, a.level);
  const Corpus corpus = generate_corpus(box, a.seed, a.count);
  nlohmann::json j{{"seed", a.seed}, {"inputs", nlohmann::json::array()},
                   {"symbols", nlohmann::json::array()}};
  if (!a.out_dir.empty()) std::filesystem::create_directories(a.out_dir);
  auto dump = [&](const CorpusEntry& e, const char* group) {
    const GridFunction f = e.sample(grid);
    nlohmann::json item{{"name", e.name}, {"hash", f.content_hash()},
                        {"margin_compliant", corpus.margin_compliant(e, grid)}};
    if (!a.out_dir.empty()) {
      const std::string path = (std::filesystem::path(a.out_dir) / (e.name + ".csv")).string();
      write_grid_function(path, f);
      item["path"] = path;
    }
    j[group].push_back(item);
  };
  for (const CorpusEntry& e : corpus.inputs) dump(e, "inputs");
  for (const CorpusEntry& e : corpus.symbols) dump(e, "symbols");
  out << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical lab for fractional integrals, maximal operators and weighted Morrey norms",
               "morreylab"};
  app.require_subcommand(1);

  OpArgs op;
  auto* op_cmd = app.add_subcommand("op", "apply an operator to a grid function");
  op_cmd->add_option("name", op.name, "ialpha, commutator, m, mfrac, mw, mfracw, mdelta, msharp")
      ->required();
  op_cmd->add_option("--in", op.in, "input CSV")->required();
  op_cmd->add_option("--out", op.out, "output CSV");
  op_cmd->add_option("--b", op.b, "symbol CSV for the commutator");
  op_cmd->add_option("--w", op.weight, "weight spec");
  op_cmd->add_option("--alpha", op.alpha, "order of I_alpha");
  op_cmd->add_option("--beta", op.beta, "fractional order of the maximal operator");
  op_cmd->add_option("--r", op.r, "inner exponent");
  op_cmd->add_option("--delta", op.delta, "delta for mdelta and msharp");
  op_cmd->add_option("--shifts", op.shifts, "shifted lattices per level");
  op_cmd->add_flag("--full", op.full, "use every grid-aligned cube");

  NormArgs nm;
  auto* norm_cmd = app.add_subcommand("norm", "compute a Morrey or oscillation norm");
  norm_cmd->add_option("--space", nm.space, "space spec")->required();
  norm_cmd->add_option("--in", nm.in, "input CSV")->required();
  norm_cmd->add_option("--shifts", nm.shifts, "shifted lattices per level");

  WeightArgs wa;
  auto* w_cmd = app.add_subcommand("weights", "weight class constants");
  w_cmd->add_option("--w", wa.weight, "weight spec")->required();
  w_cmd->add_option("--class", wa.cls, "ap, apq or rh");
  w_cmd->add_option("--p", wa.p, "p");
  w_cmd->add_option("--q", wa.q, "q for apq");
  w_cmd->add_option("--r", wa.r, "r for rh");
  w_cmd->add_option("--n", wa.n, "dimension");
  w_cmd->add_option("--J", wa.level, "grid level for power weights");
  w_cmd->add_option("--L", wa.half_width, "box half-width for power weights");
  w_cmd->add_option("--shifts", wa.shifts, "shifted lattices per level");
  w_cmd->add_flag("--oracle", wa.oracle, "compare with the analytic membership verdict");

  VerifyArgs va;
  auto* v_cmd = app.add_subcommand("verify", "run a theorem or lemma verification");
  v_cmd->add_option("--id", va.id, "THM1, THM2, THM3, THME, L3.2 ... L5.1, P3.1");
  v_cmd->add_option("--config", va.config, "key = value config file");
  v_cmd->add_option("--out", va.out, "report path");
  v_cmd->add_option("--pointwise", va.pointwise, "P3.7, P4.4 or P5.2");
  v_cmd->add_option("--J1", va.j1, "coarse level");
  v_cmd->add_option("--J2", va.j2, "fine level");
  v_cmd->add_option("--shifts", va.shifts, "shifted lattices per level");
  v_cmd->add_option("--seed", va.seed, "corpus seed");
  v_cmd->add_option("--count", va.count, "corpus size");

  CorpusArgs ca;
  auto* c_cmd = app.add_subcommand("corpus", "generate the test corpus");
  c_cmd->add_option("--n", ca.n, "dimension");
  c_cmd->add_option("--J", ca.level, "grid level");
  c_cmd->add_option("--L", ca.half_width, "box half-width");
  c_cmd->add_option("--margin", ca.margin, "support margin");
  c_cmd->add_option("--seed", ca.seed, "seed");
  c_cmd->add_option("--count", ca.count, "number of inputs");
  c_cmd->add_option("--out-dir", ca.out_dir, "directory for CSV files");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*op_cmd) return cmd_op(op, out);
    if (*norm_cmd) return cmd_norm(nm, out);
    if (*w_cmd) return cmd_weights(wa, out, err);
    if (*v_cmd) return cmd_verify(va, out, err);
    if (*c_cmd) return cmd_corpus(ca, out);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const NotIntegrableError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotIntegrable;
  } catch (const HypothesisError& e) {
    err << "error: " << e.what() << '\n';
    return kExitHypotheses;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}

}  // namespace morreylab
