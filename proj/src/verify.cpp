#include "morreylab/verify.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "morreylab/errors.hpp"
#include "morreylab/format.hpp"
#include "morreylab/weights.hpp"

namespace morreylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Strict comparisons that treat values within 1e-12 (relative) as equal.
bool gt(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a > b;
  return a > b + 1e-12 * std::max(1.0, std::abs(b));
}
bool lt(double a, double b) { return gt(b, a); }

std::string num(double v) { return format_number(v); }

}  // namespace

double ParamSet::q() const {
  const double inv = 1.0 / p - alpha / n;
  return inv > 0.0 ? 1.0 / inv : kInf;
}

double ParamSet::s() const {
  const double inv = 1.0 / p - (alpha + beta) / n;
  return inv > 0.0 ? 1.0 / inv : kInf;
}

double ParamSet::r_w() const { return gamma >= 0.0 ? kInf : -n / gamma; }

Weight ParamSet::weight() const { return Weight::power(n, Point{0.0, 0.0}, gamma); }

std::string to_string(BoundId id) {
  switch (id) {
    case BoundId::kThm1: return "THM1";
    case BoundId::kThm2: return "THM2";
    case BoundId::kThm3: return "THM3";
    case BoundId::kThmE: return "THME";
    case BoundId::kL32: return "L3.2";
    case BoundId::kL33: return "L3.3";
    case BoundId::kL34: return "L3.4";
    case BoundId::kL35: return "L3.5";
    case BoundId::kL36: return "L3.6";
    case BoundId::kL41: return "L4.1";
    case BoundId::kL42: return "L4.2";
    case BoundId::kL43: return "L4.3";
    case BoundId::kL51: return "L5.1";
    case BoundId::kP31: return "P3.1";
  }
  return "?";
}

const std::vector<BoundId>& all_bound_ids() {
  static const std::vector<BoundId> ids = {
      BoundId::kThm1, BoundId::kThm2, BoundId::kThm3, BoundId::kThmE, BoundId::kL32,
      BoundId::kL33,  BoundId::kL34,  BoundId::kL35,  BoundId::kL36,  BoundId::kL41,
      BoundId::kL42,  BoundId::kL43,  BoundId::kL51,  BoundId::kP31};
  return ids;
}

BoundId parse_bound_id(const std::string& text) {
  for (BoundId id : all_bound_ids()) {
    if (to_string(id) == text) return id;
  }
  throw ParameterError("unknown bound id '" + text + "'");
}

std::string to_string(PropId id) {
  switch (id) {
    case PropId::kP37: return "P3.7";
    case PropId::kP44: return "P4.4";
    case PropId::kP52: return "P5.2";
  }
  return "?";
}

PropId parse_prop_id(const std::string& text) {
  if (text == "P3.7") return PropId::kP37;
  if (text == "P4.4") return PropId::kP44;
  if (text == "P5.2") return PropId::kP52;
  throw ParameterError("unknown proposition id '" + text + "'");
}

std::string space_spec(const MorreyParams& mp) {
  return "morrey:p=" + num(mp.p) + ",kappa=" + num(mp.kappa) + ",u=" + mp.u.spec() +
         ",v=" + mp.v.spec();
}

std::string space_spec(const OscillationParams& op) {
  return "osc:beta=" + num(op.beta) + ",p=" + num(op.p) + ",w=" + op.w.spec();
}

BoundSpec make_bound_spec(BoundId id, const ParamSet& ps) {
  const Weight w = ps.weight();
  auto wp = [&](double t) { return w.pow(t); };
  const double p = ps.p, q = ps.q(), s = ps.s(), k = ps.kappa;
  const double a = ps.alpha, b = ps.beta, r = ps.r_used(), n = ps.n;
  auto morrey = [](double e, double kappa, Weight u, Weight v) {
    return MorreyParams(e, kappa, std::move(u), std::move(v));
  };
  auto maximal_spec = [&](std::string text, MaximalConfig cfg, MorreyParams src,
                          MorreyParams dst) {
    return BoundSpec{id, OperatorKind::kMaximal, std::move(text), std::move(src), std::move(dst),
                     std::move(cfg), std::nullopt, SymbolClass::kBmo};
  };
  switch (id) {
    case BoundId::kThm1:
      return {id, OperatorKind::kCommutator, "[b,I_α]", morrey(p, k, w, w),
              morrey(q, k * q / p, wp(1.0 - (1.0 - a / n) * q), w), std::nullopt,
              OscillationParams(0.0, 1.0, w), SymbolClass::kBmo};
    case BoundId::kThm2:
      return {id, OperatorKind::kCommutator, "[b,I_α]", morrey(p, k, wp(p), wp(s)),
              morrey(s, k * s / p, wp(s), wp(s)), std::nullopt,
              OscillationParams(b, 1.0, Weight::unit(ps.n)), SymbolClass::kLip};
    case BoundId::kThm3:
      return {id, OperatorKind::kCommutator, "[b,I_α]", morrey(p, k, w, w),
              morrey(s, k * s / p, wp(1.0 - (1.0 - a / n) * s), w), std::nullopt,
              OscillationParams(b, 1.0, w), SymbolClass::kLip};
    case BoundId::kThmE:
      return maximal_spec("M_{α+β,1}", MaximalConfig::fractional(a + b, 1.0),
                          morrey(p, k, wp(p), wp(s)), morrey(s, k * s / p, wp(s), wp(s)));
    case BoundId::kL32:
      return maximal_spec("M_{α,1,w}", MaximalConfig::fractional_weighted(a, 1.0, w),
                          morrey(p, k, w, w), morrey(q, k * q / p, w, w));
    case BoundId::kL33:
      return maximal_spec("M_{α,r,w}", MaximalConfig::fractional_weighted(a, r, w),
                          morrey(p, k, w, w), morrey(q, k * q / p, w, w));
    case BoundId::kL34:
      return maximal_spec("M_{α,1}", MaximalConfig::fractional(a, 1.0), morrey(p, k, w, w),
                          morrey(q, k * q / p, wp(q / p), w));
    case BoundId::kL35:
      return maximal_spec("M_w", MaximalConfig::weighted(w), morrey(q, k * q / p, wp(q / p), w),
                          morrey(q, k * q / p, wp(q / p), w));
    case BoundId::kL36:
      return maximal_spec("M_{r,w}", MaximalConfig::fractional_weighted(0.0, r, w),
                          morrey(q, k * q / p, wp(q / p), w), morrey(q, k * q / p, wp(q / p), w));
    case BoundId::kL41:
      return maximal_spec("M_{α+β,r}", MaximalConfig::fractional(a + b, r),
                          morrey(p, k, wp(p), wp(s)), morrey(s, k * s / p, wp(s), wp(s)));
    case BoundId::kL42:
      return maximal_spec("M_{β,1}", MaximalConfig::fractional(b, 1.0),
                          morrey(q, k * q / p, wp(q), wp(s)), morrey(s, k * s / p, wp(s), wp(s)));
    case BoundId::kL43:
      return {id, OperatorKind::kFractionalIntegral, "I_α", morrey(p, k, wp(p), wp(s)),
              morrey(q, k * q / p, wp(q), wp(s)), std::nullopt, std::nullopt, SymbolClass::kBmo};
    case BoundId::kL51:
      return maximal_spec("M_{β,1}", MaximalConfig::fractional(b, 1.0),
                          morrey(q, k * q / p, wp(q / p), w),
                          morrey(s, k * s / p, wp(s / p), w));
    case BoundId::kP31:
      return {id, OperatorKind::kSharpRatio, "M_δ / M^#_δ", morrey(p, k, w, w), morrey(p, k, w, w),
              std::nullopt, std::nullopt, SymbolClass::kBmo};
  }
  throw ParameterError("unknown bound id");
}

namespace {

class Checks {
 public:
  explicit Checks(const ParamSet& ps) : ps_(ps) {}

  void add(std::string name, bool pass, std::string detail) {
    out_.push_back({std::move(name), pass, std::move(detail)});
  }

  void alpha_range() {
    add("0<α<n", 0.0 < ps_.alpha && lt(ps_.alpha, ps_.n), "α=" + num(ps_.alpha));
  }
  void beta_unit() {
    add("0<β<1", 0.0 < ps_.beta && lt(ps_.beta, 1.0), "β=" + num(ps_.beta));
  }
  void alpha_beta_range() {
    const double ab = ps_.alpha + ps_.beta;
    add("0<α+β<n", 0.0 < ab && lt(ab, ps_.n), "α+β=" + num(ab));
  }
  void p_alpha() {
    const double top = ps_.n / ps_.alpha;
    add("1<p<n/α", gt(ps_.p, 1.0) && lt(ps_.p, top), "p=" + num(ps_.p) + ", n/α=" + num(top));
  }
  void p_alpha_beta() {
    const double top = ps_.n / (ps_.alpha + ps_.beta);
    add("1<p<n/(α+β)", gt(ps_.p, 1.0) && lt(ps_.p, top),
        "p=" + num(ps_.p) + ", n/(α+β)=" + num(top));
  }
  void kappa_below(const std::string& name, double bound, const std::string& what) {
    add(name, ps_.kappa > 0.0 && lt(ps_.kappa, bound),
        "κ=" + num(ps_.kappa) + ", " + what + "=" + num(bound));
  }
  void kappa_pq() { kappa_below("0<κ<p/q", ps_.p / ps_.q(), "p/q"); }
  void kappa_ps() { kappa_below("0<κ<p/s", ps_.p / ps_.s(), "p/s"); }
  void a1(const std::string& name, double t, const std::string& label) {
    const double e = ps_.gamma * t;
    add(name, power_in_ap(ps_.n, e, 1.0), label + "=|x|^" + num(e));
  }
  void ap(const std::string& name) {
    add(name, power_in_ap(ps_.n, ps_.gamma, ps_.p),
        "|x|^" + num(ps_.gamma) + " in A_" + num(ps_.p));
  }
  void r_between() {
    const double r = ps_.r_used();
    add("1<r<p", gt(r, 1.0) && lt(r, ps_.p), "r=" + num(r));
  }
  void rw_thm1() {
    const double pq = ps_.p / ps_.q();
    const double thr = (1.0 - ps_.kappa) / (pq - ps_.kappa);
    add("r_w>(1−κ)/(p/q−κ)", pq > ps_.kappa && gt(ps_.r_w(), thr),
        "r_w=" + num(ps_.r_w()) + ", threshold=" + num(thr));
  }
  void rw_thm3() {
    const double ps = ps_.p / ps_.s();
    const double thr = 1.0 / (ps - ps_.kappa);
    add("r_w>1/(p/s−κ)", ps > ps_.kappa && gt(ps_.r_w(), thr),
        "r_w=" + num(ps_.r_w()) + ", threshold=" + num(thr));
  }
  void chain_thm3() {
    const double ps = ps_.p / ps_.s(), pq = ps_.p / ps_.q(), k = ps_.kappa;
    const double a = 1.0 / (ps - k), b = (1.0 - k) / (ps - k), c = (1.0 - k) / (pq - k);
    const bool ok = ps > k && pq > k && gt(a, b) && gt(b, c) && gt(ps_.r_w(), c);
    add("1/(p/s−κ)>(1−κ)/(p/s−κ)>(1−κ)/(p/q−κ)", ok,
        num(a) + " > " + num(b) + " > " + num(c) + ", r_w=" + num(ps_.r_w()));
  }

  std::vector<Verdict> take() { return std::move(out_); }

 private:
  const ParamSet& ps_;
  std::vector<Verdict> out_;
};

}  // namespace

std::vector<Verdict> check_hypotheses(const ParamSet& ps, BoundId id) {
  Checks c(ps);
  const double s = ps.s(), q = ps.q();
  switch (id) {
    case BoundId::kThm1:
    case BoundId::kL34:
    case BoundId::kL35:
    case BoundId::kL36:
      c.alpha_range();
      c.p_alpha();
      c.kappa_pq();
      c.a1("w^{q/p}∈A₁", q / ps.p, "w^{q/p}");
      c.rw_thm1();
      if (id == BoundId::kL36) c.r_between();
      break;
    case BoundId::kThm2:
      c.beta_unit();
      c.alpha_range();
      c.alpha_beta_range();
      c.p_alpha_beta();
      c.kappa_below("0<κ<min{p/s,pβ/n}", std::min(ps.p / s, ps.p * ps.beta / ps.n),
                    "min{p/s,pβ/n}");
      c.a1("w^s∈A₁", s, "w^s");
      break;
    case BoundId::kThm3:
      c.beta_unit();
      c.alpha_range();
      c.alpha_beta_range();
      c.p_alpha_beta();
      c.kappa_ps();
      c.a1("w^{s/p}∈A₁", s / ps.p, "w^{s/p}");
      c.rw_thm3();
      c.chain_thm3();
      break;
    case BoundId::kThmE:
      c.alpha_beta_range();
      c.p_alpha_beta();
      c.kappa_ps();
      c.add("w∈A_{p,s}", std::isfinite(s) && power_in_apq(ps.n, ps.gamma, ps.p, s),
            "|x|^" + num(ps.gamma) + ", s=" + num(s));
      break;
    case BoundId::kL32:
    case BoundId::kL33:
      c.alpha_range();
      c.p_alpha();
      c.kappa_pq();
      c.ap("w∈A_∞ (checked as A_p)");
      if (id == BoundId::kL33) c.r_between();
      break;
    case BoundId::kL41:
    case BoundId::kL42:
    case BoundId::kL43:
      c.alpha_range();
      c.alpha_beta_range();
      c.p_alpha_beta();
      c.a1("w^s∈A₁", s, "w^s");
      if (id == BoundId::kL43) {
        c.kappa_below("0<κ<pβ/n", ps.p * ps.beta / ps.n, "pβ/n");
      } else {
        c.kappa_ps();
      }
      if (id == BoundId::kL41) c.r_between();
      break;
    case BoundId::kL51:
      c.alpha_range();
      c.alpha_beta_range();
      c.p_alpha_beta();
      c.a1("w^{s/p}∈A₁", s / ps.p, "w^{s/p}");
      c.kappa_ps();
      c.rw_thm3();
      break;
    case BoundId::kP31:
      c.add("0<δ<1", ps.delta > 0.0 && ps.delta < 1.0, "δ=" + num(ps.delta));
      c.add("1<p<∞", gt(ps.p, 1.0) && std::isfinite(ps.p), "p=" + num(ps.p));
      c.add("0<κ<1", ps.kappa > 0.0 && ps.kappa < 1.0, "κ=" + num(ps.kappa));
      c.ap("u,v∈A_∞ (checked as A_p)");
      break;
  }
  return c.take();
}

bool all_pass(const std::vector<Verdict>& v) {
  for (const Verdict& x : v) {
    if (!x.pass) return false;
  }
  return true;
}

namespace {

void require_pass(const std::vector<Verdict>& v) {
  std::string failed;
  for (const Verdict& x : v) {
    if (!x.pass) failed += (failed.empty() ? "" : "; ") + x.name + " failed";
  }
  if (!failed.empty()) throw HypothesisError(failed);
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

VerificationReport ratio_sweep(BoundId id, const ParamSet& ps, const Corpus& corpus,
                               const Grid& grid, const SweepOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.id = to_string(id);
  rep.params = ps;
  rep.hypotheses = check_hypotheses(ps, id);
  require_pass(rep.hypotheses);
  if (corpus.inputs.empty()) throw ParameterError("corpus has no inputs");
  if (grid.dim() != ps.n) throw ParameterError("grid and parameter dimensions differ");

  const BoundSpec spec = make_bound_spec(id, ps);
  rep.source_space = space_spec(spec.source);
  rep.target_space = space_spec(spec.target);
  if (spec.symbol_norm) rep.symbol_space = space_spec(*spec.symbol_norm);

  const CubeFamily family = make_cube_family(grid, opt.shifts);
  std::optional<RieszKernel> kernel;
  if (spec.kind == OperatorKind::kCommutator || spec.kind == OperatorKind::kFractionalIntegral)
    kernel.emplace(grid, FracIntConfig(ps.n, ps.alpha, opt.rule));

  struct Symbol {
    std::string name;
    GridFunction values;
    double norm;
  };
  std::vector<Symbol> symbols;
  if (spec.kind == OperatorKind::kCommutator) {
    for (const CorpusEntry& e : corpus.symbols) {
      if (!e.has_class(spec.symbol_class)) continue;
      GridFunction b = e.sample(grid);
      const double nb = oscillation_norm(b, *spec.symbol_norm, family).value;
      symbols.push_back({e.name, std::move(b), nb});
    }
    if (symbols.empty()) throw ParameterError("corpus has no symbol of the required class");
  }

  for (const CorpusEntry& e : corpus.inputs) {
    const GridFunction f = e.sample(grid);
    if (spec.kind == OperatorKind::kSharpRatio) {
      const Prop31Result r = prop31_check(f, ps.delta, spec.source, family);
      if (r.skipped) {
        rep.ratios.push_back({e.name, std::nullopt, "sharp norm is zero"});
      } else {
        rep.ratios.push_back({e.name, r.ratio, ""});
      }
      continue;
    }
    const double src = morrey_norm(f, spec.source, family).value;
    if (src == 0.0) {
      rep.ratios.push_back({e.name, std::nullopt, "zero source norm"});
      continue;
    }
    if (spec.kind == OperatorKind::kCommutator) {
      for (const Symbol& b : symbols) {
        const std::string label = e.name + "|" + b.name;
        if (b.norm == 0.0) {
          rep.ratios.push_back({label, std::nullopt, "zero symbol norm"});
          continue;
        }
        const GridFunction out = kernel->commutator(b.values, f);
        rep.ratios.push_back({label, morrey_norm(out, spec.target, family).value / (b.norm * src), ""});
      }
      continue;
    }
    const GridFunction out = spec.kind == OperatorKind::kFractionalIntegral
                                 ? kernel->apply(f)
                                 : maximal(f, *spec.maximal, family);
    rep.ratios.push_back({e.name, morrey_norm(out, spec.target, family).value / src, ""});
  }
  for (const RatioEntry& r : rep.ratios) {
    if (r.value && *r.value > rep.sup_ratio) rep.sup_ratio = *r.value;
  }
  rep.levels.push_back({grid.level(), rep.sup_ratio});
  rep.seconds = elapsed(t0);
  return rep;
}

std::optional<double> relative_drift(double r1, double r2) {
  if (r1 == 0.0) return std::nullopt;
  return std::abs(r2 - r1) / r1;
}

VerificationReport refinement_drift(BoundId id, const ParamSet& ps, const Corpus& corpus, int j1,
                                    int j2, const SweepOptions& opt) {
  if (j2 < j1) throw ParameterError("need J1 <= J2");
  const auto t0 = std::chrono::steady_clock::now();
  if (j1 == j2) {
    VerificationReport rep = ratio_sweep(id, ps, corpus, Grid(corpus.box, j1), opt);
    rep.drift = rep.sup_ratio == 0.0 ? std::nullopt : std::optional<double>(0.0);
    return rep;
  }
  const VerificationReport coarse = ratio_sweep(id, ps, corpus, Grid(corpus.box, j1), opt);
  VerificationReport rep = ratio_sweep(id, ps, corpus, Grid(corpus.box, j2), opt);
  rep.levels.insert(rep.levels.begin(), coarse.levels.front());
  rep.drift = relative_drift(coarse.sup_ratio, rep.sup_ratio);
  rep.drift_threshold = 0.15;
  rep.seconds = elapsed(t0);
  return rep;
}

std::vector<Verdict> check_pointwise_hypotheses(PropId id, const ParamSet& ps) {
  Checks c(ps);
  const double r = ps.r_used();
  c.add("0<δ<1", ps.delta > 0.0 && ps.delta < 1.0, "δ=" + num(ps.delta));
  c.alpha_range();
  if (id != PropId::kP37) c.beta_unit();
  c.a1("w∈A₁", 1.0, "w");
  c.add("r>1", gt(r, 1.0), "r=" + num(r));
  const double order = id == PropId::kP37 ? ps.alpha : ps.alpha + ps.beta;
  c.add(id == PropId::kP37 ? "αr<n" : "(α+β)r<n", lt(order * r, ps.n),
        "order·r=" + num(order * r));
  return c.take();
}

PointwiseResult pointwise_sharp_check(PropId id, const ParamSet& ps, const GridFunction& b,
                                      const GridFunction& f, const SweepOptions& opt) {
  require_pass(check_pointwise_hypotheses(id, ps));
  const Grid& grid = f.grid();
  if (!(b.grid() == grid)) throw ParameterError("grid mismatch");
  if (grid.dim() != ps.n) throw ParameterError("grid and parameter dimensions differ");
  const CubeFamily family = make_cube_family(grid, opt.shifts);
  const RieszKernel kernel(grid, FracIntConfig(ps.n, ps.alpha, opt.rule));
  const Weight w = ps.weight();
  const auto mw = WeightMeasure::of(w, grid);
  const double a = ps.alpha, be = ps.beta, r = ps.r_used(), n = ps.n;

  PointwiseResult res;
  const GridFunction lhs = maximal(kernel.commutator(b, f), MaximalConfig::sharp_delta(ps.delta), family);
  const GridFunction If = kernel.apply(f);
  std::vector<double> rhs(grid.size());
  if (id == PropId::kP37) {
    res.symbol_norm = oscillation_norm(b, OscillationParams(0.0, 1.0, w), family).value;
    const GridFunction t1 = maximal(If, MaximalConfig::fractional_weighted(0.0, r, w), family);
    const GridFunction t2 = maximal(f, MaximalConfig::fractional_weighted(a, r, w), family);
    const GridFunction t3 = maximal(f, MaximalConfig::fractional(a, 1.0), family);
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      const double wx = mw->cell_average(i);
      rhs[i] = res.symbol_norm * (wx * t1[i] + std::pow(wx, 1.0 - a / n) * t2[i] + wx * t3[i]);
    }
  } else if (id == PropId::kP44) {
    res.symbol_norm =
        oscillation_norm(b, OscillationParams(be, 1.0, Weight::unit(ps.n)), family).value;
    const GridFunction t1 = maximal(If, MaximalConfig::fractional(be, 1.0), family);
    const GridFunction t2 = maximal(f, MaximalConfig::fractional(a + be, r), family);
    const GridFunction t3 = maximal(f, MaximalConfig::fractional(a + be, 1.0), family);
    for (std::size_t i = 0; i < rhs.size(); ++i)
      rhs[i] = res.symbol_norm * (t1[i] + t2[i] + t3[i]);
  } else {
    res.symbol_norm = oscillation_norm(b, OscillationParams(be, 1.0, w), family).value;
    const GridFunction t1 = maximal(If, MaximalConfig::fractional(be, 1.0), family);
    const GridFunction t2 = maximal(f, MaximalConfig::fractional_weighted(a + be, r, w), family);
    const GridFunction t3 = maximal(f, MaximalConfig::fractional(a + be, 1.0), family);
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      const double wx = mw->cell_average(i);
      const double up = std::pow(wx, 1.0 + be / n);
      rhs[i] = res.symbol_norm * (up * t1[i] + std::pow(wx, 1.0 - a / n) * t2[i] + up * t3[i]);
    }
  }
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    if (lhs[i] == 0.0) continue;
    if (rhs[i] == 0.0) {
      ++res.violations;
      continue;
    }
    const double ratio = lhs[i] / rhs[i];
    if (ratio > res.sup_ratio) {
      res.sup_ratio = ratio;
      res.cell = i;
    }
  }
  return res;
}

VerificationReport pointwise_sweep(PropId id, const ParamSet& ps, const Corpus& corpus, int j1,
                                   int j2, const SweepOptions& opt) {
  if (j2 < j1) throw ParameterError("need J1 <= J2");
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.id = to_string(id);
  rep.params = ps;
  rep.hypotheses = check_pointwise_hypotheses(id, ps);
  require_pass(rep.hypotheses);
  rep.drift_threshold = 0.20;
  const SymbolClass cls = id == PropId::kP37 ? SymbolClass::kBmo : SymbolClass::kLip;
  const std::vector<int> levels = j1 == j2 ? std::vector<int>{j1} : std::vector<int>{j1, j2};
  for (int j : levels) {
    const Grid grid(corpus.box, j);
    std::vector<RatioEntry> entries;
    double sup = 0.0;
    for (const CorpusEntry& be : corpus.symbols) {
      if (!be.has_class(cls)) continue;
      const GridFunction b = be.sample(grid);
      for (const CorpusEntry& fe : corpus.inputs) {
        const PointwiseResult r = pointwise_sharp_check(id, ps, b, fe.sample(grid), opt);
        std::string note;
        if (r.violations > 0) note = std::to_string(r.violations) + " cells with zero majorant";
        entries.push_back({fe.name + "|" + be.name, r.sup_ratio, note});
        if (r.violations > 0) sup = kInf;
        sup = std::max(sup, r.sup_ratio);
      }
    }
    rep.levels.push_back({j, sup});
    rep.ratios = std::move(entries);
    rep.sup_ratio = sup;
  }
  rep.drift = relative_drift(rep.levels.front().second, rep.levels.back().second);
  rep.seconds = elapsed(t0);
  return rep;
}

Prop31Result prop31_check(const GridFunction& f, double delta, const MorreyParams& mp,
                          const CubeFamily& family) {
  Prop31Result res;
  const GridFunction md = maximal(f, MaximalConfig::delta_variant(delta), family);
  const GridFunction ms = maximal(f, MaximalConfig::sharp_delta(delta), family);
  res.lhs = morrey_norm(md, mp, family).value;
  res.rhs = morrey_norm(ms, mp, family).value;
  if (res.rhs == 0.0) {
    res.skipped = true;
    return res;
  }
  res.ratio = res.lhs / res.rhs;
  return res;
}

ParamSet default_params(BoundId id) {
  ParamSet ps;
  switch (id) {
    case BoundId::kThm1:
    case BoundId::kL32:
    case BoundId::kL33:
    case BoundId::kL34:
    case BoundId::kL35:
    case BoundId::kL36:
    case BoundId::kP31:
      ps.alpha = 0.25;
      ps.p = 2.0;
      ps.kappa = 0.25;
      ps.gamma = -0.2;
      return ps;
    case BoundId::kThm2:
    case BoundId::kThmE:
    case BoundId::kL41:
    case BoundId::kL42:
    case BoundId::kL43:
      ps.alpha = 0.2;
      ps.beta = 0.3;
      ps.p = 1.5;
      ps.kappa = 0.2;
      ps.gamma = -0.1;
      return ps;
    case BoundId::kThm3:
    case BoundId::kL51:
      ps.alpha = 0.2;
      ps.beta = 0.3;
      ps.p = 1.5;
      ps.kappa = 0.1;
      ps.gamma = -0.1;
      return ps;
  }
  return ps;
}

ParamSet default_params(PropId id) {
  switch (id) {
    case PropId::kP37:
      return default_params(BoundId::kThm1);
    case PropId::kP44:
      return default_params(BoundId::kThm2);
    case PropId::kP52:
      return default_params(BoundId::kThm3);
  }
  return {};
}

std::optional<ParamSet> find_thm3_params(int n, double alpha, double beta, double p,
                                         double gamma) {
  ParamSet ps;
  ps.n = n;
  ps.alpha = alpha;
  ps.beta = beta;
  ps.p = p;
  ps.gamma = gamma;
  for (int k = 19; k >= 1; --k) {
    ps.kappa = k / 20.0;
    if (all_pass(check_hypotheses(ps, BoundId::kThm3))) return ps;
  }
  return std::nullopt;
}

}  // namespace morreylab
