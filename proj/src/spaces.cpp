#include "morreylab/spaces.hpp"

#include <cmath>

#include "morreylab/errors.hpp"
#include "morreylab/format.hpp"
#include "morreylab/parallel.hpp"
#include "morreylab/weights.hpp"

namespace morreylab {

MorreyParams::MorreyParams(double p_, double kappa_, Weight u_, Weight v_)
    : p(p_), kappa(kappa_), u(std::move(u_)), v(std::move(v_)) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError("morrey p must be >= 1");
  if (!(kappa > 0.0 && kappa < 1.0)) throw ParameterError("kappa must be in (0, 1)");
  if (u.dim() != v.dim()) throw ParameterError("weights u and v differ in dimension");
}

OscillationParams::OscillationParams(double beta_, double p_, Weight w_)
    : beta(beta_), p(p_), w(std::move(w_)) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw ParameterError("beta must be in [0, 1]");
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError("oscillation p must be >= 1");
}

namespace {

NormResult family_sup(const CubeFamily& family, const std::function<double(const GridCube&)>& fn) {
  const auto cubes = family.cubes();
  if (cubes.empty()) throw ParameterError("empty cube family");
  const ArgMax best = parallel_argmax(cubes.size(), [&](std::size_t i) { return fn(cubes[i]); });
  if (best.index == cubes.size()) throw NotIntegrableError("norm functional is not finite");
  return {best.value, cubes[best.index]};
}

std::string describe(const Grid& g, const GridCube& q) {
  const Cube c = to_cube(g, q);
  std::string s = "cube [" + format_number(c.lower(0)) + ", " + format_number(c.upper(0)) + "]";
  if (g.dim() == 2) s += " x [" + format_number(c.lower(1)) + ", " + format_number(c.upper(1)) + "]";
  return s;
}

bool closure_meets(const Grid& g, const GridCube& q, const Point& x) {
  const Cube c = to_cube(g, q);
  for (int a = 0; a < g.dim(); ++a) {
    if (x[a] < c.lower(a) || x[a] > c.upper(a)) return false;
  }
  return true;
}

}  // namespace

NormResult morrey_norm(const GridFunction& f, const MorreyParams& mp, const CubeFamily& family) {
  const Grid& g = f.grid();
  if (!(family.grid() == g)) throw ParameterError("cube family lives on another grid");
  if (mp.u.dim() != g.dim()) throw ParameterError("weight and grid dimensions differ");
  const auto mu = WeightMeasure::of(mp.u, g);
  const auto mv = WeightMeasure::of(mp.v, g);
  return family_sup(family, [&](const GridCube& q) {
    double s = 0.0;
    for_each_cell(g, q, [&](std::size_t i) {
      const double a = std::abs(f[i]);
      s += (mp.p == 1.0 ? a : std::pow(a, mp.p)) * mu->mass(i);
    });
    const double v = s / std::pow(mv->measure(q), mp.kappa);
    return mp.p == 1.0 ? v : std::pow(v, 1.0 / mp.p);
  });
}

NormResult oscillation_norm(const GridFunction& b, const OscillationParams& op,
                            const CubeFamily& family) {
  const Grid& g = b.grid();
  if (!(family.grid() == g)) throw ParameterError("cube family lives on another grid");
  if (op.w.dim() != g.dim()) throw ParameterError("weight and grid dimensions differ");
  const Weight dual = op.w.pow(1.0 - op.p);
  if (dual.is_power() && !(dual.exponent() > -g.dim())) {
    for (const GridCube& q : family.cubes()) {
      if (closure_meets(g, q, dual.center()))
        throw NotIntegrableError("w^(1-p) not integrable on " + describe(g, q));
    }
  }
  const auto mw = WeightMeasure::of(op.w, g);
  const auto md = WeightMeasure::of(dual, g);
  const double n = g.dim();
  return family_sup(family, [&](const GridCube& q) {
    const double bq = cube_average(b, q);
    double s = 0.0;
    for_each_cell(g, q, [&](std::size_t i) {
      const double d = std::abs(b[i] - bq);
      s += (op.p == 1.0 ? d : std::pow(d, op.p)) * md->mass(i);
    });
    const double wq = mw->measure(q);
    const double mean = s / wq;
    const double core = op.p == 1.0 ? mean : std::pow(mean, 1.0 / op.p);
    return op.beta == 0.0 ? core : core / std::pow(wq, op.beta / n);
  });
}

LemmaDResult lemma_d_check(const GridFunction& b, double p, const OscillationParams& op,
                           const CubeFamily& family) {
  if (!(p > 1.0)) throw ParameterError("lemma D needs p > 1");
  if (!op.w.is_power() || !power_in_ap(op.w.dim(), op.w.exponent(), 1.0))
    throw HypothesisError("A₁ required");
  const double np = oscillation_norm(b, OscillationParams(op.beta, p, op.w), family).value;
  const double n1 = oscillation_norm(b, OscillationParams(op.beta, 1.0, op.w), family).value;
  if (n1 == 0.0) return {true, 0.0, np, n1};
  return {false, np / n1, np, n1};
}

}  // namespace morreylab
