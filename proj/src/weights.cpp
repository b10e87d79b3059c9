#include "morreylab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "morreylab/errors.hpp"
#include "morreylab/format.hpp"
#include "morreylab/parallel.hpp"

namespace morreylab {

std::string to_string(WeightClass c) {
  switch (c) {
    case WeightClass::kAp:
      return "ap";
    case WeightClass::kApq:
      return "apq";
    case WeightClass::kRh:
      return "rh";
  }
  return "?";
}

WeightClass parse_weight_class(const std::string& name) {
  if (name == "ap") return WeightClass::kAp;
  if (name == "apq") return WeightClass::kApq;
  if (name == "rh") return WeightClass::kRh;
  throw ParameterError("unknown weight class '" + name + "' (expected ap, apq or rh)");
}

namespace {

double cube_volume(const Grid& g, const GridCube& q) {
  return static_cast<double>(cell_count(g, q)) * g.cell_volume();
}

WeightClassReport sup_report(WeightClass cls, std::vector<double> params,
                             const CubeFamily& family,
                             const std::function<double(const GridCube&)>& functional) {
  const auto cubes = family.cubes();
  if (cubes.empty()) throw ParameterError("empty cube family");
  const ArgMax best =
      parallel_argmax(cubes.size(), [&](std::size_t i) { return functional(cubes[i]); });
  if (best.index == cubes.size()) throw NotIntegrableError("weight constant is not finite");
  return {cls, std::move(params), best.value, cubes[best.index]};
}

}  // namespace

WeightClassReport ap_constant(const Weight& w, double p, const CubeFamily& family) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError("p must be >= 1");
  const Grid& g = family.grid();
  const auto mw = WeightMeasure::of(w, g);
  if (p == 1.0) {
    return sup_report(WeightClass::kAp, {p}, family, [&](const GridCube& q) {
      double lowest = std::numeric_limits<double>::infinity();
      for_each_cell(g, q, [&](std::size_t i) { lowest = std::min(lowest, mw->cell_average(i)); });
      return mw->measure(q) / cube_volume(g, q) / lowest;
    });
  }
  const double t = -1.0 / (p - 1.0);
  if (w.is_power() && !(w.exponent() * t > -w.dim()))
    throw NotIntegrableError("not in A_p (dual factor diverges)");
  const auto md = WeightMeasure::of(w.pow(t), g);
  return sup_report(WeightClass::kAp, {p}, family, [&](const GridCube& q) {
    const double vol = cube_volume(g, q);
    return mw->measure(q) / vol * std::pow(md->measure(q) / vol, p - 1.0);
  });
}

WeightClassReport apq_constant(const Weight& w, double p, double q, const CubeFamily& family) {
  if (!(1.0 < p && p < q) || !std::isfinite(q)) throw ParameterError("need 1 < p < q < inf");
  const double p_dual = p / (p - 1.0);
  if (w.is_power() && !power_in_apq(w.dim(), w.exponent(), p, q))
    throw NotIntegrableError("not in A_{p,q}");
  const Grid& g = family.grid();
  const auto mq = WeightMeasure::of(w.pow(q), g);
  const auto md = WeightMeasure::of(w.pow(-p_dual), g);
  return sup_report(WeightClass::kApq, {p, q}, family, [&](const GridCube& c) {
    const double vol = cube_volume(g, c);
    return std::pow(mq->measure(c) / vol, 1.0 / q) * std::pow(md->measure(c) / vol, 1.0 / p_dual);
  });
}

WeightClassReport rh_constant(const Weight& w, double r, const CubeFamily& family) {
  if (!(r > 1.0) || !std::isfinite(r)) throw ParameterError("r must be > 1");
  if (w.is_power() && !power_in_rh(w.dim(), w.exponent(), r))
    throw NotIntegrableError("not in RH_" + format_number(r));
  const Grid& g = family.grid();
  const auto mw = WeightMeasure::of(w, g);
  const auto mr = WeightMeasure::of(w.pow(r), g);
  return sup_report(WeightClass::kRh, {r}, family, [&](const GridCube& q) {
    const double vol = cube_volume(g, q);
    return std::pow(mr->measure(q) / vol, 1.0 / r) / (mw->measure(q) / vol);
  });
}

double critical_index(const Weight& w) {
  if (!w.is_power()) throw ParameterError("critical index requires analytic weight");
  const double gamma = w.exponent();
  if (gamma >= 0.0) return std::numeric_limits<double>::infinity();
  return -w.dim() / gamma;
}

bool power_membership(const Weight& w, WeightClass cls, const std::vector<double>& params) {
  if (!w.is_power()) throw ParameterError("membership oracle requires a power weight");
  const int n = w.dim();
  const double gamma = w.exponent();
  auto need = [&](std::size_t k) {
    if (params.size() != k) throw ParameterError("wrong number of class parameters");
  };
  switch (cls) {
    case WeightClass::kAp:
      need(1);
      if (!(params[0] >= 1.0)) throw ParameterError("p must be >= 1");
      return power_in_ap(n, gamma, params[0]);
    case WeightClass::kApq:
      need(2);
      if (!(1.0 < params[0] && params[0] < params[1])) throw ParameterError("need 1 < p < q");
      return power_in_apq(n, gamma, params[0], params[1]);
    case WeightClass::kRh:
      need(1);
      if (!(params[0] > 1.0)) throw ParameterError("r must be > 1");
      return power_in_rh(n, gamma, params[0]);
  }
  return false;
}

std::vector<EquivalenceRow> lemma_c_check(int n, const std::vector<Rational>& gammas, Rational s,
                                          Rational p) {
  if (!(s > Rational(1))) throw ParameterError("s must be > 1");
  if (!(p >= Rational(1))) throw ParameterError("p must be >= 1");
  std::vector<EquivalenceRow> rows;
  rows.reserve(gammas.size());
  const Rational p_mid = Rational(1) + (p - 1) / s;
  for (const Rational& g : gammas) {
    const bool lhs = power_in_ap(n, g * s, p);
    const bool rhs = power_in_ap(n, g, p_mid) && power_in_rh(n, g, s);
    rows.push_back({g, lhs, rhs});
  }
  return rows;
}

std::vector<EquivalenceRow> eq4_check(int n, const std::vector<Rational>& gammas, Rational p,
                                      Rational q) {
  if (!(Rational(1) < p && p < q)) throw ParameterError("need 1 < p < q");
  const Rational p_dual = p / (p - 1);
  const Rational target = Rational(1) + q / p_dual;
  std::vector<EquivalenceRow> rows;
  rows.reserve(gammas.size());
  for (const Rational& g : gammas) {
    rows.push_back({g, power_in_apq(n, g, p, q), power_in_ap(n, g * q, target)});
  }
  return rows;
}

DoublingResult doubling_check(const Weight& w, double lambda, double p, const CubeFamily& family) {
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be >= 1");
  const Grid& g = family.grid();
  const auto mw = WeightMeasure::of(w, g);
  const auto cubes = family.cubes();
  std::vector<double> ratio(cubes.size(), -1.0);
  parallel_for(cubes.size(), [&](std::size_t k) {
    const GridCube& q = cubes[k];
    const double base = mw->measure(q);
    if (lambda == 1.0) {
      ratio[k] = 1.0;
      return;
    }
    const double grown = lambda * q.extent;
    const double pad = 0.5 * (grown - q.extent);
    if (grown == std::floor(grown) && pad == std::floor(pad)) {
      GridCube big{{q.lo[0] - static_cast<int>(pad), q.lo[1] - static_cast<int>(pad)},
                   static_cast<int>(grown)};
      if (g.dim() == 1) big.lo[1] = 0;
      for (int a = 0; a < g.dim(); ++a) {
        if (big.lo[a] < 0 || big.lo[a] + big.extent > g.cells_per_axis()) return;
      }
      ratio[k] = mw->measure(big) / base;
      return;
    }
    Cube big = to_cube(g, q);
    big.side *= lambda;
    if (!inside_box(g, big)) return;
    ratio[k] = integrate_cell_weight(w, big) / base;
  });
  DoublingResult out{-1.0, 0.0, {}, 0};
  for (std::size_t k = 0; k < cubes.size(); ++k) {
    if (ratio[k] < 0.0) continue;
    ++out.eligible;
    if (ratio[k] > out.sup_ratio) {
      out.sup_ratio = ratio[k];
      out.cube = cubes[k];
    }
  }
  if (out.eligible == 0) throw ParameterError("family exhausted");
  out.normalized = out.sup_ratio / std::pow(lambda, g.dim() * p);
  return out;
}

SubsetComparison subset_comparison_check(const Weight& w, double p, double r,
                                         const CubeFamily& family) {
  if (!(p >= 1.0) || !(r > 1.0)) throw ParameterError("need p >= 1 and r > 1");
  if (w.is_power() &&
      !(power_in_ap(w.dim(), w.exponent(), p) && power_in_rh(w.dim(), w.exponent(), r)))
    throw HypothesisError("hypotheses not met");
  const Grid& g = family.grid();
  const auto mw = WeightMeasure::of(w, g);
  const auto cubes = family.cubes();
  std::vector<double> mass(cubes.size());
  parallel_for(cubes.size(), [&](std::size_t k) { mass[k] = mw->measure(cubes[k]); });

  struct Partial {
    double c1 = std::numeric_limits<double>::infinity();
    double c2 = 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
  };
  std::vector<Partial> parts(cubes.size());
  const double upper_exp = (r - 1.0) / r;
  parallel_for(cubes.size(), [&](std::size_t qi) {
    Partial& acc = parts[qi];
    const GridCube& q = cubes[qi];
    const double vq = static_cast<double>(cell_count(g, q));
    for (std::size_t ei = 0; ei < cubes.size(); ++ei) {
      const GridCube& e = cubes[ei];
      if (e.extent > q.extent || !contains(q, e)) continue;
      const double t = static_cast<double>(cell_count(g, e)) / vq;
      const double ratio = mass[ei] / mass[qi];
      acc.c1 = std::min(acc.c1, ratio / std::pow(t, p));
      acc.c2 = std::max(acc.c2, ratio / std::pow(t, upper_exp));
      const double x = std::log(t), y = std::log(ratio);
      acc.sx += x;
      acc.sy += y;
      acc.sxx += x * x;
      acc.sxy += x * y;
      ++acc.count;
    }
  });
  Partial total;
  for (const Partial& part : parts) {
    total.c1 = std::min(total.c1, part.c1);
    total.c2 = std::max(total.c2, part.c2);
    total.sx += part.sx;
    total.sy += part.sy;
    total.sxx += part.sxx;
    total.sxy += part.sxy;
    total.count += part.count;
  }
  SubsetComparison out{total.c1, total.c2, 0.0, 0.0, total.count};
  const double m = static_cast<double>(total.count);
  const double den = m * total.sxx - total.sx * total.sx;
  if (den > 0.0) {
    out.slope = (m * total.sxy - total.sx * total.sy) / den;
    out.intercept = (total.sy - out.slope * total.sx) / m;
  } else if (m > 0.0) {
    out.intercept = total.sy / m;
  }
  return out;
}

}  // namespace morreylab
