#include <cmath>
#include <random>

#include "doctest.h"
#include "morreylab/errors.hpp"
#include "morreylab/operators.hpp"
#include "oracles.hpp"

using namespace morreylab;
using doctest::Approx;

namespace {

Grid line(int level, double half_width = 1.0) {
  return Grid(DomainBox(1, half_width, 0.25 * half_width), level);
}

std::vector<double> values(const GridFunction& f) { return {f.values().begin(), f.values().end()}; }

GridFunction random_function(const Grid& g, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  return GridFunction(g, oracle::random_values(rng, g.size(), scale));
}

GridFunction indicator(const Grid& g, double r) {
  return GridFunction::sample(g, [r](const Point& x) {
    return std::abs(x[0]) <= r && std::abs(x[1]) <= r ? 1.0 : 0.0;
  });
}

// a asinh(b/a) + b asinh(a/b): ∫_0^a ∫_0^b 1/|y| dy
double inv_r_corner(double a, double b) { return a * std::asinh(b / a) + b * std::asinh(a / b); }

}  // namespace

TEST_CASE("Riesz constants") {
  CHECK(riesz_constant(1, 0.5) == Approx(1.0 / std::sqrt(2.0 * oracle::kPi)).epsilon(1e-14));
  CHECK(riesz_constant(2, 1.0) == Approx(1.0 / (2.0 * oracle::kPi)).epsilon(1e-14));
  CHECK_THROWS_WITH_AS(FracIntConfig(1, 1.5), "alpha must be in (0, n)", ParameterError);
  CHECK_THROWS_WITH_AS(FracIntConfig(1, 0.0), "alpha must be in (0, n)", ParameterError);
  CHECK_NOTHROW(FracIntConfig(2, 1.5));
}

TEST_CASE("fractional integral of an indicator") {
  const Grid g(DomainBox(1, 4.0, 1.0), 12);
  const GridFunction out = fractional_integral(indicator(g, 1.0), FracIntConfig(1, 0.5));
  for (double x : {0.0, 0.5, 2.0, 3.0}) {
    const auto cell = static_cast<std::size_t>((x + 4.0) / g.h());
    CHECK(out[cell] == Approx(oracle::riesz_half_indicator(g.center(static_cast<int>(cell)))).epsilon(1e-6));
  }
  // the midpoint rule is first order at best near the jump
  const GridFunction mid =
      fractional_integral(indicator(g, 1.0), FracIntConfig(1, 0.5, KernelRule::kMidpoint));
  const std::size_t zero = g.size() / 2;
  CHECK(mid[zero] == Approx(oracle::riesz_half_indicator(g.center(static_cast<int>(zero)))).epsilon(5e-3));
}

TEST_CASE("1D kernel weights integrate the kernel over each cell") {
  const Grid g = line(6, 2.0);
  const RieszKernel k(g, FracIntConfig(1, 0.3));
  const double h = g.h();
  for (int d : {0, 1, 5, 63}) {
    const double lo = (d - 0.5) * h, hi = (d + 0.5) * h;
    CHECK(k.weight(d) == Approx(oracle::power_average(lo, hi, -0.7) * h).epsilon(1e-12));
    CHECK(k.weight(-d) == k.weight(d));
  }
  const RieszKernel mid(g, FracIntConfig(1, 0.3, KernelRule::kMidpoint));
  CHECK(mid.weight(3) == Approx(std::pow(3 * h, -0.7) * h).epsilon(1e-14));
  CHECK(mid.weight(0) == k.weight(0));
}

TEST_CASE("2D kernel weights against the 1/|y| closed form") {
  const Grid g(DomainBox(2, 1.0, 0.5), 4);
  const RieszKernel k(g, FracIntConfig(2, 1.0));
  const double h = g.h();
  CHECK(k.weight(0, 0) == Approx(4.0 * inv_r_corner(h / 2, h / 2)).epsilon(1e-10));
  auto cell = [&](int i, int j) {
    const double x0 = (i - 0.5) * h, x1 = (i + 0.5) * h, y0 = (j - 0.5) * h, y1 = (j + 0.5) * h;
    return inv_r_corner(x1, y1) - inv_r_corner(x0, y1) - inv_r_corner(x1, y0) + inv_r_corner(x0, y0);
  };
  CHECK(k.weight(2, 1) == Approx(cell(2, 1)).epsilon(1e-10));
  CHECK(k.weight(1, 2) == Approx(k.weight(2, 1)).epsilon(1e-14));
  CHECK(k.weight(-3, 5) == Approx(cell(3, 5)).epsilon(1e-10));
}

TEST_CASE("2D fractional integral of a square") {
  const Grid g(DomainBox(2, 2.0, 0.5), 6);
  const GridFunction out = fractional_integral(indicator(g, 1.0), FracIntConfig(2, 1.0));
  // at the origin: (1/2π) ∫_{[-1,1]^2} 1/|y| dy = 4 asinh(1) / π; sampled half a cell away
  const std::size_t cell = g.flat({g.cells_per_axis() / 2, g.cells_per_axis() / 2});
  CHECK(out[cell] == Approx(4.0 * std::asinh(1.0) / oracle::kPi).epsilon(1e-2));
}

TEST_CASE("fractional integral is linear and positive") {
  const Grid g = line(8);
  const FracIntConfig cfg(1, 0.4);
  const RieszKernel k(g, cfg);
  CHECK(k.apply(GridFunction::constant(g, 0.0)).is_zero());
  const GridFunction f = random_function(g, 1), h = random_function(g, 2);
  const GridFunction lhs = k.apply(2.0 * f + (-3.0) * h);
  const GridFunction rhs = 2.0 * k.apply(f) + (-3.0) * k.apply(h);
  CHECK(oracle::rel_diff(values(lhs), values(rhs)) <= 1e-12);
  const GridFunction af = k.apply(abs(f)), ah = k.apply(abs(f) + abs(h));
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(af[i] >= 0.0);
    CHECK(ah[i] >= af[i]);
  }
  CHECK_THROWS_AS(k.apply(GridFunction::constant(line(7), 1.0)), ParameterError);
}

TEST_CASE("commutator") {
  for (int dim : {1, 2}) {
    const Grid g(DomainBox(dim, 1.0, 0.5), dim == 1 ? 8 : 4);
    const FracIntConfig cfg(dim, 0.5);
    const RieszKernel k(g, cfg);
    const GridFunction f = random_function(g, 3), b = random_function(g, 4, 2.0);
    const GridFunction cb = k.commutator(b, f);
    SUBCASE("equals b I f - I (b f)") {
      const GridFunction direct = b * k.apply(f) + (-1.0) * k.apply(b * f);
      CHECK(oracle::rel_diff(values(cb), values(direct)) <= 1e-10);
    }
    SUBCASE("vanishes for constant symbols") {
      const GridFunction c = GridFunction::constant(g, -4.5);
      const double scale = 4.5 * oracle::max_abs(values(k.apply(abs(f))));
      CHECK(oracle::max_abs(values(k.commutator(c, f))) <= 1e-12 * scale);
    }
    SUBCASE("invariant under b + const, bilinear") {
      CHECK(oracle::rel_diff(values(k.commutator(shifted(b, 100.0), f)), values(cb)) <= 1e-12);
      CHECK(oracle::rel_diff(values(k.commutator(3.0 * b, f)), values(3.0 * cb)) <= 1e-14);
      CHECK(oracle::rel_diff(values(k.commutator(b, -2.0 * f)), values(-2.0 * cb)) <= 1e-14);
    }
    CHECK(oracle::rel_diff(values(commutator(b, f, cfg)), values(cb)) == 0.0);
  }
  CHECK_THROWS_AS(commutator(GridFunction::constant(line(4), 1.0), GridFunction::constant(line(5), 1.0),
                             FracIntConfig(1, 0.5)),
                  ParameterError);
}

TEST_CASE("maximal variants by name") {
  for (const char* name : {"m", "mfrac", "mw", "mfracw", "mdelta", "msharp"})
    CHECK(to_string(parse_maximal_variant(name)) == name);
  CHECK_THROWS_AS(parse_maximal_variant("mx"), ParameterError);
}

TEST_CASE("maximal function parameter checks") {
  CHECK_THROWS_WITH_AS(MaximalConfig::fractional(0.6, 2.0).validate(1), "beta*r must be < n",
                       ParameterError);
  CHECK_THROWS_AS(MaximalConfig::fractional(0.2, 0.5).validate(1), ParameterError);
  CHECK_THROWS_AS(MaximalConfig::delta_variant(1.0).validate(1), ParameterError);
  MaximalConfig w;
  w.variant = MaximalVariant::kWeighted;
  CHECK_THROWS_AS(w.validate(1), ParameterError);
  CHECK_THROWS_AS(MaximalConfig::weighted(Weight::unit(2)).validate(1), ParameterError);
  CHECK_NOTHROW(MaximalConfig::fractional(0.6, 1.5).validate(1));
}

TEST_CASE("maximal function examples") {
  const Grid g = line(3);
  const CubeFamily full = make_full_family(g);
  const GridFunction c = GridFunction::constant(g, -3.0);
  const GridFunction mc = maximal(c, MaximalConfig::plain(), make_cube_family(g, 2));
  for (double v : mc.values()) CHECK(v == 3.0);
  const GridFunction spike(g, {0, 0, 0, 8, 0, 0, 0, 0});
  const GridFunction m = maximal(spike, MaximalConfig::plain(), full);
  CHECK(m[3] == 8.0);
  CHECK(m[2] == 4.0);
  CHECK(m[4] == 4.0);
  CHECK(m[0] == 2.0);
  const GridFunction sharp = maximal(c, MaximalConfig::sharp_delta(0.5), full);
  CHECK(sharp.is_zero());
}

TEST_CASE("maximal functions equal brute-force enumeration") {
  const Grid g = line(5);
  const CubeFamily full = make_full_family(g);
  for (std::uint64_t seed = 10; seed < 15; ++seed) {
    const GridFunction f = random_function(g, seed, 3.0);
    const std::vector<double> v = values(f);
    CHECK(oracle::rel_diff(values(maximal(f, MaximalConfig::plain(), full)),
                           oracle::brute_maximal(v, g.h(), {oracle::Kind::kPlain})) <= 1e-13);
    CHECK(oracle::rel_diff(values(maximal(f, MaximalConfig::fractional(0.4, 2.0), full)),
                           oracle::brute_maximal(v, g.h(), {oracle::Kind::kFractional, 0.4, 2.0})) <=
          1e-13);
    CHECK(oracle::rel_diff(values(maximal(f, MaximalConfig::delta_variant(0.3), full)),
                           oracle::brute_maximal(v, g.h(), {oracle::Kind::kDelta, 0, 1, 0.3})) <=
          1e-13);
    CHECK(oracle::rel_diff(values(maximal(f, MaximalConfig::sharp_delta(0.7), full)),
                           oracle::brute_maximal(v, g.h(), {oracle::Kind::kSharp, 0, 1, 0.7})) <=
          1e-13);
  }
}

TEST_CASE("weighted maximal function against direct weighted averages") {
  const Grid g = line(5);
  const CubeFamily fam = make_cube_family(g, 3);
  const Weight w = Weight::power(1, {0.1, 0.0}, -0.4);
  const GridFunction f = random_function(g, 21);
  const GridFunction m = maximal(f, MaximalConfig::weighted(w), fam);
  std::vector<double> ref(g.size(), 0.0);
  for (const GridCube& q : fam.cubes()) {
    const Cube c = to_cube(g, q);
    double num = 0.0;
    for (int i = q.lo[0]; i < q.lo[0] + q.extent; ++i)
      num += std::abs(f[i]) * integrate_cell_weight(w, Cube{{g.center(i), 0.0}, g.h()});
    const double avg = num / integrate_cell_weight(w, c);
    for (int i = q.lo[0]; i < q.lo[0] + q.extent; ++i) ref[i] = std::max(ref[i], avg);
  }
  CHECK(oracle::rel_diff(values(m), ref) <= 1e-12);
}

TEST_CASE("maximal functions: homogeneity, sublinearity, monotonicity") {
  for (int dim : {1, 2}) {
    const Grid g(DomainBox(dim, 1.0, 0.5), dim == 1 ? 7 : 4);
    const CubeFamily fam = make_cube_family(g, 3);
    const Weight w = Weight::power(dim, {0.0, 0.0}, -0.3);
    const std::vector<MaximalConfig> cfgs = {
        MaximalConfig::plain(), MaximalConfig::fractional(0.3, 1.5), MaximalConfig::weighted(w),
        MaximalConfig::fractional_weighted(0.2, 2.0, w), MaximalConfig::delta_variant(0.4),
        MaximalConfig::sharp_delta(0.4)};
    const GridFunction f = random_function(g, 31), h = random_function(g, 32);
    for (const MaximalConfig& cfg : cfgs) {
      const GridFunction mf = maximal(f, cfg, fam), mh = maximal(h, cfg, fam);
      CHECK(oracle::rel_diff(values(maximal(-7.0 * f, cfg, fam)), values(7.0 * mf)) <= 1e-12);
      const bool sharp = cfg.variant == MaximalVariant::kSharpDelta;
      const double k = cfg.variant == MaximalVariant::kDelta ? std::pow(2.0, 1.0 / cfg.delta - 1.0) : 1.0;
      const GridFunction sum = maximal(f + h, cfg, fam);
      const GridFunction big = maximal(abs(f) + abs(h), cfg, fam);
      for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(mf[i] >= 0.0);
        if (!sharp) {
          CHECK(sum[i] <= k * (mf[i] + mh[i]) * (1 + 1e-12));
          CHECK(big[i] >= mf[i] * (1 - 1e-12));
        }
        if (cfg.variant == MaximalVariant::kPlain || cfg.variant == MaximalVariant::kWeighted ||
            cfg.variant == MaximalVariant::kDelta)
          CHECK(mf[i] >= std::abs(f[i]) * (1 - 1e-12));
      }
    }
  }
}

TEST_CASE("more cubes never decrease the maximal function") {
  const Grid g = line(7);
  const GridFunction f = random_function(g, 41);
  const GridFunction m1 = maximal(f, MaximalConfig::plain(), make_cube_family(g, 1));
  const GridFunction m3 = maximal(f, MaximalConfig::plain(), make_full_family(g));
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(m3[i] >= m1[i]);
}

TEST_CASE("fractional maximal function is dominated by the fractional integral") {
  std::vector<double> sups;
  for (int level : {9, 11}) {
    const Grid g(DomainBox(1, 2.0, 0.5), level);
    const GridFunction chi = indicator(g, 1.0);
    const CubeFamily fam = make_cube_family(g, 3);
    const DominationResult r = pointwise_domination_check(chi, 0.5, fam);
    CHECK_FALSE(r.skipped);
    CHECK(r.violations == 0);
    CHECK(std::isfinite(r.sup_ratio));
    CHECK(pointwise_domination_check(5.0 * chi, 0.5, fam).sup_ratio ==
          Approx(r.sup_ratio).epsilon(1e-12));
    sups.push_back(r.sup_ratio);
  }
  CHECK(sups[1] == Approx(sups[0]).epsilon(0.10));
  const Grid g = line(5);
  CHECK(pointwise_domination_check(GridFunction::constant(g, 0.0), 0.5, make_cube_family(g, 1)).skipped);
}
