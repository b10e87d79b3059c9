#include <cmath>
#include <random>

#include "doctest.h"
#include "morreylab/errors.hpp"
#include "morreylab/weight.hpp"
#include "morreylab/weights.hpp"
#include "oracles.hpp"

using namespace morreylab;
using doctest::Approx;

namespace {

Grid line(int level, double half_width = 1.0) {
  return Grid(DomainBox(1, half_width, 0.25 * half_width), level);
}

Weight power1(double gamma) { return Weight::power(1, {0.0, 0.0}, gamma); }

// Family sup of a closed-form interval functional, computed cube by cube.
template <class Fn>
double family_sup(const CubeFamily& fam, Fn&& fn) {
  double best = 0.0;
  for (const GridCube& q : fam.cubes()) {
    const Cube c = to_cube(fam.grid(), q);
    best = std::max(best, fn(c.lower(0), c.upper(0)));
  }
  return best;
}

}  // namespace

TEST_CASE("weighted measure of cubes") {
  CHECK(integrate_cell_weight(Weight::unit(1), Cube{{0.3, 0.0}, 0.7}) == Approx(0.7));
  CHECK(integrate_cell_weight(Weight::unit(2), Cube{{0.3, 0.1}, 0.5}) == Approx(0.25));
  CHECK(integrate_cell_weight(power1(-0.5), Cube{{0.5, 0.0}, 1.0}) == Approx(2.0).epsilon(1e-14));
  CHECK(integrate_cell_weight(power1(-0.5), Cube{{0.0, 0.0}, 2.0}) == Approx(4.0).epsilon(1e-14));
  CHECK_THROWS_WITH_AS(power1(-1.0), doctest::Contains("weight not locally integrable"),
                       NotIntegrableError);
  CHECK_THROWS_AS(integrate_cell_weight(power1(-0.5).pow(3.0), Cube{{0.0, 0.0}, 1.0}),
                  NotIntegrableError);
  // away from the singularity a non-integrable power is fine
  CHECK(integrate_cell_weight(power1(-0.5).pow(3.0), Cube{{1.5, 0.0}, 1.0}) ==
        Approx((std::pow(1.0, -0.5) - std::pow(2.0, -0.5)) / 0.5));
}

TEST_CASE("1D power integral against the antiderivative") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (double g : {-0.9, -0.5, -0.1, 0.0, 0.3, 1.0, 2.5}) {
    for (int k = 0; k < 50; ++k) {
      double a = u(rng), b = u(rng);
      if (a > b) std::swap(a, b);
      if (b - a < 1e-6) continue;
      const double ref = oracle::power_average(a, b, g) * (b - a);
      CHECK(power_integral_1d(a, b, g) == Approx(ref).epsilon(1e-10));
    }
    // short interval far out
    CHECK(power_integral_1d(1000.0, 1000.0 + 1e-9, g) ==
          Approx(std::pow(1000.0, g) * 1e-9).epsilon(1e-6));
  }
}

TEST_CASE("2D corner integral against closed forms") {
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{0.3, 2.0}, std::pair{2.0, 0.01}}) {
    CHECK(power_corner_integral_2d(a, b, 0.0) == Approx(a * b).epsilon(1e-12));
    CHECK(power_corner_integral_2d(a, b, 2.0) ==
          Approx(a * a * a * b / 3.0 + a * b * b * b / 3.0).epsilon(1e-12));
    // ∫∫ 1/r = a asinh(b/a) + b asinh(a/b)
    CHECK(power_corner_integral_2d(a, b, -1.0) ==
          Approx(a * std::asinh(b / a) + b * std::asinh(a / b)).epsilon(1e-10));
  }
  // quarter disc comparison: ∫∫_{[0,a]^2} ≥ ∫_{quarter disc of radius a} = (π/2) a^{γ+2}/(γ+2)
  for (double g : {-1.5, -0.5, 0.7}) {
    CHECK(power_corner_integral_2d(1.0, 1.0, g) > oracle::kPi / 2.0 / (g + 2.0));
    CHECK(power_corner_integral_2d(2.0, 2.0, g) ==
          Approx(std::pow(2.0, g + 2.0) * power_corner_integral_2d(1.0, 1.0, g)).epsilon(1e-10));
  }
}

TEST_CASE("weight measures are additive") {
  for (int dim : {1, 2}) {
    const Grid g(DomainBox(dim, 1.0, 0.5), dim == 1 ? 8 : 5);
    for (double gamma : {-0.5, 0.0, 0.4}) {
      const Weight w = Weight::power(dim, {0.1, -0.2}, gamma);
      const WeightMeasure m(w, g);
      double total = 0.0;
      for (double v : m.masses()) {
        CHECK(v > 0.0);
        total += v;
      }
      const GridCube whole{{0, 0}, g.cells_per_axis()};
      CHECK(m.measure(whole) == Approx(total).epsilon(1e-12));
      CHECK(m.measure(whole) == Approx(integrate_cell_weight(w, to_cube(g, whole))).epsilon(1e-10));
      const CubeFamily fam = make_cube_family(g, 2);
      for (const GridCube& q : fam.cubes()) {
        if (q.extent % 2) continue;
        const int h = q.extent / 2;
        double parts = 0.0;
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < (dim == 1 ? 1 : 2); ++j)
            parts += m.measure(GridCube{{q.lo[0] + i * h, dim == 1 ? 0 : q.lo[1] + j * h}, h});
        }
        CHECK(m.measure(q) == Approx(parts).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("sampled weights integrate by the midpoint rule") {
  const Grid g = line(4);
  const GridFunction s = GridFunction::sample(g, [](const Point& x) { return 1.0 + x[0] * x[0]; });
  const Weight w = Weight::sampled(s);
  CHECK_FALSE(w.is_power());
  const WeightMeasure m(w, g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(m.mass(i) == Approx(s[i] * g.h()));
  CHECK_THROWS_AS(Weight::sampled(GridFunction::constant(g, 0.0)), ParameterError);
  CHECK_THROWS_WITH_AS(critical_index(w), "critical index requires analytic weight",
                       ParameterError);
}

TEST_CASE("unit weight constants are one") {
  const CubeFamily fam = make_cube_family(line(8), 3);
  for (double p : {1.0, 1.5, 2.0, 4.0}) CHECK(ap_constant(Weight::unit(1), p, fam).constant == Approx(1.0));
  CHECK(apq_constant(Weight::unit(1), 2.0, 4.0, fam).constant == Approx(1.0));
  CHECK(rh_constant(Weight::unit(1), 3.0, fam).constant == Approx(1.0));
}

TEST_CASE("A_2 of |x|^{-1/2}") {
  SUBCASE("centered cubes give 4/3 at any scale") {
    const Weight w = power1(-0.5), d = power1(0.5);
    for (double a : {0.01, 0.5, 3.0}) {
      const Cube c{{0.0, 0.0}, 2.0 * a};
      CHECK(integrate_cell_weight(w, c) / (2 * a) * integrate_cell_weight(d, c) / (2 * a) ==
            Approx(4.0 / 3.0).epsilon(1e-12));
    }
  }
  SUBCASE("dyadic family sup is the edge value") {
    const WeightClassReport r = ap_constant(power1(-0.5), 2.0, make_cube_family(line(12), 1));
    CHECK(r.constant == Approx(4.0 / 3.0).epsilon(1e-9));
  }
  SUBCASE("shifted family sup matches the closed-form sup over the same cubes") {
    const CubeFamily fam = make_cube_family(line(12), 3);
    for (double g : {-0.5, -0.2, 0.3}) {
      for (double p : {1.5, 2.0, 3.0}) {
        const double ref =
            family_sup(fam, [&](double a, double b) { return oracle::ap_interval(a, b, g, p); });
        CHECK(ap_constant(power1(g), p, fam).constant == Approx(ref).epsilon(1e-9));
        CHECK(ref >= oracle::ap_centered(g, p) * (1 - 1e-12));
      }
    }
  }
  CHECK_THROWS_WITH_AS(ap_constant(power1(1.5), 2.0, make_cube_family(line(6), 1)),
                       "not in A_p (dual factor diverges)", NotIntegrableError);
}

TEST_CASE("A_{p,q} and RH_r against closed forms") {
  const CubeFamily fam = make_cube_family(line(12), 3);
  SUBCASE("A_{2,4} at gamma -0.1") {
    const double g = -0.1, p = 2.0, q = 4.0, pd = 2.0;
    const double centered = std::pow(1.0 / (1.0 + q * g), 1.0 / q) * std::pow(1.0 / (1.0 - pd * g), 1.0 / pd);
    const double ref = family_sup(fam, [&](double a, double b) {
      return std::pow(oracle::power_average(a, b, q * g), 1.0 / q) *
             std::pow(oracle::power_average(a, b, -pd * g), 1.0 / pd);
    });
    const double num = apq_constant(power1(g), p, q, fam).constant;
    CHECK(num == Approx(ref).epsilon(1e-9));
    CHECK(num == Approx(centered).epsilon(0.02));
  }
  CHECK_THROWS_WITH_AS(apq_constant(power1(-0.3), 2.0, 4.0, fam), "not in A_{p,q}",
                       NotIntegrableError);
  SUBCASE("RH_1.5 at gamma -0.5") {
    const double ref =
        family_sup(fam, [](double a, double b) { return oracle::rh_interval(a, b, -0.5, 1.5); });
    const double num = rh_constant(power1(-0.5), 1.5, fam).constant;
    CHECK(num == Approx(ref).epsilon(1e-9));
    CHECK(num == Approx(oracle::rh_centered(-0.5, 1.5)).epsilon(0.02));
  }
  CHECK_THROWS_WITH_AS(rh_constant(power1(-0.5), 3.0, fam), "not in RH_3", NotIntegrableError);
}

TEST_CASE("class constants: nesting and dilation invariance") {
  const CubeFamily fam = make_cube_family(line(10), 2);
  const CubeFamily wide = make_cube_family(line(10, 5.0), 2);
  for (double g : {-0.6, -0.2, 0.4}) {
    const Weight w = power1(g);
    double prev = INFINITY;
    for (double p : {1.8, 2.0, 3.0, 5.0}) {
      const double c = ap_constant(w, p, fam).constant;
      CHECK(c >= 1.0 - 1e-12);
      CHECK(c <= prev * (1 + 1e-12));
      prev = c;
      CHECK(ap_constant(w, p, wide).constant == Approx(c).epsilon(1e-9));
    }
    double prev_rh = 0.0;
    for (double r : {1.1, 1.4, 1.6}) {
      const double c = rh_constant(w, r, fam).constant;
      CHECK(c >= prev_rh);
      prev_rh = c;
    }
  }
}

TEST_CASE("critical index") {
  CHECK(critical_index(power1(-0.5)) == 2.0);
  CHECK(std::isinf(critical_index(power1(0.0))));
  CHECK(critical_index(Weight::power(2, {0.0, 0.0}, -1.0)) == 2.0);
}

TEST_CASE("membership oracle") {
  CHECK(power_membership(power1(-0.5), WeightClass::kAp, {2.0}));
  CHECK(power_membership(power1(-0.5), WeightClass::kAp, {1.0}));
  CHECK_FALSE(power_membership(power1(0.2), WeightClass::kAp, {1.0}));
  CHECK(power_membership(power1(-0.2).pow(2.0), WeightClass::kAp, {1.0}));
  CHECK_FALSE(power_membership(power1(-0.5), WeightClass::kRh, {3.0}));
  CHECK(power_membership(power1(-0.1), WeightClass::kApq, {2.0, 4.0}));
  CHECK_FALSE(power_membership(power1(-0.3), WeightClass::kApq, {2.0, 4.0}));
  CHECK_THROWS_AS(power_membership(power1(0.0), WeightClass::kApq, {2.0}), ParameterError);
}

TEST_CASE("A^s_p range table") {
  // range arithmetic written out: w^s in A_p iff -n < s g < n (p - 1), or s g in (-n, 0] for p = 1
  auto lhs = [](int n, Rational g, Rational s, Rational p) {
    const Rational t = g * s;
    if (p == Rational(1)) return Rational(-n) < t && t <= Rational(0);
    return Rational(-n) < t && t < n * (p - 1);
  };
  std::vector<Rational> gammas;
  for (int k = -30; k <= 30; ++k) gammas.emplace_back(k, 20);
  for (int n : {1, 2}) {
    for (auto [s, p] : {std::pair{Rational(2), Rational(1)}, std::pair{Rational(3, 2), Rational(5, 2)}}) {
      const auto rows = lemma_c_check(n, gammas, s, p);
      REQUIRE(rows.size() == gammas.size());
      for (const EquivalenceRow& row : rows) {
        CHECK(row.agree());
        CHECK(row.lhs == lhs(n, row.gamma, s, p));
      }
    }
  }
  const auto rows = lemma_c_check(1, {Rational(0), Rational(-3, 4), Rational(-1, 4)}, Rational(2), Rational(1));
  CHECK((rows[0].lhs && rows[0].rhs));
  CHECK((!rows[1].lhs && !rows[1].rhs));
  CHECK((rows[2].lhs && rows[2].rhs));
  CHECK_THROWS_AS(lemma_c_check(1, gammas, Rational(1), Rational(2)), ParameterError);
}

TEST_CASE("A_{p,q} equivalence table flips at the shared endpoints") {
  const Rational p(2), q(4);
  const auto rows = eq4_check(1, {Rational(0), Rational(-1, 4), Rational(-1, 4) + Rational(1, 1000),
                                  Rational(1, 2), Rational(1, 2) - Rational(1, 1000)},
                              p, q);
  for (const auto& row : rows) CHECK(row.agree());
  CHECK(rows[0].lhs);
  CHECK_FALSE(rows[1].lhs);
  CHECK(rows[2].lhs);
  CHECK_FALSE(rows[3].lhs);
  CHECK(rows[4].lhs);
}

TEST_CASE("doubling") {
  const CubeFamily fam = make_cube_family(line(8), 2);
  const DoublingResult unit = doubling_check(Weight::unit(1), 2.0, 2.0, fam);
  CHECK(unit.sup_ratio == Approx(2.0).epsilon(1e-12));
  CHECK(unit.normalized == Approx(0.5).epsilon(1e-12));
  CHECK(doubling_check(power1(-0.5), 1.0, 2.0, fam).sup_ratio == 1.0);
  const DoublingResult pw = doubling_check(power1(-0.5), 2.0, 2.0, fam);
  CHECK(std::isfinite(pw.sup_ratio));
  // a decreasing weight enlarged towards its center can more than double
  const Cube c = to_cube(fam.grid(), pw.cube);
  const double ref = oracle::power_average(c.lower(0) - c.side / 2, c.upper(0) + c.side / 2, -0.5) * 2.0 /
                     oracle::power_average(c.lower(0), c.upper(0), -0.5);
  CHECK(pw.sup_ratio == Approx(ref).epsilon(1e-9));
  // dilation bound with the numeric A_2 constant
  CHECK(pw.normalized <= ap_constant(power1(-0.5), 2.0, make_full_family(line(8))).constant);
  // a non-integer dilation falls back to direct integration
  const DoublingResult odd = doubling_check(Weight::unit(1), 1.5, 1.0, fam);
  CHECK(odd.sup_ratio == Approx(1.5).epsilon(1e-12));
  CHECK_THROWS_WITH_AS(doubling_check(Weight::unit(1), 300.0, 1.0, fam), "family exhausted",
                       ParameterError);
}

TEST_CASE("subset comparison") {
  const CubeFamily fam = make_cube_family(line(10), 1);
  const SubsetComparison unit = subset_comparison_check(Weight::unit(1), 2.0, 1.5, fam);
  CHECK(unit.c1 == Approx(1.0));
  CHECK(unit.c2 == Approx(1.0));
  CHECK(unit.slope == Approx(1.0));
  CHECK(unit.intercept == Approx(0.0).epsilon(1e-9).scale(1.0));
  const SubsetComparison pw = subset_comparison_check(power1(-0.5), 2.0, 1.5, fam);
  CHECK(std::isfinite(pw.c1));
  CHECK(std::isfinite(pw.c2));
  CHECK(pw.c1 > 0.0);
  CHECK(pw.c1 <= 1.0);
  CHECK(pw.c2 >= 1.0);
  CHECK(pw.pairs == unit.pairs);
  CHECK_THROWS_WITH_AS(subset_comparison_check(power1(-0.5), 2.0, 3.0, fam), "hypotheses not met",
                       HypothesisError);
}
