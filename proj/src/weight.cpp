#include "morreylab/weight.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "morreylab/errors.hpp"
#include "morreylab/format.hpp"

namespace morreylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double gk_integrate(const auto& fn, double lo, double hi) {
  using boost::math::quadrature::gauss_kronrod;
  if (!(hi > lo)) return 0.0;
  return gauss_kronrod<double, 31>::integrate(fn, lo, hi, 10, 1e-12);
}

std::string not_integrable_message(double exponent) {
  return "weight not locally integrable (exponent " + format_number(exponent) + ")";
}

}  // namespace

Weight Weight::unit(int dim) { return power(dim, Point{0.0, 0.0}, 0.0); }

Weight Weight::power(int dim, Point center, double exponent) {
  if (dim != 1 && dim != 2) throw ParameterError("dimension must be 1 or 2");
  if (!std::isfinite(exponent)) throw ParameterError("power exponent must be finite");
  if (!(exponent > -dim)) throw NotIntegrableError(not_integrable_message(exponent));
  if (dim == 1) center[1] = 0.0;
  return Weight(dim, Power{center, exponent});
}

Weight Weight::sampled(GridFunction samples) {
  for (double v : samples.values()) {
    if (!(v > 0.0)) throw ParameterError("sampled weight values must be positive");
  }
  const int dim = samples.grid().dim();
  return Weight(dim, std::move(samples));
}

double Weight::exponent() const {
  if (!is_power()) throw ParameterError("weight is not a power weight");
  return std::get<Power>(rep_).exponent;
}

const Point& Weight::center() const {
  if (!is_power()) throw ParameterError("weight is not a power weight");
  return std::get<Power>(rep_).center;
}

const GridFunction& Weight::samples() const {
  if (is_power()) throw ParameterError("weight is not sampled");
  return std::get<GridFunction>(rep_);
}

Weight Weight::pow(double t) const {
  if (is_power()) {
    const auto& p = std::get<Power>(rep_);
    const double e = p.exponent * t;
    return Weight(dim_, Power{p.center, e == 0.0 ? 0.0 : e});
  }
  const auto& s = std::get<GridFunction>(rep_);
  std::vector<double> v(s.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(s[i], t);
  return Weight(dim_, GridFunction(s.grid(), std::move(v)));
}

double Weight::value_at(const Point& x) const {
  if (is_power()) {
    const auto& p = std::get<Power>(rep_);
    double r2 = 0.0;
    for (int a = 0; a < dim_; ++a) r2 += (x[a] - p.center[a]) * (x[a] - p.center[a]);
    if (p.exponent == 0.0) return 1.0;
    return std::pow(std::sqrt(r2), p.exponent);
  }
  const auto& s = std::get<GridFunction>(rep_);
  const Grid& g = s.grid();
  std::array<int, 2> idx{0, 0};
  for (int a = 0; a < dim_; ++a) {
    const int k = static_cast<int>(std::floor((x[a] + g.box().half_width) / g.h()));
    idx[a] = std::clamp(k, 0, g.cells_per_axis() - 1);
  }
  return s[g.flat(idx)];
}

std::string Weight::spec() const {
  if (is_power()) {
    const auto& p = std::get<Power>(rep_);
    std::string x0 = format_number(p.center[0]);
    if (dim_ == 2) x0 += ";" + format_number(p.center[1]);
    return "power:x0=" + x0 + ",gamma=" + format_number(p.exponent);
  }
  return "sampled:" + std::get<GridFunction>(rep_).content_hash();
}

double power_integral_1d(double a, double b, double gamma) {
  if (b < a) std::swap(a, b);
  if (a == b) return 0.0;
  const double g1 = gamma + 1.0;
  if (a < 0.0 && b > 0.0) {
    if (g1 <= 0.0) return kInf;
    return (std::pow(-a, g1) + std::pow(b, g1)) / g1;
  }
  const double lo = std::min(std::abs(a), std::abs(b));
  const double hi = std::max(std::abs(a), std::abs(b));
  if (lo == 0.0) {
    if (g1 <= 0.0) return kInf;
    return std::pow(hi, g1) / g1;
  }
  // lo^(g+1) * ∫_1^(hi/lo) u^g du, written to stay accurate when hi/lo ≈ 1
  const double log_ratio = std::log1p((hi - lo) / lo);
  const double scaled = g1 == 0.0 ? log_ratio : std::expm1(g1 * log_ratio) / g1;
  return std::pow(lo, g1) * scaled;
}

double power_corner_integral_2d(double a, double b, double gamma) {
  if (a <= 0.0 || b <= 0.0) return 0.0;
  const double m = gamma + 2.0;
  if (m <= 0.0) return kInf;
  const double split = std::atan2(b, a);
  const double first =
      gk_integrate([&](double t) { return std::pow(a / std::cos(t), m); }, 0.0, split);
  const double second = gk_integrate([&](double t) { return std::pow(b / std::sin(t), m); },
                                     split, std::numbers::pi / 2);
  return (first + second) / m;
}

namespace {

double signed_corner(double u, double v, double gamma) {
  const double s = (u < 0.0 ? -1.0 : 1.0) * (v < 0.0 ? -1.0 : 1.0);
  return s * power_corner_integral_2d(std::abs(u), std::abs(v), gamma);
}

bool closure_meets(double lo, double hi, double c) { return lo <= c && c <= hi; }

// Direct 2D integration for rectangles away from the center (any exponent).
double rect_integral_direct(double x1, double x2, double y1, double y2, double cx, double cy,
                            double gamma) {
  auto inner = [&](double x) {
    const double dx = x - cx;
    return gk_integrate(
        [&](double y) { return std::pow(dx * dx + (y - cy) * (y - cy), 0.5 * gamma); }, y1, y2);
  };
  return gk_integrate(inner, x1, x2);
}

double power_rect_integral(double x1, double x2, double y1, double y2, const Point& c,
                           double gamma) {
  const bool touches = closure_meets(x1, x2, c[0]) && closure_meets(y1, y2, c[1]);
  if (gamma <= -2.0) {
    if (touches) throw NotIntegrableError(not_integrable_message(gamma));
    return rect_integral_direct(x1, x2, y1, y2, c[0], c[1], gamma);
  }
  const double u1 = x1 - c[0], u2 = x2 - c[0], v1 = y1 - c[1], v2 = y2 - c[1];
  return signed_corner(u2, v2, gamma) - signed_corner(u1, v2, gamma) -
         signed_corner(u2, v1, gamma) + signed_corner(u1, v1, gamma);
}

double overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

}  // namespace

double integrate_cell_weight(const Weight& w, const Cube& q) {
  const int n = w.dim();
  if (w.is_power()) {
    const Point& c = w.center();
    const double gamma = w.exponent();
    if (gamma == 0.0) return q.volume(n);
    if (n == 1) {
      const double v = power_integral_1d(q.lower(0) - c[0], q.upper(0) - c[0], gamma);
      if (std::isinf(v)) throw NotIntegrableError(not_integrable_message(gamma));
      return v;
    }
    return power_rect_integral(q.lower(0), q.upper(0), q.lower(1), q.upper(1), c, gamma);
  }
  const GridFunction& s = w.samples();
  const Grid& g = s.grid();
  double total = 0.0;
  std::array<int, 2> lo{0, 0};
  std::array<int, 2> hi{1, 1};
  for (int a = 0; a < n; ++a) {
    const double base = -g.box().half_width;
    lo[a] = std::clamp(static_cast<int>(std::floor((q.lower(a) - base) / g.h())), 0,
                       g.cells_per_axis());
    hi[a] = std::clamp(static_cast<int>(std::ceil((q.upper(a) - base) / g.h())), 0,
                       g.cells_per_axis());
  }
  for (int i = lo[0]; i < hi[0]; ++i) {
    const double ox = overlap(g.node(i), g.node(i + 1), q.lower(0), q.upper(0));
    if (n == 1) {
      total += s[static_cast<std::size_t>(i)] * ox;
      continue;
    }
    for (int j = lo[1]; j < hi[1]; ++j) {
      const double oy = overlap(g.node(j), g.node(j + 1), q.lower(1), q.upper(1));
      total += s[g.flat({i, j})] * ox * oy;
    }
  }
  return total;
}

WeightMeasure::WeightMeasure(const Weight& w, const Grid& grid)
    : grid_(grid), weight_(w), masses_(grid.size()) {
  if (w.dim() != grid.dim()) throw ParameterError("weight and grid dimensions differ");
  const double vol = grid.cell_volume();
  if (!w.is_power()) {
    if (!(w.samples().grid() == grid)) throw ParameterError("sampled weight lives on another grid");
    for (std::size_t i = 0; i < masses_.size(); ++i) masses_[i] = w.samples()[i] * vol;
    return;
  }
  const double gamma = w.exponent();
  const Point& c = w.center();
  const int n = grid.cells_per_axis();
  if (gamma == 0.0) {
    std::fill(masses_.begin(), masses_.end(), vol);
    return;
  }
  if (grid.dim() == 1) {
    for (int i = 0; i < n; ++i) {
      const double v = power_integral_1d(grid.node(i) - c[0], grid.node(i + 1) - c[0], gamma);
      if (std::isinf(v)) throw NotIntegrableError(not_integrable_message(gamma));
      masses_[static_cast<std::size_t>(i)] = v;
    }
    return;
  }
  if (gamma <= -2.0) {
    for (std::size_t k = 0; k < masses_.size(); ++k) {
      const auto idx = grid.index(k);
      masses_[k] = power_rect_integral(grid.node(idx[0]), grid.node(idx[0] + 1),
                                       grid.node(idx[1]), grid.node(idx[1] + 1), c, gamma);
    }
    return;
  }
  const auto stride = static_cast<std::size_t>(n + 1);
  node_table_.resize(stride * stride);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      node_table_[static_cast<std::size_t>(i) * stride + static_cast<std::size_t>(j)] =
          signed_corner(grid.node(i) - c[0], grid.node(j) - c[1], gamma);
  for (std::size_t k = 0; k < masses_.size(); ++k) {
    const auto idx = grid.index(k);
    masses_[k] = measure(GridCube{idx, 1});
  }
}

double WeightMeasure::measure(const GridCube& q) const {
  if (weight_.is_power() && weight_.exponent() != 0.0) {
    if (grid_.dim() == 1) {
      const double c = weight_.center()[0];
      return power_integral_1d(grid_.node(q.lo[0]) - c, grid_.node(q.lo[0] + q.extent) - c,
                               weight_.exponent());
    }
    if (!node_table_.empty()) {
      const auto stride = static_cast<std::size_t>(grid_.cells_per_axis() + 1);
      auto at = [&](int i, int j) {
        return node_table_[static_cast<std::size_t>(i) * stride + static_cast<std::size_t>(j)];
      };
      const int x1 = q.lo[0], x2 = q.lo[0] + q.extent, y1 = q.lo[1], y2 = q.lo[1] + q.extent;
      return at(x2, y2) - at(x1, y2) - at(x2, y1) + at(x1, y1);
    }
  }
  double total = 0.0;
  for_each_cell(grid_, q, [&](std::size_t i) { total += masses_[i]; });
  return total;
}

std::shared_ptr<const WeightMeasure> WeightMeasure::of(const Weight& w, const Grid& grid) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const WeightMeasure>> cache;
  const std::string key = w.spec() + "|" + std::to_string(grid.dim()) + "|" +
                          format_number(grid.box().half_width) + "|" +
                          std::to_string(grid.level());
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto made = std::make_shared<const WeightMeasure>(w, grid);
  std::lock_guard lock(mutex);
  if (cache.size() >= 256) cache.clear();
  cache.emplace(key, made);
  return made;
}

}  // namespace morreylab
