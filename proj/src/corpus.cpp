#include "morreylab/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "morreylab/errors.hpp"

namespace morreylab {

GridFunction CorpusEntry::sample(const Grid& grid) const {
  const double h = grid.h();
  return GridFunction::sample(grid, [&](const Point& x) { return fn(x, h); });
}

bool CorpusEntry::has_class(SymbolClass c) const {
  return std::find(classes.begin(), classes.end(), c) != classes.end();
}

bool Corpus::margin_compliant(const CorpusEntry& e, const Grid& grid) const {
  const double limit = box.half_width - box.margin;
  const GridFunction f = e.sample(grid);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Point x = grid.cell_center(i);
    bool inside = true;
    for (int a = 0; a < grid.dim(); ++a) inside = inside && std::abs(x[a]) <= limit;
    if (!inside && f[i] != 0.0) return false;
  }
  return true;
}

namespace {

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}
  /// 53 random bits mapped to [0, 1); same stream on every platform.
  double u01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double range(double lo, double hi) { return lo + (hi - lo) * u01(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(u01() * (hi - lo + 1)); }

 private:
  std::mt19937_64 rng_;
};

double sup_distance(const Point& x, const Point& c, int dim) {
  double d = 0.0;
  for (int a = 0; a < dim; ++a) d = std::max(d, std::abs(x[a] - c[a]));
  return d;
}

double euclid(const Point& x, const Point& c, int dim) {
  double d = 0.0;
  for (int a = 0; a < dim; ++a) d += (x[a] - c[a]) * (x[a] - c[a]);
  return std::sqrt(d);
}

CorpusEntry make_input(int k, int dim, double reach, Uniform& u) {
  const double rho = u.range(0.2, 0.6) * reach;
  Point c{0.0, 0.0};
  for (int a = 0; a < dim; ++a) c[a] = u.range(-(reach - rho), reach - rho);
  const double amp = u.range(0.5, 2.0);
  const std::string id = std::to_string(k);
  switch (k % 5) {
    case 0:
      return {"bump" + id,
              [=](const Point& x, double) {
                const double t = euclid(x, c, dim) / rho;
                return t < 1.0 ? amp * (1.0 - t * t) * (1.0 - t * t) : 0.0;
              },
              {}};
    case 1:
      return {"step" + id,
              [=](const Point& x, double) { return sup_distance(x, c, dim) < rho ? amp : 0.0; },
              {}};
    case 2:
      return {"tent" + id,
              [=](const Point& x, double) {
                return amp * std::max(0.0, 1.0 - sup_distance(x, c, dim) / rho);
              },
              {}};
    case 3: {
      const double freq = u.range(3.0, 12.0);
      const double phase = u.range(0.0, 6.283185307179586);
      return {"osc" + id,
              [=](const Point& x, double) {
                if (!(sup_distance(x, c, dim) < rho)) return 0.0;
                return amp * std::sin(freq * (x[0] - c[0]) + phase);
              },
              {}};
    }
    default: {
      const int pieces = u.integer(4, 8);
      const auto per_axis = static_cast<std::size_t>(pieces);
      std::vector<double> levels(dim == 1 ? per_axis : per_axis * per_axis);
      for (double& v : levels) v = u.range(-1.0, 1.0);
      return {"pwc" + id,
              [=](const Point& x, double) {
                std::size_t idx = 0;
                for (int a = 0; a < dim; ++a) {
                  if (!(std::abs(x[a]) < reach)) return 0.0;
                  const auto cell = static_cast<std::size_t>(
                      std::min(pieces - 1, static_cast<int>((x[a] + reach) / (2 * reach) * pieces)));
                  idx = idx * per_axis + cell;
                }
                return levels[idx];
              },
              {}};
    }
  }
}

}  // namespace

Corpus generate_corpus(const DomainBox& box, std::uint64_t seed, int count) {
  if (count < 1) throw ParameterError("corpus count must be at least 1");
  Uniform u(seed);
  const double reach = box.half_width - box.margin;
  const int dim = box.dim;
  Corpus corpus{box, {}, {}};
  for (int k = 0; k < count; ++k) corpus.inputs.push_back(make_input(k, dim, reach, u));
  const Point origin{0.0, 0.0};
  corpus.symbols.push_back({"log",
                            [=](const Point& x, double h) {
                              return std::log(std::max(euclid(x, origin, dim), 0.5 * h));
                            },
                            {SymbolClass::kBmo}});
  corpus.symbols.push_back(
      {"pow0.75",
       [=](const Point& x, double) { return std::pow(euclid(x, origin, dim), 0.75); },
       {SymbolClass::kBmo, SymbolClass::kLip}});
  corpus.symbols.push_back({"tanh",
                            [](const Point& x, double) { return std::tanh(x[0] / 0.25); },
                            {SymbolClass::kBmo, SymbolClass::kLip}});
  return corpus;
}

}  // namespace morreylab
