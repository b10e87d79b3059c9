#include "morreylab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "morreylab/errors.hpp"
#include "morreylab/parallel.hpp"

namespace morreylab {

double riesz_constant(int dim, double alpha) {
  const double n = dim;
  return std::tgamma((n - alpha) / 2.0) /
         (std::pow(2.0, alpha) * std::pow(std::numbers::pi, n / 2.0) * std::tgamma(alpha / 2.0));
}

FracIntConfig::FracIntConfig(int dim, double alpha, KernelRule rule)
    : dim_(dim), alpha_(alpha), rule_(rule) {
  if (dim != 1 && dim != 2) throw ParameterError("dimension must be 1 or 2");
  if (!(alpha > 0.0 && alpha < dim)) throw ParameterError("alpha must be in (0, n)");
  constant_ = riesz_constant(dim, alpha);
}

RieszKernel::RieszKernel(const Grid& grid, const FracIntConfig& cfg) : grid_(grid), cfg_(cfg) {
  if (grid.dim() != cfg.dim()) throw ParameterError("kernel and grid dimensions differ");
  const int n = grid.cells_per_axis();
  const double h = grid.h();
  const double a = cfg.alpha();
  const bool midpoint = cfg.rule() == KernelRule::kMidpoint;
  if (grid.dim() == 1) {
    table_.resize(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) {
      table_[static_cast<std::size_t>(d)] =
          (midpoint && d > 0) ? std::pow(d * h, a - 1.0) * h
                              : power_integral_1d((d - 0.5) * h, (d + 0.5) * h, a - 1.0);
    }
    return;
  }
  const double gamma = a - 2.0;
  const auto nn = static_cast<std::size_t>(n);
  table_.resize(nn * nn);
  if (midpoint) {
    const double center = 4.0 * power_corner_integral_2d(0.5 * h, 0.5 * h, gamma);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double r = std::hypot(i * h, j * h);
        table_[static_cast<std::size_t>(i) * nn + static_cast<std::size_t>(j)] =
            (i == 0 && j == 0) ? center : std::pow(r, gamma) * h * h;
      }
    return;
  }
  // corner[i][j] = ∫_0^{(i+1/2)h} ∫_0^{(j+1/2)h} |y|^{α-2} dy; symmetric in (i, j)
  std::vector<double> corner(nn * nn);
  parallel_for(nn * nn, [&](std::size_t k) {
    const std::size_t i = k / nn, j = k % nn;
    if (j < i) return;
    corner[k] = power_corner_integral_2d((i + 0.5) * h, (j + 0.5) * h, gamma);
  });
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = 0; j < i; ++j) corner[i * nn + j] = corner[j * nn + i];
  // signed corner integral at the node (k + 1/2)h, k = -1 .. n-1
  auto node = [&](int ki, int kj) {
    const double s = (ki < 0 ? -1.0 : 1.0) * (kj < 0 ? -1.0 : 1.0);
    return s * corner[static_cast<std::size_t>(std::max(ki, 0)) * nn +
                      static_cast<std::size_t>(std::max(kj, 0))];
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table_[static_cast<std::size_t>(i) * nn + static_cast<std::size_t>(j)] =
          node(i, j) - node(i - 1, j) - node(i, j - 1) + node(i - 1, j - 1);
}

double RieszKernel::weight(int di, int dj) const {
  const auto i = static_cast<std::size_t>(std::abs(di));
  if (grid_.dim() == 1) return table_[i];
  return table_[i * static_cast<std::size_t>(grid_.cells_per_axis()) +
                static_cast<std::size_t>(std::abs(dj))];
}

namespace {

// out_i = c Σ_j K(i - j) term(i, j)
template <class Term>
GridFunction convolve(const RieszKernel& k, Term term) {
  const Grid& g = k.grid();
  const int n = g.cells_per_axis();
  std::vector<double> out(g.size());
  const double c = k.config().constant();
  if (g.dim() == 1) {
    parallel_for(g.size(), [&](std::size_t i) {
      const int ii = static_cast<int>(i);
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += k.weight(ii - j) * term(i, static_cast<std::size_t>(j));
      out[i] = c * acc;
    });
  } else {
    parallel_for(g.size(), [&](std::size_t i) {
      const auto xi = g.index(i);
      double acc = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          acc += k.weight(xi[0] - a, xi[1] - b) * term(i, g.flat({a, b}));
      out[i] = c * acc;
    });
  }
  return GridFunction(g, std::move(out));
}

}  // namespace

GridFunction RieszKernel::apply(const GridFunction& f) const {
  if (!(f.grid() == grid_)) throw ParameterError("grid mismatch");
  return convolve(*this, [&](std::size_t, std::size_t j) { return f[j]; });
}

GridFunction RieszKernel::commutator(const GridFunction& b, const GridFunction& f) const {
  if (!(f.grid() == grid_) || !(b.grid() == grid_)) throw ParameterError("grid mismatch");
  return convolve(*this, [&](std::size_t i, std::size_t j) { return (b[i] - b[j]) * f[j]; });
}

GridFunction fractional_integral(const GridFunction& f, const FracIntConfig& cfg) {
  return RieszKernel(f.grid(), cfg).apply(f);
}

GridFunction commutator(const GridFunction& b, const GridFunction& f, const FracIntConfig& cfg) {
  if (!(b.grid() == f.grid())) throw ParameterError("grid mismatch");
  return RieszKernel(f.grid(), cfg).commutator(b, f);
}

MaximalVariant parse_maximal_variant(const std::string& name) {
  if (name == "m") return MaximalVariant::kPlain;
  if (name == "mfrac") return MaximalVariant::kFractional;
  if (name == "mw") return MaximalVariant::kWeighted;
  if (name == "mfracw") return MaximalVariant::kFractionalWeighted;
  if (name == "mdelta") return MaximalVariant::kDelta;
  if (name == "msharp") return MaximalVariant::kSharpDelta;
  throw ParameterError("unknown maximal variant '" + name + "'");
}

std::string to_string(MaximalVariant v) {
  switch (v) {
    case MaximalVariant::kPlain:
      return "m";
    case MaximalVariant::kFractional:
      return "mfrac";
    case MaximalVariant::kWeighted:
      return "mw";
    case MaximalVariant::kFractionalWeighted:
      return "mfracw";
    case MaximalVariant::kDelta:
      return "mdelta";
    case MaximalVariant::kSharpDelta:
      return "msharp";
  }
  return "?";
}

MaximalConfig MaximalConfig::plain() { return {}; }

MaximalConfig MaximalConfig::fractional(double beta, double r) {
  MaximalConfig c;
  c.variant = MaximalVariant::kFractional;
  c.beta = beta;
  c.r = r;
  return c;
}

MaximalConfig MaximalConfig::weighted(Weight w) {
  MaximalConfig c;
  c.variant = MaximalVariant::kWeighted;
  c.weight = std::move(w);
  return c;
}

MaximalConfig MaximalConfig::fractional_weighted(double beta, double r, Weight w) {
  MaximalConfig c;
  c.variant = MaximalVariant::kFractionalWeighted;
  c.beta = beta;
  c.r = r;
  c.weight = std::move(w);
  return c;
}

MaximalConfig MaximalConfig::delta_variant(double delta) {
  MaximalConfig c;
  c.variant = MaximalVariant::kDelta;
  c.delta = delta;
  return c;
}

MaximalConfig MaximalConfig::sharp_delta(double delta) {
  MaximalConfig c;
  c.variant = MaximalVariant::kSharpDelta;
  c.delta = delta;
  return c;
}

void MaximalConfig::validate(int dim) const {
  switch (variant) {
    case MaximalVariant::kFractional:
    case MaximalVariant::kFractionalWeighted:
      if (!(beta >= 0.0 && beta < dim)) throw ParameterError("beta must be in [0, n)");
      if (!(r >= 1.0) || !std::isfinite(r)) throw ParameterError("r must be >= 1");
      if (!(beta * r < dim)) throw ParameterError("beta*r must be < n");
      break;
    case MaximalVariant::kDelta:
    case MaximalVariant::kSharpDelta:
      if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must be in (0, 1)");
      break;
    default:
      break;
  }
  const bool weighted =
      variant == MaximalVariant::kWeighted || variant == MaximalVariant::kFractionalWeighted;
  if (weighted) {
    if (!weight) throw ParameterError("weighted variant requires a weight");
    if (weight->dim() != dim) throw ParameterError("weight and grid dimensions differ");
  }
}

double maximal_functional(const GridFunction& f, const MaximalConfig& cfg, const GridCube& q,
                          const WeightMeasure* measure) {
  const Grid& g = f.grid();
  const double count = static_cast<double>(cell_count(g, q));
  const int n = g.dim();
  switch (cfg.variant) {
    case MaximalVariant::kPlain: {
      double s = 0.0;
      for_each_cell(g, q, [&](std::size_t i) { s += std::abs(f[i]); });
      return s / count;
    }
    case MaximalVariant::kFractional: {
      double s = 0.0;
      for_each_cell(g, q, [&](std::size_t i) {
        s += (cfg.r == 1.0 ? std::abs(f[i]) : std::pow(std::abs(f[i]), cfg.r)) * g.cell_volume();
      });
      const double vol = count * g.cell_volume();
      const double v = std::pow(vol, cfg.beta * cfg.r / n - 1.0) * s;
      return cfg.r == 1.0 ? v : std::pow(v, 1.0 / cfg.r);
    }
    case MaximalVariant::kWeighted: {
      double s = 0.0, wq = 0.0;
      for_each_cell(g, q, [&](std::size_t i) {
        s += std::abs(f[i]) * measure->mass(i);
        wq += measure->mass(i);
      });
      return s / wq;
    }
    case MaximalVariant::kFractionalWeighted: {
      double s = 0.0, wq = 0.0;
      for_each_cell(g, q, [&](std::size_t i) {
        s += (cfg.r == 1.0 ? std::abs(f[i]) : std::pow(std::abs(f[i]), cfg.r)) * measure->mass(i);
        wq += measure->mass(i);
      });
      const double v = std::pow(wq, cfg.beta * cfg.r / n - 1.0) * s;
      return cfg.r == 1.0 ? v : std::pow(v, 1.0 / cfg.r);
    }
    case MaximalVariant::kDelta: {
      double s = 0.0;
      for_each_cell(g, q, [&](std::size_t i) { s += std::pow(std::abs(f[i]), cfg.delta); });
      return s / count;
    }
    case MaximalVariant::kSharpDelta: {
      // c = mean of |f|^δ over Q, pivoted so constant data give c exactly
      double pivot = 0.0, acc = 0.0;
      bool first = true;
      for_each_cell(g, q, [&](std::size_t i) {
        const double v = std::pow(std::abs(f[i]), cfg.delta);
        if (first) {
          pivot = v;
          first = false;
        }
        acc += v - pivot;
      });
      const double c = pivot + acc / count;
      double s = 0.0;
      for_each_cell(g, q, [&](std::size_t i) {
        s += std::abs(std::pow(std::abs(f[i]), cfg.delta) - c);
      });
      return s / count;
    }
  }
  return 0.0;
}

GridFunction maximal(const GridFunction& f, const MaximalConfig& cfg, const CubeFamily& family) {
  const Grid& g = f.grid();
  if (!(family.grid() == g)) throw ParameterError("cube family lives on another grid");
  cfg.validate(g.dim());
  std::shared_ptr<const WeightMeasure> measure;
  if (cfg.weight) measure = WeightMeasure::of(*cfg.weight, g);
  const auto cubes = family.cubes();
  std::vector<double> value(cubes.size());
  parallel_for(cubes.size(), [&](std::size_t k) {
    value[k] = maximal_functional(f, cfg, cubes[k], measure.get());
  });
  std::vector<double> out(g.size(), 0.0);
  for (std::size_t k = 0; k < cubes.size(); ++k) {
    const double v = value[k];
    for_each_cell(g, cubes[k], [&](std::size_t i) { out[i] = std::max(out[i], v); });
  }
  if (cfg.variant == MaximalVariant::kDelta || cfg.variant == MaximalVariant::kSharpDelta) {
    for (double& v : out) v = std::pow(v, 1.0 / cfg.delta);
  }
  return GridFunction(g, std::move(out));
}

DominationResult pointwise_domination_check(const GridFunction& f, double alpha,
                                            const CubeFamily& family, KernelRule rule) {
  DominationResult res;
  if (f.is_zero()) {
    res.skipped = true;
    return res;
  }
  const GridFunction m = maximal(f, MaximalConfig::fractional(alpha, 1.0), family);
  const GridFunction i = fractional_integral(abs(f), FracIntConfig(f.grid().dim(), alpha, rule));
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (i[k] <= 0.0) {
      if (m[k] > 0.0) ++res.violations;
      continue;
    }
    const double ratio = m[k] / i[k];
    if (ratio > res.sup_ratio) {
      res.sup_ratio = ratio;
      res.cell = k;
    }
  }
  return res;
}

}  // namespace morreylab
