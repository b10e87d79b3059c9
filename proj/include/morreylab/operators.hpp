#pragma once

#include <optional>
#include <string>
#include <vector>

#include "morreylab/grid.hpp"
#include "morreylab/weight.hpp"

namespace morreylab {

/// How the kernel |x - y|^{α-n} is integrated over each source cell.
enum class KernelRule {
  /// Exact integral of the kernel over every cell (default).
  kCellExact,
  /// Midpoint rule off the diagonal, exact integral on the diagonal cell.
  kMidpoint,
};

class FracIntConfig {
 public:
  /// Throws ParameterError "alpha must be in (0, n)".
  FracIntConfig(int dim, double alpha, KernelRule rule = KernelRule::kCellExact);

  int dim() const { return dim_; }
  double alpha() const { return alpha_; }
  KernelRule rule() const { return rule_; }
  /// Γ((n-α)/2) / (2^α π^{n/2} Γ(α/2)).
  double constant() const { return constant_; }

 private:
  int dim_;
  double alpha_;
  KernelRule rule_;
  double constant_;
};

double riesz_constant(int dim, double alpha);

/// Kernel weights K(i - j) = ∫_{cell j} |x_i - y|^{α-n} dy for one grid, translation invariant.
class RieszKernel {
 public:
  RieszKernel(const Grid& grid, const FracIntConfig& cfg);

  const Grid& grid() const { return grid_; }
  const FracIntConfig& config() const { return cfg_; }
  /// Weight for the axis offsets (|di|, |dj|).
  double weight(int di, int dj = 0) const;

  GridFunction apply(const GridFunction& f) const;
  /// c Σ_j K(i - j)(b_i - b_j) f_j, which equals b·I_α f - I_α(bf).
  GridFunction commutator(const GridFunction& b, const GridFunction& f) const;

 private:
  Grid grid_;
  FracIntConfig cfg_;
  std::vector<double> table_;
};

GridFunction fractional_integral(const GridFunction& f, const FracIntConfig& cfg);
GridFunction commutator(const GridFunction& b, const GridFunction& f, const FracIntConfig& cfg);

enum class MaximalVariant { kPlain, kFractional, kWeighted, kFractionalWeighted, kDelta, kSharpDelta };

/// CLI names m, mfrac, mw, mfracw, mdelta, msharp.
MaximalVariant parse_maximal_variant(const std::string& name);
std::string to_string(MaximalVariant v);

struct MaximalConfig {
  MaximalVariant variant = MaximalVariant::kPlain;
  double beta = 0.0;
  double r = 1.0;
  double delta = 0.5;
  std::optional<Weight> weight;

  static MaximalConfig plain();
  /// M_{β,r}
  static MaximalConfig fractional(double beta, double r);
  /// M_w
  static MaximalConfig weighted(Weight w);
  /// M_{β,r,w}; M_{r,w} is beta = 0.
  static MaximalConfig fractional_weighted(double beta, double r, Weight w);
  static MaximalConfig delta_variant(double delta);
  static MaximalConfig sharp_delta(double delta);

  /// Throws ParameterError if the fields do not fit the variant in dimension n.
  void validate(int dim) const;
};

/// Sup over family cubes containing each cell of the variant's cube functional.
GridFunction maximal(const GridFunction& f, const MaximalConfig& cfg, const CubeFamily& family);

/// Cube functional of one variant, before any 1/δ power.
double maximal_functional(const GridFunction& f, const MaximalConfig& cfg, const GridCube& q,
                          const WeightMeasure* measure);

struct DominationResult {
  bool skipped = false;
  double sup_ratio = 0.0;
  std::size_t cell = 0;
  /// Cells where I_α|f| = 0 but M_{α,1} f > 0.
  std::size_t violations = 0;
};

/// Sup over cells of M_{α,1} f / I_α(|f|).
DominationResult pointwise_domination_check(const GridFunction& f, double alpha,
                                            const CubeFamily& family,
                                            KernelRule rule = KernelRule::kCellExact);

}  // namespace morreylab
