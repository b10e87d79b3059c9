#pragma once

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "morreylab/grid.hpp"

namespace morreylab {

/// A weight on R^n: either the power weight |x - x0|^gamma, integrated in
/// closed form, or strictly positive cell samples integrated by the midpoint rule.
class Weight {
 public:
  static Weight unit(int dim);
  /// Requires gamma > -dim.
  static Weight power(int dim, Point center, double exponent);
  /// Requires every sample to be positive.
  static Weight sampled(GridFunction samples);

  int dim() const { return dim_; }
  bool is_power() const { return std::holds_alternative<Power>(rep_); }
  bool is_unit() const { return is_power() && exponent() == 0.0; }
  double exponent() const;
  const Point& center() const;
  const GridFunction& samples() const;

  /// w^t. Power weights may leave the integrable range; integration then
  /// fails on cubes touching the center.
  Weight pow(double t) const;
  /// Pointwise value; +inf or 0 at the center of a power weight.
  double value_at(const Point& x) const;
  /// `power:x0=..,gamma=..` or `sampled:<content hash>`.
  std::string spec() const;

 private:
  struct Power {
    Point center;
    double exponent;
  };
  Weight(int dim, std::variant<Power, GridFunction> rep) : dim_(dim), rep_(std::move(rep)) {}

  int dim_;
  std::variant<Power, GridFunction> rep_;
};

/// w(Q). Power weights: exact; sampled weights: sum of w(cell) * |cell ∩ Q|.
/// Throws NotIntegrableError when gamma <= -n and the closure of Q meets x0.
double integrate_cell_weight(const Weight& w, const Cube& q);

/// ∫_a^b |t|^gamma dt for a <= b, accurate for short intervals far from 0.
double power_integral_1d(double a, double b, double gamma);
/// ∫_0^a ∫_0^b (x^2 + y^2)^(gamma/2) dy dx for a, b >= 0 and gamma > -2.
double power_corner_integral_2d(double a, double b, double gamma);

/// Per-cell masses of a weight on one grid.
class WeightMeasure {
 public:
  WeightMeasure(const Weight& w, const Grid& grid);

  /// Shared, cached instance keyed by weight spec and grid.
  static std::shared_ptr<const WeightMeasure> of(const Weight& w, const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::span<const double> masses() const { return masses_; }
  double mass(std::size_t cell) const { return masses_[cell]; }
  double cell_average(std::size_t cell) const { return masses_[cell] / grid_.cell_volume(); }
  /// w(Q) for a grid-aligned cube.
  double measure(const GridCube& q) const;

 private:
  Grid grid_;
  Weight weight_;
  std::vector<double> masses_;
  // 2D power weights: signed corner integrals at every node, (N+1)^2 entries.
  std::vector<double> node_table_;
};

}  // namespace morreylab
