#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace morreylab {

/// A point of R^n, n <= 2. Unused coordinates are zero.
using Point = std::array<double, 2>;

/// The box [-L, L]^n standing in for R^n. Corpus inputs live in [-L+m, L-m]^n.
struct DomainBox {
  DomainBox(int dim, double half_width, double margin);

  int dim;
  double half_width;
  double margin;

  bool operator==(const DomainBox&) const = default;
};

/// Uniform grid with 2^J cells per axis over a DomainBox.
///
/// Flat cell indices are row-major with the first axis slowest; in 1D the
/// flat index is the axis index.
class Grid {
 public:
  Grid(DomainBox box, int level);

  const DomainBox& box() const { return box_; }
  int dim() const { return box_.dim; }
  int level() const { return level_; }
  int cells_per_axis() const { return cells_; }
  std::size_t size() const { return size_; }
  double h() const { return h_; }
  double cell_volume() const { return dim() == 1 ? h_ : h_ * h_; }

  /// Coordinate of node k, k in [0, 2^J].
  double node(int k) const { return -box_.half_width + k * h_; }
  /// Coordinate of the center of cell k along one axis.
  double center(int k) const { return -box_.half_width + (k + 0.5) * h_; }

  std::array<int, 2> index(std::size_t flat) const;
  std::size_t flat(const std::array<int, 2>& idx) const;
  Point cell_center(std::size_t flat) const;

  bool operator==(const Grid& other) const {
    return box_ == other.box_ && level_ == other.level_;
  }

 private:
  DomainBox box_;
  int level_;
  int cells_;
  std::size_t size_;
  double h_;
};

/// Axis-parallel cube given by center and side length.
struct Cube {
  Point center{};
  double side = 0.0;

  double lower(int axis) const { return center[axis] - 0.5 * side; }
  double upper(int axis) const { return center[axis] + 0.5 * side; }
  double volume(int dim) const;
  bool contains(const Point& x, int dim) const;
};

/// Grid-aligned cube: cells [lo[a], lo[a] + extent) along every active axis.
struct GridCube {
  std::array<int, 2> lo{};
  int extent = 1;

  bool operator==(const GridCube&) const = default;
};

Cube to_cube(const Grid& grid, const GridCube& q);
std::size_t cell_count(const Grid& grid, const GridCube& q);
bool inside_box(const Grid& grid, const Cube& q);
bool contains(const GridCube& outer, const GridCube& inner);

/// Visits the flat indices of the cells of q in row-major order.
template <class Fn>
void for_each_cell(const Grid& grid, const GridCube& q, Fn&& fn) {
  const auto n = static_cast<std::size_t>(grid.cells_per_axis());
  if (grid.dim() == 1) {
    for (int i = q.lo[0]; i < q.lo[0] + q.extent; ++i) fn(static_cast<std::size_t>(i));
    return;
  }
  for (int i = q.lo[0]; i < q.lo[0] + q.extent; ++i) {
    const std::size_t row = static_cast<std::size_t>(i) * n;
    for (int j = q.lo[1]; j < q.lo[1] + q.extent; ++j) fn(row + static_cast<std::size_t>(j));
  }
}

/// Cell-center samples of a real function on a grid. Values are finite.
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<double> values);

  static GridFunction constant(const Grid& grid, double value);
  static GridFunction sample(const Grid& grid, const std::function<double(const Point&)>& fn);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  bool is_zero() const;
  /// Stable 64-bit FNV-1a digest of the grid header and the values, as hex.
  std::string content_hash() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double c, const GridFunction& f);
GridFunction operator*(const GridFunction& a, const GridFunction& b);
GridFunction shifted(const GridFunction& f, double c);
GridFunction abs(const GridFunction& f);

/// Finite stand-in for "all cubes": dyadic levels 0..J plus shifted lattices.
class CubeFamily {
 public:
  CubeFamily(Grid grid, int shifts, std::vector<GridCube> cubes);

  const Grid& grid() const { return grid_; }
  int shifts() const { return shifts_; }
  std::span<const GridCube> cubes() const { return cubes_; }
  std::size_t size() const { return cubes_.size(); }

 private:
  Grid grid_;
  int shifts_;
  std::vector<GridCube> cubes_;
};

/// Dyadic cubes of every level plus, per level and axis, lattices translated by
/// round(k * extent / shifts) cells for k = 1..shifts-1. Offsets that coincide
/// modulo the extent are dropped, as are cubes leaving the box. Enumeration is
/// level by level from the whole box down to single cells.
CubeFamily make_cube_family(const Grid& grid, int shifts);

/// Every grid-aligned cube inside the box. Only practical for small grids.
CubeFamily make_full_family(const Grid& grid);

/// Mean of the values at cell centers lying in q (half-open on each axis).
double cube_average(const GridFunction& f, const Cube& q);
double cube_average(const GridFunction& f, const GridCube& q);

}  // namespace morreylab
