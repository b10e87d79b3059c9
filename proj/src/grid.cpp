#include "morreylab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <set>
#include <sstream>
#include <iomanip>

#include "morreylab/errors.hpp"

namespace morreylab {

DomainBox::DomainBox(int dim_, double half_width_, double margin_)
    : dim(dim_), half_width(half_width_), margin(margin_) {
  if (dim != 1 && dim != 2) throw ParameterError("dimension must be 1 or 2");
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw ParameterError("box half-width must be positive");
  if (!(margin > 0.0 && margin < half_width))
    throw ParameterError("margin must lie in (0, L)");
}

Grid::Grid(DomainBox box, int level) : box_(box), level_(level) {
  if (level < 3) throw ParameterError("grid level J must be at least 3");
  if (level > 14) throw ParameterError("grid level J above 14 is not supported");
  cells_ = 1 << level;
  size_ = box_.dim == 1 ? static_cast<std::size_t>(cells_)
                        : static_cast<std::size_t>(cells_) * static_cast<std::size_t>(cells_);
  h_ = 2.0 * box_.half_width / cells_;
}

std::array<int, 2> Grid::index(std::size_t flat) const {
  if (dim() == 1) return {static_cast<int>(flat), 0};
  const auto n = static_cast<std::size_t>(cells_);
  return {static_cast<int>(flat / n), static_cast<int>(flat % n)};
}

std::size_t Grid::flat(const std::array<int, 2>& idx) const {
  if (dim() == 1) return static_cast<std::size_t>(idx[0]);
  return static_cast<std::size_t>(idx[0]) * static_cast<std::size_t>(cells_) +
         static_cast<std::size_t>(idx[1]);
}

Point Grid::cell_center(std::size_t flat_index) const {
  const auto idx = index(flat_index);
  if (dim() == 1) return {center(idx[0]), 0.0};
  return {center(idx[0]), center(idx[1])};
}

double Cube::volume(int dim) const { return dim == 1 ? side : side * side; }

bool Cube::contains(const Point& x, int dim) const {
  for (int a = 0; a < dim; ++a) {
    if (x[a] < lower(a) || x[a] >= upper(a)) return false;
  }
  return true;
}

Cube to_cube(const Grid& grid, const GridCube& q) {
  Cube c;
  c.side = q.extent * grid.h();
  for (int a = 0; a < grid.dim(); ++a) {
    c.center[a] = grid.node(q.lo[a]) + 0.5 * c.side;
  }
  return c;
}

std::size_t cell_count(const Grid& grid, const GridCube& q) {
  const auto e = static_cast<std::size_t>(q.extent);
  return grid.dim() == 1 ? e : e * e;
}

bool inside_box(const Grid& grid, const Cube& q) {
  const double lim = grid.box().half_width;
  const double tol = 1e-12 * lim;
  for (int a = 0; a < grid.dim(); ++a) {
    if (q.lower(a) < -lim - tol || q.upper(a) > lim + tol) return false;
  }
  return q.side > 0.0;
}

bool contains(const GridCube& outer, const GridCube& inner) {
  for (int a = 0; a < 2; ++a) {
    if (inner.lo[a] < outer.lo[a] || inner.lo[a] + inner.extent > outer.lo[a] + outer.extent)
      return false;
  }
  return true;
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw ParameterError("grid function has " + std::to_string(values_.size()) +
                         " values, grid needs " + std::to_string(grid_.size()));
  for (double v : values_) {
    if (!std::isfinite(v)) throw ParameterError("grid function values must be finite");
  }
}

GridFunction GridFunction::constant(const Grid& grid, double value) {
  return GridFunction(grid, std::vector<double>(grid.size(), value));
}

GridFunction GridFunction::sample(const Grid& grid,
                                  const std::function<double(const Point&)>& fn) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.cell_center(i));
  return GridFunction(grid, std::move(v));
}

bool GridFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

std::string GridFunction::content_hash() const {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      hash ^= bytes[i];
      hash *= 0x100000001b3ULL;
    }
  };
  const std::int32_t header[2] = {grid_.dim(), grid_.level()};
  mix(header, sizeof header);
  const double half = grid_.box().half_width;
  mix(&half, sizeof half);
  mix(values_.data(), values_.size() * sizeof(double));
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << hash;
  return os.str();
}

namespace {

void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (!(a.grid() == b.grid())) throw ParameterError("grid mismatch");
}

template <class Op>
GridFunction zip(const GridFunction& a, const GridFunction& b, Op op) {
  require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(a[i], b[i]);
  return GridFunction(a.grid(), std::move(v));
}

template <class Op>
GridFunction map(const GridFunction& f, Op op) {
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(f[i]);
  return GridFunction(f.grid(), std::move(v));
}

}  // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  return zip(a, b, [](double x, double y) { return x + y; });
}

GridFunction operator*(double c, const GridFunction& f) {
  return map(f, [c](double x) { return c * x; });
}

GridFunction operator*(const GridFunction& a, const GridFunction& b) {
  return zip(a, b, [](double x, double y) { return x * y; });
}

GridFunction shifted(const GridFunction& f, double c) {
  return map(f, [c](double x) { return x + c; });
}

GridFunction abs(const GridFunction& f) {
  return map(f, [](double x) { return std::abs(x); });
}

CubeFamily::CubeFamily(Grid grid, int shifts, std::vector<GridCube> cubes)
    : grid_(grid), shifts_(shifts), cubes_(std::move(cubes)) {}

CubeFamily make_cube_family(const Grid& grid, int shifts) {
  if (shifts < 1) throw ParameterError("shift count must be at least 1");
  const int n = grid.cells_per_axis();
  std::vector<GridCube> cubes;
  for (int level = 0; level <= grid.level(); ++level) {
    const int extent = n >> level;
    std::set<int> offsets;
    for (int k = 0; k < shifts; ++k) {
      // round-half-up of k * extent / shifts, reduced modulo the extent
      const int off = (2 * k * extent + shifts) / (2 * shifts);
      offsets.insert(off % extent);
    }
    for (int ox : offsets) {
      for (int oy : (grid.dim() == 1 ? std::set<int>{0} : offsets)) {
        for (int x = ox; x + extent <= n; x += extent) {
          if (grid.dim() == 1) {
            cubes.push_back({{x, 0}, extent});
            continue;
          }
          for (int y = oy; y + extent <= n; y += extent) cubes.push_back({{x, y}, extent});
        }
      }
    }
  }
  return CubeFamily(grid, shifts, std::move(cubes));
}

CubeFamily make_full_family(const Grid& grid) {
  const int n = grid.cells_per_axis();
  std::vector<GridCube> cubes;
  for (int extent = n; extent >= 1; --extent) {
    for (int x = 0; x + extent <= n; ++x) {
      if (grid.dim() == 1) {
        cubes.push_back({{x, 0}, extent});
        continue;
      }
      for (int y = 0; y + extent <= n; ++y) cubes.push_back({{x, y}, extent});
    }
  }
  return CubeFamily(grid, 0, std::move(cubes));
}

namespace {

// Mean with the first sample as pivot: exact for constant data.
template <class Range>
double pivoted_mean(const Range& values) {
  double pivot = 0.0;
  double acc = 0.0;
  std::size_t count = 0;
  for (double v : values) {
    if (count == 0) pivot = v;
    acc += v - pivot;
    ++count;
  }
  return pivot + acc / static_cast<double>(count);
}

}  // namespace

double cube_average(const GridFunction& f, const GridCube& q) {
  const Grid& g = f.grid();
  std::vector<double> vals;
  vals.reserve(cell_count(g, q));
  for_each_cell(g, q, [&](std::size_t i) { vals.push_back(f[i]); });
  if (vals.empty()) throw ParameterError("empty cube");
  return pivoted_mean(vals);
}

double cube_average(const GridFunction& f, const Cube& q) {
  const Grid& g = f.grid();
  std::array<int, 2> lo{0, 0};
  std::array<int, 2> hi{1, 1};
  for (int a = 0; a < g.dim(); ++a) {
    // cell k has its center in [lower, upper) iff lo <= k < hi
    const double base = -g.box().half_width;
    lo[a] = static_cast<int>(std::ceil((q.lower(a) - base) / g.h() - 0.5));
    hi[a] = static_cast<int>(std::ceil((q.upper(a) - base) / g.h() - 0.5));
    lo[a] = std::clamp(lo[a], 0, g.cells_per_axis());
    hi[a] = std::clamp(hi[a], 0, g.cells_per_axis());
    if (hi[a] <= lo[a]) throw ParameterError("empty cube");
  }
  std::vector<double> vals;
  if (g.dim() == 1) {
    for (int i = lo[0]; i < hi[0]; ++i) vals.push_back(f[static_cast<std::size_t>(i)]);
  } else {
    for (int i = lo[0]; i < hi[0]; ++i)
      for (int j = lo[1]; j < hi[1]; ++j) vals.push_back(f[g.flat({i, j})]);
  }
  return pivoted_mean(vals);
}

}  // namespace morreylab
