#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "morreylab/grid.hpp"

namespace morreylab {

enum class SymbolClass { kBmo, kLip };

/// A named analytic function, resampled onto any grid. The second argument is the cell width.
struct CorpusEntry {
  std::string name;
  std::function<double(const Point&, double)> fn;
  std::vector<SymbolClass> classes;

  GridFunction sample(const Grid& grid) const;
  bool has_class(SymbolClass c) const;
};

struct Corpus {
  DomainBox box;
  std::vector<CorpusEntry> inputs;
  std::vector<CorpusEntry> symbols;

  /// True when every sample of the entry outside [-L+m, L-m]^n is zero.
  bool margin_compliant(const CorpusEntry& e, const Grid& grid) const;
};

/// Deterministic by seed: count inputs cycling through bump, step, tent, truncated
/// oscillation and random piecewise constant, all supported in [-L+m, L-m]^n, and three
/// symbols: clipped log|x| (BMO), |x|^{3/4} and a tanh step (BMO and Lip).
Corpus generate_corpus(const DomainBox& box, std::uint64_t seed, int count);

}  // namespace morreylab
