#pragma once

#include <optional>
#include <string>
#include <vector>

#include "morreylab/corpus.hpp"
#include "morreylab/grid.hpp"
#include "morreylab/operators.hpp"
#include "morreylab/spaces.hpp"

namespace morreylab {

/// Exponent bundle. Derived exponents are computed on demand.
struct ParamSet {
  int n = 1;
  double alpha = 0.25;
  double beta = 0.0;
  double p = 2.0;
  double kappa = 0.25;
  double delta = 0.5;
  /// Exponent of the power weight |x|^gamma.
  double gamma = 0.0;
  /// Inner exponent of M_{·,r} majorants; unset means (1 + p)/2.
  std::optional<double> r;

  double p_dual() const { return p / (p - 1.0); }
  /// 1/q = 1/p - α/n
  double q() const;
  /// 1/s = 1/p - (α+β)/n
  double s() const;
  double r_used() const { return r ? *r : 0.5 * (1.0 + p); }
  /// Critical index of |x|^gamma.
  double r_w() const;
  Weight weight() const;

  bool operator==(const ParamSet&) const = default;
};

enum class BoundId { kThm1, kThm2, kThm3, kThmE, kL32, kL33, kL34, kL35, kL36, kL41, kL42, kL43, kL51, kP31 };

std::string to_string(BoundId id);
/// "THM1", "L3.2", ..., "P3.1".
BoundId parse_bound_id(const std::string& text);
const std::vector<BoundId>& all_bound_ids();

enum class OperatorKind { kCommutator, kFractionalIntegral, kMaximal, kSharpRatio };

/// Operator, source and target spaces of one inequality at a ParamSet.
struct BoundSpec {
  BoundId id;
  OperatorKind kind;
  std::string operator_text;
  MorreyParams source;
  MorreyParams target;
  /// Maximal variant for kMaximal.
  std::optional<MaximalConfig> maximal;
  /// Symbol norm for commutators.
  std::optional<OscillationParams> symbol_norm;
  SymbolClass symbol_class = SymbolClass::kBmo;
};

BoundSpec make_bound_spec(BoundId id, const ParamSet& ps);

/// Text form of a Morrey space, e.g. morrey:p=2,kappa=0.25,u=power:x0=0,gamma=-0.2,v=....
std::string space_spec(const MorreyParams& mp);
std::string space_spec(const OscillationParams& op);

struct Verdict {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Verdict> check_hypotheses(const ParamSet& ps, BoundId id);
bool all_pass(const std::vector<Verdict>& v);

struct RatioEntry {
  std::string input;
  std::optional<double> value;
  std::string note;
};

struct SweepOptions {
  int shifts = 3;
  KernelRule rule = KernelRule::kCellExact;
};

struct VerificationReport {
  std::string id;
  ParamSet params;
  std::vector<Verdict> hypotheses;
  std::vector<RatioEntry> ratios;
  double sup_ratio = 0.0;
  std::optional<double> drift;
  double drift_threshold = 0.15;
  std::vector<std::pair<int, double>> levels;
  std::string source_space;
  std::string target_space;
  std::string symbol_space;
  double seconds = 0.0;
};

/// Ratios target(op f) / (symbol(b) · source(f)) over the corpus on one grid.
/// Throws HypothesisError listing the failures when check_hypotheses does not all pass.
VerificationReport ratio_sweep(BoundId id, const ParamSet& ps, const Corpus& corpus,
                               const Grid& grid, const SweepOptions& opt = {});

/// |R(J2) - R(J1)| / R(J1); nullopt when R(J1) = 0.
std::optional<double> relative_drift(double r1, double r2);

/// Sweeps at levels j1 and j2; report carries the j2 ratios, both sups and the drift.
VerificationReport refinement_drift(BoundId id, const ParamSet& ps, const Corpus& corpus, int j1,
                                    int j2, const SweepOptions& opt = {});

enum class PropId { kP37, kP44, kP52 };
std::string to_string(PropId id);
PropId parse_prop_id(const std::string& text);

struct PointwiseResult {
  double sup_ratio = 0.0;
  std::size_t cell = 0;
  /// Cells with RHS = 0 and LHS > 0.
  std::size_t violations = 0;
  double symbol_norm = 0.0;
};

std::vector<Verdict> check_pointwise_hypotheses(PropId id, const ParamSet& ps);

/// Sup over cells of M^#_δ([b, I_α] f) / (‖b‖ · three-term majorant).
PointwiseResult pointwise_sharp_check(PropId id, const ParamSet& ps, const GridFunction& b,
                                      const GridFunction& f, const SweepOptions& opt = {});

/// Corpus sweep of pointwise_sharp_check at two levels with the symbols of the matching class.
VerificationReport pointwise_sweep(PropId id, const ParamSet& ps, const Corpus& corpus, int j1,
                                   int j2, const SweepOptions& opt = {});

struct Prop31Result {
  bool skipped = false;
  double ratio = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// ‖M_δ f‖ / ‖M^#_δ f‖ in L^{p,κ}(u, v).
Prop31Result prop31_check(const GridFunction& f, double delta, const MorreyParams& mp,
                          const CubeFamily& family);

/// The theorem parameter set matching each id, as used by the acceptance suite.
ParamSet default_params(BoundId id);
ParamSet default_params(PropId id);

/// Largest kappa on the lattice k/20 meeting every THM3 hypothesis for the given
/// (n, α, β, p, γ); nullopt when none exists.
std::optional<ParamSet> find_thm3_params(int n, double alpha, double beta, double p, double gamma);

}  // namespace morreylab
