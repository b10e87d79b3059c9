#pragma once

#include <boost/rational.hpp>
#include <string>
#include <vector>

#include "morreylab/grid.hpp"
#include "morreylab/weight.hpp"

namespace morreylab {

enum class WeightClass { kAp, kApq, kRh };

std::string to_string(WeightClass c);
/// "ap", "apq" or "rh".
WeightClass parse_weight_class(const std::string& name);

struct WeightClassReport {
  WeightClass cls;
  /// (p), (p, q) or (r).
  std::vector<double> params;
  double constant;
  GridCube cube;
};

/// Sup over the family of avg(w)·avg(w^{-1/(p-1)})^{p-1}; for p = 1, avg(w) / min cell average.
WeightClassReport ap_constant(const Weight& w, double p, const CubeFamily& family);
/// Sup of avg(w^q)^{1/q}·avg(w^{-p'})^{1/p'}.
WeightClassReport apq_constant(const Weight& w, double p, double q, const CubeFamily& family);
/// Sup of avg(w^r)^{1/r} / avg(w).
WeightClassReport rh_constant(const Weight& w, double r, const CubeFamily& family);

/// -n/gamma for gamma in (-n, 0), +inf for gamma >= 0.
double critical_index(const Weight& w);

using Rational = boost::rational<long long>;

// Analytic class ranges of |x - x0|^gamma. p = 1 selects A_1.
template <class T>
bool power_in_ap(int n, T gamma, T p) {
  const T dim(n);
  if (!(-dim < gamma)) return false;
  if (p == T(1)) return !(T(0) < gamma);
  return gamma < dim * (p - T(1));
}

template <class T>
bool power_in_apq(int n, T gamma, T p, T q) {
  const T dim(n);
  const T p_dual = p / (p - T(1));
  return -dim < q * gamma && p_dual * gamma < dim;
}

template <class T>
bool power_in_rh(int n, T gamma, T r) {
  return -T(n) < gamma * r;
}

/// Oracle verdict for a power weight. params as in WeightClassReport.
bool power_membership(const Weight& w, WeightClass cls, const std::vector<double>& params);

struct EquivalenceRow {
  Rational gamma;
  bool lhs;
  bool rhs;
  bool agree() const { return lhs == rhs; }
};

/// w^s ∈ A_p versus w ∈ A_{1+(p-1)/s} ∩ RH_s for each gamma.
std::vector<EquivalenceRow> lemma_c_check(int n, const std::vector<Rational>& gammas, Rational s,
                                          Rational p);
/// w ∈ A_{p,q} versus w^q ∈ A_{1+q/p'} for each gamma.
std::vector<EquivalenceRow> eq4_check(int n, const std::vector<Rational>& gammas, Rational p,
                                      Rational q);

struct DoublingResult {
  double sup_ratio;
  /// sup_ratio / lambda^{np}
  double normalized;
  GridCube cube;
  std::size_t eligible;
};

/// Sup of w(λQ)/w(Q) over family cubes whose concentric dilate stays in the box.
DoublingResult doubling_check(const Weight& w, double lambda, double p, const CubeFamily& family);

struct SubsetComparison {
  /// Largest C1 with C1 (|E|/|Q|)^p <= w(E)/w(Q) over the tested pairs.
  double c1;
  /// Smallest C2 with w(E)/w(Q) <= C2 (|E|/|Q|)^{(r-1)/r}.
  double c2;
  /// Least-squares fit log(w(E)/w(Q)) ≈ intercept + slope·log(|E|/|Q|).
  double slope;
  double intercept;
  std::size_t pairs;
};

/// Compares w(E)/w(Q) with |E|/|Q| over nested family pairs E ⊆ Q.
SubsetComparison subset_comparison_check(const Weight& w, double p, double r,
                                         const CubeFamily& family);

}  // namespace morreylab
