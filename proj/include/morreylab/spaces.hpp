#pragma once

#include "morreylab/grid.hpp"
#include "morreylab/weight.hpp"

namespace morreylab {

struct NormResult {
  double value;
  /// Attaining family cube.
  GridCube cube;
};

/// L^{p,κ}(u, v); the one-weight space is u = v.
struct MorreyParams {
  MorreyParams(double p, double kappa, Weight u, Weight v);

  double p;
  double kappa;
  Weight u;
  Weight v;
};

/// sup_Q (v(Q)^{-κ} ∫_Q |f|^p u)^{1/p}
NormResult morrey_norm(const GridFunction& f, const MorreyParams& mp, const CubeFamily& family);

/// BMO_p(w) at β = 0, Lip_β^p with the unit weight, Lip_β^p(w) otherwise.
struct OscillationParams {
  OscillationParams(double beta, double p, Weight w);

  double beta;
  double p;
  Weight w;
};

/// sup_Q w(Q)^{-β/n} ((1/w(Q)) ∫_Q |b - b_Q|^p w^{1-p})^{1/p}, b_Q the plain average.
NormResult oscillation_norm(const GridFunction& b, const OscillationParams& op,
                            const CubeFamily& family);

struct LemmaDResult {
  bool skipped;
  double ratio;
  double norm_p;
  double norm_1;
};

/// ‖b‖ with exponent p over ‖b‖ with exponent 1, same β and w. Needs w ∈ A_1 ("A₁ required").
LemmaDResult lemma_d_check(const GridFunction& b, double p, const OscillationParams& op,
                           const CubeFamily& family);

}  // namespace morreylab
