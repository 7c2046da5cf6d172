#pragma once

#include <cstddef>
#include <vector>

#include "bigpast/skewt.hpp"

namespace bigpast {

// Goodness-of-fit check for the skew-t assumption: probability integral
// transform through a fitted (or supplied) skew-t CDF, normal re-transform,
// and the Anderson-Darling statistic with its small-sample modification.

struct GofResult {
  double a_squared = 0.0;
  double a_star = 0.0;
  bool reject = false;
  SkewTParams fitted;
  std::size_t clamped = 0;  // PIT values pinned away from exact 0 or 1
};

// PIT values v_i = F(x_i | p), clamped into [1e-12, 1 - 1e-12]. The clamp
// count, when requested, reports how many values needed pinning.
std::vector<double> pit_values(const Sample& data, const SkewTParams& p,
                               std::size_t* clamped = nullptr);

// Anderson-Darling statistic for a sample of uniforms (sorted internally).
double a_squared_from_uniforms(std::vector<double> u);

// Full test: MLE fit, PIT, normal-quantile standardization, A* against the
// estimated-mean-and-variance critical value for level beta. Requires
// n >= 20 and beta in {0.10, 0.05, 0.025, 0.01}.
GofResult gof_skewt(const Sample& data, double beta);

// Same test with the fit step bypassed; used when the parameters are known.
GofResult gof_skewt_fixed(const Sample& data, double beta,
                          const SkewTParams& p);

}  // namespace bigpast
