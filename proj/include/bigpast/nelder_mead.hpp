#pragma once

// Derivative-free simplex minimizer (Nelder-Mead) used by the MLE and MAP
// fitters. Objectives may return +infinity to mark infeasible points.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace bigpast {

struct SimplexResult {
  std::vector<double> x;
  double fmin = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

inline SimplexResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x0, const std::vector<double>& steps,
    int max_iter = 2000, double tol = 1e-8) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += steps[i];
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fv[i] = f(pts[i]);

  std::vector<std::size_t> order(n + 1);
  SimplexResult res;
  for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order[0];
    const std::size_t worst = order[n];
    const std::size_t second = order[n - 1];

    // Termination: simplex diameter in parameter space.
    double spread = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        spread = std::max(spread, std::abs(pts[i][j] - pts[best][j]));
    if (spread < tol && std::isfinite(fv[best])) {
      res.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / n;
    }

    auto blend = [&](double coef) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j)
        p[j] = centroid[j] + coef * (pts[worst][j] - centroid[j]);
      return p;
    };

    const std::vector<double> refl = blend(-1.0);
    const double f_refl = f(refl);
    if (f_refl < fv[best]) {
      const std::vector<double> expd = blend(-2.0);
      const double f_expd = f(expd);
      if (f_expd < f_refl) {
        pts[worst] = expd;
        fv[worst] = f_expd;
      } else {
        pts[worst] = refl;
        fv[worst] = f_refl;
      }
    } else if (f_refl < fv[second]) {
      pts[worst] = refl;
      fv[worst] = f_refl;
    } else {
      const std::vector<double> ctr =
          blend(f_refl < fv[worst] ? -0.5 : 0.5);
      const double f_ctr = f(ctr);
      if (f_ctr < std::min(f_refl, fv[worst])) {
        pts[worst] = ctr;
        fv[worst] = f_ctr;
      } else {
        // Shrink toward the best vertex.
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < n; ++j)
            pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
          fv[i] = f(pts[i]);
        }
      }
    }
  }

  const std::size_t best = static_cast<std::size_t>(
      std::min_element(fv.begin(), fv.end()) - fv.begin());
  res.x = pts[best];
  res.fmin = fv[best];
  return res;
}

}  // namespace bigpast
