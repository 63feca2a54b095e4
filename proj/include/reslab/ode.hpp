#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Core>

#include "reslab/types.hpp"

namespace reslab {

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-10;
  double initial_step = 0.0;  // 0 picks 1% of the interval
  long max_steps = 2'000'000;
};

template <typename State>
struct OdeResult {
  State y;
  double error_estimate = 0.0;  // sum of accepted local error norms
  long steps = 0;
  long rejected = 0;
};

// Dormand-Prince 5(4) with standard step control, for Eigen vectors of any
// scalar type. Integrates from x0 to x1 in either direction.
template <typename State, typename Rhs>
OdeResult<State> integrate_dopri5(Rhs&& rhs, double x0, double x1, State y,
                                  const OdeOptions& opt = {}) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // Fifth- minus fourth-order weights.
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  OdeResult<State> out;
  const double span = x1 - x0;
  if (span == 0.0) {
    out.y = y;
    return out;
  }
  const double dir = span > 0 ? 1.0 : -1.0;
  double h = dir * (opt.initial_step > 0 ? opt.initial_step : 0.01 * std::abs(span));
  const double h_min = 1e-14 * std::max(1.0, std::abs(span));
  double x = x0;

  State k1 = rhs(x, y);
  while (dir * (x1 - x) > 0) {
    if (++out.steps > opt.max_steps) {
      throw Error("ode", "step budget exhausted at x = " + std::to_string(x));
    }
    if (dir * (x + h - x1) > 0) h = x1 - x;

    const State k2 = rhs(x + c2 * h, (y + h * (a21 * k1)).eval());
    const State k3 = rhs(x + c3 * h, (y + h * (a31 * k1 + a32 * k2)).eval());
    const State k4 = rhs(x + c4 * h, (y + h * (a41 * k1 + a42 * k2 + a43 * k3)).eval());
    const State k5 = rhs(x + c5 * h, (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval());
    const State k6 =
        rhs(x + h, (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)).eval());
    const State y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const State k7 = rhs(x + h, y_new);
    const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double norm = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double scale =
          opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      norm = std::max(norm, std::abs(err[i]) / scale);
    }

    if (norm <= 1.0) {
      x += h;
      y = y_new;
      k1 = k7;
      out.error_estimate += err.cwiseAbs().maxCoeff();
    } else {
      ++out.rejected;
    }
    const double factor =
        norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
    h *= (norm <= 1.0) ? factor : std::min(factor, 1.0);
    if (std::abs(h) < h_min && dir * (x1 - x) > h_min) {
      throw Error("ode", "step-size underflow at x = " + std::to_string(x));
    }
  }
  out.y = y;
  return out;
}

}  // namespace reslab
