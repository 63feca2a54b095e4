#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "reslab/types.hpp"

namespace reslab {

// Gauss-Legendre nodes and weights on [-1, 1] from the Golub-Welsch
// eigenproblem of the Jacobi matrix.
struct GaussLegendre {
  explicit GaussLegendre(int n);
  VectorXd nodes;
  VectorXd weights;
};

// The 16-point rule shared by all adaptive integrations.
const GaussLegendre& gauss16();

struct QuadratureOptions {
  double abs_tol = 1e-13;
  std::size_t max_panels = 1 << 14;
  int max_depth = 48;
  // Equal panels seeded before adaptivity starts.
  int initial_panels = 1;
};

template <typename Scalar>
struct QuadratureResult {
  Scalar value{};
  double error_estimate = 0.0;
  std::size_t panels = 0;
  bool converged = false;
};

namespace detail {

template <typename Scalar, typename F>
Scalar gauss_panel(F&& f, double a, double b) {
  const GaussLegendre& rule = gauss16();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  Scalar sum{};
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

}  // namespace detail

// Globally adaptive bisection. Each panel carries its one-level value; the
// error of a panel is the difference between that value and the sum of its
// two halves, so the reported estimate bounds the coarser level.
template <typename Scalar, typename F>
QuadratureResult<Scalar> integrate_adaptive(F&& f, double a, double b,
                                            const QuadratureOptions& opt = {}) {
  struct Panel {
    double a, b;
    Scalar left, right;
    double error;
    int depth;
    bool operator<(const Panel& o) const { return error < o.error; }
  };

  auto split = [&](double lo, double hi, const Scalar& whole, int depth) {
    const double mid = 0.5 * (lo + hi);
    Scalar left = detail::gauss_panel<Scalar>(f, lo, mid);
    Scalar right = detail::gauss_panel<Scalar>(f, mid, hi);
    return Panel{lo, hi, left, right, std::abs(whole - left - right), depth};
  };

  QuadratureResult<Scalar> result;
  if (a == b) {
    result.converged = true;
    return result;
  }

  std::priority_queue<Panel> queue;
  double total_error = 0.0;
  const int seeds = std::max(1, opt.initial_panels);
  for (int i = 0; i < seeds; ++i) {
    const double lo = a + (b - a) * i / seeds;
    const double hi = (i + 1 == seeds) ? b : a + (b - a) * (i + 1) / seeds;
    Panel p = split(lo, hi, detail::gauss_panel<Scalar>(f, lo, hi), 0);
    total_error += p.error;
    queue.push(p);
  }
  // Panels that hit the depth limit stay finalized with their error.
  std::vector<Panel> done;

  while (total_error > opt.abs_tol && !queue.empty() &&
         queue.size() + done.size() < opt.max_panels) {
    Panel worst = queue.top();
    queue.pop();
    if (worst.depth >= opt.max_depth) {
      done.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Panel lhs = split(worst.a, mid, worst.left, worst.depth + 1);
    Panel rhs = split(mid, worst.b, worst.right, worst.depth + 1);
    total_error += lhs.error + rhs.error - worst.error;
    queue.push(lhs);
    queue.push(rhs);
  }

  // Re-sum from scratch so the running error total does not drift.
  double err = 0.0;
  Scalar value{};
  auto accumulate = [&](const Panel& p) {
    value += p.left + p.right;
    err += p.error;
    ++result.panels;
  };
  for (const Panel& p : done) accumulate(p);
  while (!queue.empty()) {
    accumulate(queue.top());
    queue.pop();
  }
  result.value = value;
  result.error_estimate = err;
  result.converged = err <= opt.abs_tol;
  return result;
}

}  // namespace reslab
