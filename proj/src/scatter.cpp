#include "reslab/scatter.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Core>

#include "reslab/ftransform.hpp"
#include "reslab/ode.hpp"

namespace reslab {

namespace {

constexpr const char* kModule = "scatter";

using State = Eigen::Vector2cd;

}  // namespace

JostData jost_solve(const Potential& v, Complex k, const ScatterOptions& opt) {
  if (k == Complex(0.0)) throw Error(kModule, "k = 0 is not admissible");
  JostData out;
  out.k = k;
  const double length = v.support_length();
  const Complex two_ik = 2.0 * kI * k;

  OdeOptions ode;
  ode.rtol = opt.rtol;
  ode.atol = opt.atol;
  ode.initial_step = std::min(length, 0.1 / (1.0 + std::abs(k)));

  // y = (m, m'), m'' = V m - 2ik m'
  auto rhs = [&](double x, const State& y) {
    State d;
    d[0] = y[1];
    d[1] = v(x) * y[0] - two_ik * y[1];
    return d;
  };
  OdeResult<State> r;
  try {
    r = integrate_dopri5(rhs, length, 0.0, State(1.0, 0.0), ode);
  } catch (const Error& e) {
    throw Error(kModule, e.what());
  }
  const Complex m0 = r.y[0];
  const Complex dm0 = r.y[1];
  out.X_hat = kI * k * m0 + 0.5 * dm0;
  out.Y_hat_minus = -0.5 * dm0;
  out.ode_error_estimate = r.error_estimate * (1.0 + std::abs(k));
  out.steps = r.steps;
  return out;
}

ScatteringMatrix scattering_matrix(const Potential& v, double k, const ScatterOptions& opt) {
  const JostData plus = jost_solve(v, k, opt);
  const JostData minus = jost_solve(v, -k, opt);
  if (std::abs(plus.X_hat) < opt.pole_floor * std::abs(k)) {
    throw Error(kModule, "transmission pole proximity");
  }
  ScatteringMatrix s;
  s.k = k;
  s.T = kI * k / plus.X_hat;
  s.R_right = minus.Y_hat_minus / plus.X_hat;
  s.L_left = plus.Y_hat_minus / plus.X_hat;
  const double t2 = std::norm(s.T);
  s.unitarity_defect =
      std::max(std::abs(t2 + std::norm(s.R_right) - 1.0), std::abs(t2 + std::norm(s.L_left) - 1.0));
  return s;
}

ZeroSet resonances(const Potential& v, const Rectangle& rect, double tol,
                   const ScatterOptions& opt) {
  if (rect.contains(0.0) || rect.boundary_distance(0.0) < opt.exclusion_radius) {
    throw Error(kModule, "rectangle within the exclusion radius of k = 0");
  }
  if (v.family() == PotentialFamily::kZero) return {};
  LocateOptions lo = opt.locate;
  lo.tol = tol;
  return locate_zeros(
      [&](Complex k) { return jost_solve(v, k, opt).X_hat; }, rect, tol, lo);
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

FroeseComparison froese_compare(const Potential& v, const Rectangle& rect, std::size_t max_pairs,
                                const ScatterOptions& opt) {
  FroeseComparison out;
  out.resonances = resonances(v, rect, opt.locate.tol, opt);
  if (v.family() != PotentialFamily::kZero) {
    out.fourier_zeros = locate_zeros([&](Complex k) { return fourier_pair(v, k); }, rect,
                                     opt.locate.tol, opt.locate);
  }
  const std::vector<Complex> a = out.resonances.expanded();
  const std::vector<Complex> b = out.fourier_zeros.expanded();
  out.count_mismatch = static_cast<int>(a.size()) - static_cast<int>(b.size());

  std::size_t n = std::min(a.size(), b.size());
  if (max_pairs > 0) n = std::min(n, max_pairs);
  if (n == 0) return out;

  auto head = [n](const std::vector<Complex>& z) {
    std::vector<Zero> e;
    for (std::size_t i = 0; i < n; ++i) e.push_back({z[i], 1});
    return ZeroSet(std::move(e), 0.0);
  };
  const ZeroMatch match = match_zero_sets(head(a), head(b));
  std::vector<double> d;
  for (const auto& [s, f] : match.pairs) {
    FroesePair p{s, f, std::abs(s - f), std::abs(s - f) / std::abs(s)};
    out.pairs.push_back(p);
    d.push_back(p.distance);
  }
  const std::size_t third = std::max<std::size_t>(1, d.size() / 3);
  out.first_third_median = median({d.begin(), d.begin() + static_cast<long>(third)});
  out.last_third_median = median({d.end() - static_cast<long>(third), d.end()});
  return out;
}

}  // namespace reslab
