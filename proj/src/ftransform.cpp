#include "reslab/ftransform.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

#include "reslab/quadrature.hpp"

namespace reslab {

namespace {

constexpr const char* kModule = "ftransform";

// Coarse integral of |V|; only used to scale tolerances.
double abs_mass(const Potential& v) {
  const double length = v.support_length();
  double sum = 0.0;
  constexpr int kPanels = 8;
  for (int i = 0; i < kPanels; ++i) {
    sum += detail::gauss_panel<double>([&](double x) { return std::abs(v(x)); },
                                       length * i / kPanels, length * (i + 1) / kPanels);
  }
  return sum;
}

int oscillation_panels(double frequency, double length) {
  const double periods = std::abs(frequency) * length / (2.0 * kPi);
  return static_cast<int>(std::clamp(std::ceil(periods / 2.0), 1.0, 4096.0));
}

}  // namespace

FourierEval fourier(const Potential& v, Complex z, const FourierOptions& opt) {
  FourierEval out;
  if (v.family() == PotentialFamily::kZero) return out;

  const double length = v.support_length();
  const double mass = abs_mass(v);
  if (mass == 0.0) return out;
  const double growth = std::exp(length * std::max(0.0, z.imag()));
  const double tol = opt.rel_tol * growth * mass;

  QuadratureOptions q;
  q.initial_panels = oscillation_panels(z.real(), length);

  if (z.imag() == 0.0 && std::abs(z.real()) * length > opt.expansion_threshold) {
    // Two integrations by parts with kernel exp(i x t), x = -z; the
    // remainder integral is smaller by 1/x^2 and still integrated adaptively.
    const double x = -z.real();
    ExpansionTerms terms;
    terms.order = 2;
    const Complex e_right = std::exp(kI * x * length);
    terms.a = -kI * v.derivative(0.0, 0) / x + v.derivative(0.0, 1) / (x * x);
    terms.b = (-kI * v.derivative(length, 0) / x + v.derivative(length, 1) / (x * x)) * e_right;
    q.abs_tol = tol * x * x;
    auto rem = integrate_adaptive<Complex>(
        [&](double t) { return std::exp(kI * x * t) * v.derivative(t, 2); }, 0.0, length, q);
    if (!rem.converged) throw Error(kModule, "tolerance unreachable at maximum subdivision depth");
    out.value = terms.estimate() - rem.value / (x * x);
    out.abs_error_estimate = rem.error_estimate / (x * x);
    out.method = FourierMethod::kBoundaryExpansion;
    return out;
  }

  q.abs_tol = tol;
  auto r = integrate_adaptive<Complex>([&](double t) { return v(t) * std::exp(-kI * z * t); }, 0.0,
                                       length, q);
  if (!r.converged) throw Error(kModule, "tolerance unreachable at maximum subdivision depth");
  out.value = r.value;
  out.abs_error_estimate = r.error_estimate;
  out.method = FourierMethod::kAdaptiveQuadrature;
  return out;
}

Complex fourier_pair(const Potential& v, Complex z, const FourierOptions& opt) {
  return fourier(v, 2.0 * z, opt).value * fourier(v, -2.0 * z, opt).value;
}

ExpansionTerms erdelyi_expansion(const Potential& v, double x, int order) {
  if (order < 1 || order > 2) throw Error(kModule, "expansion order must be 1 or 2");
  if (std::abs(x) < 1.0) throw Error(kModule, "expansion requires |x| >= 1");
  const double length = v.support_length();
  ExpansionTerms terms;
  terms.order = order;
  Complex i_pow = -kI;  // i^(n-1) at n = 0
  for (int n = 0; n < order; ++n) {
    const double x_pow = std::pow(x, -n - 1);
    terms.a += i_pow * v.derivative(0.0, n) * x_pow;
    terms.b += i_pow * v.derivative(length, n) * x_pow * std::exp(kI * x * length);
    i_pow *= kI;
  }
  terms.remainder_bound = abs_derivative_integral(v, order) / std::pow(std::abs(x), order);
  return terms;
}

double asymptotic_residual(const Potential& v, double z, const FourierOptions& opt) {
  if (std::abs(z) < 1.0) throw Error(kModule, "asymptotic residual requires |z| >= 1");
  return std::abs(4.0 * z * z * fourier_pair(v, z, opt) - 1.0);
}

double conj_symmetry_residual(const Potential& v, double k, const FourierOptions& opt) {
  return std::abs(std::conj(fourier(v, -2.0 * k, opt).value) - fourier(v, 2.0 * k, opt).value);
}

double indicator_estimate(const Potential& v, double theta, std::span<const double> radii,
                          const FourierOptions& opt) {
  if (radii.size() < 3) throw Error(kModule, "indicator estimate needs at least 3 radii");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1]) || !(radii[i - 1] > 0.0)) {
      throw Error(kModule, "radii must be positive and increasing");
    }
  }
  const auto n = static_cast<Eigen::Index>(radii.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd logs(n);
  const Complex direction = std::polar(1.0, theta);
  for (Eigen::Index i = 0; i < n; ++i) {
    double r = radii[static_cast<std::size_t>(i)];
    double log_mod = 0.0;
    bool ok = false;
    for (int attempt = 0; attempt < 8 && !ok; ++attempt) {
      const double magnitude = std::abs(fourier_pair(v, r * direction, opt));
      if (magnitude > 0.0 && std::isfinite(magnitude)) {
        log_mod = std::log(magnitude);
        ok = true;
      } else {
        r *= 1.0 + 1e-6 * (attempt + 1);
      }
    }
    if (!ok) throw Error(kModule, "F vanishes at an indicator sample");
    design(i, 0) = 1.0;
    design(i, 1) = r;
    logs[i] = log_mod;
  }
  const Eigen::Vector2d coeffs = design.colPivHouseholderQr().solve(logs);
  return coeffs[1];
}

}  // namespace reslab
