#pragma once

#include <span>

#include "reslab/potential.hpp"
#include "reslab/types.hpp"

namespace reslab {

enum class FourierMethod { kAdaptiveQuadrature, kBoundaryExpansion };

struct FourierEval {
  Complex value;
  double abs_error_estimate = 0.0;
  FourierMethod method = FourierMethod::kAdaptiveQuadrature;
};

struct FourierOptions {
  // Relative to exp(L * max(0, Im z)) * integral |V|.
  double rel_tol = 1e-12;
  // Real |z| above this multiple of 1/L switches to the boundary expansion.
  double expansion_threshold = 50.0;
};

// V^(z) = integral_0^L V(x) exp(-i z x) dx, entire in z.
FourierEval fourier(const Potential& v, Complex z, const FourierOptions& opt = {});

// F(z) = V^(2z) V^(-2z); even in z and nonnegative on the real axis.
Complex fourier_pair(const Potential& v, Complex z, const FourierOptions& opt = {});

// Boundary sums of the integration-by-parts expansion of
// integral_0^L V(t) exp(i x t) dt = B - A + R_N.
struct ExpansionTerms {
  Complex a;  // contribution of the left endpoint t = 0
  Complex b;  // contribution of the right endpoint t = L
  double remainder_bound = 0.0;  // integral |V^(N)| / |x|^N
  int order = 1;

  Complex estimate() const { return b - a; }
};

ExpansionTerms erdelyi_expansion(const Potential& v, double x, int order);

// |4 z^2 F(z) - 1| for real |z| >= 1.
double asymptotic_residual(const Potential& v, double z, const FourierOptions& opt = {});

// |conj(V^(-2k)) - V^(2k)| for real k.
double conj_symmetry_residual(const Potential& v, double k, const FourierOptions& opt = {});

// Least-squares slope of log|F(r e^{i theta})| against r.
double indicator_estimate(const Potential& v, double theta, std::span<const double> radii,
                          const FourierOptions& opt = {});

}  // namespace reslab
