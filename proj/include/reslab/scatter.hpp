#pragma once

#include <vector>

#include "reslab/potential.hpp"
#include "reslab/rootscan.hpp"
#include "reslab/types.hpp"

namespace reslab {

struct ScatterOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double exclusion_radius = 0.05;  // resonance scans keep this far from k = 0
  double pole_floor = 1e-10;       // |X(k)| / |k| below this is a pole
  LocateOptions locate;
};

struct JostData {
  Complex k;
  Complex X_hat;
  Complex Y_hat_minus;  // coefficient of exp(-ikx)/(ik) left of the support
  double ode_error_estimate = 0.0;
  long steps = 0;
};

// Right Jost solution written as phi = m(x) exp(ikx), integrated from L to 0.
JostData jost_solve(const Potential& v, Complex k, const ScatterOptions& opt = {});

struct ScatteringMatrix {
  double k = 0.0;
  Complex T, R_right, L_left;
  double unitarity_defect = 0.0;  // max over both sides of ||T|^2 + |refl|^2 - 1|
};

ScatteringMatrix scattering_matrix(const Potential& v, double k, const ScatterOptions& opt = {});

// Zeros of k -> X(k) in rect.
ZeroSet resonances(const Potential& v, const Rectangle& rect, double tol = 1e-12,
                   const ScatterOptions& opt = {});

struct FroesePair {
  Complex resonance;
  Complex fourier_zero;
  double distance = 0.0;
  double relative_distance = 0.0;  // distance / |resonance|
};

struct FroeseComparison {
  ZeroSet resonances;
  ZeroSet fourier_zeros;
  std::vector<FroesePair> pairs;
  int count_mismatch = 0;  // resonance count minus Fourier-zero count
  double first_third_median = 0.0;
  double last_third_median = 0.0;

  bool improving() const { return last_third_median <= first_third_median; }
};

// Pairs the first max_pairs (0 = all) resonances with the zeros of
// F(k) = V(2k) V(-2k) found in the same rectangle.
FroeseComparison froese_compare(const Potential& v, const Rectangle& rect,
                                std::size_t max_pairs = 0, const ScatterOptions& opt = {});

double median(std::vector<double> values);

}  // namespace reslab
