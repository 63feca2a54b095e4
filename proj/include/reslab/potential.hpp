#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "reslab/types.hpp"

namespace reslab {

// Not-a-knot cubic spline. C2 on the sample range, extended cubically to
// the support endpoints when the samples do not reach them.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<double> y);

  // order in {0, 1, 2, 3}
  double evaluate(double x, int order = 0) const;

  const std::vector<double>& knots() const { return x_; }

 private:
  std::size_t interval(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
};

enum class PotentialFamily { kZero, kPolyBump, kTruncatedGaussian, kTabulated };

struct NormalizationReport {
  double value_at_zero = 0.0;
  double slope_at_zero = 0.0;
  bool value_ok = false;  // |V(0) - 1| <= 1e-12
  bool slope_ok = false;  // |V'(0)| <= 1e-12

  bool ok() const { return value_ok && slope_ok; }
};

// Real potential supported on [0, L]. Immutable after construction, so
// copies share the tabulated spline and concurrent evaluation is safe.
class Potential {
 public:
  static Potential zero(double support_length = 1.0);
  static Potential poly_bump(double support_length = 1.0);
  static Potential truncated_gaussian(double support_length, bool sharp_edge);
  static Potential tabulated(std::span<const std::pair<double, double>> samples,
                             double support_length);

  // Value and derivatives on the closed support (one-sided at the ends);
  // exactly zero outside [0, L].
  double operator()(double x) const { return derivative(x, 0); }
  double derivative(double x, int order) const;

  Potential scaled(double factor) const;

  double support_length() const { return length_; }
  PotentialFamily family() const { return family_; }
  bool sharp_edge() const { return sharp_edge_; }
  double scale() const { return scale_; }

  double left_value() const { return derivative(0.0, 0); }
  double left_slope() const { return derivative(0.0, 1); }
  double right_value() const { return derivative(length_, 0); }
  double right_slope() const { return derivative(length_, 1); }

  // True when the family guarantees V(0) = 1 and V'(0) = 0 by construction.
  bool normalized_by_construction() const;
  NormalizationReport normalization() const;

  // Short tag used in provenance headers, e.g. "poly_bump(L=1)".
  std::string tag() const;

 private:
  Potential(PotentialFamily family, double length);

  PotentialFamily family_;
  double length_;
  double scale_ = 1.0;
  bool sharp_edge_ = false;
  std::shared_ptr<const CubicSpline> spline_;
};

// Reads "x V" pairs, one per line; '#' starts a comment.
std::vector<std::pair<double, double>> read_table(const std::string& path);

Potential load_table(std::span<const std::pair<double, double>> samples,
                     double support_length);

struct RelativeDistance {
  double value = 0.0;
  std::size_t excluded = 0;
};

// sup over grid points with |V2(x)| >= floor of |V1(x)/V2(x) - 1|.
// Without an explicit floor, 1e-8 * max|V2| over the grid is used.
RelativeDistance relative_sup_distance(const Potential& v1, const Potential& v2,
                                       std::span<const double> grid,
                                       std::optional<double> floor = std::nullopt);

// Integral of |V^(order)| over the support.
double abs_derivative_integral(const Potential& v, int order);

}  // namespace reslab
