#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace reslab {

using Complex = std::complex<double>;

using VectorXd = Eigen::VectorXd;
using VectorXcd = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// Every library failure carries the module it came from so the CLI can
// report provenance without string matching.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

// A zero sits too close to a contour for the argument principle to be
// trusted. Callers may jitter the contour and retry.
class BoundaryZeroError : public Error {
 public:
  using Error::Error;
};

}  // namespace reslab
