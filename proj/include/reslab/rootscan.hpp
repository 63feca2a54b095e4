#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "reslab/types.hpp"

namespace reslab {

using ComplexFunction = std::function<Complex(Complex)>;

// Closed axis-aligned rectangle [x_min, x_max] x i[y_min, y_max].
struct Rectangle {
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;

  Rectangle() = default;
  Rectangle(double x0, double x1, double y0, double y1);

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double diameter() const;
  Complex center() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }
  bool contains(Complex z) const;
  // Distance from z to the boundary (zero on it, positive inside or out).
  double boundary_distance(Complex z) const;
  // Every side pushed outward by d (inward for negative d).
  Rectangle inflated(double d) const;

  bool operator==(const Rectangle&) const = default;
};

struct Zero {
  Complex location;
  int multiplicity = 1;
};

// Strict weak order by modulus, ties by principal argument.
bool canonical_less(Complex a, Complex b);

// Zeros with multiplicities in canonical order. Entries closer than the
// resolution (relative to their modulus) are merged with summed multiplicity.
class ZeroSet {
 public:
  static constexpr double kDefaultResolution = 1e-8;

  ZeroSet() = default;
  explicit ZeroSet(std::vector<Zero> entries, double resolution = kDefaultResolution);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  int total_multiplicity() const;
  const Zero& operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  const std::vector<Zero>& entries() const { return entries_; }

  // Locations repeated by multiplicity, in canonical order.
  std::vector<Complex> expanded() const;

  // Union with z -> -z, used for even functions scanned on Re z >= 0.
  ZeroSet mirrored() const;

  bool operator==(const ZeroSet& other) const;

 private:
  std::vector<Zero> entries_;
};

struct WindOptions {
  int initial_segments = 16;
  // Upper bound on the length of an initial boundary segment; guards
  // against phase aliasing for functions oscillating like exp(i w z).
  double max_step = 0.25;
  // |f| on the boundary must exceed this fraction of its maximum over the
  // surrounding coarse segment.
  double boundary_floor = 1e-13;
};

// Zeros inside rect counted with multiplicity via the argument principle.
// Throws BoundaryZeroError when a zero is too close to the boundary.
int wind_count(const ComplexFunction& f, const Rectangle& rect, const WindOptions& opt = {});

// Winding number of f along a closed curve path(t), t in [0, 1].
int wind_count_path(const ComplexFunction& f, const std::function<Complex(double)>& path,
                    const WindOptions& opt = {}, int initial_segments = 128);

struct LocateOptions {
  double tol = 1e-12;
  double resolution = ZeroSet::kDefaultResolution;
  int max_jitter = 8;
  std::uint64_t seed = 0;
  WindOptions wind;
};

struct LocateResult {
  ZeroSet zeros;
  int boundary_count = 0;  // wind_count of the (possibly jittered) rectangle
  Rectangle rect;          // rectangle actually scanned after jitter
  std::size_t evaluations = 0;
  std::vector<std::string> failures;  // cells that did not converge
};

// Quadrisection to isolate zeros, Muller refinement, multiplicities from a
// final small-box winding count.
LocateResult locate_zeros_report(const ComplexFunction& f, const Rectangle& rect,
                                 const LocateOptions& opt = {});

// Throws if any cell failed; otherwise returns the zeros.
ZeroSet locate_zeros(const ComplexFunction& f, const Rectangle& rect, double tol = 1e-12,
                     const LocateOptions& opt = {});

// Deterministic jitter sequence shared by every contour that must avoid
// zeros: attempt n (1-based) moves each side by up to n * 1e-6 * diameter.
Rectangle jittered(const Rectangle& rect, int attempt, std::uint64_t seed);

struct ZeroMatch {
  std::vector<std::pair<Complex, Complex>> pairs;
  double sup_distance = 0.0;
};

// Index-wise pairing in canonical order. Runs of equal modulus in the first
// set are paired by minimum bottleneck distance within the run.
ZeroMatch match_zero_sets(const ZeroSet& z1, const ZeroSet& z2);

struct CartwrightStats {
  std::vector<double> radii;
  std::vector<double> right_density;     // N(|arg z| < eps, r) / r
  std::vector<double> left_density;      // N(|arg z - pi| < eps, r) / r
  std::vector<double> density;           // both sectors
  std::vector<double> off_axis_fraction; // zeros outside both sectors / all
  std::vector<Complex> partial_sums;     // sum_{|a|<r} 1/a
};

CartwrightStats cartwright_stats(const ZeroSet& z, std::span<const double> radii,
                                 double eps_angle);

struct ZeroSetHeader {
  std::string source;
  std::optional<Rectangle> rect;
  std::optional<double> tol;
  std::vector<std::string> notes;
};

// One zero per line, "re im multiplicity", '#' header lines for provenance.
void write_zero_set(std::ostream& os, const ZeroSet& z, const ZeroSetHeader& header);
ZeroSet read_zero_set(std::istream& is);

}  // namespace reslab
