#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "reslab/potential.hpp"
#include "reslab/rootscan.hpp"
#include "reslab/types.hpp"

namespace reslab {

struct Prefactor {
  Complex c = 1.0;
  int m = 0;
  double kappa = 0.0;
};

// c z^m exp(i kappa z) prod_{|z_n| < R} (1 - z/z_n)
struct TruncatedProduct {
  Prefactor prefactor;
  std::vector<Complex> zeros;  // repeated by multiplicity, canonical order
  double R = 0.0;
};

TruncatedProduct build_product(const ZeroSet& z, double R, const Prefactor& pre = {});

struct ProductValue {
  Complex value;
  Complex log_value;    // log|P| + i arg P
  bool scaled = false;  // |log|P|| > 700: only log_value is meaningful
};

ProductValue eval_product(const TruncatedProduct& p, Complex z);

// Least-squares fit of (c, kappa) from samples of the target; m = 0.
Prefactor fit_prefactor(std::span<const std::pair<Complex, Complex>> samples, const ZeroSet& z,
                        double R);

struct ConvergenceCurve {
  std::vector<double> radii;
  std::vector<Complex> values;
  std::vector<double> differences;  // |values[i] - values[i-1]|, first entry 0
};

ConvergenceCurve convergence_curve(const ZeroSet& z_full, const Prefactor& pre, Complex z,
                                   std::span<const double> radii);

struct CountOptions {
  int max_jitter = 8;
  std::uint64_t seed = 0;
  double integer_tol = 1e-6;
};

struct CountDifference {
  int n_diff = 0;
  Complex raw;     // contour integral / (2 pi i)
  Rectangle rect;  // S_R actually used after jitter
};

// Difference of zero counts of the two truncated products inside
// S_R = [0, R] x i[-K, K], by integrating the difference of their
// logarithmic derivatives around the boundary.
CountDifference count_difference(const ZeroSet& z1, const ZeroSet& z2, double R, double K,
                                 const CountOptions& opt = {});

enum class PerturbMode { kUniformShift, kRandomInDisk };

PerturbMode parse_perturb_mode(const std::string& name);
std::string to_string(PerturbMode mode);

ZeroSet perturb_zeros(const ZeroSet& z, double delta, PerturbMode mode, std::uint64_t seed);

struct StabilityOptions {
  PerturbMode mode = PerturbMode::kRandomInDisk;
  std::uint64_t seed = 0;
  std::optional<double> K;  // default encloses every retained zero
  double tol = 1e-12;
};

struct StabilityRow {
  double delta = 0.0;
  double sup_diff = 0.0;
  int n_diff = 0;
  double zero_sup_distance = 0.0;
  double R = 0.0;
  double K = 0.0;
  std::size_t grid_size = 0;
  bool ok = true;
  std::string error;
};

struct StabilityTable {
  ZeroSet zeros;  // zeros of F, mirrored to both half planes
  Prefactor prefactor;
  std::vector<StabilityRow> rows;  // delta descending, delta = 0 last
};

// R midway between the n-th and (n+1)-th distinct zero moduli.
double radius_between(const ZeroSet& z, std::size_t n);

// R <= 0 picks radius_between(zeros, 15).
StabilityTable stability_experiment(const Potential& v, const Rectangle& rect,
                                    std::span<const double> deltas, double R,
                                    std::span<const double> grid, const StabilityOptions& opt = {});

void write_stability_tsv(std::ostream& os, const StabilityTable& table);

}  // namespace reslab
