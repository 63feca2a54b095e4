#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "reslab/potential.hpp"
#include "reslab/rootscan.hpp"

namespace reslab {

struct PotentialSpec {
  std::string family = "poly_bump";  // zero | poly_bump | truncated_gaussian | table
  double L = 1.0;
  double scale = 1.0;
  bool sharp_edge = false;  // truncated_gaussian only
  std::string table;        // path for family = table, relative to the config file

  bool operator==(const PotentialSpec&) const = default;
};

struct GridSpec {
  double x_min = 0.0;
  double x_max = 10.0;
  int points = 200;

  std::vector<double> values() const;
  bool operator==(const GridSpec&) const = default;
};

struct DicksonSpec {
  std::vector<double> omega_re{0.0, 0.0, 0.0};
  std::vector<double> omega_im{2.0, 0.0, -2.0};
  std::vector<double> coeff_re{1.0, 0.5, 1.0};
  std::vector<double> coeff_im{0.0, 0.0, 0.0};
  std::vector<int> powers{0, 0, 0};
  int k = 1, j = 1;
  double alpha = 0.0;  // 0: alpha0 = 20 (1 + max|omega|)
  double s = 0.0;      // 0: 2 pi / |omega_kj+1 - omega_kj|
  double H = 0.0;      // 0: 2 + max m log alpha0
  int windows = 20;

  bool operator==(const DicksonSpec&) const = default;
};

struct ExperimentConfig {
  PotentialSpec potential;
  Rectangle rect{0.0, 62.0, -8.0, 8.0};                // Fourier-zero scans, Re z >= 0
  Rectangle resonance_rect{0.5, 30.0, -12.0, -0.05};  // resonance scans, Im k < 0
  double quad_tol = 1e-12;
  double ode_tol = 1e-10;
  double root_tol = 1e-12;
  double R = 0.0;  // 0: midway between the 15th and 16th distinct zero moduli
  double K = 0.0;  // 0: encloses every retained zero
  std::vector<double> deltas{1e-1, 1e-2, 1e-3};
  std::string perturbation = "random-in-disk";
  GridSpec grid;
  std::uint64_t seed = 0;
  std::string out = "out";
  DicksonSpec dickson;
  double k_min = 0.5, k_max = 20.0;
  int k_points = 40;
  int max_pairs = 20;

  std::string base_dir = ".";  // directory of the parsed file; not serialized

  bool operator==(const ExperimentConfig& o) const;
};

// Flat key-value text with [section] headers; '#' starts a comment.
// Errors carry the line number and the offending field.
ExperimentConfig parse_config(std::istream& is, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

// Every field, lossless for doubles.
std::string serialize_config(const ExperimentConfig& c);

Potential make_potential(const ExperimentConfig& c);

}  // namespace reslab
