#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "reslab/rootscan.hpp"
#include "reslab/types.hpp"

namespace reslab {

// One term A z^m (1 + eps(z)) exp(omega z).
struct ExpTerm {
  Complex A;
  int m = 0;
  Complex omega;
  std::function<Complex(Complex)> epsilon;  // empty means eps = 0
};

class ExpPolynomial {
 public:
  ExpPolynomial(std::vector<ExpTerm> terms, double r0 = 0.0);

  Complex operator()(Complex z) const;

  const std::vector<ExpTerm>& terms() const { return terms_; }
  double r0() const { return r0_; }
  double max_frequency() const;
  int max_power() const;

 private:
  std::vector<ExpTerm> terms_;
  double r0_;
};

// 2 cos(2z) + 1/2 written as exp(2iz) + 1/2 + exp(-2iz).
ExpPolynomial model_exp_polynomial();

struct DicksonSegment {
  int k = 0, j = 0;         // 1-based, as L_kj
  int term_from = 0;        // index into the polynomial's terms
  int term_to = 0;
  Complex tau_from, tau_to;
  double mu = 0.0;
  int n = 2;                // tau points lying on the segment
  double frequency_gap = 0.0;  // |omega_kj+1 - omega_kj|
};

struct DicksonEdge {
  int k = 0;
  Complex from, to;  // conjugated frequencies, counterclockwise
  double phi = 0.0;  // arg(from - to) in [-pi/2, 3pi/2)
  Complex e;
  std::vector<DicksonSegment> segments;
};

struct DicksonGeometry {
  std::vector<Complex> vertices;  // hull corners of the conjugated frequencies
  std::vector<DicksonEdge> edges;

  const DicksonSegment& segment(int k, int j) const;
};

DicksonGeometry dickson_geometry(const ExpPolynomial& p);

// z in V_kj(H): Im(z/e_k) >= 0 and |Re(z/e_k) + mu log|z|| <= H.
bool in_strip(const DicksonGeometry& g, int k, int j, Complex z, double H);

// First strip (k, j) containing z, if any. Coinciding strips (equal e_k and
// mu) resolve to the lowest index.
std::optional<std::pair<int, int>> strip_membership(const DicksonGeometry& g, Complex z, double H);

double default_alpha0(const ExpPolynomial& p);
// Same value; the largest |omega| is always a hull corner.
double default_alpha0(const DicksonGeometry& g);
double default_strip_height(const ExpPolynomial& p, double alpha0);

struct CurvilinearOptions {
  std::optional<double> alpha0;  // default_alpha0 when unset
  double epsilon = 0.5;
  int max_jitter = 8;
  std::uint64_t seed = 0;
  WindOptions wind;
};

struct CurvilinearCount {
  int count = 0;
  double expected = 0.0;  // s |omega_kj+1 - omega_kj| / (2 pi)
  double bound = 0.0;     // n_kj - 1 + epsilon
  std::optional<bool> bound_ok;  // unset when alpha < alpha0
  double alpha = 0.0, s = 0.0, H = 0.0;  // region actually counted after jitter
};

// Zeros of f in R_kj(alpha, s, H) by winding along its curved boundary.
CurvilinearCount curvilinear_count(const ComplexFunction& f, const DicksonGeometry& g, int k,
                                   int j, double alpha, double s, double H,
                                   const CurvilinearOptions& opt = {});

// Point of R_kj's coordinate chart: a = Im(z/e) + mu arg z, b = Re(z/e) + mu log|z|.
Complex strip_point(const DicksonGeometry& g, int k, int j, double a, double b);

struct ContainmentReport {
  std::size_t checked = 0;
  std::vector<Complex> exceptions;  // zeros beyond r0 outside every strip
};

ContainmentReport check_containment(const DicksonGeometry& g, const ZeroSet& zeros, double H,
                                    double r0);

}  // namespace reslab
