#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "reslab/dickson.hpp"

using namespace reslab;

namespace {

ExpPolynomial make(std::vector<Complex> omega, std::vector<int> m) {
  std::vector<ExpTerm> t;
  for (std::size_t i = 0; i < omega.size(); ++i) t.push_back({1.0, m[i], omega[i], {}});
  return ExpPolynomial(t);
}

// Independent check of the strip slope from its defining ratio.
double slope_oracle(const ExpPolynomial& p, const DicksonEdge& e, const DicksonSegment& s) {
  const ExpTerm& a = p.terms()[s.term_from];
  const ExpTerm& b = p.terms()[s.term_to];
  const Complex ratio = double(a.m - b.m) / ((a.omega - b.omega) * e.e);
  CHECK(std::abs(ratio.imag()) < 1e-12);
  return ratio.real();
}

std::vector<double> model_roots(double a, double b) {
  return oracle::real_roots([](double x) { return 2.0 * std::cos(2.0 * x) + 0.5; }, a, b,
                            static_cast<int>((b - a) * 100));
}

}  // namespace

TEST_CASE("exponential polynomial validation") {
  CHECK_THROWS_WITH(ExpPolynomial({{1.0, 0, 0.0, {}}}), doctest::Contains("at least 2 terms"));
  CHECK_THROWS_WITH(ExpPolynomial({{1.0, 0, 0.0, {}}, {1.0, 0, 0.0, {}}}),
                    doctest::Contains("distinct"));
  CHECK_THROWS_WITH(ExpPolynomial({{0.0, 0, 0.0, {}}, {1.0, 0, 1.0, {}}}),
                    doctest::Contains("nonzero"));
  const ExpPolynomial p = model_exp_polynomial();
  const Complex z(0.7, -0.3);
  CHECK(std::abs(p(z) - (2.0 * std::cos(2.0 * z) + 0.5)) < 1e-14);
}

TEST_CASE("real collinear frequencies") {
  const ExpPolynomial p = make({-2.0, 0.0, 2.0}, {0, 0, 0});
  const DicksonGeometry g = dickson_geometry(p);
  REQUIRE(g.vertices.size() == 2);
  REQUIRE(g.edges.size() == 2);
  CHECK(std::abs(g.edges[0].e + g.edges[1].e) < 1e-15);
  for (const DicksonEdge& e : g.edges) {
    CHECK(std::abs(std::abs(e.e) - 1.0) < 1e-15);
    CHECK(e.phi >= -kPi / 2);
    CHECK(e.phi < 3 * kPi / 2);
    REQUIRE(e.segments.size() == 2);
    for (const DicksonSegment& s : e.segments) {
      CHECK(s.mu == 0.0);
      CHECK(s.n == 2);
      CHECK(s.frequency_gap == doctest::Approx(2.0));
    }
  }
}

TEST_CASE("vertical segment hull") {
  const ExpPolynomial p = make({0.0, Complex(0, 1)}, {0, 0});
  const DicksonGeometry g = dickson_geometry(p);
  REQUIRE(g.edges.size() == 2);
  for (const DicksonEdge& e : g.edges) {
    CHECK(std::abs(std::abs(e.e.imag()) - 1.0) < 1e-15);
    CHECK(e.segments.at(0).mu == 0.0);
  }
}

TEST_CASE("slope from unequal powers") {
  const ExpPolynomial p = make({0.0, 1.0}, {1, 0});
  const DicksonGeometry g = dickson_geometry(p);
  for (const DicksonEdge& e : g.edges) {
    for (const DicksonSegment& s : e.segments) {
      CHECK(s.mu == doctest::Approx(slope_oracle(p, e, s)).epsilon(1e-14));
      CHECK(std::abs(s.mu) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("triangle hull is counterclockwise") {
  const ExpPolynomial p = make({0.0, 1.0, Complex(0, 1), Complex(0.2, 0.2)}, {0, 1, 2, 0});
  const DicksonGeometry g = dickson_geometry(p);
  REQUIRE(g.vertices.size() == 3);
  double area = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const Complex a = g.vertices[i], b = g.vertices[(i + 1) % 3];
    area += a.real() * b.imag() - b.real() * a.imag();
  }
  CHECK(area > 0.0);
  for (const DicksonEdge& e : g.edges) {
    for (const DicksonSegment& s : e.segments) {
      CHECK(s.mu == doctest::Approx(slope_oracle(p, e, s)).epsilon(1e-14));
      CHECK(s.n >= 2);
    }
  }
  CHECK_THROWS(g.segment(4, 1));
}

TEST_CASE("single-point hull rejected") {
  CHECK_THROWS_WITH(dickson_geometry(make({1.0, 1.0 + 1e-14}, {0, 0})),
                    doctest::Contains("single point"));
}

TEST_CASE("strip membership for the model") {
  const ExpPolynomial p = model_exp_polynomial();
  const DicksonGeometry g = dickson_geometry(p);
  const auto hit = strip_membership(g, 50.0, 2.0);
  REQUIRE(hit.has_value());
  CHECK(std::abs(50.0 / g.edges[hit->first - 1].e - Complex(0, 50)) < 1e-12);
  CHECK_FALSE(strip_membership(g, Complex(0, 50), 2.0).has_value());
  // mu = 0: the strip is the straight half-strip |Re(z/e)| <= H.
  CHECK(in_strip(g, hit->first, hit->second, Complex(50, 1.99), 2.0));
  CHECK_FALSE(in_strip(g, hit->first, hit->second, Complex(50, 2.01), 2.0));
}

TEST_CASE("default region parameters") {
  const ExpPolynomial p = model_exp_polynomial();
  CHECK(default_alpha0(p) == 60.0);
  CHECK(default_alpha0(dickson_geometry(p)) == 60.0);
  CHECK(default_strip_height(p, 60.0) == 2.0);
  CHECK(default_strip_height(make({0.0, 1.0}, {2, 0}), 60.0) == doctest::Approx(2.0 + 2.0 * std::log(60.0)));
}

TEST_CASE("strip chart inverts") {
  const ExpPolynomial p = make({0.0, 1.0}, {1, 0});
  const DicksonGeometry g = dickson_geometry(p);
  const DicksonEdge& e = g.edges[0];
  const double mu = e.segments[0].mu;
  for (double a : {70.0, 85.5}) {
    for (double b : {-3.0, 0.5, 2.0}) {
      const Complex z = strip_point(g, 1, 1, a, b);
      const Complex w = z / e.e;
      CHECK(w.imag() + mu * (e.phi + std::arg(w)) == doctest::Approx(a).epsilon(1e-12));
      CHECK(w.real() + mu * std::log(std::abs(z)) == doctest::Approx(b).epsilon(1e-12));
    }
  }
}

TEST_CASE("window counts match the real-axis oracle") {
  const ExpPolynomial p = model_exp_polynomial();
  const DicksonGeometry g = dickson_geometry(p);
  const auto hit = strip_membership(g, 50.0, 2.0);
  REQUIRE(hit.has_value());
  for (double s : {kPi / 2, kPi}) {
    for (int w = 0; w < 4; ++w) {
      const double alpha = 60.0 + w * s;
      const CurvilinearCount c = curvilinear_count(p, g, hit->first, hit->second, alpha, s, 2.0);
      int n = 0;
      for (double x : model_roots(alpha - 1.0, alpha + s + 1.0)) n += x > c.alpha && x < c.alpha + c.s;
      CHECK(c.count == n);
      CHECK(c.count == (s == kPi ? 2 : 1));
      REQUIRE(c.bound_ok.has_value());
      CHECK(*c.bound_ok);
    }
  }
}

TEST_CASE("below alpha0 the bound is not asserted") {
  const ExpPolynomial p = model_exp_polynomial();
  const DicksonGeometry g = dickson_geometry(p);
  const auto hit = strip_membership(g, 50.0, 2.0);
  const CurvilinearCount c = curvilinear_count(p, g, hit->first, hit->second, 10.0, kPi, 2.0);
  CHECK_FALSE(c.bound_ok.has_value());
  CHECK(c.count == 2);
  CHECK_THROWS(curvilinear_count(p, g, hit->first, hit->second, 10.0, -1.0, 2.0));
}

TEST_CASE("containment of located zeros") {
  const ExpPolynomial p = model_exp_polynomial();
  const DicksonGeometry g = dickson_geometry(p);
  const ZeroSet z = locate_zeros(p, Rectangle(-30, 30, -4, 4));
  CHECK(z.size() > 30);
  const ContainmentReport r = check_containment(g, z, 2.0, 1.0);
  std::size_t beyond = 0;
  for (const Zero& e : z) beyond += std::abs(e.location) > 1.0;
  CHECK(r.checked == beyond);
  CHECK(r.exceptions.empty());
}
