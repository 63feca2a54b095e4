#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "reslab/potential.hpp"

using namespace reslab;

TEST_CASE("poly_bump endpoints and normalization") {
  const Potential v = Potential::poly_bump(1.0);
  CHECK(v(0.0) == 1.0);
  CHECK(v(1.0) == 0.0);
  CHECK(v.derivative(1.0, 1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(v.derivative(1.0, 2) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(v.normalized_by_construction());
  CHECK(v.normalization().ok());
  CHECK(v.left_slope() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("poly_bump matches closed form with scaled support") {
  const Potential v = Potential::poly_bump(2.5);
  for (double x = 0.0; x <= 2.5; x += 0.125) {
    const double u = 1.0 - (x / 2.5) * (x / 2.5);
    CHECK(v(x) == doctest::Approx(u * u * u).epsilon(1e-14));
  }
}

TEST_CASE("truncated gaussian edges") {
  const Potential sharp = Potential::truncated_gaussian(1.0, true);
  const Potential smooth = Potential::truncated_gaussian(1.0, false);
  CHECK(sharp(0.0) == 1.0);
  CHECK(smooth(0.0) == 1.0);
  CHECK(sharp.right_value() == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(std::abs(smooth.right_value()) < 1e-15);
  CHECK(std::abs(smooth.right_slope()) < 1e-12);
  CHECK(smooth.normalization().ok());
  CHECK(sharp.normalization().ok());
}

TEST_CASE("zero outside the support for every family") {
  std::vector<std::pair<double, double>> s;
  for (int i = 0; i <= 20; ++i) s.emplace_back(i / 20.0, oracle::poly_bump(i / 20.0));
  const std::vector<Potential> all{Potential::poly_bump(1.0),
                                   Potential::truncated_gaussian(1.0, true),
                                   Potential::truncated_gaussian(1.0, false),
                                   Potential::tabulated(s, 1.0), Potential::zero(1.0)};
  for (const Potential& v : all) {
    for (double x : {-1e-12, -0.5, -10.0, 1.0 + 1e-12, 1.5, 100.0}) {
      for (int order = 0; order <= 2; ++order) CHECK(v.derivative(x, order) == 0.0);
    }
  }
}

TEST_CASE("non-positive support rejected") {
  CHECK_THROWS_WITH(Potential::poly_bump(0.0), doctest::Contains("support length must be positive"));
  CHECK_THROWS(Potential::poly_bump(-1.0));
  CHECK_THROWS(Potential::truncated_gaussian(0.0, true));
}

TEST_CASE("poly_bump second difference across x = L vanishes") {
  const Potential v = Potential::poly_bump(1.0);
  double prev = 1.0;
  for (double h : {1e-1, 1e-2, 1e-3}) {
    const double d2 = (v(1.0 + h) - 2.0 * v(1.0) + v(1.0 - h)) / (h * h);
    CHECK(std::abs(d2) < prev);
    prev = std::abs(d2);
  }
  CHECK(prev < 1e-2);
}

TEST_CASE("table interpolation of poly_bump") {
  std::vector<std::pair<double, double>> s;
  for (int i = 0; i <= 100; ++i) s.emplace_back(i / 100.0, oracle::poly_bump(i / 100.0));
  const Potential t = load_table(s, 1.0);
  double err = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = i / 2000.0;
    err = std::max(err, std::abs(t(x) - oracle::poly_bump(x)));
  }
  CHECK(err < 1e-6);
}

TEST_CASE("table interpolation error is fourth order") {
  auto sup_error = [](int n) {
    std::vector<std::pair<double, double>> s;
    for (int i = 0; i <= n; ++i) s.emplace_back(double(i) / n, oracle::sharp_gaussian(double(i) / n));
    const Potential t = load_table(s, 1.0);
    double err = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      const double x = i / 4000.0;
      err = std::max(err, std::abs(t(x) - std::exp(-x * x)));
    }
    return err;
  };
  const double e1 = sup_error(20), e2 = sup_error(40), e3 = sup_error(80);
  CHECK(std::log2(e1 / e2) > 3.5);
  CHECK(std::log2(e2 / e3) > 3.5);
}

TEST_CASE("table errors") {
  std::vector<std::pair<double, double>> three{{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}};
  CHECK_THROWS_WITH(load_table(three, 1.0), doctest::Contains("too few samples"));
  std::vector<std::pair<double, double>> dup{{0.0, 1.0}, {0.25, 0.8}, {0.25, 0.8}, {1.0, 0.0}};
  CHECK_THROWS_WITH(load_table(dup, 1.0), doctest::Contains("non-monotone"));
  std::vector<std::pair<double, double>> out{{0.0, 1.0}, {0.25, 0.8}, {0.5, 0.5}, {1.5, 0.0}};
  CHECK_THROWS_WITH(load_table(out, 1.0), doctest::Contains("out of range"));
}

TEST_CASE("relative sup distance") {
  const Potential v = Potential::poly_bump(1.0);
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
  CHECK(relative_sup_distance(v, v, grid).value == 0.0);

  const RelativeDistance d = relative_sup_distance(v.scaled(1.01), v, grid);
  CHECK(d.value == doctest::Approx(1e-2).epsilon(1e-10));
  CHECK(d.excluded == 1);  // x = 1 where V2 vanishes

  const RelativeDistance r = relative_sup_distance(v, v.scaled(1.01), grid);
  CHECK(r.value == doctest::Approx(1.0 - 1.0 / 1.01).epsilon(1e-10));

  const std::vector<double> edge{1.0};
  CHECK_THROWS_WITH(relative_sup_distance(v, v, edge), doctest::Contains("all grid points excluded"));
  CHECK_THROWS_WITH(relative_sup_distance(v, v, std::vector<double>{}),
                    doctest::Contains("empty grid"));
}
