#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "reslab/hadamard.hpp"

using namespace reslab;

namespace {

ZeroSet integers(int n) {
  std::vector<Zero> e;
  for (int k = 1; k <= n; ++k) {
    e.push_back({double(k), 1});
    e.push_back({-double(k), 1});
  }
  return ZeroSet(e);
}

// Frozen from the partial-product oracle at z = 1/2 with N = 24, 49, 99, 199.
constexpr double kSinPartial[] = {0.64314869365596949, 0.63984310180532233, 0.63822132395107722,
                                  0.6374180407338752};

ZeroSet random_conjugate_set(std::mt19937_64& rng, int pairs, int reals) {
  std::uniform_real_distribution<double> x(0.5, 18.0), y(0.3, 2.5);
  std::vector<Zero> e;
  for (int i = 0; i < pairs; ++i) {
    const Complex a(x(rng), y(rng));
    e.push_back({a, 1});
    e.push_back({std::conj(a), 1});
  }
  for (int i = 0; i < reals; ++i) e.push_back({x(rng), 1});
  return ZeroSet(e);
}

}  // namespace

TEST_CASE("frozen partial products") {
  const int n[] = {24, 49, 99, 199};
  for (int i = 0; i < 4; ++i) {
    CHECK(oracle::sin_partial_product(0.5, n[i]) == doctest::Approx(kSinPartial[i]).epsilon(1e-15));
  }
}

TEST_CASE("elementary products") {
  CHECK(eval_product(build_product(ZeroSet{}, 1.0), Complex(3, -7)).value == Complex(1.0));
  const TruncatedProduct lin = build_product(ZeroSet({{1.0, 1}}), 5.0);
  CHECK(eval_product(lin, 2.0).value == Complex(-1.0));
  const TruncatedProduct ex = build_product(ZeroSet{}, 1.0, {1.0, 0, 2.0});
  CHECK(eval_product(ex, Complex(0, 10)).value.real() == doctest::Approx(std::exp(-20.0)).epsilon(1e-14));
}

TEST_CASE("sin model partial products") {
  const ZeroSet z = integers(250);
  for (double R : {25.0, 50.0, 100.0, 200.0}) {
    const int i = R == 25.0 ? 0 : R == 50.0 ? 1 : R == 100.0 ? 2 : 3;
    const Complex v = eval_product(build_product(z, R), 0.5).value;
    CHECK(v.real() == doctest::Approx(kSinPartial[i]).epsilon(1e-13));
  }
  const Complex at200 = eval_product(build_product(z, 200.0), 0.5).value;
  CHECK(std::abs(at200 - 2.0 / kPi) <= 1e-2);
}

TEST_CASE("retained zeros evaluate to exactly zero") {
  const ZeroSet z({{Complex(1, 2), 1}, {Complex(1, -2), 2}, {Complex(-4, 0), 1}});
  const TruncatedProduct p = build_product(z, 10.0, {Complex(2, 1), 0, 0.7});
  for (const Zero& e : z) CHECK(eval_product(p, e.location).value == Complex(0.0));
  CHECK(p.zeros.size() == 4);
}

TEST_CASE("product construction errors") {
  CHECK_THROWS_WITH(build_product(ZeroSet{}, 0.0), doctest::Contains("radius must be positive"));
  CHECK_THROWS_WITH(build_product(ZeroSet({{0.0, 1}}), 1.0), doctest::Contains("zero at origin"));
  CHECK_NOTHROW(build_product(ZeroSet({{0.0, 1}}), 1.0, {1.0, 1, 0.0}));
}

TEST_CASE("appending a zero multiplies by its factor") {
  std::mt19937_64 rng(11);
  const ZeroSet base = random_conjugate_set(rng, 6, 3);
  const Complex z0(2.3, -0.7);
  std::vector<Zero> e = base.entries();
  e.push_back({z0, 1});
  const TruncatedProduct p = build_product(base, 100.0, {1.5, 0, 0.3});
  const TruncatedProduct q = build_product(ZeroSet(e), 100.0, {1.5, 0, 0.3});
  for (Complex z : {Complex(0.1, 0.2), Complex(5, -1), Complex(-7, 3)}) {
    const Complex expect = eval_product(p, z).value * (1.0 - z / z0);
    CHECK(std::abs(eval_product(q, z).value - expect) <= 1e-13 * std::abs(expect));
  }
}

TEST_CASE("truncation is strict and convention independent") {
  const ZeroSet z = integers(20);
  CHECK(build_product(z, 10.0).zeros.size() == 18);
  const Complex a = eval_product(build_product(z, 10.2), 0.3).value;
  const Complex b = eval_product(build_product(z, 10.9), 0.3).value;
  CHECK(a == b);
}

TEST_CASE("large products stay finite in the log domain") {
  const ZeroSet z = integers(2000);
  const ProductValue v = eval_product(build_product(z, 3000.0), Complex(0, 400));
  CHECK(v.scaled);
  CHECK(std::isfinite(v.log_value.real()));
  double expect = 0.0;
  for (int n = 1; n <= 2000; ++n) expect += std::log1p(400.0 * 400.0 / (double(n) * n));
  CHECK(v.log_value.real() == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("prefactor fit") {
  const ZeroSet z = integers(100);
  std::vector<std::pair<Complex, Complex>> s;
  for (int i = 0; i < 10; ++i) {
    const double x = 0.05 + 0.1 * i;
    s.emplace_back(x, std::sin(kPi * x) / (kPi * x));
  }
  const Prefactor p = fit_prefactor(s, z, 100.5);
  CHECK(std::abs(p.kappa) < 1e-2);
  CHECK(std::abs(p.c - 1.0) < 1e-2);
  CHECK(p.m == 0);

  const TruncatedProduct base = build_product(z, 100.5);
  std::vector<std::pair<Complex, Complex>> e;
  for (int i = 0; i < 10; ++i) {
    const double x = 0.13 + 0.41 * i;
    e.emplace_back(x, 3.0 * std::exp(Complex(0, 2 * x)) * eval_product(base, x).value);
  }
  const Prefactor q = fit_prefactor(e, z, 100.5);
  CHECK(std::abs(q.kappa - 2.0) < 1e-6);
  CHECK(std::abs(q.c - 3.0) < 1e-6);

  CHECK_THROWS_WITH(fit_prefactor(std::span(s).first(2), z, 100.5),
                    doctest::Contains("at least 3 samples"));
  std::vector<std::pair<Complex, Complex>> same(3, s.front());
  CHECK_THROWS_WITH(fit_prefactor(same, z, 100.5), doctest::Contains("degenerate"));
}

TEST_CASE("convergence curve") {
  const ZeroSet z = integers(250);
  const std::vector<double> radii{25.0, 50.0, 100.0, 200.0};
  const ConvergenceCurve c = convergence_curve(z, {}, 0.5, radii);
  REQUIRE(c.values.size() == 4);
  double prev = INFINITY;
  for (const Complex& v : c.values) {
    const double err = std::abs(v - 2.0 / kPi);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(c.differences[0] == 0.0);

  const ConvergenceCurve at_zero = convergence_curve(z, {}, 3.0, radii);
  for (const Complex& v : at_zero.values) CHECK(v == Complex(0.0));
  const ConvergenceCurve origin = convergence_curve(z, {Complex(0.4, 0.1), 0, 0.0}, 0.0, radii);
  for (const Complex& v : origin.values) CHECK(v == Complex(0.4, 0.1));
}

TEST_CASE("count difference examples") {
  std::mt19937_64 rng(5);
  const ZeroSet z1 = random_conjugate_set(rng, 5, 4);
  const CountDifference same = count_difference(z1, z1, 20.0, 3.0);
  CHECK(same.n_diff == 0);
  CHECK(std::abs(same.raw) <= 1e-12);

  // Move the largest real zero from inside S_R to outside it (but still retained).
  std::vector<Zero> e = z1.entries();
  std::size_t moved = e.size();
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i].location.imag() == 0.0) moved = i;
  }
  REQUIRE(moved < e.size());
  e[moved].location = Complex(-1.0, 0.0);
  const CountDifference out = count_difference(z1, ZeroSet(e), 20.0, 3.0);
  CHECK(out.n_diff == 1);

  const ZeroSet z2 = perturb_zeros(z1, 1e-4, PerturbMode::kRandomInDisk, 9);
  CHECK(count_difference(z1, z2, 20.0, 3.0).n_diff == 0);
  CHECK_THROWS(count_difference(z1, z1, 20.0, 0.0));
}

TEST_CASE("contour values are integers") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const ZeroSet a = random_conjugate_set(rng, 6, 3);
    const ZeroSet b = random_conjugate_set(rng, 5, 5);
    const CountDifference c = count_difference(a, b, 12.0, 2.0);
    CHECK(std::abs(c.raw - double(c.n_diff)) <= 1e-6);
    int direct = 0;
    for (const Zero& x : a) direct += c.rect.contains(x.location) ? x.multiplicity : 0;
    for (const Zero& x : b) direct -= c.rect.contains(x.location) ? x.multiplicity : 0;
    CHECK(c.n_diff == direct);
  }
}

TEST_CASE("small-K invariance for real zeros") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> x(0.5, 30.0);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<Zero> a, b;
    for (int i = 0; i < 12; ++i) a.push_back({x(rng), 1});
    for (int i = 0; i < 10; ++i) b.push_back({x(rng), 1});
    const int ref = count_difference(ZeroSet(a), ZeroSet(b), 20.0, 1.0).n_diff;
    CHECK(count_difference(ZeroSet(a), ZeroSet(b), 20.0, 0.1).n_diff == ref);
    CHECK(count_difference(ZeroSet(a), ZeroSet(b), 20.0, 1e-3).n_diff == ref);
  }
}

TEST_CASE("perturbation contract") {
  std::mt19937_64 rng(8);
  const ZeroSet z = random_conjugate_set(rng, 8, 4);
  CHECK(perturb_zeros(z, 0.0, PerturbMode::kRandomInDisk, 1) == z);
  for (PerturbMode mode : {PerturbMode::kUniformShift, PerturbMode::kRandomInDisk}) {
    for (double d : {0.1, 1e-3}) {
      const ZeroSet p = perturb_zeros(z, d, mode, 17);
      CHECK(match_zero_sets(z, p).sup_distance <= d + 1e-14 * 20.0);
      CHECK(p == perturb_zeros(z, d, mode, 17));
      for (const Zero& e : p) {
        if (e.location.imag() == 0.0) continue;
        bool paired = false;
        for (const Zero& f : p) paired |= std::abs(f.location - std::conj(e.location)) < 1e-14;
        CHECK(paired);
      }
      int reals_in = 0, reals_out = 0;
      for (const Zero& e : z) reals_in += e.location.imag() == 0.0;
      for (const Zero& e : p) reals_out += e.location.imag() == 0.0;
      CHECK(reals_in == reals_out);
    }
  }
  CHECK_FALSE(perturb_zeros(z, 0.1, PerturbMode::kRandomInDisk, 1) ==
              perturb_zeros(z, 0.1, PerturbMode::kRandomInDisk, 2));
  CHECK(parse_perturb_mode("uniform-shift") == PerturbMode::kUniformShift);
  CHECK(to_string(PerturbMode::kRandomInDisk) == "random-in-disk");
  CHECK_THROWS_WITH(parse_perturb_mode("gaussian"), doctest::Contains("unknown perturbation mode"));
  CHECK_THROWS(perturb_zeros(z, -1.0, PerturbMode::kUniformShift, 0));
}

TEST_CASE("radius between moduli") {
  const ZeroSet z = integers(20);
  CHECK(radius_between(z, 15) == 15.5);
  CHECK_THROWS_WITH(radius_between(z, 20), doctest::Contains("fewer than 21"));
}

TEST_CASE("stability experiment") {
  const Potential v = Potential::poly_bump(1.0);
  std::vector<double> grid;
  for (int i = 0; i < 200; ++i) grid.push_back(10.0 * i / 199.0);
  const std::vector<double> deltas{1e-3, 1e-1, 1e-2};
  const StabilityTable t = stability_experiment(v, Rectangle(0, 62, -8, 8), deltas, 0.0, grid);
  REQUIRE(t.rows.size() == 4);
  CHECK(t.rows[0].delta == 1e-1);
  CHECK(t.rows[3].delta == 0.0);
  CHECK(t.rows[3].sup_diff == 0.0);
  CHECK(t.rows[3].n_diff == 0);
  for (std::size_t i = 0; i < 4; ++i) {
    REQUIRE(t.rows[i].ok);
    CHECK(t.rows[i].n_diff == 0);
    CHECK(t.rows[i].R >= std::abs(t.zeros[14].location));
    CHECK(t.rows[i].zero_sup_distance <= t.rows[i].delta * (1 + 1e-12));
    if (i > 0) CHECK(t.rows[i].sup_diff < t.rows[i - 1].sup_diff);
  }
  std::ostringstream os;
  write_stability_tsv(os, t);
  CHECK(os.str().rfind("delta\tsup_diff\tn_diff\tzero_sup_distance\tR\tK\tgrid_size\n", 0) == 0);

  CHECK_THROWS(stability_experiment(v, Rectangle(-1, 62, -8, 8), deltas, 0.0, grid));
  CHECK_THROWS(stability_experiment(v, Rectangle(0, 62, -8, 8), std::vector<double>{0.0}, 0.0, grid));
}
