#include "reslab/hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include <Eigen/QR>

#include "reslab/format.hpp"
#include "reslab/ftransform.hpp"
#include "reslab/quadrature.hpp"

namespace reslab {

namespace {

constexpr const char* kModule = "hadamard";
constexpr double kLogGuard = 700.0;

}  // namespace

TruncatedProduct build_product(const ZeroSet& z, double R, const Prefactor& pre) {
  if (!(R > 0.0)) throw Error(kModule, "truncation radius must be positive");
  if (pre.m < 0) throw Error(kModule, "root order m must be nonnegative");
  TruncatedProduct p;
  p.prefactor = pre;
  p.R = R;
  for (const Zero& e : z) {
    if (e.location == Complex(0.0)) {
      if (pre.m == 0) throw Error(kModule, "zero at origin with m = 0");
      continue;
    }
    if (std::abs(e.location) < R) {
      for (int k = 0; k < e.multiplicity; ++k) p.zeros.push_back(e.location);
    }
  }
  return p;
}

ProductValue eval_product(const TruncatedProduct& p, Complex z) {
  ProductValue out;
  for (const Complex& a : p.zeros) {
    if (z == a) {
      out.log_value = {-std::numeric_limits<double>::infinity(), 0.0};
      return out;
    }
  }
  const Prefactor& pre = p.prefactor;
  if (pre.c == Complex(0.0) || (pre.m > 0 && z == Complex(0.0))) {
    out.log_value = {-std::numeric_limits<double>::infinity(), 0.0};
    return out;
  }
  // Mantissa times exp(log_scale); the mantissa keeps the phase.
  Complex mantissa = pre.c * std::exp(kI * pre.kappa * z);
  double log_scale = 0.0;
  auto renormalize = [&] {
    const double a = std::abs(mantissa);
    if (a > 1e100 || a < 1e-100) {
      log_scale += std::log(a);
      mantissa /= a;
    }
  };
  for (int k = 0; k < pre.m; ++k) {
    mantissa *= z;
    renormalize();
  }
  for (const Complex& a : p.zeros) {
    mantissa *= 1.0 - z / a;
    renormalize();
  }
  const double log_mod = log_scale + std::log(std::abs(mantissa));
  out.log_value = {log_mod, std::arg(mantissa)};
  if (std::abs(log_mod) > kLogGuard) {
    out.scaled = true;
    return out;
  }
  out.value = mantissa * std::exp(log_scale);
  return out;
}

Prefactor fit_prefactor(std::span<const std::pair<Complex, Complex>> samples, const ZeroSet& z,
                        double R) {
  if (samples.size() < 3) throw Error(kModule, "prefactor fit needs at least 3 samples");
  const TruncatedProduct bare = build_product(z, R);

  std::vector<std::pair<Complex, Complex>> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first.real() < b.first.real(); });

  const auto n = static_cast<Eigen::Index>(sorted.size());
  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(2 * n, 3);
  Eigen::VectorXd rhs(2 * n);
  double prev_phase = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& [zi, target] = sorted[static_cast<std::size_t>(i)];
    const ProductValue pv = eval_product(bare, zi);
    if (target == Complex(0.0) || !std::isfinite(pv.log_value.real())) {
      throw Error(kModule, "prefactor sample at a zero");
    }
    const double log_mod = std::log(std::abs(target)) - pv.log_value.real();
    double phase = std::arg(target) - pv.log_value.imag();
    if (i > 0) phase -= 2.0 * kPi * std::round((phase - prev_phase) / (2.0 * kPi));
    prev_phase = phase;
    // log c + i kappa z: real part ln|c| - kappa Im z, imaginary arg c + kappa Re z
    design(2 * i, 0) = 1.0;
    design(2 * i, 2) = -zi.imag();
    rhs[2 * i] = log_mod;
    design(2 * i + 1, 1) = 1.0;
    design(2 * i + 1, 2) = zi.real();
    rhs[2 * i + 1] = phase;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 3) throw Error(kModule, "degenerate sample geometry");
  const Eigen::Vector3d x = qr.solve(rhs);
  Prefactor pre;
  pre.c = std::polar(std::exp(x[0]), x[1]);
  pre.kappa = x[2];
  return pre;
}

ConvergenceCurve convergence_curve(const ZeroSet& z_full, const Prefactor& pre, Complex z,
                                   std::span<const double> radii) {
  ConvergenceCurve out;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (i > 0 && !(radii[i] > radii[i - 1])) throw Error(kModule, "radii must be increasing");
    const Complex v = eval_product(build_product(z_full, radii[i], pre), z).value;
    out.radii.push_back(radii[i]);
    out.differences.push_back(i == 0 ? 0.0 : std::abs(v - out.values.back()));
    out.values.push_back(v);
  }
  return out;
}

CountDifference count_difference(const ZeroSet& z1, const ZeroSet& z2, double R, double K,
                                 const CountOptions& opt) {
  if (!(K > 0.0)) throw Error(kModule, "strip half-height K must be positive");
  const std::vector<Complex> a1 = build_product(z1, R).zeros;
  const std::vector<Complex> a2 = build_product(z2, R).zeros;

  auto log_derivative = [&](Complex z) {
    Complex s = 0.0;
    for (const Complex& a : a1) s += 1.0 / (z - a);
    for (const Complex& a : a2) s -= 1.0 / (z - a);
    return s;
  };

  const Rectangle nominal(0.0, R, -K, K);
  for (int attempt = 0; attempt <= opt.max_jitter; ++attempt) {
    const Rectangle r = jittered(nominal, attempt, opt.seed);
    const double floor = 1e-9 * std::max(1.0, r.diameter());
    bool near = false;
    for (const auto* set : {&a1, &a2}) {
      for (const Complex& a : *set) near = near || r.boundary_distance(a) < floor;
    }
    if (near) continue;

    QuadratureOptions q;
    q.abs_tol = 1e-10;
    q.max_panels = 1 << 17;
    const double lo_width = std::max(std::min(r.height(), 1.0), 0.05);
    auto seeds = [&](double length) {
      return static_cast<int>(std::clamp(std::ceil(length / lo_width), 4.0, 2048.0));
    };

    bool ok = true;
    auto side = [&](auto&& point, Complex dz, double lo, double hi) {
      q.initial_panels = seeds(hi - lo);
      auto res = integrate_adaptive<Complex>(
          [&](double t) { return log_derivative(point(t)) * dz; }, lo, hi, q);
      ok = ok && res.converged;
      return res.value;
    };
    Complex total = 0.0;
    total += side([&](double x) { return Complex(x, r.y_min); }, 1.0, r.x_min, r.x_max);
    total += side([&](double y) { return Complex(r.x_max, y); }, kI, r.y_min, r.y_max);
    total -= side([&](double x) { return Complex(x, r.y_max); }, 1.0, r.x_min, r.x_max);
    total -= side([&](double y) { return Complex(r.x_min, y); }, kI, r.y_min, r.y_max);
    if (!ok) continue;

    CountDifference out;
    out.raw = total / (2.0 * kPi * kI);
    out.n_diff = static_cast<int>(std::lround(out.raw.real()));
    out.rect = r;
    if (std::abs(out.raw - static_cast<double>(out.n_diff)) > opt.integer_tol) {
      throw Error(kModule, "contour value is not an integer: " + fmt15(out.raw.real()) + " " +
                               fmt15(out.raw.imag()) + "i");
    }
    return out;
  }
  throw BoundaryZeroError(kModule, "zero on the contour of S_R after jitter retries");
}

PerturbMode parse_perturb_mode(const std::string& name) {
  if (name == "uniform-shift") return PerturbMode::kUniformShift;
  if (name == "random-in-disk") return PerturbMode::kRandomInDisk;
  throw Error(kModule, "unknown perturbation mode '" + name + "'");
}

std::string to_string(PerturbMode mode) {
  return mode == PerturbMode::kUniformShift ? "uniform-shift" : "random-in-disk";
}

ZeroSet perturb_zeros(const ZeroSet& z, double delta, PerturbMode mode, std::uint64_t seed) {
  if (!(delta >= 0.0)) throw Error(kModule, "delta must be nonnegative");
  if (delta == 0.0) return z;
  const auto& e = z.entries();
  std::vector<Zero> out(e.begin(), e.end());
  if (mode == PerturbMode::kUniformShift) {
    for (Zero& x : out) x.location += delta;
    return ZeroSet(std::move(out));
  }

  std::mt19937_64 rng(seed);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<std::optional<Complex>> shift(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (shift[i]) continue;
    const Complex w = e[i].location;
    const double tiny = ZeroSet::kDefaultResolution * std::max(1.0, std::abs(w));
    if (std::abs(w.imag()) <= tiny) {
      shift[i] = Complex(delta * (2.0 * unit() - 1.0), 0.0);
      out[i].location = w.real();
      continue;
    }
    const Complex s = std::polar(delta * std::sqrt(unit()), 2.0 * kPi * unit());
    shift[i] = s;
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (!shift[j] && std::abs(e[j].location - std::conj(w)) <= tiny) {
        shift[j] = std::conj(s);
        break;
      }
    }
  }
  for (std::size_t i = 0; i < e.size(); ++i) out[i].location += *shift[i];
  return ZeroSet(std::move(out));
}

double radius_between(const ZeroSet& z, std::size_t n) {
  std::vector<double> moduli;
  for (const Zero& e : z) {
    const double m = std::abs(e.location);
    if (moduli.empty() || m - moduli.back() > ZeroSet::kDefaultResolution * std::max(1.0, m)) {
      moduli.push_back(m);
    }
  }
  if (n == 0 || moduli.size() < n + 1) {
    throw Error(kModule, "fewer than " + std::to_string(n + 1) + " distinct zero moduli");
  }
  return 0.5 * (moduli[n - 1] + moduli[n]);
}

StabilityTable stability_experiment(const Potential& v, const Rectangle& rect,
                                    std::span<const double> deltas, double R,
                                    std::span<const double> grid, const StabilityOptions& opt) {
  if (rect.x_min < 0.0) throw Error(kModule, "scan rectangle must satisfy x_min >= 0");
  if (grid.size() < 3) throw Error(kModule, "grid needs at least 3 points");
  for (double d : deltas) {
    if (!(d > 0.0)) throw Error(kModule, "deltas must be positive");
  }

  StabilityTable table;
  LocateOptions lo;
  lo.tol = opt.tol;
  lo.seed = opt.seed;
  auto F = [&](Complex z) { return fourier_pair(v, z); };
  table.zeros = locate_zeros(F, rect, opt.tol, lo).mirrored();

  if (!(R > 0.0)) R = radius_between(table.zeros, 15);

  std::vector<std::pair<Complex, Complex>> samples;
  for (double x : grid) samples.emplace_back(x, F(x));
  table.prefactor = fit_prefactor(samples, table.zeros, R);
  const TruncatedProduct p1 = build_product(table.zeros, R, table.prefactor);

  double K = 1.0;
  for (const Complex& a : p1.zeros) K = std::max(K, std::abs(a.imag()) + 1.0);
  if (opt.K) K = *opt.K;

  std::vector<double> sorted(deltas.begin(), deltas.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  sorted.push_back(0.0);

  CountOptions co;
  co.seed = opt.seed;
  for (double delta : sorted) {
    StabilityRow row;
    row.delta = delta;
    row.R = R;
    row.K = K;
    row.grid_size = grid.size();
    try {
      const ZeroSet z2 = perturb_zeros(table.zeros, delta, opt.mode, opt.seed);
      const TruncatedProduct p2 = build_product(z2, R, fit_prefactor(samples, z2, R));
      for (double x : grid) {
        const ProductValue a = eval_product(p1, x);
        const ProductValue b = eval_product(p2, x);
        if (a.scaled || b.scaled) throw Error(kModule, "product overflow on the grid");
        row.sup_diff = std::max(row.sup_diff, std::abs(a.value - b.value));
      }
      row.n_diff = count_difference(table.zeros, z2, R, K, co).n_diff;
      row.zero_sup_distance = match_zero_sets(table.zeros, z2).sup_distance;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    table.rows.push_back(row);
  }
  return table;
}

void write_stability_tsv(std::ostream& os, const StabilityTable& table) {
  os << "delta\tsup_diff\tn_diff\tzero_sup_distance\tR\tK\tgrid_size\n";
  for (const StabilityRow& r : table.rows) {
    os << fmt15(r.delta) << '\t';
    if (r.ok) {
      os << fmt15(r.sup_diff) << '\t' << r.n_diff << '\t' << fmt15(r.zero_sup_distance);
    } else {
      os << "nan\tnan\tnan";
    }
    os << '\t' << fmt15(r.R) << '\t' << fmt15(r.K) << '\t' << r.grid_size << '\n';
  }
  for (const StabilityRow& r : table.rows) {
    if (!r.ok) os << "# failed delta=" << fmt15(r.delta) << ": " << r.error << '\n';
  }
}

}  // namespace reslab
