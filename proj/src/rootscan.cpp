#include "reslab/rootscan.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "reslab/format.hpp"

namespace reslab {

namespace {

constexpr const char* kModule = "rootscan";
constexpr double kQuarterTurn = 0.5 * kPi;

// Running phase along a contour. Modulus extremes are kept per coarse
// segment, so the floor is relative to the local scale of |f|.
struct PhaseTracker {
  double phase = 0.0;
  double max_abs = 0.0;
  double min_abs = std::numeric_limits<double>::infinity();
  bool unresolved = false;

  void close_segment(double floor) {
    if (!(min_abs > floor * max_abs)) unresolved = true;
    max_abs = 0.0;
    min_abs = std::numeric_limits<double>::infinity();
  }

  void see(Complex v) {
    const double a = std::abs(v);
    if (!std::isfinite(a)) {
      unresolved = true;
      return;
    }
    max_abs = std::max(max_abs, a);
    min_abs = std::min(min_abs, a);
  }
};

double phase_step(Complex from, Complex to) {
  if (from == Complex{} || to == Complex{}) return std::numeric_limits<double>::quiet_NaN();
  return std::arg(to / from);
}

// Bisects [a, b] until both halves and the whole advance the phase by less
// than a quarter turn. Param is an integer lattice coordinate or a double.
template <typename Param, typename Eval, typename Mid>
double refine_phase(Param a, Param b, Complex fa, Complex fb, Eval& eval, Mid mid,
                    PhaseTracker& tracker, int depth) {
  const std::optional<Param> m = mid(a, b);
  if (!m || depth > 200) {
    const double d = phase_step(fa, fb);
    if (!(std::abs(d) < kQuarterTurn)) tracker.unresolved = true;
    return std::isfinite(d) ? d : 0.0;
  }
  const Complex fm = eval(*m);
  tracker.see(fm);
  const double d1 = phase_step(fa, fm);
  const double d2 = phase_step(fm, fb);
  if (!std::isfinite(d1) || !std::isfinite(d2)) {
    tracker.unresolved = true;
    return 0.0;
  }
  if (std::abs(d1) < kQuarterTurn && std::abs(d2) < kQuarterTurn &&
      std::abs(d1 + d2) < kQuarterTurn) {
    return d1 + d2;
  }
  return refine_phase(a, *m, fa, fm, eval, mid, tracker, depth + 1) +
         refine_phase(*m, b, fm, fb, eval, mid, tracker, depth + 1);
}

int finish_winding(const PhaseTracker& t) {
  if (t.unresolved) {
    throw BoundaryZeroError(kModule, "zero too close to the contour");
  }
  const double turns = t.phase / (2.0 * kPi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 0.25) {
    throw BoundaryZeroError(kModule, "winding number is not an integer");
  }
  return static_cast<int>(rounded);
}

// Memoized f on a dyadic lattice over the scanned rectangle, so the shared
// edges of neighbouring cells reuse evaluations.
class LatticeSampler {
 public:
  static constexpr int kBits = 30;
  static constexpr std::int64_t kSpan = std::int64_t{1} << kBits;

  LatticeSampler(const ComplexFunction& f, const Rectangle& rect)
      : f_(f), rect_(rect), dx_(rect.width() / kSpan), dy_(rect.height() / kSpan) {}

  Complex point(std::int64_t i, std::int64_t j) const {
    const double x = (i == kSpan) ? rect_.x_max : rect_.x_min + dx_ * static_cast<double>(i);
    const double y = (j == kSpan) ? rect_.y_max : rect_.y_min + dy_ * static_cast<double>(j);
    return {x, y};
  }

  Complex operator()(std::int64_t i, std::int64_t j) {
    const std::uint64_t key = (static_cast<std::uint64_t>(i) << 31) | static_cast<std::uint64_t>(j);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const Complex v = f_(point(i, j));
    cache_.emplace(key, v);
    return v;
  }

  double dx() const { return dx_; }
  double dy() const { return dy_; }
  std::size_t evaluations() const { return cache_.size(); }
  const Rectangle& rect() const { return rect_; }

 private:
  const ComplexFunction& f_;
  Rectangle rect_;
  double dx_, dy_;
  std::unordered_map<std::uint64_t, Complex> cache_;
};

struct Cell {
  std::int64_t i0, i1, j0, j1;
};

// Phase advance along one axis-aligned side from coordinate `from` to `to`
// with the other coordinate fixed.
double side_phase(LatticeSampler& s, bool horizontal, std::int64_t fixed, std::int64_t from,
                  std::int64_t to, const WindOptions& opt, PhaseTracker& tracker) {
  auto eval = [&](std::int64_t c) { return horizontal ? s(c, fixed) : s(fixed, c); };
  auto mid = [](std::int64_t a, std::int64_t b) -> std::optional<std::int64_t> {
    if (std::abs(b - a) <= 1) return std::nullopt;
    return a + (b - a) / 2;
  };

  const std::int64_t lo = std::min(from, to);
  const std::int64_t hi = std::max(from, to);
  const double unit = horizontal ? s.dx() : s.dy();
  const double length = static_cast<double>(hi - lo) * unit;
  const double segments =
      std::max<double>(opt.initial_segments, std::ceil(length / opt.max_step));
  // Dyadic step so neighbouring cells sample identical lattice points.
  std::int64_t step = 1;
  while (step * 2 <= static_cast<double>(hi - lo) / segments) step *= 2;

  std::vector<std::int64_t> coords{lo};
  for (std::int64_t c = (lo / step + 1) * step; c < hi; c += step) coords.push_back(c);
  coords.push_back(hi);
  if (from > to) std::reverse(coords.begin(), coords.end());

  double phase = 0.0;
  Complex prev = eval(coords.front());
  for (std::size_t k = 1; k < coords.size(); ++k) {
    const Complex next = eval(coords[k]);
    tracker.see(prev);
    tracker.see(next);
    phase += refine_phase(coords[k - 1], coords[k], prev, next, eval, mid, tracker, 0);
    tracker.close_segment(opt.boundary_floor);
    prev = next;
  }
  return phase;
}

int wind_count_cell(LatticeSampler& s, const Cell& c, const WindOptions& opt) {
  PhaseTracker t;
  t.phase += side_phase(s, true, c.j0, c.i0, c.i1, opt, t);
  t.phase += side_phase(s, false, c.i1, c.j0, c.j1, opt, t);
  t.phase += side_phase(s, true, c.j1, c.i1, c.i0, opt, t);
  t.phase += side_phase(s, false, c.i0, c.j1, c.j0, opt, t);
  return finish_winding(t);
}

Rectangle cell_rect(const LatticeSampler& s, const Cell& c) {
  const Complex lo = s.point(c.i0, c.j0);
  const Complex hi = s.point(c.i1, c.j1);
  return {lo.real(), hi.real(), lo.imag(), hi.imag()};
}

// Muller iteration seeded inside a cell. Stops on a relative step below
// tol, or, once steps are small, when |f| stops improving (noise floor of
// quadrature- or ODE-backed functions). Returns nullopt if the iterate
// leaves the enlarged cell or fails to settle.
std::optional<Complex> muller(const ComplexFunction& f, const Rectangle& cell, double tol,
                              std::size_t& evaluations) {
  const Complex c = cell.center();
  const double hw = 0.5 * cell.width();
  const double hh = 0.5 * cell.height();
  const Rectangle fence = cell.inflated(0.5 * std::max(hw, hh));

  Complex x0 = c + Complex(-0.5 * hw, -0.25 * hh);
  Complex x1 = c + Complex(0.25 * hw, 0.5 * hh);
  Complex x2 = c;
  Complex f0 = f(x0), f1 = f(x1), f2 = f(x2);
  evaluations += 3;
  Complex best = x2;
  double best_abs = std::abs(f2);
  int stalled = 0;
  for (int iter = 0; iter < 100; ++iter) {
    if (f2 == Complex{}) return x2;
    const Complex h1 = x1 - x0;
    const Complex h2 = x2 - x1;
    const Complex d1 = (f1 - f0) / h1;
    const Complex d2 = (f2 - f1) / h2;
    const Complex a = (d2 - d1) / (h2 + h1);
    const Complex b = a * h2 + d2;
    const Complex disc = std::sqrt(b * b - 4.0 * a * f2);
    const Complex den = std::abs(b + disc) >= std::abs(b - disc) ? b + disc : b - disc;
    const Complex dx = (den == Complex{}) ? Complex(1e-3 * hw, 0.0) : -2.0 * f2 / den;
    if (!std::isfinite(dx.real()) || !std::isfinite(dx.imag())) break;
    const Complex x3 = x2 + dx;
    if (!fence.contains(x3)) return std::nullopt;
    const Complex f3 = f(x3);
    ++evaluations;
    x0 = x1;
    x1 = x2;
    x2 = x3;
    f0 = f1;
    f1 = f2;
    f2 = f3;
    const double scale = std::max(1.0, std::abs(x3));
    if (std::abs(dx) <= tol * scale) return x3;
    if (std::abs(f3) < best_abs) {
      best_abs = std::abs(f3);
      best = x3;
      stalled = 0;
    } else if (std::abs(dx) <= 1e-6 * scale && ++stalled >= 4) {
      return best;
    }
    if (x2 == x1 || x1 == x0) break;
  }
  if (stalled > 0) return best;
  return std::nullopt;
}

class Locator {
 public:
  Locator(const ComplexFunction& f, const Rectangle& rect, const LocateOptions& opt)
      : f_(f), opt_(opt), sampler_(f, rect) {}

  int root_count() {
    return wind_count_cell(sampler_, {0, LatticeSampler::kSpan, 0, LatticeSampler::kSpan},
                           opt_.wind);
  }

  void run(int count) {
    process({0, LatticeSampler::kSpan, 0, LatticeSampler::kSpan}, count);
  }

  std::vector<Zero>& found() { return found_; }
  std::vector<std::string>& failures() { return failures_; }
  std::size_t evaluations() const { return sampler_.evaluations() + extra_evaluations_; }

 private:
  bool tiny(const Cell& c, const Rectangle& r) const {
    const double size = std::max(r.width(), r.height());
    return (c.i1 - c.i0) <= 2 || (c.j1 - c.j0) <= 2 ||
           size <= 4.0 * opt_.resolution * std::max(1.0, std::abs(r.center()));
  }

  void fail(const Rectangle& r, int count, const std::string& why) {
    std::ostringstream os;
    os << why << " in [" << fmt15(r.x_min) << ", " << fmt15(r.x_max) << "] x i[" << fmt15(r.y_min)
       << ", " << fmt15(r.y_max) << "] holding " << count << " zero(s)";
    failures_.push_back(os.str());
  }

  // Small box around z: does it hold exactly `count` zeros?
  bool cluster_confirmed(Complex z, int count, double half_width) {
    const Rectangle box(z.real() - half_width, z.real() + half_width, z.imag() - half_width,
                        z.imag() + half_width);
    try {
      return wind_count(f_, box, opt_.wind) == count;
    } catch (const BoundaryZeroError&) {
      return false;
    }
  }

  void process(const Cell& c, int count) {
    if (count <= 0) return;
    const Rectangle r = cell_rect(sampler_, c);

    if (count == 1) {
      if (auto z = muller(f_, r, opt_.tol, extra_evaluations_);
          z && r.inflated(opt_.resolution * std::max(1.0, std::abs(*z))).contains(*z)) {
        found_.push_back({*z, 1});
        return;
      }
    } else {
      const double radius = 4.0 * opt_.resolution * std::max(1.0, std::abs(r.center()));
      if (auto z = muller(f_, r, opt_.tol, extra_evaluations_);
          z && r.contains(*z) && cluster_confirmed(*z, count, radius)) {
        found_.push_back({*z, count});
        return;
      }
    }

    if (tiny(c, r)) {
      // Unresolvable cluster: report it at the cell centre.
      if (count == 1) {
        fail(r, count, "refinement did not converge");
        return;
      }
      found_.push_back({r.center(), count});
      return;
    }
    subdivide(c, r, count);
  }

  void subdivide(const Cell& c, const Rectangle& r, int count) {
    const std::int64_t wi = c.i1 - c.i0;
    const std::int64_t wj = c.j1 - c.j0;
    static constexpr int kOffsets[] = {0, 1, -1, 2, -2, 3, -3, 4, -4};
    for (int attempt = 0; attempt <= opt_.max_jitter && attempt < 9; ++attempt) {
      const std::int64_t di = (wi / 32) * kOffsets[attempt];
      const std::int64_t dj = (wj / 29) * kOffsets[attempt];
      const std::int64_t im = c.i0 + wi / 2 + di;
      const std::int64_t jm = c.j0 + wj / 2 + dj;
      if (im <= c.i0 || im >= c.i1 || jm <= c.j0 || jm >= c.j1) continue;
      const Cell kids[4] = {{c.i0, im, c.j0, jm}, {im, c.i1, c.j0, jm}, {c.i0, im, jm, c.j1},
                            {im, c.i1, jm, c.j1}};
      int counts[4];
      bool ok = true;
      try {
        for (int k = 0; k < 4; ++k) {
          counts[k] = wind_count_cell(sampler_, kids[k], opt_.wind);
          if (counts[k] < 0) ok = false;
        }
      } catch (const BoundaryZeroError&) {
        ok = false;
      }
      if (!ok || counts[0] + counts[1] + counts[2] + counts[3] != count) continue;
      for (int k = 0; k < 4; ++k) process(kids[k], counts[k]);
      return;
    }
    fail(r, count, "no admissible subdivision");
  }

  const ComplexFunction& f_;
  LocateOptions opt_;
  LatticeSampler sampler_;
  std::vector<Zero> found_;
  std::vector<std::string> failures_;
  std::size_t extra_evaluations_ = 0;
};

}  // namespace

Rectangle::Rectangle(double x0, double x1, double y0, double y1)
    : x_min(x0), x_max(x1), y_min(y0), y_max(y1) {
  if (!(x0 < x1) || !(y0 < y1)) throw Error(kModule, "degenerate rectangle");
}

double Rectangle::diameter() const { return std::hypot(width(), height()); }

bool Rectangle::contains(Complex z) const {
  return z.real() >= x_min && z.real() <= x_max && z.imag() >= y_min && z.imag() <= y_max;
}

double Rectangle::boundary_distance(Complex z) const {
  const double x = z.real(), y = z.imag();
  if (contains(z)) return std::min({x - x_min, x_max - x, y - y_min, y_max - y});
  const double dx = std::max({x_min - x, 0.0, x - x_max});
  const double dy = std::max({y_min - y, 0.0, y - y_max});
  return std::hypot(dx, dy);
}

Rectangle Rectangle::inflated(double d) const {
  return {x_min - d, x_max + d, y_min - d, y_max + d};
}

bool canonical_less(Complex a, Complex b) {
  const double ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma < mb;
  return std::arg(a) < std::arg(b);
}

ZeroSet::ZeroSet(std::vector<Zero> entries, double resolution) {
  for (const Zero& z : entries) {
    if (z.multiplicity < 1) throw Error(kModule, "multiplicity must be positive");
  }
  std::sort(entries.begin(), entries.end(),
            [](const Zero& a, const Zero& b) { return canonical_less(a.location, b.location); });
  std::vector<bool> used(entries.size(), false);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (used[i]) continue;
    Zero merged = entries[i];
    // Equal-modulus neighbours are adjacent in this order, so scanning
    // forward while moduli stay within the radius finds every partner.
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const double radius = resolution * std::max(std::abs(entries[i].location),
                                                   std::abs(entries[j].location));
      if (std::abs(entries[j].location) - std::abs(entries[i].location) > radius) break;
      if (!used[j] && std::abs(entries[j].location - entries[i].location) <= radius) {
        merged.multiplicity += entries[j].multiplicity;
        used[j] = true;
      }
    }
    entries_.push_back(merged);
  }
}

int ZeroSet::total_multiplicity() const {
  return std::accumulate(entries_.begin(), entries_.end(), 0,
                         [](int acc, const Zero& z) { return acc + z.multiplicity; });
}

std::vector<Complex> ZeroSet::expanded() const {
  std::vector<Complex> out;
  for (const Zero& z : entries_) out.insert(out.end(), static_cast<std::size_t>(z.multiplicity), z.location);
  return out;
}

ZeroSet ZeroSet::mirrored() const {
  std::vector<Zero> all = entries_;
  for (const Zero& z : entries_) all.push_back({-z.location, z.multiplicity});
  return ZeroSet(std::move(all));
}

bool ZeroSet::operator==(const ZeroSet& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].location != other.entries_[i].location ||
        entries_[i].multiplicity != other.entries_[i].multiplicity) {
      return false;
    }
  }
  return true;
}

int wind_count(const ComplexFunction& f, const Rectangle& rect, const WindOptions& opt) {
  LatticeSampler sampler(f, rect);
  return wind_count_cell(sampler, {0, LatticeSampler::kSpan, 0, LatticeSampler::kSpan}, opt);
}

int wind_count_path(const ComplexFunction& f, const std::function<Complex(double)>& path,
                    const WindOptions& opt, int initial_segments) {
  PhaseTracker t;
  auto eval = [&](double s) { return f(path(s)); };
  auto mid = [](double a, double b) -> std::optional<double> {
    if (std::abs(b - a) < 1e-13) return std::nullopt;
    return 0.5 * (a + b);
  };
  const int n = std::max(4, initial_segments);
  Complex prev = eval(0.0);
  const Complex first = prev;
  for (int k = 1; k <= n; ++k) {
    const double s = static_cast<double>(k) / n;
    const Complex next = (k == n) ? first : eval(s);
    t.see(prev);
    t.see(next);
    t.phase += refine_phase(static_cast<double>(k - 1) / n, s, prev, next, eval, mid, t, 0);
    t.close_segment(opt.boundary_floor);
    prev = next;
  }
  return finish_winding(t);
}

Rectangle jittered(const Rectangle& rect, int attempt, std::uint64_t seed) {
  if (attempt <= 0) return rect;
  std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt)));
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const double base = attempt * 1e-6 * rect.diameter();
  auto move = [&] { return (unit() < 0.5 ? -1.0 : 1.0) * base * (0.5 + unit()); };
  return {rect.x_min - move(), rect.x_max + move(), rect.y_min - move(), rect.y_max + move()};
}

LocateResult locate_zeros_report(const ComplexFunction& f, const Rectangle& rect,
                                 const LocateOptions& opt) {
  LocateResult result;
  for (int attempt = 0; attempt <= opt.max_jitter; ++attempt) {
    const Rectangle scan = jittered(rect, attempt, opt.seed);
    Locator locator(f, scan, opt);
    int count = 0;
    try {
      count = locator.root_count();
    } catch (const BoundaryZeroError&) {
      continue;
    }
    if (count < 0) throw Error(kModule, "negative winding count; is f analytic in the rectangle?");
    locator.run(count);
    result.boundary_count = count;
    result.rect = scan;
    result.evaluations = locator.evaluations();
    result.failures = std::move(locator.failures());
    result.zeros = ZeroSet(std::move(locator.found()), opt.resolution);
    return result;
  }
  throw BoundaryZeroError(kModule, "zero on the boundary after " + std::to_string(opt.max_jitter) +
                                       " jitter retries");
}

ZeroSet locate_zeros(const ComplexFunction& f, const Rectangle& rect, double tol,
                     const LocateOptions& opt) {
  LocateOptions o = opt;
  o.tol = tol;
  LocateResult r = locate_zeros_report(f, rect, o);
  if (!r.failures.empty()) throw Error(kModule, r.failures.front());
  return std::move(r.zeros);
}

ZeroMatch match_zero_sets(const ZeroSet& z1, const ZeroSet& z2) {
  const std::vector<Complex> a = z1.expanded();
  const std::vector<Complex> b = z2.expanded();
  if (a.size() != b.size()) {
    throw Error(kModule, "cardinality mismatch (" + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()) + ")");
  }
  ZeroMatch out;
  std::size_t start = 0;
  while (start < a.size()) {
    std::size_t stop = start + 1;
    const double m0 = std::abs(a[start]);
    while (stop < a.size() && std::abs(a[stop]) - m0 <= ZeroSet::kDefaultResolution * std::max(m0, 1.0)) {
      ++stop;
    }
    std::vector<std::size_t> perm(stop - start);
    std::iota(perm.begin(), perm.end(), start);
    if (perm.size() > 1 && perm.size() <= 7) {
      std::vector<std::size_t> best = perm;
      double best_cost = std::numeric_limits<double>::infinity();
      do {
        double cost = 0.0;
        for (std::size_t k = 0; k < perm.size(); ++k) {
          cost = std::max(cost, std::abs(a[start + k] - b[perm[k]]));
        }
        if (cost < best_cost) {
          best_cost = cost;
          best = perm;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      perm = best;
    } else if (perm.size() > 7) {
      // Greedy nearest partner for long runs.
      std::vector<bool> taken(perm.size(), false);
      for (std::size_t k = 0; k < perm.size(); ++k) {
        std::size_t pick = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t q = 0; q < perm.size(); ++q) {
          const double d = std::abs(a[start + k] - b[start + q]);
          if (!taken[q] && d < best) {
            best = d;
            pick = q;
          }
        }
        taken[pick] = true;
        perm[k] = start + pick;
      }
    }
    for (std::size_t k = 0; k < perm.size(); ++k) {
      out.pairs.emplace_back(a[start + k], b[perm[k]]);
      out.sup_distance = std::max(out.sup_distance, std::abs(a[start + k] - b[perm[k]]));
    }
    start = stop;
  }
  return out;
}

CartwrightStats cartwright_stats(const ZeroSet& z, std::span<const double> radii, double eps_angle) {
  if (z.empty()) throw Error(kModule, "cartwright statistics need a nonempty zero set");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) throw Error(kModule, "radii must be increasing");
  }
  CartwrightStats s;
  for (double r : radii) {
    int right = 0, left = 0, all = 0;
    Complex sum{};
    for (const Zero& e : z) {
      if (!(std::abs(e.location) < r)) continue;
      all += e.multiplicity;
      sum += static_cast<double>(e.multiplicity) / e.location;
      const double arg = std::arg(e.location);
      if (std::abs(arg) < eps_angle) {
        right += e.multiplicity;
      } else if (kPi - std::abs(arg) < eps_angle) {
        left += e.multiplicity;
      }
    }
    s.radii.push_back(r);
    s.right_density.push_back(right / r);
    s.left_density.push_back(left / r);
    s.density.push_back((right + left) / r);
    s.off_axis_fraction.push_back(all == 0 ? 0.0 : static_cast<double>(all - right - left) / all);
    s.partial_sums.push_back(sum);
  }
  return s;
}

void write_zero_set(std::ostream& os, const ZeroSet& z, const ZeroSetHeader& header) {
  os << "# zeroset v1\n";
  os << "# source: " << header.source << "\n";
  if (header.rect) {
    os << "# rect: " << fmt15(header.rect->x_min) << " " << fmt15(header.rect->x_max) << " "
       << fmt15(header.rect->y_min) << " " << fmt15(header.rect->y_max) << "\n";
  }
  if (header.tol) os << "# tol: " << fmt15(*header.tol) << "\n";
  for (const std::string& note : header.notes) os << "# " << note << "\n";
  os << "# columns: re im multiplicity\n";
  for (const Zero& e : z) {
    os << fmt15(e.location.real()) << " " << fmt15(e.location.imag()) << " " << e.multiplicity << "\n";
  }
}

ZeroSet read_zero_set(std::istream& is) {
  std::vector<Zero> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    double re = 0.0, im = 0.0;
    int mult = 0;
    if (!(fields >> re >> im >> mult) || mult < 1) {
      throw Error(kModule, "zero set line " + std::to_string(line_no) + ": expected 're im multiplicity'");
    }
    entries.push_back({{re, im}, mult});
  }
  return ZeroSet(std::move(entries), 0.0);
}

}  // namespace reslab
