#include "reslab/dickson.hpp"

#include <algorithm>
#include <cmath>

namespace reslab {

namespace {

constexpr const char* kModule = "dickson";

double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

// Counterclockwise hull corners starting from the lexicographically smallest
// point; collinear points are dropped.
std::vector<Complex> hull_corners(std::vector<Complex> pts, double tol) {
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  const double merge = std::sqrt(tol);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [&](Complex a, Complex b) { return std::abs(a - b) <= merge; }),
            pts.end());
  if (pts.size() < 2) return pts;
  std::vector<Complex> h;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t base = h.size();
    for (const Complex& p : pts) {
      while (h.size() >= base + 2 && cross(h[h.size() - 2], h.back(), p) <= tol) h.pop_back();
      h.push_back(p);
    }
    h.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  return h;
}

double edge_angle(Complex from, Complex to) {
  double phi = std::arg(from - to);
  if (phi < -0.5 * kPi) phi += 2.0 * kPi;
  return phi;
}

Complex int_pow(Complex z, int m) {
  Complex r = 1.0;
  for (int i = 0; i < m; ++i) r *= z;
  return r;
}

}  // namespace

ExpPolynomial::ExpPolynomial(std::vector<ExpTerm> terms, double r0)
    : terms_(std::move(terms)), r0_(r0) {
  if (terms_.size() < 2) throw Error(kModule, "an exponential polynomial needs at least 2 terms");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].A == Complex(0.0)) throw Error(kModule, "coefficient A must be nonzero");
    if (terms_[i].m < 0) throw Error(kModule, "powers m must be nonnegative");
    for (std::size_t j = 0; j < i; ++j) {
      if (terms_[i].omega == terms_[j].omega) throw Error(kModule, "frequencies must be distinct");
    }
  }
  if (r0_ < 0.0) throw Error(kModule, "r0 must be nonnegative");
}

Complex ExpPolynomial::operator()(Complex z) const {
  Complex sum = 0.0;
  for (const ExpTerm& t : terms_) {
    Complex factor = 1.0;
    if (t.epsilon) factor += t.epsilon(z);
    sum += t.A * int_pow(z, t.m) * factor * std::exp(t.omega * z);
  }
  return sum;
}

double ExpPolynomial::max_frequency() const {
  double r = 0.0;
  for (const ExpTerm& t : terms_) r = std::max(r, std::abs(t.omega));
  return r;
}

int ExpPolynomial::max_power() const {
  int r = 0;
  for (const ExpTerm& t : terms_) r = std::max(r, t.m);
  return r;
}

ExpPolynomial model_exp_polynomial() {
  return ExpPolynomial({{1.0, 0, {0.0, 2.0}, {}}, {0.5, 0, 0.0, {}}, {1.0, 0, {0.0, -2.0}, {}}});
}

const DicksonSegment& DicksonGeometry::segment(int k, int j) const {
  if (k < 1 || k > static_cast<int>(edges.size())) throw Error(kModule, "edge index out of range");
  const auto& segs = edges[static_cast<std::size_t>(k - 1)].segments;
  if (j < 1 || j > static_cast<int>(segs.size())) throw Error(kModule, "segment index out of range");
  return segs[static_cast<std::size_t>(j - 1)];
}

DicksonGeometry dickson_geometry(const ExpPolynomial& p) {
  const auto& terms = p.terms();
  std::vector<Complex> conj_w;
  double scale = 1.0;
  for (const ExpTerm& t : terms) {
    conj_w.push_back(std::conj(t.omega));
    scale = std::max(scale, std::abs(t.omega));
  }
  const double tol = 1e-12 * scale * scale;

  DicksonGeometry g;
  g.vertices = hull_corners(conj_w, tol);
  if (g.vertices.size() < 2) throw Error(kModule, "frequency hull is a single point");

  const std::size_t nv = g.vertices.size();
  for (std::size_t i = 0; i < nv; ++i) {
    DicksonEdge edge;
    edge.k = static_cast<int>(i) + 1;
    edge.from = g.vertices[i];
    edge.to = g.vertices[(i + 1) % nv];
    edge.phi = edge_angle(edge.from, edge.to);
    edge.e = std::polar(1.0, edge.phi);

    // Edge coordinates: u along from -> to, v = m (tau is pushed outward by m).
    const double length = std::abs(edge.to - edge.from);
    struct Pt {
      double u, v;
      int term;
    };
    std::vector<Pt> on;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const Complex rel = (conj_w[t] - edge.from) / (-edge.e);
      if (std::abs(rel.imag()) > 1e-12 * scale) continue;
      if (rel.real() < -1e-12 * scale || rel.real() > length + 1e-12 * scale) continue;
      on.push_back({rel.real(), static_cast<double>(terms[t].m), static_cast<int>(t)});
    }
    std::sort(on.begin(), on.end(), [](const Pt& a, const Pt& b) { return a.u < b.u; });

    // Outer (upper) chain, collinear points kept as vertices.
    std::vector<Pt> chain;
    for (const Pt& q : on) {
      while (chain.size() >= 2) {
        const Pt& a = chain[chain.size() - 2];
        const Pt& b = chain.back();
        const double c = (b.u - a.u) * (q.v - a.v) - (b.v - a.v) * (q.u - a.u);
        if (c > 1e-12 * scale) {
          chain.pop_back();
        } else {
          break;
        }
      }
      chain.push_back(q);
    }

    auto tau = [&](const Pt& q) {
      return conj_w[static_cast<std::size_t>(q.term)] + kI * q.v * edge.e;
    };
    for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
      DicksonSegment s;
      s.k = edge.k;
      s.j = static_cast<int>(j) + 1;
      s.term_from = chain[j].term;
      s.term_to = chain[j + 1].term;
      s.tau_from = tau(chain[j]);
      s.tau_to = tau(chain[j + 1]);
      const Complex w_from = terms[static_cast<std::size_t>(s.term_from)].omega;
      const Complex w_to = terms[static_cast<std::size_t>(s.term_to)].omega;
      const Complex denom = (w_from - w_to) * edge.e;
      s.mu = (terms[static_cast<std::size_t>(s.term_from)].m -
              terms[static_cast<std::size_t>(s.term_to)].m) /
             denom.real();
      s.frequency_gap = std::abs(w_to - w_from);
      s.n = 0;
      for (const Pt& q : on) {
        const Complex tq = tau(q);
        const Complex d = s.tau_to - s.tau_from;
        const double along = ((tq - s.tau_from) / d).real();
        const double off = std::abs(((tq - s.tau_from) / d).imag()) * std::abs(d);
        if (off <= 1e-12 * scale && along >= -1e-12 && along <= 1.0 + 1e-12) ++s.n;
      }
      edge.segments.push_back(s);
    }
    g.edges.push_back(std::move(edge));
  }
  return g;
}

bool in_strip(const DicksonGeometry& g, int k, int j, Complex z, double H) {
  const DicksonSegment& s = g.segment(k, j);
  const Complex w = z / g.edges[static_cast<std::size_t>(k - 1)].e;
  if (w.imag() < 0.0) return false;
  const double log_mod = std::abs(z) > 0.0 ? std::log(std::abs(z)) : 0.0;
  return std::abs(w.real() + s.mu * log_mod) <= H;
}

std::optional<std::pair<int, int>> strip_membership(const DicksonGeometry& g, Complex z,
                                                    double H) {
  for (const DicksonEdge& edge : g.edges) {
    for (const DicksonSegment& s : edge.segments) {
      if (in_strip(g, s.k, s.j, z, H)) return std::make_pair(s.k, s.j);
    }
  }
  return std::nullopt;
}

double default_alpha0(const ExpPolynomial& p) { return 20.0 * (1.0 + p.max_frequency()); }

double default_alpha0(const DicksonGeometry& g) {
  double r = 0.0;
  for (const Complex& v : g.vertices) r = std::max(r, std::abs(v));
  return 20.0 * (1.0 + r);
}

double default_strip_height(const ExpPolynomial& p, double alpha0) {
  return 2.0 + p.max_power() * std::log(alpha0);
}

Complex strip_point(const DicksonGeometry& g, int k, int j, double a, double b) {
  const DicksonEdge& edge = g.edges.at(static_cast<std::size_t>(k - 1));
  const double mu = g.segment(k, j).mu;
  Complex z = edge.e * Complex(b, a);
  if (mu == 0.0) return z;
  for (int it = 0; it < 200; ++it) {
    const double arg = edge.phi + std::arg(z / edge.e);
    const Complex next = edge.e * Complex(b - mu * std::log(std::abs(z)), a - mu * arg);
    const double step = std::abs(next - z);
    z = next;
    if (step <= 1e-15 * std::abs(z)) break;
  }
  return z;
}

CurvilinearCount curvilinear_count(const ComplexFunction& f, const DicksonGeometry& g, int k,
                                   int j, double alpha, double s, double H,
                                   const CurvilinearOptions& opt) {
  if (!(s > 0.0) || !(H > 0.0)) throw Error(kModule, "s and H must be positive");
  const DicksonSegment& seg = g.segment(k, j);

  CurvilinearCount out;
  out.expected = s * seg.frequency_gap / (2.0 * kPi);
  out.bound = seg.n - 1 + opt.epsilon;

  const Rectangle nominal(alpha, alpha + s, -H, H);
  for (int attempt = 0; attempt <= opt.max_jitter; ++attempt) {
    const Rectangle r = jittered(nominal, attempt, opt.seed);
    // Clockwise in (a, b) is counterclockwise in z.
    const Complex corners[4] = {{r.x_min, r.y_min}, {r.x_min, r.y_max}, {r.x_max, r.y_max},
                                {r.x_max, r.y_min}};
    const double lengths[4] = {r.height(), r.width(), r.height(), r.width()};
    const double perimeter = 2.0 * (r.width() + r.height());
    auto path = [&](double t) {
      double d = t * perimeter;
      int side = 0;
      while (side < 3 && d > lengths[side]) d -= lengths[side++];
      const Complex ab = corners[side] + (corners[(side + 1) % 4] - corners[side]) *
                                             (d / lengths[side]);
      return strip_point(g, k, j, ab.real(), ab.imag());
    };
    const int segments =
        std::max(128, static_cast<int>(std::ceil(perimeter / opt.wind.max_step)));
    try {
      out.count = wind_count_path(f, path, opt.wind, segments);
      out.alpha = r.x_min;
      out.s = r.width();
      out.H = 0.5 * r.height();
      const double alpha0 = opt.alpha0.value_or(default_alpha0(g));
      if (alpha >= alpha0) {
        out.bound_ok = std::abs(out.count - out.expected) < out.bound;
      }
      return out;
    } catch (const BoundaryZeroError&) {
    }
  }
  throw BoundaryZeroError(kModule, "region boundary meets a zero after jitter retries");
}

ContainmentReport check_containment(const DicksonGeometry& g, const ZeroSet& zeros, double H,
                                    double r0) {
  ContainmentReport out;
  for (const Zero& z : zeros) {
    if (std::abs(z.location) <= r0) continue;
    ++out.checked;
    if (!strip_membership(g, z.location, H)) out.exceptions.push_back(z.location);
  }
  return out;
}

}  // namespace reslab
