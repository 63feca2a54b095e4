#include "reslab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "reslab/quadrature.hpp"

namespace reslab {

namespace {

constexpr const char* kModule = "potential";

void require_positive_length(double length) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(kModule, "support length must be positive");
  }
}

// c(u) = (1 - u^2)^3 and its derivatives in x for u = x / L.
double bump(double x, double length, int order) {
  const double u = x / length;
  const double w = 1.0 - u * u;
  switch (order) {
    case 0:
      return w * w * w;
    case 1:
      return -6.0 * u * w * w / length;
    case 2:
      return w * (30.0 * u * u - 6.0) / (length * length);
    case 3:
      return u * (72.0 - 120.0 * u * u) / (length * length * length);
    default:
      throw Error(kModule, "derivative order out of range");
  }
}

double gaussian(double x, int order) {
  const double g = std::exp(-x * x);
  switch (order) {
    case 0:
      return g;
    case 1:
      return -2.0 * x * g;
    case 2:
      return (4.0 * x * x - 2.0) * g;
    case 3:
      return (12.0 * x - 8.0 * x * x * x) * g;
    default:
      throw Error(kModule, "derivative order out of range");
  }
}

}  // namespace

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)), m_(x_.size(), 0.0) {
  const std::size_t n = x_.size();
  if (n < 4 || y_.size() != n) throw Error(kModule, "too few samples");

  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];

  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::SparseMatrix<double> a(dim, dim);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(3 * n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);

  // Not-a-knot: the third derivative is continuous at x_1 and x_{n-2}.
  entries.emplace_back(0, 0, h[1]);
  entries.emplace_back(0, 1, -(h[0] + h[1]));
  entries.emplace_back(0, 2, h[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    entries.emplace_back(r, r - 1, h[i - 1]);
    entries.emplace_back(r, r, 2.0 * (h[i - 1] + h[i]));
    entries.emplace_back(r, r + 1, h[i]);
    rhs[r] = 6.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
  }
  const auto last = dim - 1;
  entries.emplace_back(last, last - 2, h[n - 2]);
  entries.emplace_back(last, last - 1, -(h[n - 3] + h[n - 2]));
  entries.emplace_back(last, last, h[n - 3]);
  a.setFromTriplets(entries.begin(), entries.end());

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw Error(kModule, "spline system is singular");
  const Eigen::VectorXd m = lu.solve(rhs);
  for (std::size_t i = 0; i < n; ++i) m_[i] = m[static_cast<Eigen::Index>(i)];
}

std::size_t CubicSpline::interval(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  if (it == x_.begin()) return 0;
  const auto i = static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

double CubicSpline::evaluate(double x, int order) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  const double m0 = m_[i];
  const double m1 = m_[i + 1];
  switch (order) {
    case 0:
      return a * y_[i] + b * y_[i + 1] +
             ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
    case 1:
      return (y_[i + 1] - y_[i]) / h - (3.0 * a * a - 1.0) * h * m0 / 6.0 +
             (3.0 * b * b - 1.0) * h * m1 / 6.0;
    case 2:
      return a * m0 + b * m1;
    case 3:
      return (m1 - m0) / h;
    default:
      throw Error(kModule, "derivative order out of range");
  }
}

Potential::Potential(PotentialFamily family, double length)
    : family_(family), length_(length) {
  require_positive_length(length);
}

Potential Potential::zero(double support_length) {
  return Potential(PotentialFamily::kZero, support_length);
}

Potential Potential::poly_bump(double support_length) {
  return Potential(PotentialFamily::kPolyBump, support_length);
}

Potential Potential::truncated_gaussian(double support_length, bool sharp_edge) {
  Potential v(PotentialFamily::kTruncatedGaussian, support_length);
  v.sharp_edge_ = sharp_edge;
  return v;
}

Potential Potential::tabulated(std::span<const std::pair<double, double>> samples,
                               double support_length) {
  require_positive_length(support_length);
  if (samples.size() < 4) throw Error(kModule, "too few samples");
  std::vector<double> x, y;
  x.reserve(samples.size());
  y.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [xi, yi] = samples[i];
    if (!std::isfinite(xi) || !std::isfinite(yi)) throw Error(kModule, "non-finite sample");
    if (xi < 0.0 || xi > support_length) throw Error(kModule, "sample abscissa out of range");
    if (i > 0 && !(xi > x.back())) throw Error(kModule, "non-monotone abscissae");
    x.push_back(xi);
    y.push_back(yi);
  }
  Potential v(PotentialFamily::kTabulated, support_length);
  v.spline_ = std::make_shared<const CubicSpline>(std::move(x), std::move(y));
  return v;
}

double Potential::derivative(double x, int order) const {
  if (order < 0 || order > 3) throw Error(kModule, "derivative order out of range");
  if (x < 0.0 || x > length_) return 0.0;
  double value = 0.0;
  switch (family_) {
    case PotentialFamily::kZero:
      return 0.0;
    case PotentialFamily::kPolyBump:
      value = bump(x, length_, order);
      break;
    case PotentialFamily::kTruncatedGaussian:
      if (sharp_edge_) {
        value = gaussian(x, order);
      } else {
        // Leibniz rule for exp(-x^2) * (1 - (x/L)^2)^3.
        static constexpr int kBinomial[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
        for (int j = 0; j <= order; ++j) {
          value += kBinomial[order][j] * gaussian(x, order - j) * bump(x, length_, j);
        }
      }
      break;
    case PotentialFamily::kTabulated:
      value = spline_->evaluate(x, order);
      break;
  }
  return scale_ * value;
}

Potential Potential::scaled(double factor) const {
  if (!std::isfinite(factor)) throw Error(kModule, "non-finite scale factor");
  Potential v = *this;
  v.scale_ *= factor;
  return v;
}

bool Potential::normalized_by_construction() const {
  switch (family_) {
    case PotentialFamily::kPolyBump:
    case PotentialFamily::kTruncatedGaussian:
      return scale_ == 1.0;
    case PotentialFamily::kTabulated:
      return normalization().ok();
    case PotentialFamily::kZero:
      return false;
  }
  return false;
}

NormalizationReport Potential::normalization() const {
  NormalizationReport r;
  r.value_at_zero = left_value();
  r.slope_at_zero = left_slope();
  r.value_ok = std::abs(r.value_at_zero - 1.0) <= 1e-12;
  r.slope_ok = std::abs(r.slope_at_zero) <= 1e-12;
  return r;
}

std::string Potential::tag() const {
  std::ostringstream os;
  os.precision(15);
  switch (family_) {
    case PotentialFamily::kZero:
      os << "zero";
      break;
    case PotentialFamily::kPolyBump:
      os << "poly_bump";
      break;
    case PotentialFamily::kTruncatedGaussian:
      os << (sharp_edge_ ? "gaussian_sharp" : "gaussian");
      break;
    case PotentialFamily::kTabulated:
      os << "table[" << spline_->knots().size() << "]";
      break;
  }
  os << "(L=" << length_;
  if (scale_ != 1.0) os << ",scale=" << scale_;
  os << ")";
  return os.str();
}

std::vector<std::pair<double, double>> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(kModule, "cannot open table '" + path + "'");
  std::vector<std::pair<double, double>> samples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double x = 0.0, v = 0.0;
    if (!(fields >> x)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw Error(kModule, path + ":" + std::to_string(line_no) + ": expected 'x V'");
    }
    if (!(fields >> v)) {
      throw Error(kModule, path + ":" + std::to_string(line_no) + ": missing V column");
    }
    samples.emplace_back(x, v);
  }
  return samples;
}

Potential load_table(std::span<const std::pair<double, double>> samples, double support_length) {
  return Potential::tabulated(samples, support_length);
}

RelativeDistance relative_sup_distance(const Potential& v1, const Potential& v2,
                                       std::span<const double> grid,
                                       std::optional<double> floor) {
  if (grid.empty()) throw Error(kModule, "empty grid");
  const double support = std::min(v1.support_length(), v2.support_length());
  double max_v2 = 0.0;
  for (double x : grid) {
    if (x < 0.0 || x > support) throw Error(kModule, "grid point outside the common support");
    max_v2 = std::max(max_v2, std::abs(v2(x)));
  }
  const double cut = floor.value_or(1e-8 * max_v2);
  if (floor && !(*floor > 0.0)) throw Error(kModule, "floor must be positive");

  RelativeDistance out;
  bool any = false;
  for (double x : grid) {
    const double denom = v2(x);
    if (std::abs(denom) < cut || denom == 0.0) {
      ++out.excluded;
      continue;
    }
    any = true;
    out.value = std::max(out.value, std::abs(v1(x) / denom - 1.0));
  }
  if (!any) throw Error(kModule, "all grid points excluded by the floor");
  return out;
}

double abs_derivative_integral(const Potential& v, int order) {
  QuadratureOptions opt;
  opt.abs_tol = 1e-10;
  auto r = integrate_adaptive<double>([&](double x) { return std::abs(v.derivative(x, order)); },
                                      0.0, v.support_length(), opt);
  return r.value;
}

}  // namespace reslab
