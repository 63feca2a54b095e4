#include "reslab/config.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "reslab/format.hpp"

namespace reslab {

namespace {

constexpr const char* kModule = "config";

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

template <typename T>
T parse_number(const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw std::invalid_argument("invalid number '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument("invalid boolean '" + text + "'");
}

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  for (const std::string& item : split_list(text)) out.push_back(parse_number<T>(item));
  return out;
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_floating_point_v<T>) {
      out += fmt17(v[i]);
    } else {
      out += std::to_string(v[i]);
    }
  }
  return out;
}

// Rectangles are parsed field by field and validated at the end.
struct RectFields {
  double x_min, x_max, y_min, y_max;
};

using Setter = std::function<void(const std::string&)>;

std::map<std::string, Setter> setters(ExperimentConfig& c, RectFields& rect, RectFields& res) {
  auto num = [](double& d) { return [&d](const std::string& v) { d = parse_number<double>(v); }; };
  auto integer = [](int& i) { return [&i](const std::string& v) { i = parse_number<int>(v); }; };
  auto text = [](std::string& s) { return [&s](const std::string& v) { s = v; }; };
  return {
      {"potential.family", text(c.potential.family)},
      {"potential.L", num(c.potential.L)},
      {"potential.scale", num(c.potential.scale)},
      {"potential.sharp_edge", [&](const std::string& v) { c.potential.sharp_edge = parse_bool(v); }},
      {"potential.table", text(c.potential.table)},
      {"rect.x_min", num(rect.x_min)},
      {"rect.x_max", num(rect.x_max)},
      {"rect.y_min", num(rect.y_min)},
      {"rect.y_max", num(rect.y_max)},
      {"resonance_rect.x_min", num(res.x_min)},
      {"resonance_rect.x_max", num(res.x_max)},
      {"resonance_rect.y_min", num(res.y_min)},
      {"resonance_rect.y_max", num(res.y_max)},
      {"tolerances.quadrature", num(c.quad_tol)},
      {"tolerances.ode", num(c.ode_tol)},
      {"tolerances.root", num(c.root_tol)},
      {"reconstruction.R", num(c.R)},
      {"reconstruction.K", num(c.K)},
      {"reconstruction.deltas", [&](const std::string& v) { c.deltas = parse_list<double>(v); }},
      {"reconstruction.perturbation", text(c.perturbation)},
      {"grid.x_min", num(c.grid.x_min)},
      {"grid.x_max", num(c.grid.x_max)},
      {"grid.points", integer(c.grid.points)},
      {"run.seed", [&](const std::string& v) { c.seed = parse_number<std::uint64_t>(v); }},
      {"run.out", text(c.out)},
      {"dickson.omega_re", [&](const std::string& v) { c.dickson.omega_re = parse_list<double>(v); }},
      {"dickson.omega_im", [&](const std::string& v) { c.dickson.omega_im = parse_list<double>(v); }},
      {"dickson.coeff_re", [&](const std::string& v) { c.dickson.coeff_re = parse_list<double>(v); }},
      {"dickson.coeff_im", [&](const std::string& v) { c.dickson.coeff_im = parse_list<double>(v); }},
      {"dickson.powers", [&](const std::string& v) { c.dickson.powers = parse_list<int>(v); }},
      {"dickson.k", integer(c.dickson.k)},
      {"dickson.j", integer(c.dickson.j)},
      {"dickson.alpha", num(c.dickson.alpha)},
      {"dickson.s", num(c.dickson.s)},
      {"dickson.H", num(c.dickson.H)},
      {"dickson.windows", integer(c.dickson.windows)},
      {"scatter.k_min", num(c.k_min)},
      {"scatter.k_max", num(c.k_max)},
      {"scatter.k_points", integer(c.k_points)},
      {"scatter.max_pairs", integer(c.max_pairs)},
  };
}

void validate(const ExperimentConfig& c, const std::string& source) {
  auto fail = [&](const std::string& field, const std::string& what) {
    throw Error(kModule, source + ": field " + field + ": " + what);
  };
  static const char* families[] = {"zero", "poly_bump", "truncated_gaussian", "table"};
  if (std::find(std::begin(families), std::end(families), c.potential.family) == std::end(families)) {
    fail("potential.family", "unknown family '" + c.potential.family + "'");
  }
  if (!(c.potential.L > 0.0)) fail("potential.L", "must be positive");
  if (c.potential.family == "table" && c.potential.table.empty()) {
    fail("potential.table", "required for family = table");
  }
  for (auto [name, v] : {std::pair{"tolerances.quadrature", c.quad_tol},
                         std::pair{"tolerances.ode", c.ode_tol},
                         std::pair{"tolerances.root", c.root_tol}}) {
    if (!(v > 0.0)) fail(name, "must be positive");
  }
  if (c.R < 0.0) fail("reconstruction.R", "must be nonnegative");
  if (c.K < 0.0) fail("reconstruction.K", "must be nonnegative");
  for (double d : c.deltas) {
    if (!(d > 0.0)) fail("reconstruction.deltas", "entries must be positive");
  }
  if (c.perturbation != "uniform-shift" && c.perturbation != "random-in-disk") {
    fail("reconstruction.perturbation", "expected uniform-shift or random-in-disk");
  }
  if (c.grid.points < 3) fail("grid.points", "needs at least 3 points");
  if (!(c.grid.x_max > c.grid.x_min)) fail("grid.x_max", "must exceed grid.x_min");
  const std::size_t n = c.dickson.omega_re.size();
  if (c.dickson.omega_im.size() != n || c.dickson.coeff_re.size() != n ||
      c.dickson.coeff_im.size() != n || c.dickson.powers.size() != n) {
    fail("dickson", "omega_re, omega_im, coeff_re, coeff_im and powers need equal lengths");
  }
  if (c.dickson.windows < 1) fail("dickson.windows", "must be positive");
  if (!(c.k_max > c.k_min)) fail("scatter.k_max", "must exceed scatter.k_min");
  if (c.k_points < 1) fail("scatter.k_points", "must be positive");
  if (c.max_pairs < 0) fail("scatter.max_pairs", "must be nonnegative");
}

}  // namespace

std::vector<double> GridSpec::values() const {
  std::vector<double> out;
  for (int i = 0; i < points; ++i) {
    out.push_back(i + 1 == points ? x_max : x_min + (x_max - x_min) * i / (points - 1));
  }
  return out;
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
  return potential == o.potential && rect == o.rect && resonance_rect == o.resonance_rect &&
         quad_tol == o.quad_tol && ode_tol == o.ode_tol && root_tol == o.root_tol && R == o.R &&
         K == o.K && deltas == o.deltas && perturbation == o.perturbation && grid == o.grid &&
         seed == o.seed && out == o.out && dickson == o.dickson && k_min == o.k_min &&
         k_max == o.k_max && k_points == o.k_points && max_pairs == o.max_pairs;
}

ExperimentConfig parse_config(std::istream& is, const std::string& source) {
  ExperimentConfig c;
  RectFields rect{c.rect.x_min, c.rect.x_max, c.rect.y_min, c.rect.y_max};
  RectFields res{c.resonance_rect.x_min, c.resonance_rect.x_max, c.resonance_rect.y_min,
                 c.resonance_rect.y_max};
  const auto table = setters(c, rect, res);

  std::string section;
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string where = source + ":" + std::to_string(line_no);
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(kModule, where + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(kModule, where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string field = section + "." + key;
    const auto it = table.find(field);
    if (it == table.end()) throw Error(kModule, where + ": unknown field " + field);
    try {
      it->second(value);
    } catch (const std::invalid_argument& e) {
      throw Error(kModule, where + ": field " + field + ": " + e.what());
    }
  }

  try {
    c.rect = Rectangle(rect.x_min, rect.x_max, rect.y_min, rect.y_max);
  } catch (const Error& e) {
    throw Error(kModule, source + ": field rect: " + e.what());
  }
  try {
    c.resonance_rect = Rectangle(res.x_min, res.x_max, res.y_min, res.y_max);
  } catch (const Error& e) {
    throw Error(kModule, source + ": field resonance_rect: " + e.what());
  }
  validate(c, source);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(kModule, "cannot open config file '" + path + "'");
  ExperimentConfig c = parse_config(in, path);
  c.base_dir = std::filesystem::path(path).parent_path().string();
  if (c.base_dir.empty()) c.base_dir = ".";
  return c;
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream os;
  auto rect = [&](const char* name, const Rectangle& r) {
    os << "\n[" << name << "]\n"
       << "x_min = " << fmt17(r.x_min) << "\nx_max = " << fmt17(r.x_max) << "\ny_min = "
       << fmt17(r.y_min) << "\ny_max = " << fmt17(r.y_max) << "\n";
  };
  os << "[potential]\n"
     << "family = " << c.potential.family << "\n"
     << "L = " << fmt17(c.potential.L) << "\n"
     << "scale = " << fmt17(c.potential.scale) << "\n"
     << "sharp_edge = " << (c.potential.sharp_edge ? "true" : "false") << "\n"
     << "table = " << c.potential.table << "\n";
  rect("rect", c.rect);
  rect("resonance_rect", c.resonance_rect);
  os << "\n[tolerances]\n"
     << "quadrature = " << fmt17(c.quad_tol) << "\node = " << fmt17(c.ode_tol)
     << "\nroot = " << fmt17(c.root_tol) << "\n"
     << "\n[reconstruction]\n"
     << "R = " << fmt17(c.R) << "\nK = " << fmt17(c.K) << "\ndeltas = " << join(c.deltas)
     << "\nperturbation = " << c.perturbation << "\n"
     << "\n[grid]\n"
     << "x_min = " << fmt17(c.grid.x_min) << "\nx_max = " << fmt17(c.grid.x_max)
     << "\npoints = " << c.grid.points << "\n"
     << "\n[run]\n"
     << "seed = " << c.seed << "\nout = " << c.out << "\n"
     << "\n[dickson]\n"
     << "omega_re = " << join(c.dickson.omega_re) << "\nomega_im = " << join(c.dickson.omega_im)
     << "\ncoeff_re = " << join(c.dickson.coeff_re) << "\ncoeff_im = " << join(c.dickson.coeff_im)
     << "\npowers = " << join(c.dickson.powers) << "\nk = " << c.dickson.k
     << "\nj = " << c.dickson.j << "\nalpha = " << fmt17(c.dickson.alpha)
     << "\ns = " << fmt17(c.dickson.s) << "\nH = " << fmt17(c.dickson.H)
     << "\nwindows = " << c.dickson.windows << "\n"
     << "\n[scatter]\n"
     << "k_min = " << fmt17(c.k_min) << "\nk_max = " << fmt17(c.k_max)
     << "\nk_points = " << c.k_points << "\nmax_pairs = " << c.max_pairs << "\n";
  return os.str();
}

Potential make_potential(const ExperimentConfig& c) {
  const PotentialSpec& p = c.potential;
  Potential v = Potential::zero(p.L);
  if (p.family == "poly_bump") {
    v = Potential::poly_bump(p.L);
  } else if (p.family == "truncated_gaussian") {
    v = Potential::truncated_gaussian(p.L, p.sharp_edge);
  } else if (p.family == "table") {
    std::filesystem::path path(p.table);
    if (path.is_relative()) path = std::filesystem::path(c.base_dir) / path;
    const auto samples = read_table(path.string());
    v = load_table(samples, p.L);
  }
  return p.scale == 1.0 ? v : v.scaled(p.scale);
}

}  // namespace reslab
