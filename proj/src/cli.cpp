#include "reslab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "reslab/config.hpp"
#include "reslab/dickson.hpp"
#include "reslab/format.hpp"
#include "reslab/ftransform.hpp"
#include "reslab/scatter.hpp"

namespace reslab {

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kModule = "cli";

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct Run {
  ExperimentConfig cfg;
  std::string config_text;
  fs::path dir;
  std::vector<std::string> artifacts;
  std::ostream& log;

  std::ofstream open(const std::string& name) {
    artifacts.push_back(name);
    std::ofstream f(dir / name);
    if (!f) throw Error(kModule, "cannot write " + (dir / name).string());
    return f;
  }
  std::string path(const std::string& name) {
    artifacts.push_back(name);
    return (dir / name).string();
  }
};

double round15(double x) { return std::stod(fmt15(x)); }

void write_zeros(Run& run, const std::string& name, const ZeroSet& z, const std::string& source,
                 const Rectangle& rect, double tol, std::vector<std::string> notes = {}) {
  auto f = run.open(name);
  write_zero_set(f, z, ZeroSetHeader{source, rect, tol, std::move(notes)});
}

LocateOptions locate_options(const ExperimentConfig& c) {
  LocateOptions lo;
  lo.tol = c.root_tol;
  lo.seed = c.seed;
  return lo;
}

ScatterOptions scatter_options(const ExperimentConfig& c) {
  ScatterOptions so;
  so.rtol = c.ode_tol;
  so.locate = locate_options(c);
  return so;
}

ComplexFunction fourier_product(const Potential& v, const ExperimentConfig& c) {
  FourierOptions fo;
  fo.rel_tol = c.quad_tol;
  return [v, fo](Complex z) { return fourier_pair(v, z, fo); };
}

void cmd_resonances(Run& run) {
  const Potential v = make_potential(run.cfg);
  const ZeroSet z = resonances(v, run.cfg.resonance_rect, run.cfg.root_tol, scatter_options(run.cfg));
  write_zeros(run, "resonances.txt", z, "resonances", run.cfg.resonance_rect, run.cfg.root_tol,
              {"potential: " + v.tag()});
  if (!z.empty()) emit_plot_data(z, run.path("resonances_plot.tsv"));
  run.log << "resonances: " << z.size() << " zeros\n";
}

void cmd_fourier_zeros(Run& run) {
  const Potential v = make_potential(run.cfg);
  const ZeroSet z =
      locate_zeros(fourier_product(v, run.cfg), run.cfg.rect, run.cfg.root_tol, locate_options(run.cfg));
  write_zeros(run, "fourier_zeros.txt", z, "fourier-zeros", run.cfg.rect, run.cfg.root_tol,
              {"potential: " + v.tag()});
  if (!z.empty()) emit_plot_data(z, run.path("fourier_zeros_plot.tsv"));

  FourierOptions fo;
  fo.rel_tol = run.cfg.quad_tol;
  auto f = run.open("residuals.tsv");
  f << "z\tresidual\tz_times_residual\n";
  for (double x : {50.0, 100.0, 200.0, 400.0}) {
    const double r = asymptotic_residual(v, x, fo);
    f << fmt15(x) << '\t' << fmt15(r) << '\t' << fmt15(x * r) << '\n';
  }
  run.log << "fourier-zeros: " << z.size() << " zeros\n";
}

void cmd_froese(Run& run) {
  const Potential v = make_potential(run.cfg);
  const FroeseComparison cmp =
      froese_compare(v, run.cfg.resonance_rect, static_cast<std::size_t>(run.cfg.max_pairs),
                     scatter_options(run.cfg));
  write_zeros(run, "resonances.txt", cmp.resonances, "resonances", run.cfg.resonance_rect,
              run.cfg.root_tol, {"potential: " + v.tag()});
  write_zeros(run, "fourier_zeros.txt", cmp.fourier_zeros, "fourier-zeros", run.cfg.resonance_rect,
              run.cfg.root_tol, {"potential: " + v.tag()});
  auto f = run.open("froese.tsv");
  f << "# count_mismatch: " << cmp.count_mismatch << "\n"
    << "# first_third_median: " << fmt15(cmp.first_third_median) << "\n"
    << "# last_third_median: " << fmt15(cmp.last_third_median) << "\n"
    << "index\tresonance_re\tresonance_im\tzero_re\tzero_im\tdistance\trelative_distance\n";
  for (std::size_t i = 0; i < cmp.pairs.size(); ++i) {
    const FroesePair& p = cmp.pairs[i];
    f << i + 1 << '\t' << fmt15(p.resonance.real()) << '\t' << fmt15(p.resonance.imag()) << '\t'
      << fmt15(p.fourier_zero.real()) << '\t' << fmt15(p.fourier_zero.imag()) << '\t'
      << fmt15(p.distance) << '\t' << fmt15(p.relative_distance) << '\n';
  }
  run.log << "froese: " << cmp.pairs.size() << " pairs, medians "
          << fmt15(cmp.first_third_median) << " -> " << fmt15(cmp.last_third_median) << "\n";
}

void cmd_dickson_check(Run& run) {
  const DicksonSpec& d = run.cfg.dickson;
  std::vector<ExpTerm> terms;
  for (std::size_t i = 0; i < d.omega_re.size(); ++i) {
    terms.push_back({{d.coeff_re[i], d.coeff_im[i]}, d.powers[i], {d.omega_re[i], d.omega_im[i]}, {}});
  }
  const ExpPolynomial p(std::move(terms));
  const DicksonGeometry g = dickson_geometry(p);
  const DicksonSegment& seg = g.segment(d.k, d.j);
  const double alpha0 = default_alpha0(p);
  const double alpha = d.alpha > 0.0 ? d.alpha : alpha0;
  const double s = d.s > 0.0 ? d.s : 2.0 * kPi / seg.frequency_gap;
  const double H = d.H > 0.0 ? d.H : default_strip_height(p, alpha0);

  auto geo = run.open("dickson_geometry.txt");
  geo << "# alpha0 = " << fmt15(alpha0) << "\n# H = " << fmt15(H) << "\n"
      << "k\tj\tphi\te_re\te_im\tmu\tn\tfrequency_gap\n";
  for (const DicksonEdge& e : g.edges) {
    for (const DicksonSegment& sg : e.segments) {
      geo << sg.k << '\t' << sg.j << '\t' << fmt15(e.phi) << '\t' << fmt15(e.e.real()) << '\t'
          << fmt15(e.e.imag()) << '\t' << fmt15(sg.mu) << '\t' << sg.n << '\t'
          << fmt15(sg.frequency_gap) << '\n';
    }
  }

  CurvilinearOptions co;
  co.alpha0 = alpha0;
  co.seed = run.cfg.seed;
  auto win = run.open("dickson_windows.tsv");
  win << "window\talpha\ts\tH\tcount\texpected\tbound\tbound_ok\n";
  int failures = 0;
  for (int w = 0; w < d.windows; ++w) {
    const CurvilinearCount c = curvilinear_count(p, g, d.k, d.j, alpha + w * s, s, H, co);
    const std::string ok = c.bound_ok ? (*c.bound_ok ? "true" : "false") : "unchecked";
    if (c.bound_ok && !*c.bound_ok) ++failures;
    win << w + 1 << '\t' << fmt15(alpha + w * s) << '\t' << fmt15(s) << '\t' << fmt15(H) << '\t'
        << c.count << '\t' << fmt15(c.expected) << '\t' << fmt15(c.bound) << '\t' << ok << '\n';
  }

  const ZeroSet z = locate_zeros(p, run.cfg.rect, run.cfg.root_tol, locate_options(run.cfg));
  write_zeros(run, "dickson_zeros.txt", z, "dickson-check", run.cfg.rect, run.cfg.root_tol);
  const ContainmentReport rep = check_containment(g, z, H, p.r0());
  auto c = run.open("dickson_containment.txt");
  c << "# checked: " << rep.checked << "\n# exceptions: " << rep.exceptions.size() << "\n";
  for (const Complex& x : rep.exceptions) c << fmt15(x.real()) << ' ' << fmt15(x.imag()) << '\n';
  run.log << "dickson-check: " << d.windows - failures << "/" << d.windows
          << " windows within bound, " << rep.exceptions.size() << " containment exceptions\n";
}

void cmd_reconstruct(Run& run) {
  const Potential v = make_potential(run.cfg);
  const ComplexFunction F = fourier_product(v, run.cfg);
  const ZeroSet z =
      locate_zeros(F, run.cfg.rect, run.cfg.root_tol, locate_options(run.cfg)).mirrored();
  const double R = run.cfg.R > 0.0 ? run.cfg.R : radius_between(z, 15);
  const std::vector<double> grid = run.cfg.grid.values();
  std::vector<std::pair<Complex, Complex>> samples;
  for (double x : grid) samples.emplace_back(x, F(x));
  const Prefactor pre = fit_prefactor(samples, z, R);
  const TruncatedProduct p = build_product(z, R, pre);

  write_zeros(run, "fourier_zeros.txt", z, "fourier-zeros", run.cfg.rect, run.cfg.root_tol,
              {"potential: " + v.tag(), "mirrored: true"});
  auto f = run.open("reconstruct.tsv");
  f << "# R = " << fmt15(R) << "\n# c = " << fmt15(pre.c.real()) << " " << fmt15(pre.c.imag())
    << "\n# kappa = " << fmt15(pre.kappa) << "\n"
    << "x\tF\tproduct\tabs_diff\n";
  for (const auto& [x, target] : samples) {
    const Complex value = eval_product(p, x).value;
    f << fmt15(x.real()) << '\t' << fmt15(target.real()) << '\t' << fmt15(value.real()) << '\t'
      << fmt15(std::abs(value - target)) << '\n';
  }

  std::vector<double> radii;
  for (std::size_t n = 1;; ++n) {
    try {
      const double r = radius_between(z, n);
      if (r > R) break;
      radii.push_back(r);
    } catch (const Error&) {
      break;
    }
  }
  const double probe = grid[grid.size() / 2];
  const ConvergenceCurve curve = convergence_curve(z, pre, probe, radii);
  auto g = run.open("convergence.tsv");
  g << "# z = " << fmt15(probe) << "\nR\tvalue_re\tvalue_im\tdifference\n";
  for (std::size_t i = 0; i < curve.radii.size(); ++i) {
    g << fmt15(curve.radii[i]) << '\t' << fmt15(curve.values[i].real()) << '\t'
      << fmt15(curve.values[i].imag()) << '\t' << fmt15(curve.differences[i]) << '\n';
  }
  run.log << "reconstruct: " << p.zeros.size() << " zeros retained at R = " << fmt15(R) << "\n";
}

void cmd_stability(Run& run) {
  const Potential v = make_potential(run.cfg);
  StabilityOptions so;
  so.mode = parse_perturb_mode(run.cfg.perturbation);
  so.seed = run.cfg.seed;
  so.tol = run.cfg.root_tol;
  if (run.cfg.K > 0.0) so.K = run.cfg.K;
  const std::vector<double> grid = run.cfg.grid.values();
  const StabilityTable t = stability_experiment(v, run.cfg.rect, run.cfg.deltas, run.cfg.R, grid, so);

  write_zeros(run, "fourier_zeros.txt", t.zeros, "fourier-zeros", run.cfg.rect, run.cfg.root_tol,
              {"potential: " + v.tag(), "mirrored: true"});
  {
    auto f = run.open("stability.tsv");
    write_stability_tsv(f, t);
  }
  json rows = json::array();
  for (const StabilityRow& r : t.rows) {
    json row;
    row["delta"] = round15(r.delta);
    row["sup_diff"] = r.ok ? json(round15(r.sup_diff)) : json(nullptr);
    row["n_diff"] = r.ok ? json(r.n_diff) : json(nullptr);
    row["zero_sup_distance"] = r.ok ? json(round15(r.zero_sup_distance)) : json(nullptr);
    row["R"] = round15(r.R);
    row["K"] = round15(r.K);
    row["grid_size"] = r.grid_size;
    if (!r.ok) row["error"] = r.error;
    rows.push_back(row);
  }
  json doc;
  doc["perturbation"] = to_string(so.mode);
  doc["prefactor"] = {{"c_re", round15(t.prefactor.c.real())},
                      {"c_im", round15(t.prefactor.c.imag())},
                      {"m", t.prefactor.m},
                      {"kappa", round15(t.prefactor.kappa)}};
  doc["rows"] = rows;
  run.open("stability.json") << doc.dump(2) << '\n';
  emit_plot_data(t, run.path("stability_plot.tsv"));
  run.log << "stability: " << t.rows.size() << " rows\n";
}

void cmd_scatter_matrix(Run& run) {
  const Potential v = make_potential(run.cfg);
  const ScatterOptions so = scatter_options(run.cfg);
  auto f = run.open("scatter.tsv");
  f << "k\tT_re\tT_im\tR_re\tR_im\tL_re\tL_im\tunitarity_defect\n";
  const int n = run.cfg.k_points;
  for (int i = 0; i < n; ++i) {
    const double k = n == 1 ? run.cfg.k_min
                            : run.cfg.k_min + (run.cfg.k_max - run.cfg.k_min) * i / (n - 1);
    const ScatteringMatrix s = scattering_matrix(v, k, so);
    f << fmt15(k) << '\t' << fmt15(s.T.real()) << '\t' << fmt15(s.T.imag()) << '\t'
      << fmt15(s.R_right.real()) << '\t' << fmt15(s.R_right.imag()) << '\t'
      << fmt15(s.L_left.real()) << '\t' << fmt15(s.L_left.imag()) << '\t'
      << fmt15(s.unitarity_defect) << '\n';
  }
  run.log << "scatter-matrix: " << n << " momenta\n";
}

const std::map<std::string, std::pair<std::string, std::function<void(Run&)>>>& commands() {
  static const std::map<std::string, std::pair<std::string, std::function<void(Run&)>>> table{
      {"resonances", {"zeros of the Jost function X(k) in the resonance rectangle", cmd_resonances}},
      {"fourier-zeros", {"zeros of F(z) = V(2z) V(-2z) and asymptotic residuals", cmd_fourier_zeros}},
      {"froese", {"pair resonances with zeros of F", cmd_froese}},
      {"dickson-check", {"strip geometry and window counts for an exponential polynomial",
                         cmd_dickson_check}},
      {"reconstruct", {"truncated product fitted to F on the grid", cmd_reconstruct}},
      {"stability", {"perturbation experiment over the delta list", cmd_stability}},
      {"scatter-matrix", {"T, R, L on a real momentum grid", cmd_scatter_matrix}},
  };
  return table;
}

void write_manifest(Run& run, const std::string& name, double seconds) {
  std::vector<std::string> artifacts = run.artifacts;
  std::sort(artifacts.begin(), artifacts.end());
  json m;
  m["tool"] = "reslab";
  m["version"] = kVersion;
  m["subcommand"] = name;
  m["seed"] = run.cfg.seed;
  m["config"] = run.config_text;
  m["artifacts"] = artifacts;
  m["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
               "." + std::to_string(EIGEN_MINOR_VERSION);
  m["compiler"] = __VERSION__;
  m["wall_time_s"] = seconds;
  std::ofstream f(run.dir / "run_manifest.json");
  f << m.dump(2) << '\n';
}

}  // namespace

void emit_plot_data(const ZeroSet& z, const std::string& path) {
  if (z.empty()) throw Error(kModule, "nothing to plot");
  std::ofstream f(path);
  if (!f) throw Error(kModule, "cannot write " + path);
  f << "re\tim\tmultiplicity\n";
  for (const Zero& e : z) {
    f << fmt15(e.location.real()) << '\t' << fmt15(e.location.imag()) << '\t' << e.multiplicity
      << '\n';
  }
}

void emit_plot_data(const StabilityTable& t, const std::string& path) {
  std::vector<const StabilityRow*> rows;
  for (const StabilityRow& r : t.rows) {
    if (r.ok) rows.push_back(&r);
  }
  if (rows.empty()) throw Error(kModule, "nothing to plot");
  std::sort(rows.begin(), rows.end(),
            [](const StabilityRow* a, const StabilityRow* b) { return a->delta < b->delta; });
  std::ofstream f(path);
  if (!f) throw Error(kModule, "cannot write " + path);
  f << "delta\tsup_diff\n";
  for (const StabilityRow* r : rows) f << fmt15(r->delta) << '\t' << fmt15(r->sup_diff) << '\n';
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical experiments on resonances of compactly supported potentials", "reslab"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::int64_t seed = 0;
  for (const auto& [name, entry] : commands()) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", config_path, "experiment configuration file")->required();
    sub->add_option("--out", out_dir, "output directory (overrides run.out)");
    sub->add_option("--seed", seed, "random seed (overrides run.seed)");
  }

  if (!args.empty() && !args[0].empty() && args[0][0] != '-' && !commands().count(args[0])) {
    err << "error: unknown subcommand '" << args[0] << "'\n" << app.help();
    return 2;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Run run{load_config(config_path), {}, {}, {}, out};
    if (app.get_subcommands().front()->count("--seed")) {
      if (seed < 0) throw Error("config", "--seed must be nonnegative");
      run.cfg.seed = static_cast<std::uint64_t>(seed);
    }
    // Recorded before the output override so reruns into another directory
    // produce identical manifests.
    run.config_text = serialize_config(run.cfg);
    if (!out_dir.empty()) run.cfg.out = out_dir;
    run.dir = run.cfg.out;
    fs::create_directories(run.dir);
    commands().at(name).second(run);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(run, name, seconds);
    return 0;
  } catch (const Error& e) {
    json report{{"status", "error"}, {"subcommand", name}, {"module", e.module()},
                {"message", e.what()}};
    err << report.dump() << '\n';
    return e.module() == "config" ? 2 : 1;
  } catch (const std::exception& e) {
    json report{{"status", "error"}, {"subcommand", name}, {"module", "unknown"},
                {"message", e.what()}};
    err << report.dump() << '\n';
    return 1;
  }
}

}  // namespace reslab
