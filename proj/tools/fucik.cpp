// Command-line front end: spectrum verification, curve tracing, the
// two-solution nonlinear solve, plotting, and a quick cross-check suite.
// Exit codes: 0 success, 1 usage or configuration error, 2 verification
// failure.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fucik/io.hpp"
#include "fucik/nonlinear.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

namespace fs = std::filesystem;

std::string resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("FUCIK_OUTDIR"))
    if (*env != '\0') return env;
  return ".";
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << content;
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot read " + path.string());
  std::string s((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return s;
}

// "a:b:step" inclusive, a comma list, or a single number; returned ascending
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  const auto to_real = [](const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
      throw std::invalid_argument("bad number in parameter grid: " + s);
    return v;
  };
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t pos; (pos = spec.find(':', start)) != std::string::npos; start = pos + 1)
      parts.push_back(spec.substr(start, pos - start));
    parts.push_back(spec.substr(start));
    if (parts.size() != 3) throw std::invalid_argument("grid spec must be first:last:step");
    const double a = to_real(parts[0]), b = to_real(parts[1]), step = to_real(parts[2]);
    if (!(step > 0) || b < a) throw std::invalid_argument("grid spec needs last >= first and step > 0");
    const long long n = static_cast<long long>((b - a) / step + 1e-9);
    for (long long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * step);
  } else {
    std::size_t start = 0;
    for (;;) {
      const std::size_t pos = spec.find(',', start);
      out.push_back(to_real(spec.substr(start, pos == std::string::npos ? pos : pos - start)));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct SpectrumConfig {
  int n = 1;
  std::string backend = "spectral";
  int kmax = 0;  // 0: backend default
  int cutoff = 0;
  double radius = 0;
  double tol = 0;  // 0: backend default
  std::string out;
};

int run_spectrum(const SpectrumConfig& cfg) {
  const bool fd = cfg.backend == "fd";
  const int kmax = cfg.kmax > 0 ? cfg.kmax : (fd ? 6 : 10);
  const double tol = cfg.tol > 0 ? cfg.tol : (fd ? 2e-3 : 1e-10);
  const int count = cfg.n == 1 ? kmax : kmax * (kmax + 1) / 2;

  fucik::VecX<double> values;
  if (fd) {
    if (cfg.n != 1) throw std::invalid_argument("finite-difference backend is one-dimensional");
    const int nodes = cfg.cutoff > 0 ? cfg.cutoff : 801;
    fucik::FdOperator<double> op(
        fucik::build_grid<double>(1, fucik::Backend::finite_difference, nodes, cfg.radius));
    values = fucik::eigensystem(op, count).values;
  } else {
    const int cutoff = cfg.cutoff > 0 ? cfg.cutoff : (cfg.n == 1 ? std::max(32, kmax) : std::max(8, kmax));
    fucik::SpectralOperator<double> op(
        fucik::build_grid<double>(cfg.n, fucik::Backend::spectral, cutoff, cfg.radius));
    values = fucik::eigensystem(op, count).values;
  }
  const fucik::SpectrumReport<double> rep = fucik::verify_spectrum(values, cfg.n, tol);

  json j;
  j["schema_version"] = 1;
  j["command"] = "spectrum";
  j["options"] = {{"n", cfg.n}, {"backend", cfg.backend}, {"kmax", kmax}, {"tol", tol}};
  j["results"]["pass"] = rep.pass;
  j["results"]["max_error"] = rep.max_error;
  j["results"]["multiplicities"] = rep.computed_multiplicities;
  j["results"]["values"] = std::vector<double>(values.data(), values.data() + values.size());
  write_file(fs::path(resolve_out_dir(cfg.out)) / "spectrum.json", j.dump(2) + "\n");

  std::printf("spectrum n=%d backend=%s levels<=%d: max error %.3e, multiplicities %s, %s\n",
              cfg.n, cfg.backend.c_str(), kmax, rep.max_error,
              rep.multiplicities_ok ? "ok" : "wrong", rep.pass ? "pass" : "FAIL");
  return rep.pass ? 0 : 2;
}

struct CurveConfig {
  std::string pspec = "0:10:0.5";
  std::string backend = "spectral";
  int cutoff = 0;
  int nodes = 41;
  std::string check;   // "symmetry" runs the reflection comparison
  std::string oracle;  // "matrix" runs the dense-scan comparison instead
  std::string svg;     // optional SVG file name
  std::string out;
};

int run_oracle_comparison(const CurveConfig& cfg, const std::vector<double>& grid) {
  fucik::MatX<double> A(2, 2);
  A << 2, -1, -1, 2;
  fucik::DenseOperator<double> toy(A);
  fucik::MinimaxOptions<double> opts;
  opts.path_nodes = cfg.nodes;

  json rows = json::array();
  bool ok = true;
  for (const double p : grid) {
    const fucik::CurvePoint<double> cp = fucik::newton_refine(toy, fucik::mountain_pass_cp(toy, p, opts), opts);
    const std::vector<double> levels = fucik::dense_scan_oracle(A, p);
    double scan = std::numeric_limits<double>::quiet_NaN();
    for (const double v : levels)
      if (v > toy.lam1() + 1e-3) {
        scan = v;
        break;
      }
    const double diff = std::abs(cp.c - scan);
    ok = ok && cp.refined && diff <= 1e-6;
    rows.push_back({{"p", p}, {"minimax", cp.c}, {"scan", scan}, {"diff", diff}});
    std::printf("p=%g minimax=%.12f scan=%.12f diff=%.3e\n", p, cp.c, scan, diff);
  }
  json j;
  j["schema_version"] = 1;
  j["command"] = "curve";
  j["options"] = {{"oracle", "matrix"}, {"p", cfg.pspec}};
  j["results"] = {{"pass", ok}, {"points", rows}};
  write_file(fs::path(resolve_out_dir(cfg.out)) / "curve.json", j.dump(2) + "\n");
  return ok ? 0 : 2;
}

int run_curve(const CurveConfig& cfg) {
  const std::vector<double> grid = parse_grid(cfg.pspec);
  if (grid.empty()) throw std::invalid_argument("empty parameter grid");
  if (cfg.oracle == "matrix") return run_oracle_comparison(cfg, grid);
  if (!cfg.oracle.empty()) throw std::invalid_argument("unknown oracle: " + cfg.oracle);
  if (!cfg.check.empty() && cfg.check != "symmetry")
    throw std::invalid_argument("unknown check: " + cfg.check);

  fucik::MinimaxOptions<double> opts;
  opts.path_nodes = cfg.nodes;

  fucik::CurveTrace<double> tr;
  double lam2 = 0;
  if (cfg.backend == "fd") {
    const int nodes = cfg.cutoff > 0 ? cfg.cutoff : 801;
    fucik::FdOperator<double> op(
        fucik::build_grid<double>(1, fucik::Backend::finite_difference, nodes));
    tr = fucik::trace_curve(op, grid, opts);
    lam2 = fucik::eigensystem(op, 2).values[1];
  } else if (cfg.backend == "spectral") {
    const int cutoff = cfg.cutoff > 0 ? cfg.cutoff : 32;
    fucik::SpectralOperator<double> op(
        fucik::build_grid<double>(1, fucik::Backend::spectral, cutoff));
    tr = fucik::trace_curve(op, grid, opts);
    lam2 = fucik::eigensystem(op, 2).values[1];
  } else {
    throw std::invalid_argument("unknown backend: " + cfg.backend);
  }

  const fs::path dir = resolve_out_dir(cfg.out);
  const std::vector<fucik::CurveRow> rows = fucik::rows_from_trace(tr);
  write_file(dir / "curve.csv", fucik::to_csv(rows));

  int unrefined = 0;
  for (const auto& cp : tr.points) unrefined += cp.refined ? 0 : 1;

  json j;
  j["schema_version"] = 1;
  j["command"] = "curve";
  j["options"] = {{"backend", cfg.backend},
                  {"p", cfg.pspec},
                  {"path_nodes", opts.path_nodes},
                  {"gtol", opts.gtol},
                  {"accept_residual", opts.accept_residual}};
  j["results"]["points"] = rows.size();
  j["results"]["unrefined"] = unrefined;
  j["results"]["lam1"] = tr.lam1;
  j["notes"] = tr.notes;

  bool ok = unrefined == 0;
  std::size_t refined_count = rows.size() - static_cast<std::size_t>(unrefined);
  if (refined_count >= 3) {
    const fucik::CurveReport<double> rep = fucik::verify_curve_properties(tr);
    j["results"]["checks"] = {{"lipschitz", rep.lipschitz_ok},
                              {"monotone", rep.monotone_ok},
                              {"strict_monotone", rep.strict_monotone_ok},
                              {"max_lipschitz_excess", rep.max_lipschitz_excess}};
    if (rep.asymptote_applicable)
      j["results"]["checks"]["asymptote_ratio"] = rep.asymptote_ratio;
    ok = ok && rep.pass();
    std::printf("checks: lipschitz %s, monotone %s\n", rep.lipschitz_ok ? "ok" : "FAIL",
                rep.monotone_ok ? "ok" : "FAIL");
  }

  if (cfg.check == "symmetry") {
    json sym = json::array();
    double worst = 0;
    for (const auto& cp : tr.points) {
      if (cp.p >= 0 || !cp.refined) continue;
      for (const auto& mate : tr.points) {
        if (!mate.refined || std::abs(mate.p + cp.p) > 1e-12) continue;
        const double defect = std::abs(cp.c - mate.c - mate.p);
        worst = std::max(worst, defect);
        sym.push_back({{"p", mate.p}, {"defect", defect}});
        std::printf("symmetry p=%g defect=%.3e\n", mate.p, defect);
      }
    }
    j["results"]["symmetry_defect"] = worst;
    j["results"]["symmetry"] = sym;
    ok = ok && worst <= 1e-4;
  }

  if (!cfg.svg.empty()) write_file(dir / cfg.svg, fucik::render_svg(rows, tr.lam1, lam2));
  write_file(dir / "curve.json", j.dump(2) + "\n");
  std::printf("%zu points, %d unrefined, %s\n", rows.size(), unrefined, ok ? "pass" : "FAIL");
  return ok ? 0 : 2;
}

struct NonlinearConfig {
  double f0 = 2.0;
  double finf = 1.6;
  int cutoff = 801;
  std::uint64_t seed = 1;
  std::string out;
};

int run_nonlinear(const NonlinearConfig& cfg) {
  fucik::FdOperator<double> op(
      fucik::build_grid<double>(1, fucik::Backend::finite_difference, cfg.cutoff));
  fucik::Nonlinearity<double> nl;
  nl.f0 = cfg.f0;
  nl.finf = cfg.finf;
  fucik::NonlinearProblem<fucik::FdOperator<double>> prob(op, nl);  // throws on bad slopes
  const fucik::SolutionPair<double> pair = fucik::solve_two_solutions(prob, {}, cfg.seed);

  const fs::path dir = resolve_out_dir(cfg.out);
  const auto& axis = op.grid().axis;
  const auto profile_csv = [&](const fucik::VecX<double>& z) {
    const fucik::VecX<double> u = prob.to_profile(z);
    std::string s = "x,u\n";
    char buf[96];
    for (Eigen::Index i = 0; i < axis.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", axis[i], u[i]);
      s += buf;
    }
    return s;
  };
  write_file(dir / "solution1.csv", profile_csv(pair.u1));
  write_file(dir / "solution2.csv", profile_csv(pair.u2));

  const bool energy_split = pair.energy1 < 0 && 0 < pair.energy2;
  const bool residuals_ok = pair.residual1 < 1e-6 && pair.residual2 < 1e-6;
  const bool nonneg_ok = pair.min_sample1 >= -1e-10 && pair.min_sample2 >= -1e-10;
  const bool separated_ok = pair.separation > 1e-3;
  const bool ok = energy_split && residuals_ok && nonneg_ok && separated_ok;

  json j;
  j["schema_version"] = 1;
  j["command"] = "nonlinear";
  j["options"] = {{"f0", cfg.f0}, {"finf", cfg.finf}, {"cutoff", cfg.cutoff}, {"seed", cfg.seed}};
  j["results"] = {{"energy1", pair.energy1},
                  {"energy2", pair.energy2},
                  {"residual1", pair.residual1},
                  {"residual2", pair.residual2},
                  {"stationarity1", pair.stationarity1},
                  {"ball_multiplier", pair.multiplier1},
                  {"min_sample1", pair.min_sample1},
                  {"min_sample2", pair.min_sample2},
                  {"separation", pair.separation},
                  {"rho", pair.geometry.rho},
                  {"sphere_min", pair.geometry.min_on_sphere},
                  {"geometry_detected", pair.geometry.detected},
                  {"pass", ok}};
  write_file(dir / "nonlinear.json", j.dump(2) + "\n");

  std::printf("energies %.6e / %.6e, residuals %.3e / %.3e, min samples %.3e / %.3e, separation %.3e\n",
              pair.energy1, pair.energy2, pair.residual1, pair.residual2, pair.min_sample1,
              pair.min_sample2, pair.separation);
  std::printf("pair invariants: %s\n", ok ? "pass" : "FAIL");
  return ok ? 0 : 2;
}

struct PlotConfig {
  std::string input = "curve.csv";
  std::string output = "curve.svg";
  double lam1 = 0.5;
  double lam2 = 1.0;
  std::string out;
};

int run_plot(const PlotConfig& cfg) {
  const std::vector<fucik::CurveRow> rows = fucik::parse_csv(read_file(cfg.input));
  write_file(fs::path(resolve_out_dir(cfg.out)) / cfg.output,
             fucik::render_svg(rows, cfg.lam1, cfg.lam2));
  std::printf("%zu rows plotted\n", rows.size());
  return 0;
}

int run_verify() {
  int failures = 0;
  const auto line = [&](const char* name, bool pass, double measured) {
    std::printf("%-34s %s (%.3e)\n", name, pass ? "pass" : "FAIL", measured);
    failures += pass ? 0 : 1;
  };

  {
    fucik::SpectralOperator<double> op(fucik::build_grid<double>(1, fucik::Backend::spectral, 32));
    const auto rep = fucik::verify_spectrum(fucik::eigensystem(op, 12).values, 1, 1e-12);
    line("spectral levels n=1", rep.pass, rep.max_error);
  }
  {
    fucik::SpectralOperator<double> op(fucik::build_grid<double>(2, fucik::Backend::spectral, 8));
    const auto rep = fucik::verify_spectrum(fucik::eigensystem(op, 21).values, 2, 1e-12);
    line("spectral levels n=2", rep.pass, rep.max_error);
  }
  {
    fucik::FdOperator<double> op(fucik::build_grid<double>(1, fucik::Backend::finite_difference, 801));
    const auto rep = fucik::verify_spectrum(fucik::eigensystem(op, 6).values, 1, 2e-3);
    line("finite-difference levels", rep.pass, rep.max_error);
  }
  {
    fucik::MatX<double> A(2, 2);
    A << 2, -1, -1, 2;
    fucik::DenseOperator<double> toy(A);
    double worst = 0;
    for (const double p : {0.0, 0.5, 1.0, 3.0}) {
      const auto cp = fucik::newton_refine(toy, fucik::mountain_pass_cp(toy, p));
      double scan = std::numeric_limits<double>::quiet_NaN();
      for (const double v : fucik::dense_scan_oracle(A, p))
        if (v > toy.lam1() + 1e-3) {
          scan = v;
          break;
        }
      worst = std::max(worst, std::abs(cp.c - scan));
    }
    line("matrix oracle agreement", worst <= 1e-6, worst);
  }
  {
    fucik::SpectralOperator<double> op(fucik::build_grid<double>(1, fucik::Backend::spectral, 32));
    fucik::Rng rng(7);
    double worst_refl = 0, worst_coer = 0;
    for (int i = 0; i < 1000; ++i) {
      const fucik::VecX<double> u = fucik::sphere_project(rng.gaussian_vec(op.size()));
      for (const double p : {0.5, 1.0, 5.0}) {
        const double lhs = fucik::tilde_I_p(op, fucik::VecX<double>(-u), -p);
        const double rhs = fucik::tilde_I_p(op, u, p) + p;
        worst_refl = std::max(worst_refl, std::abs(lhs - rhs));
        worst_coer = std::max(worst_coer, (op.lam1() - p) - fucik::tilde_I_p(op, u, p));
      }
    }
    line("reflection identity", worst_refl <= 1e-10, worst_refl);
    line("coercivity floor", worst_coer <= 1e-9, worst_coer);
  }
  std::printf("%s\n", failures == 0 ? "all checks pass" : "FAILURES PRESENT");
  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for the first nontrivial curve of the "
               "asymmetric eigenvalue problem of the self-similar heat operator"};
  app.require_subcommand(1);

  SpectrumConfig sc;
  CLI::App* spectrum = app.add_subcommand("spectrum", "verify eigenvalues against the closed form");
  spectrum->add_option("--n", sc.n, "dimension (1 or 2)")->check(CLI::IsMember({1, 2}));
  spectrum->add_option("--backend", sc.backend, "spectral or fd")
      ->check(CLI::IsMember({"spectral", "fd"}));
  spectrum->add_option("--kmax", sc.kmax, "levels to verify");
  spectrum->add_option("--cutoff", sc.cutoff, "modes per axis (spectral) or nodes (fd)");
  spectrum->add_option("--radius", sc.radius, "truncation radius");
  spectrum->add_option("--tol", sc.tol, "eigenvalue tolerance");
  spectrum->add_option("--out", sc.out, "output directory");

  CurveConfig cc;
  CLI::App* curve = app.add_subcommand("curve", "trace the first nontrivial curve");
  curve->add_option("--p", cc.pspec, "grid: first:last:step, comma list, or one value");
  curve->add_option("--backend", cc.backend, "spectral or fd")
      ->check(CLI::IsMember({"spectral", "fd"}));
  curve->add_option("--cutoff", cc.cutoff, "modes (spectral) or nodes (fd)");
  curve->add_option("--nodes", cc.nodes, "path nodes (odd, >= 5)");
  curve->add_option("--check", cc.check, "extra check: symmetry");
  curve->add_option("--oracle", cc.oracle, "compare against an oracle: matrix");
  curve->add_option("--svg", cc.svg, "also render an SVG with this file name");
  curve->add_option("--out", cc.out, "output directory");

  NonlinearConfig nc;
  CLI::App* nonlinear = app.add_subcommand("nonlinear", "solve the asymptotically linear problem");
  nonlinear->add_option("--f0", nc.f0, "slope at zero");
  nonlinear->add_option("--finf", nc.finf, "slope at infinity");
  nonlinear->add_option("--cutoff", nc.cutoff, "finite-difference nodes");
  nonlinear->add_option("--seed", nc.seed, "seed for the geometry scan");
  nonlinear->add_option("--out", nc.out, "output directory");

  PlotConfig pc;
  CLI::App* plot = app.add_subcommand("plot", "render a traced curve as SVG");
  plot->add_option("--in", pc.input, "curve CSV file");
  plot->add_option("--svg", pc.output, "output SVG file name");
  plot->add_option("--lam1", pc.lam1, "ground level for the cross lines");
  plot->add_option("--lam2", pc.lam2, "second level for the diagonal marker");
  plot->add_option("--out", pc.out, "output directory");

  CLI::App* verify = app.add_subcommand("verify", "run the quick cross-check suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (spectrum->parsed()) return run_spectrum(sc);
    if (curve->parsed()) return run_curve(cc);
    if (nonlinear->parsed()) return run_nonlinear(nc);
    if (plot->parsed()) return run_plot(pc);
    if (verify->parsed()) return run_verify();
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
