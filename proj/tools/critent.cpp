// critent: command-line front end for the entropy models.
//
// Exit status: 0 success, 1 invalid input, 2 quadrature did not converge,
// 3 a requested check failed.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "critent/critent.hpp"

using namespace critent;
using nlohmann::json;

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitConvergence = 2;
constexpr int kExitCheck = 3;

struct Globals {
  std::string format = "csv";
  std::string output;
  std::size_t workers = 1;
  std::uint64_t seed = 12345;
  std::string config;
  bool check = false;
};

struct Emitter {
  const Globals& g;

  void write(const std::string& text) const {
    if (g.output.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(g.output, std::ios::binary);
    if (!out) throw DomainError("cannot open output file " + g.output);
    out << text;
  }

  void records(const std::vector<analysis::SweepRecord>& rows, const std::string& model) const {
    const auto notes = io::unit_notes(model);
    if (g.format == "json") {
      write(io::to_json(rows, notes).dump(2) + "\n");
    } else {
      std::ostringstream out;
      io::write_csv(out, rows, notes);
      write(out.str());
    }
  }

  // Generic table: header plus numeric or string cells.
  void table(const std::vector<std::string>& header, const std::vector<std::vector<json>>& rows,
             const std::vector<std::string>& notes = {}) const {
    if (g.format == "json") {
      json out = {{"notes", notes}, {"columns", header}, {"rows", json::array()}};
      for (const auto& row : rows) {
        json obj;
        for (std::size_t k = 0; k < header.size(); ++k) obj[header[k]] = row[k];
        out["rows"].push_back(obj);
      }
      write(out.dump(2) + "\n");
      return;
    }
    std::ostringstream out;
    for (const auto& n : notes) out << "# " << n << '\n';
    for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (k) out << ',';
        if (row[k].is_number()) out << io::format_number(row[k].get<double>());
        else if (row[k].is_string()) out << io::csv_field(row[k].get<std::string>());
        else if (row[k].is_boolean()) out << (row[k].get<bool>() ? "true" : "false");
      }
      out << '\n';
    }
    write(out.str());
  }

  void fits(const std::vector<std::pair<std::string, analysis::FitResult>>& fits,
            const std::vector<analysis::Sample>& points = {}) const {
    if (g.format == "json") {
      json out = {{"fits", json::array()}};
      for (const auto& [label, f] : fits) {
        json j = io::to_json(f);
        j["label"] = label;
        out["fits"].push_back(j);
      }
      if (!points.empty()) {
        out["points"] = json::array();
        for (const auto& p : points) out["points"].push_back({{"x", p.x}, {"y", p.y}});
      }
      write(out.dump(2) + "\n");
      return;
    }
    std::ostringstream out;
    out << "label,kind,amplitude,coefficients,residual_norm,relative_residual,point_count,x_min,x_max\n";
    for (const auto& [label, f] : fits) {
      std::string coeffs;
      for (std::size_t k = 0; k < f.coefficients.size(); ++k) coeffs += (k ? " " : "") + io::format_number(f.coefficients[k]);
      out << io::csv_field(label) << ',' << analysis::to_string(f.kind) << ',' << io::format_number(f.amplitude) << ','
          << coeffs << ',' << io::format_number(f.residual_norm) << ',' << io::format_number(f.relative_residual())
          << ',' << f.point_count << ',' << io::format_number(f.x_min) << ',' << io::format_number(f.x_max) << '\n';
    }
    if (!points.empty()) {
      out << "\nx,y\n";
      for (const auto& p : points) out << io::format_number(p.x) << ',' << io::format_number(p.y) << '\n';
    }
    write(out.str());
  }
};

struct AxisOpts {
  analysis::Axis axis;

  void add(CLI::App* app, const std::string& name, const std::string& what, analysis::Axis defaults) {
    axis = defaults;
    app->add_option("--" + name + "-min", axis.min, what + " grid start")->capture_default_str();
    app->add_option("--" + name + "-max", axis.max, what + " grid end")->capture_default_str();
    app->add_option("--" + name + "-count", axis.count, what + " grid points (inclusive, linear)")
        ->capture_default_str();
  }
};

ising2d::Ensemble parse_ensemble(const std::string& s) {
  return s == "broken" ? ising2d::Ensemble::broken : ising2d::Ensemble::symmetric;
}

tfim::Sector parse_sector(const std::string& s) { return s == "odd" ? tfim::Sector::odd : tfim::Sector::even; }

std::vector<analysis::Sample> read_points(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) throw DomainError("cannot open input file " + path);
    in = &file;
  }
  std::vector<analysis::Sample> pts;
  std::string line;
  while (std::getline(*in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double x = 0.0, y = 0.0;
    if (!(fields >> x >> y)) {
      if (pts.empty()) continue;  // header line
      throw DomainError("fit input: cannot parse line '" + line + "'");
    }
    pts.push_back({x, y});
  }
  return pts;
}

// Fill options that were not given on the command line from a JSON object.
// Keys are long option names without dashes; nested objects keyed by
// subcommand name apply to that subcommand and override outer keys.
void apply_config(CLI::App& app, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file " + path);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("config: ") + e.what());
  }
  if (!cfg.is_object()) throw DomainError("config: top level must be an object");

  std::function<void(CLI::App*, const json&)> visit = [&](CLI::App* sub, const json& scope) {
    for (CLI::Option* opt : sub->get_options()) {
      if (opt->count() > 0 || opt->get_lnames().empty()) continue;
      const std::string& name = opt->get_lnames().front();
      const json* value = nullptr;
      if (scope.contains(name)) value = &scope[name];
      if (!value) continue;
      std::string text;
      if (value->is_string()) text = value->get<std::string>();
      else if (value->is_boolean()) text = value->get<bool>() ? "true" : "false";
      else if (value->is_number()) text = value->dump();
      else throw DomainError("config: option " + name + " must be a scalar");
      opt->add_result(text);
      opt->run_callback();
    }
    for (CLI::App* child : sub->get_subcommands()) {
      json inner = scope;
      if (scope.contains(child->get_name()) && scope[child->get_name()].is_object()) {
        for (const auto& [k, v] : scope[child->get_name()].items()) inner[k] = v;
      }
      visit(child, inner);
    }
  };
  visit(&app, cfg);
}

int run(int argc, char** argv) {
  CLI::App app{"Mutual information between spin pairs near critical points."};
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(
      "Defaults: ensemble symmetric, sector even, quadrature grid 4096 doubling to 2^20 (tolerance 1e-10).\n"
      "Derivative steps: dT = min(1e-3, |T - T_c|/10), dlambda = min(1e-3, 0.1/N).\n"
      "Global options may follow the subcommand. Exit: 0 ok, 1 invalid input, 2 no convergence, 3 check failed.");
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--output,-o", g.output, "Write output to this file instead of stdout");
  app.add_option("--workers", g.workers, "Worker threads for sweeps (results do not depend on this)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{256}))
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for random property suites")->capture_default_str();
  app.add_option("--config", g.config, "JSON file supplying options absent from the command line")
      ->check(CLI::ExistingFile);
  app.add_flag("--check", g.check, "Exit 3 when the command's acceptance check fails");

  std::function<int()> action;
  const Emitter out{g};
  const std::string grid_help = "Initial quadrature grid (doubles until converged, cap 2^20)";

  // dimer
  auto* dimer = app.add_subcommand("dimer", "Heisenberg dimer MI over a temperature grid");
  AxisOpts dimer_t;
  dimer_t.add(dimer, "t", "Temperature", {0.1, 10.0, 100});
  dimer->callback([&] {
    action = [&] {
      dimer_t.axis.check("T");
      out.records(analysis::sweep_dimer(dimer_t.axis, g.workers), "dimer");
      return 0;
    };
  });

  // ising2d
  auto* ising = app.add_subcommand("ising2d", "2D Ising diagonal pair")->require_subcommand(1);
  std::string ensemble_name = "symmetric";
  std::size_t grid = quadrature::kDefaultGridPoints;
  auto add_ising_common = [&](CLI::App* sub) {
    sub->add_option("--ensemble", ensemble_name, "Single-site state: symmetric (m=0) or broken (m>0)")
        ->check(CLI::IsMember({"symmetric", "broken"}))
        ->capture_default_str();
    sub->add_option("--grid", grid, grid_help)->check(CLI::Range(std::size_t{8}, quadrature::kMaxGridPoints))
        ->capture_default_str();
  };

  double ising_t = ising2d::critical_temperature();
  int ising_n = 10;
  auto* corr = ising->add_subcommand("corr", "Diagonal correlation G(T, n) for n = 1..N");
  corr->add_option("--t", ising_t, "Temperature (Ising coupling units); default T_c")->capture_default_str();
  corr->add_option("--n", ising_n, "Largest separation")->capture_default_str();
  add_ising_common(corr);
  corr->callback([&] {
    action = [&] {
      const ising2d::DiagonalCorrelator c(ising_t, ising_n, grid);
      const double m = ising2d::magnetization(ising_t);
      std::vector<std::vector<json>> rows;
      for (int n = 1; n <= ising_n; ++n) rows.push_back({ising_t, n, c(n), m});
      out.table({"T", "r", "G", "m"}, rows, {"T in units of Ising coupling", "r = separation along the lattice diagonal"});
      return 0;
    };
  });

  int ising_r = 1;
  auto* ising_mi = ising->add_subcommand("mi", "MI of one diagonal pair");
  ising_mi->add_option("--t", ising_t, "Temperature; default T_c")->capture_default_str();
  ising_mi->add_option("--r", ising_r, "Diagonal separation")->capture_default_str();
  add_ising_common(ising_mi);
  ising_mi->callback([&] {
    action = [&] {
      const auto rows = analysis::sweep_ising2d({ising_t, ising_t, 1}, {double(ising_r), double(ising_r), 1},
                                                parse_ensemble(ensemble_name), 1, grid);
      if (!rows.front().ok()) throw DomainError(*rows.front().error);
      out.records(rows, "ising2d");
      return 0;
    };
  });

  auto* ising_sweep = ising->add_subcommand("sweep", "MI over a temperature x separation grid");
  AxisOpts ising_ts, ising_rs;
  ising_ts.add(ising_sweep, "t", "Temperature", {1.5, 3.5, 21});
  ising_rs.add(ising_sweep, "r", "Separation", {1.0, 50.0, 50});
  add_ising_common(ising_sweep);
  ising_sweep->callback([&] {
    action = [&] {
      out.records(analysis::sweep_ising2d(ising_ts.axis, ising_rs.axis, parse_ensemble(ensemble_name), g.workers, grid),
                  "ising2d");
      return 0;
    };
  });

  auto* exponents = ising->add_subcommand(
      "exponents", "Fit dMI/dT against |T - T_c| (derivative step min(1e-3, |T - T_c|/10))");
  int exp_n = 30;
  double d_min = 1e-3, d_max = 1e-1;
  int d_count = 9;
  std::string side_name = "both";
  exponents->add_option("--n", exp_n, "Diagonal separation")->capture_default_str();
  exponents->add_option("--d-min", d_min, "Smallest |T - T_c|")->capture_default_str();
  exponents->add_option("--d-max", d_max, "Largest |T - T_c|")->capture_default_str();
  exponents->add_option("--d-count", d_count, "Log-spaced points")->capture_default_str();
  exponents->add_option("--side", side_name, "below, above or both")
      ->check(CLI::IsMember({"below", "above", "both"}))
      ->capture_default_str();
  exponents->add_option("--ensemble", ensemble_name, "symmetric or broken")
      ->check(CLI::IsMember({"symmetric", "broken"}))
      ->capture_default_str();
  exponents->footer(
      "Below T_c: power law |dMI/dT| = A d^p. Above: dMI/dT = a + b ln d.\n"
      "--check requires p = -0.75 +- 0.05 below and relative residual < 0.05 above.");
  exponents->callback([&] {
    action = [&] {
      const auto distances = analysis::logspace(d_min, d_max, d_count);
      std::vector<std::pair<std::string, analysis::FitResult>> fits;
      std::vector<analysis::Sample> points;
      bool ok = true;
      for (auto side : {analysis::Side::below, analysis::Side::above}) {
        if (side_name != "both" && side_name != analysis::to_string(side)) continue;
        const auto samples =
            analysis::ising_derivative_samples(side, exp_n, distances, parse_ensemble(ensemble_name), g.workers);
        const auto fit = analysis::ising_derivative_fit(side, samples);
        if (side == analysis::Side::below) ok = ok && std::abs(fit.coefficients[0] + 0.75) <= 0.05;
        else ok = ok && fit.relative_residual() < 0.05;
        fits.emplace_back(analysis::to_string(side), fit);
      }
      out.fits(fits, points);
      if (g.check && !ok) {
        std::cerr << "check failed: derivative scaling outside tolerance\n";
        return kExitCheck;
      }
      return 0;
    };
  });

  // tfim
  auto* chain = app.add_subcommand("tfim", "Transverse-field Ising ring (free fermions)")->require_subcommand(1);
  std::string sector_name = "even";
  auto add_sector = [&](CLI::App* sub) {
    sub->add_option("--sector", sector_name, "Fermion parity sector: even (antiperiodic) or odd")
        ->check(CLI::IsMember({"even", "odd"}))
        ->capture_default_str();
  };
  double lambda = 1.0, chain_t = 0.0;
  int chain_n = 100, chain_r = 1;
  auto* chain_mi = chain->add_subcommand("mi", "MI of sites 0 and r");
  chain_mi->add_option("--lambda", lambda, "Coupling (units of the transverse field)")->capture_default_str();
  chain_mi->add_option("--t", chain_t, "Temperature")->capture_default_str();
  chain_mi->add_option("--n", chain_n, "Ring length (even)")->capture_default_str();
  chain_mi->add_option("--r", chain_r, "Separation, 1..N/2")->capture_default_str();
  add_sector(chain_mi);
  chain_mi->callback([&] {
    action = [&] {
      const auto rows = analysis::sweep_tfim({lambda, lambda, 1}, {chain_t, chain_t, 1},
                                             {double(chain_n), double(chain_n), 1},
                                             {double(chain_r), double(chain_r), 1}, parse_sector(sector_name));
      if (!rows.front().ok()) throw DomainError(*rows.front().error);
      out.records(rows, "tfim");
      return 0;
    };
  });

  auto* chain_sweep = chain->add_subcommand("sweep", "MI over lambda x T x N x r grids");
  AxisOpts ls, ts, ns, rs;
  ls.add(chain_sweep, "lambda", "Coupling", {0.0, 2.0, 21});
  ts.add(chain_sweep, "t", "Temperature", {0.0, 0.0, 1});
  ns.add(chain_sweep, "n", "Ring length", {1000.0, 1000.0, 1});
  rs.add(chain_sweep, "r", "Separation", {1.0, 50.0, 50});
  add_sector(chain_sweep);
  chain_sweep->callback([&] {
    action = [&] {
      out.records(analysis::sweep_tfim(ls.axis, ts.axis, ns.axis, rs.axis, parse_sector(sector_name), g.workers),
                  "tfim");
      return 0;
    };
  });

  auto* scaling = chain->add_subcommand("scaling", "Finite-size scaling of dS/dlambda at T = 0");
  std::string scaling_kind = "nearest";
  std::vector<int> sizes;
  scaling->add_option("--kind", scaling_kind,
                      "nearest: dS(0,1)/dlambda at lambda=1, fit a + b ln N; "
                      "farthest: peak over lambda of dS(0,N/2)/dlambda, fit a + b ln^3 N")
      ->check(CLI::IsMember({"nearest", "farthest"}))
      ->capture_default_str();
  scaling->add_option("--sizes", sizes, "Ring lengths (default 64..4096 doubling, or 32..512 for farthest)");
  scaling->footer("Derivative step in lambda: min(1e-3, 0.1/N).\n"
                  "--check requires b > 0 and relative residual < 0.05 (nearest) or < 0.10 and better than ln N (farthest).");
  scaling->callback([&] {
    action = [&] {
      const bool nearest = scaling_kind == "nearest";
      if (sizes.empty()) {
        sizes = nearest ? std::vector<int>{64, 128, 256, 512, 1024, 2048, 4096} : std::vector<int>{32, 64, 128, 256, 512};
      }
      std::vector<analysis::Sample> pts;
      if (nearest) {
        const auto slopes = analysis::parallel_map(
            sizes.size(),
            [&](std::size_t k) {
              return analysis::tfim_coupling_slope(1.0, 0.0, sizes[k], 1, tfim::coupling_step(sizes[k]));
            },
            g.workers);
        for (std::size_t k = 0; k < sizes.size(); ++k) pts.push_back({double(sizes[k]), slopes[k]});
      } else {
        for (int n : sizes) pts.push_back({double(n), analysis::tfim_farthest_peak(n, g.workers).slope});
      }
      std::vector<std::pair<std::string, analysis::FitResult>> fits;
      const auto linear = analysis::log_poly_fit(pts, 1);
      fits.emplace_back("ln", linear);
      bool ok = linear.coefficients[0] > 0.0 && linear.relative_residual() < 0.05;
      if (!nearest) {
        const auto cubic = analysis::log_poly_fit(pts, 3);
        fits.emplace_back("ln3", cubic);
        ok = cubic.coefficients[0] > 0.0 && cubic.relative_residual() < 0.10 &&
             cubic.relative_residual() < linear.relative_residual();
      }
      out.fits(fits, pts);
      if (g.check && !ok) {
        std::cerr << "check failed: scaling fit outside tolerance\n";
        return kExitCheck;
      }
      return 0;
    };
  });

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact-diagonalization cross-checks")->require_subcommand(1);
  auto* compare = oracle->add_subcommand("compare", "Free-fermion vs exact diagonalization for r = 1..N/2");
  int oracle_n = 10;
  double oracle_lambda = 1.0, oracle_t = 0.0, max_abs_diff = 1e-8;
  compare->add_option("--n", oracle_n, "Ring length (4..12)")->capture_default_str();
  compare->add_option("--lambda", oracle_lambda, "Coupling")->capture_default_str();
  compare->add_option("--t", oracle_t, "Temperature")->capture_default_str();
  compare->add_option("--max-abs-diff", max_abs_diff, "Tolerance on the largest |difference|; exit 3 above it")
      ->capture_default_str();
  compare->callback([&] {
    action = [&] {
      std::vector<std::vector<json>> rows;
      double worst = 0.0;
      for (int r = 1; r <= oracle_n / 2; ++r) {
        const tfim::Params p{oracle_lambda, oracle_t, oracle_n, r, tfim::Sector::even};
        const auto ff = tfim::correlations(p);
        const double ff_mi = tfim::correlation_entropy_tfim(p).value;
        const auto ed = ed::oracle_observables(oracle_n, oracle_lambda, oracle_t, r);
        const std::pair<const char*, std::pair<double, double>> quantities[] = {
            {"mz", {ff.mz, ed.correlations.mz}},       {"gxx", {ff.gxx, ed.correlations.gxx}},
            {"gyy", {ff.gyy, ed.correlations.gyy}},    {"gzz", {ff.gzz, ed.correlations.gzz}},
            {"MI", {ff_mi, ed.mutual_information}}};
        for (const auto& [name, v] : quantities) {
          const double diff = std::abs(v.first - v.second);
          worst = std::max(worst, diff);
          rows.push_back({r, name, v.first, v.second, diff});
        }
      }
      rows.push_back({0, "max", json(nullptr), json(nullptr), worst});
      out.table({"r", "quantity", "free_fermion", "exact", "abs_diff"}, rows,
                {"N=" + std::to_string(oracle_n) + " lambda=" + io::format_number(oracle_lambda) +
                 " T=" + io::format_number(oracle_t) + "; MI in bits; r=0 row carries the maximum"});
      if (!(worst <= max_abs_diff)) {
        std::cerr << "max |difference| " << io::format_number(worst) << " exceeds " << io::format_number(max_abs_diff)
                  << '\n';
        return kExitCheck;
      }
      return 0;
    };
  });

  // fit
  auto* fit = app.add_subcommand("fit", "Fit (x, y) pairs read from a CSV or whitespace file")->require_subcommand(1);
  std::string input = "-";
  bool full_cubic = false;
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input,-i", input, "Two-column input; '-' reads stdin; '#' lines and a header are skipped")
        ->capture_default_str();
  };
  auto* fit_power = fit->add_subcommand("power", "y = A x^p");
  auto* fit_log = fit->add_subcommand("log", "y = a + b ln x");
  auto* fit_cube = fit->add_subcommand("logcube", "y = a + b ln^3 x");
  for (auto* sub : {fit_power, fit_log, fit_cube}) add_input(sub);
  fit_cube->add_flag("--full", full_cubic, "Include ln x and ln^2 x terms");
  auto fit_action = [&](int kind) {
    return [&, kind] {
      action = [&, kind] {
        const auto pts = read_points(input);
        const auto result = kind == 0   ? analysis::power_law_fit(pts)
                            : kind == 1 ? analysis::log_poly_fit(pts, 1)
                                        : analysis::log_poly_fit(pts, 3, full_cubic);
        out.fits({{analysis::to_string(result.kind), result}});
        return 0;
      };
    };
  };
  fit_power->callback(fit_action(0));
  fit_log->callback(fit_action(1));
  fit_cube->callback(fit_action(2));

  // props
  auto* props = app.add_subcommand("props", "Seeded property suites on random states");
  int trials = 1000;
  props->add_option("--trials", trials, "Random states per suite")->check(CLI::PositiveNumber)->capture_default_str();
  props->callback([&] {
    action = [&] {
      StateSampler sampler(g.seed);
      double min_mi = 1e300, worst_identity = 0.0, min_klein = 1e300, worst_bound = 0.0;
      for (int k = 0; k < trials; ++k) {
        const auto rho = sampler.mixed_state({2, 2});
        const double mi = mutual_information(rho).value;
        const auto product = tensor_product(partial_trace(rho, {0}), partial_trace(rho, {1}));
        min_mi = std::min(min_mi, mi);
        worst_identity = std::max(worst_identity, std::abs(relative_entropy(rho, product) - mi));
        min_klein = std::min(min_klein, relative_entropy(rho, sampler.mixed_state({2, 2})));
        const auto mixed = sampler.mixed_state({2, 3});
        const double s = von_neumann_entropy(mixed).value;
        worst_bound = std::max({worst_bound, -s, s - std::log2(6.0), -mutual_information(mixed).value});
      }
      const bool ok_mi = min_mi >= -1e-9, ok_id = worst_identity <= 1e-9, ok_klein = min_klein >= -1e-9,
                 ok_bound = worst_bound <= 1e-9;
      out.table({"property", "statistic", "value", "tolerance", "pass"},
                {{"mi_nonnegative", "min", min_mi, -1e-9, ok_mi},
                 {"relative_entropy_equals_mi", "max_abs_diff", worst_identity, 1e-9, ok_id},
                 {"klein", "min", min_klein, -1e-9, ok_klein},
                 {"qubit_qutrit_bounds", "max_violation", worst_bound, 1e-9, ok_bound}},
                {"seed=" + std::to_string(g.seed) + " trials=" + std::to_string(trials)});
      return ok_mi && ok_id && ok_klein && ok_bound ? 0 : kExitCheck;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    // Usage of the innermost subcommand that was selected.
    const CLI::App* target = &app;
    for (;;) {
      const auto chosen = target->get_subcommands();
      if (chosen.empty()) break;
      target = chosen.front();
    }
    std::cerr << target->help();
    return kExitInvalid;
  }
  if (!g.config.empty()) apply_config(app, g.config);
  if (!action) return kExitInvalid;
  return action();
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const CLI::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
