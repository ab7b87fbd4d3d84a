// entfluc command line: run sweeps, list experiments, fit scaling laws.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "entfluc/config.hpp"
#include "entfluc/error.hpp"
#include "entfluc/scaling_fit.hpp"
#include "entfluc/sweeps.hpp"

using namespace entfluc;

namespace {

int cmd_run(const std::string& path, bool large, const std::string& output, int threads) {
  auto raw = KeyValueConfig::load(path);
  if (!output.empty()) raw.set("output", output);
  if (threads > 0) raw.set("threads", static_cast<double>(threads));
  const auto cfg = ExperimentConfig::from_config(raw, large);
  const auto result = run_experiment(cfg);

  if (cfg.output.empty() || cfg.output == "-") {
    write_csv(std::cout, result, cfg);
  } else {
    std::ofstream out(cfg.output);
    if (!out) throw Error("cannot write '" + cfg.output + "'");
    write_csv(out, result, cfg);
    std::cerr << "wrote " << result.rows.size() << " rows to " << cfg.output << '\n';
  }
  for (const auto& note : result.notes) std::cerr << "note: " << note << '\n';
  std::size_t failed = 0;
  for (const auto& row : result.rows) failed += row.error.empty() ? 0 : 1;
  if (failed) std::cerr << failed << " of " << result.rows.size() << " points failed\n";
  return failed ? 1 : 0;
}

int cmd_list() {
  for (const auto& e : list_experiments()) {
    std::cout << std::left << std::setw(18) << e.name << e.description << '\n';
  }
  return 0;
}

int cmd_fit(const std::string& path, const std::vector<std::string>& law_names,
            const std::string& xcol, const std::string& ycol, const std::string& where) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  auto table = read_csv(in);
  if (!where.empty()) {
    // keep rows with column == value
    const auto eq = where.find('=');
    if (eq == std::string::npos) throw Error("--where expects column=value");
    const auto c = table.column(where.substr(0, eq));
    const double v = std::stod(where.substr(eq + 1));
    std::erase_if(table.rows, [&](const auto& row) {
      try {
        return std::stod(row.at(c)) != v;
      } catch (const std::exception&) {
        return true;
      }
    });
  }
  std::vector<ScalingLaw> laws;
  for (const auto& n : law_names) laws.push_back(parse_scaling_law(n));
  const auto series = table.series(xcol, ycol);
  const auto report = fit_scaling(series, laws);

  std::cout << "fit " << ycol << " vs " << xcol << " (" << series.size() << " points)\n";
  std::cout << std::setprecision(8);
  for (const auto& f : report.fits) {
    std::cout << "  " << std::left << std::setw(10) << to_string(f.law) << " coefficients";
    for (double c : f.coefficients) std::cout << ' ' << c;
    std::cout << "  rms " << f.rms << "  max_rel_residual " << f.max_relative_residual << "  aic "
              << f.aic << '\n';
  }
  std::cout << "best: " << to_string(report.best) << '\n';
  for (const auto& worse : report.fits) {
    if (worse.law != report.best) {
      std::cout << "residual ratio " << to_string(worse.law) << "/" << to_string(report.best)
                << " = " << report.residual_ratio(worse.law, report.best) << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entfluc - entanglement and fluctuation sweeps"};
  app.set_version_flag("--version", code_version());
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run the experiment described by a config file");
  std::string config_path;
  std::string output;
  bool large = false;
  int threads = 0;
  run->add_option("config", config_path, "key = value config file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", output, "CSV path (overrides the config; '-' for stdout)");
  run->add_flag("--large", large, "allow sizes above the desk-scale budget");
  run->add_option("-j,--threads", threads, "worker threads (default: all cores)");

  app.add_subcommand("list-experiments", "list experiment ids");

  auto* fit = app.add_subcommand("fit", "fit size-scaling laws to two CSV columns");
  std::string csv_path;
  std::vector<std::string> laws{"constant", "linear", "linearlog"};
  std::string xcol = "L_s";
  std::string ycol = "delta2_N";
  std::string where;
  fit->add_option("csv", csv_path, "CSV written by 'run'")->required()->check(CLI::ExistingFile);
  fit->add_option("--law", laws, "constant, linear, linearlog (repeatable)")->delimiter(',');
  fit->add_option("-x,--x", xcol, "size column")->capture_default_str();
  fit->add_option("-y,--y", ycol, "value column")->capture_default_str();
  fit->add_option("--where", where, "keep only rows with column=value");

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) return cmd_run(config_path, large, output, threads);
    if (fit->parsed()) return cmd_fit(csv_path, laws, xcol, ycol, where);
    return cmd_list();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
