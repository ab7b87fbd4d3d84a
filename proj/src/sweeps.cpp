#include "entfluc/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "entfluc/ed.hpp"
#include "entfluc/entanglement.hpp"
#include "entfluc/error.hpp"
#include "entfluc/fermion_models.hpp"
#include "entfluc/freefermion.hpp"
#include "entfluc/observable.hpp"
#include "entfluc/scaling_fit.hpp"
#include "entfluc/single_particle.hpp"
#include "entfluc/spin_models.hpp"
#include "entfluc/uncertainty.hpp"

#ifndef ENTFLUC_VERSION
#define ENTFLUC_VERSION "unknown"
#endif

namespace entfluc {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kFormulaTol = 1e-8;
const double kScaledEntropy = 4.0 * std::numbers::ln2;  // S~ = S / (4 ln 2)

// Desk-scale size budget; larger runs need `large = true` or --large.
constexpr int kMaxAkltL = 12;
constexpr int kMaxKitaevL = 14;
constexpr int kMaxXxzL = 16;
constexpr int kMaxTiL = 4000;
constexpr int kMax2dL = 64;

const std::set<std::string> kCommonKeys = {"experiment", "output", "seed", "large", "threads"};

std::vector<double> range(double start, double stop, int points) {
  if (points < 1) throw ConfigError("grid_points must be positive");
  std::vector<double> g;
  for (int i = 0; i < points; ++i) {
    g.push_back(points == 1 ? start : start + (stop - start) * i / (points - 1));
  }
  return g;
}

std::vector<double> int_range(int lo, int hi, int step = 1) {
  std::vector<double> v;
  for (int i = lo; i <= hi; i += step) v.push_back(i);
  return v;
}

// Resolves `grid` / `grid_start, grid_stop, grid_points` into params["grid"].
void resolve_grid(KeyValueConfig& p, const std::vector<double>& fallback) {
  const bool ranged = p.has("grid_start") || p.has("grid_stop") || p.has("grid_points");
  if (ranged && p.has("grid")) throw ConfigError("give either 'grid' or 'grid_start/stop/points'");
  std::vector<double> grid = fallback;
  if (ranged) {
    grid = range(p.number("grid_start"), p.number("grid_stop"), p.integer("grid_points", 0));
  } else if (p.has("grid")) {
    grid = p.list("grid", {});
  }
  if (grid.empty()) throw ConfigError("grid is empty");
  p.set("grid", grid);
}

Boundary parse_bc(const std::string& s, bool fermions = false) {
  if (s == "open") return Boundary::Open;
  if (s == "periodic") return Boundary::Periodic;
  if (fermions && s == "antiperiodic") return Boundary::Antiperiodic;
  throw ConfigError(std::string("bc must be \"open\", \"periodic\"") +
                    (fermions ? " or \"antiperiodic\"" : "") + ", got \"" + s + "\"");
}

void fill(KeyValueConfig& p, const std::string& key, KeyValueConfig::Value v) {
  if (!p.has(key)) p.set(key, std::move(v));
}

int as_int(double v, const char* what) {
  if (v != std::floor(v)) throw ConfigError(std::string(what) + " must be integers");
  return static_cast<int>(v);
}

std::string format_number(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

std::string short_number(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

// "outcome:probability;..." skipping outcomes with negligible weight.
std::string summarize(const OutcomeDistribution& d) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < d.outcomes.size(); ++i) {
    if (d.probabilities[i] < 1e-12) continue;
    const double o = std::abs(d.outcomes[i]) < 1e-12 ? 0.0 : d.outcomes[i];
    out << (first ? "" : ";") << short_number(o) << ':' << short_number(d.probabilities[i]);
    first = false;
  }
  return out.str();
}

// Everything derived from a conserved observable's labelled spectrum.
struct ConservedAnalysis {
  double variance = 0.0;
  double pairwise = 0.0;
  double sector = 0.0;
  double spread = 0.0;
  EntropyReport entropy;
  OutcomeDistribution distribution;
  SubspaceBoundReport subspace;
};

ConservedAnalysis analyze_conserved(const ReducedDensityMatrix& rho, const SubsystemObservable& A) {
  ConservedAnalysis a;
  const auto spec = entanglement_spectrum(rho, &A);
  const auto direct = variance_direct(rho, A);
  a.variance = direct.variance;
  a.pairwise = variance_pairwise(spec, A);
  a.distribution = outcome_distribution(spec);
  a.sector = variance_sector(a.distribution);
  a.spread = std::max({std::abs(a.variance - a.pairwise), std::abs(a.variance - a.sector),
                       std::abs(a.pairwise - a.sector)});
  a.entropy = entropies(spec);
  a.subspace = subspace_bound(spec, A, EntanglementGap{});
  return a;
}

SolverOptions solver_options(const ExperimentConfig& cfg) {
  SolverOptions o;
  o.seed = cfg.seed;
  return o;
}

// Runs `task` for every point on a worker pool; rows come back in point order.
SweepResult run_pool(const ExperimentConfig& cfg, std::vector<std::string> columns,
                     std::size_t points, const std::function<std::vector<Cell>(std::size_t)>& task) {
  SweepResult result;
  result.id = cfg.id;
  result.columns = std::move(columns);
  result.rows.resize(points);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points; i = next++) {
      SweepRow& row = result.rows[i];
      try {
        row.cells = task(i);
        if (row.cells.size() != result.columns.size()) throw Error("internal: row/column mismatch");
      } catch (const std::exception& e) {
        row.error = e.what();
        row.cells.assign(result.columns.size(), Cell{kNaN});
      }
    }
  };
  unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                       : std::max(1U, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(std::max<std::size_t>(points, 1)));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return result;
}

SweepResult run_aklt(const ExperimentConfig& cfg) {
  const auto& p = cfg.params;
  SpinModelParams base;
  base.spin = SpinKind::One;
  base.J = {p.number("Jx"), p.number("Jy"), p.number("Jz")};
  base.alpha = p.number("alpha");
  base.L = p.integer("L", 0);
  base.bc = parse_bc(p.string("bc"));
  const int n = p.integer("N", 0);
  const int start = p.integer("start", 0);
  const auto grid = p.list("grid", {});
  const Bipartition part(base.L, start, n);
  auto basis = std::make_shared<const SectorBasis>(base.L, SiteKind::Spin1, TwiceSz{0});
  const auto sz = total_spin(SpinAxis::Z, n, SiteKind::Spin1);
  const auto sx = total_spin(SpinAxis::X, n, SiteKind::Spin1);

  return run_pool(
      cfg,
      {"D", "delta2_Sz", "delta2_Sx", "Sx_conserved", "s_vn", "s_renyi2", "s_tilde_vn",
       "s_tilde_renyi2", "lambda_sigma", "subspace_bound", "energy", "gap", "formula_spread",
       "formula_check", "outcomes"},
      grid.size(), [&](std::size_t i) -> std::vector<Cell> {
        SpinModelParams params = base;
        params.D = grid[i];
        const auto H = build_aklt(params, *basis);
        const auto gs = ground_state(H, basis, 1, solver_options(cfg));
        const auto rho = reduced_density_matrix(gs.ground(), part);
        const auto a = analyze_conserved(rho, sz);
        const auto x = variance_direct(rho, sx);
        return {params.D,
                a.variance,
                x.variance,
                x.conserved ? 1.0 : 0.0,
                a.entropy.s_vn,
                a.entropy.s_renyi2,
                a.entropy.s_vn / kScaledEntropy,
                a.entropy.s_renyi2 / kScaledEntropy,
                a.subspace.lambda_sigma,
                a.subspace.bound,
                gs.ground().energy,
                gs.gap,
                a.spread,
                a.spread < kFormulaTol ? 1.0 : 0.0,
                summarize(a.distribution)};
      });
}

SweepResult run_kitaev(const ExperimentConfig& cfg) {
  const auto& p = cfg.params;
  KitaevParams base;
  base.t = p.number("t");
  base.Delta = p.number("Delta_over_t") * base.t;
  base.V = p.number("V_over_Delta") * base.Delta;
  base.L = p.integer("L", 0);
  base.bc = parse_bc(p.string("bc"), true);
  const int n = p.integer("N", 0);
  const Bipartition part(base.L, p.integer("start", 0), n);
  const auto grid = p.list("grid", {});
  auto basis = std::make_shared<const SectorBasis>(base.L, SiteKind::Fermion, Parity{1});
  const auto parity = subsystem_parity(n);

  return run_pool(
      cfg,
      {"mu_over_t", "delta2_P", "s_vn", "s_renyi2", "s_tilde_vn", "s_tilde_renyi2", "lambda_sigma",
       "subspace_bound", "energy", "gap", "formula_spread", "formula_check", "outcomes"},
      grid.size(), [&](std::size_t i) -> std::vector<Cell> {
        KitaevParams params = base;
        params.mu = grid[i] * base.t;
        const auto H = build_kitaev(params, *basis);
        const auto gs = ground_state(H, basis, 1, solver_options(cfg));
        const auto rho = reduced_density_matrix(gs.ground(), part);
        const auto a = analyze_conserved(rho, parity);
        return {grid[i],
                a.variance,
                a.entropy.s_vn,
                a.entropy.s_renyi2,
                a.entropy.s_vn / kScaledEntropy,
                a.entropy.s_renyi2 / kScaledEntropy,
                a.subspace.lambda_sigma,
                a.subspace.bound,
                gs.ground().energy,
                gs.gap,
                a.spread,
                a.spread < kFormulaTol ? 1.0 : 0.0,
                summarize(a.distribution)};
      });
}

double reference_xxz_factor(double jz) {
  if (jz == 0.0) return 3.22;
  if (jz == 0.5) return 3.54;
  if (jz == 1.0) return 3.86;
  return kNaN;
}

SweepResult run_xxz(const ExperimentConfig& cfg) {
  const auto& p = cfg.params;
  const double jxy = p.number("Jx");
  const auto jzs = p.list("Jz_values", {});
  const auto ls = p.list("L_values", {});
  const Boundary bc = parse_bc(p.string("bc"));
  std::vector<std::pair<double, int>> points;
  for (double jz : jzs)
    for (double l : ls) points.emplace_back(jz, as_int(l, "L_values"));

  auto result = run_pool(
      cfg, {"Jz", "L", "L_s", "delta2_Sz", "s_vn", "s_renyi2", "ratio_vn", "formula_spread",
            "formula_check"},
      points.size(), [&](std::size_t i) -> std::vector<Cell> {
        const auto [jz, L] = points[i];
        SpinModelParams params;
        params.spin = SpinKind::Half;
        params.J = {jxy, jxy, jz};
        params.L = L;
        params.bc = bc;
        auto basis = std::make_shared<const SectorBasis>(L, SiteKind::SpinHalf, TwiceSz{0});
        const auto H = build_xyz(params, *basis);
        const auto gs = ground_state(H, basis, 1, solver_options(cfg));
        const int ls_sub = L / 2;
        const auto rho = reduced_density_matrix(gs.ground(), Bipartition(L, 0, ls_sub));
        const auto a = analyze_conserved(rho, total_spin(SpinAxis::Z, ls_sub, SiteKind::SpinHalf));
        return {jz, static_cast<double>(L), static_cast<double>(ls_sub), a.variance, a.entropy.s_vn,
                a.entropy.s_renyi2, a.entropy.s_vn / a.variance, a.spread,
                a.spread < kFormulaTol ? 1.0 : 0.0};
      });

  // Per-Jz post-processing: parity-smoothed columns and the fitted factor.
  for (const char* c : {"delta2_Sz_smoothed", "s_vn_smoothed", "scale_fit", "reference_scale"}) {
    result.columns.emplace_back(c);
  }
  for (auto& row : result.rows) row.cells.resize(result.columns.size(), Cell{kNaN});
  const std::size_t c_d = result.column("delta2_Sz");
  const std::size_t c_s = result.column("s_vn");
  for (double jz : jzs) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i].first == jz && result.rows[i].error.empty()) idx.push_back(i);
    }
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return points[a].second < points[b].second; });
    double num = 0.0;
    double den = 0.0;
    for (auto i : idx) {
      const double d = std::get<double>(result.rows[i].cells[c_d]);
      num += std::get<double>(result.rows[i].cells[c_s]) * d;
      den += d * d;
    }
    const double factor = den > 0.0 ? num / den : kNaN;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const std::size_t other = idx.size() == 1 ? idx[k] : (k + 1 < idx.size() ? idx[k + 1] : idx[k - 1]);
      auto& cells = result.rows[idx[k]].cells;
      const auto& ocells = result.rows[other].cells;
      cells[result.column("delta2_Sz_smoothed")] =
          (std::get<double>(cells[c_d]) + std::get<double>(ocells[c_d])) / 2.0;
      cells[result.column("s_vn_smoothed")] =
          (std::get<double>(cells[c_s]) + std::get<double>(ocells[c_s])) / 2.0;
      cells[result.column("scale_fit")] = factor;
      cells[result.column("reference_scale")] = reference_xxz_factor(jz);
    }
    result.notes.push_back("Jz = " + short_number(jz) + ": fitted S_vN/delta2_Sz factor " +
                           short_number(factor) + " (reference, larger L: " +
                           short_number(reference_xxz_factor(jz)) + ")");
  }
  return result;
}

std::string inner_xi(const RVector& xi) {
  std::vector<double> inner;
  for (Eigen::Index i = 0; i < xi.size(); ++i) {
    if (xi[i] > 1e-6 && xi[i] < 1.0 - 1e-6) inner.push_back(xi[i]);
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < inner.size(); ++i) out << (i ? ";" : "") << short_number(inner[i]);
  return out.str();
}

std::vector<Cell> free_fermion_row(const std::string& model, double param, int L, int ls,
                                   const CorrelationMatrix& C) {
  const double dn = number_variance(C);
  const auto ent = entropy_from_xi(C);
  const auto identity = make_single_particle_observable(CMatrix::Identity(C.dim(), C.dim()));
  const double spread = std::abs(variance_free(C, identity) - dn);
  double xi_gap = 0.5;
  for (Eigen::Index i = 0; i < C.xi.size(); ++i) xi_gap = std::min(xi_gap, std::abs(C.xi[i] - 0.5));
  const bool klich = dn <= ent.s_vn / kScaledEntropy + 1e-12;
  return {model, param, static_cast<double>(L), static_cast<double>(ls), dn, ent.s_vn,
          ent.s_renyi2, ent.s_vn / kScaledEntropy, xi_gap, klich ? 1.0 : 0.0, spread,
          inner_xi(C.xi)};
}

const std::vector<std::string> kFreeFermionColumns = {
    "model", "param", "L", "L_s", "delta2_N", "s_vn", "s_renyi2", "s_tilde_vn",
    "xi_min_gap", "klich_ok", "formula_spread", "xi_inner"};

SweepResult run_ti1d(const ExperimentConfig& cfg) {
  const auto& p = cfg.params;
  const int ls = p.integer("L_s", 0);
  const int L = p.integer("L", 0);
  const auto grid = p.list("grid", {});
  return run_pool(cfg, kFreeFermionColumns, grid.size(), [&](std::size_t i) {
    const auto model = topological_chain(L, grid[i], Boundary::Periodic);
    const FermiSea sea(diagonalize(model), HalfFilling{});
    std::vector<int> sites;
    for (int s = 0; s < ls; ++s) sites.push_back(s);
    return free_fermion_row("ti1d", grid[i], L, ls, sea.correlation(orbitals_of_sites(model, sites)));
  });
}

SweepResult run_square(const ExperimentConfig& cfg, const SingleParticleModel& model,
                       const std::string& name, double param) {
  const auto sizes = cfg.params.list("L_s_values", {});
  const FermiSea sea(diagonalize(model), HalfFilling{});
  auto result = run_pool(cfg, kFreeFermionColumns, sizes.size(), [&](std::size_t i) {
    const int ls = as_int(sizes[i], "L_s_values");
    if (ls > model.lx) throw Error("subsystem larger than the lattice");
    const int x0 = (model.lx - ls) / 2;
    const int y0 = (model.ly - ls) / 2;
    const auto sites = rectangle_sites(model, x0, y0, ls, ls);
    return free_fermion_row(name, param, model.lx, ls, sea.correlation(orbitals_of_sites(model, sites)));
  });

  std::vector<std::pair<double, double>> series;
  const std::size_t c_ls = result.column("L_s");
  const std::size_t c_dn = result.column("delta2_N");
  for (const auto& row : result.rows) {
    if (row.error.empty()) {
      series.emplace_back(std::get<double>(row.cells[c_ls]), std::get<double>(row.cells[c_dn]));
    }
  }
  if (series.size() >= 4) {
    const auto fit = fit_scaling(series);
    for (const auto& f : fit.fits) {
      std::ostringstream note;
      note << "fit delta2_N vs L_s, " << to_string(f.law) << ": coefficients";
      for (double c : f.coefficients) note << ' ' << short_number(c);
      note << ", rms " << short_number(f.rms) << ", max relative residual "
           << short_number(f.max_relative_residual);
      result.notes.push_back(note.str());
    }
    result.notes.push_back("best law by AIC: " + to_string(fit.best));
  }
  return result;
}

SweepResult run_counting(const ExperimentConfig& cfg) {
  const auto nas = cfg.params.list("N_a_values", {});
  return run_pool(cfg, {"N_a", "variance", "s_vn", "s_renyi2", "variance_over_s_vn", "s_tilde_vn"},
                  nas.size(), [&](std::size_t i) -> std::vector<Cell> {
                    const int na = as_int(nas[i], "N_a_values");
                    const auto demo = counting_demo(na);
                    return {static_cast<double>(na), demo.variance, demo.s_vn, demo.s_renyi2,
                            demo.variance / demo.s_vn, demo.s_vn / kScaledEntropy};
                  });
}

}  // namespace

std::string code_version() { return ENTFLUC_VERSION; }

std::string to_string(ExperimentId id) {
  for (const auto& e : list_experiments()) {
    if (e.id == id) return e.name;
  }
  return "unknown";
}

ExperimentId parse_experiment_id(const std::string& name) {
  for (const auto& e : list_experiments()) {
    if (e.name == name) return e.id;
  }
  throw ConfigError("unknown experiment '" + name + "' (see list-experiments)");
}

const std::vector<ExperimentInfo>& list_experiments() {
  static const std::vector<ExperimentInfo> infos = {
      {ExperimentId::AkltDSweep, "aklt_D_sweep",
       "spin-1 AKLT chain vs single-ion anisotropy D: delta2 Sz, delta2 Sx, entropies"},
      {ExperimentId::KitaevMuSweep, "kitaev_mu_sweep",
       "interacting Kitaev chain vs mu/t: subsystem parity uncertainty and entropies"},
      {ExperimentId::XxzScaling, "xxz_scaling",
       "critical XXZ chain, L_s = L/2: co-scaling of delta2 Sz and S_vN"},
      {ExperimentId::Ti1dMSweep, "ti1d_m_sweep",
       "1D two-band topological insulator vs m: number fluctuations, entropies, xi spectrum"},
      {ExperimentId::ChernAreaLaw, "chern_area_law",
       "QWZ Chern insulator: delta2 N and S_vN vs square subsystem size"},
      {ExperimentId::MetalLogVolume, "metal_logvolume",
       "2D square-lattice metal at half filling: delta2 N and S_vN vs subsystem size"},
      {ExperimentId::CountingDemo, "counting_demo",
       "idealized flat entanglement spectrum: binomial outcomes vs N_a"},
  };
  return infos;
}

ExperimentConfig ExperimentConfig::from_config(const KeyValueConfig& raw, bool force_large) {
  ExperimentConfig cfg;
  cfg.id = parse_experiment_id(raw.string("experiment"));
  cfg.params = raw;
  cfg.output = raw.string("output", "");
  const double seed = raw.number("seed", 0.0);
  if (seed < 0 || seed != std::floor(seed)) throw ConfigError("seed must be a non-negative integer");
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.large = force_large || raw.boolean("large", false);
  cfg.threads = raw.integer("threads", 0);

  auto& p = cfg.params;
  std::set<std::string> allowed = kCommonKeys;
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys) allowed.insert(k);
  };
  auto budget = [&](int size, int limit, const char* what) {
    if (size > limit && !cfg.large) {
      throw ConfigError(std::string(what) + " = " + std::to_string(size) +
                        " exceeds the desk-scale budget (" + std::to_string(limit) +
                        "); pass --large or set large = true");
    }
  };

  switch (cfg.id) {
    case ExperimentId::AkltDSweep: {
      allow({"Jx", "Jy", "Jz", "alpha", "L", "N", "start", "bc", "grid", "grid_start", "grid_stop",
             "grid_points"});
      p.require_known(allowed);
      fill(p, "Jx", 1.0);
      fill(p, "Jy", 1.0);
      fill(p, "Jz", 1.0);
      fill(p, "alpha", 1.0 / 3.0);
      fill(p, "L", 10.0);
      fill(p, "N", 5.0);
      fill(p, "start", 0.0);
      fill(p, "bc", std::string("periodic"));
      resolve_grid(p, range(0.0, 3.0, 13));
      if (p.number("Jx") != p.number("Jy")) throw ConfigError("aklt_D_sweep needs Jx == Jy (S^z sector)");
      parse_bc(p.string("bc"));
      budget(p.integer("L", 0), kMaxAkltL, "L");
      Bipartition(p.integer("L", 0), p.integer("start", 0), p.integer("N", 0));
      break;
    }
    case ExperimentId::KitaevMuSweep: {
      allow({"t", "Delta_over_t", "V_over_Delta", "L", "N", "start", "bc", "grid", "grid_start",
             "grid_stop", "grid_points"});
      p.require_known(allowed);
      fill(p, "t", 1.0);
      fill(p, "Delta_over_t", 0.9);
      fill(p, "V_over_Delta", 0.5);
      fill(p, "L", 12.0);
      fill(p, "N", 6.0);
      fill(p, "start", 0.0);
      // Image of the periodic spin ring in the even sector. Fermionic
      // periodic leaves the even-sector minimum degenerate for |mu| < t.
      fill(p, "bc", std::string("antiperiodic"));
      resolve_grid(p, range(-3.0, 3.0, 25));
      parse_bc(p.string("bc"), true);
      budget(p.integer("L", 0), kMaxKitaevL, "L");
      Bipartition(p.integer("L", 0), p.integer("start", 0), p.integer("N", 0));
      break;
    }
    case ExperimentId::XxzScaling: {
      allow({"Jx", "Jz_values", "L_values", "bc"});
      p.require_known(allowed);
      fill(p, "Jx", 1.0);
      fill(p, "Jz_values", std::vector<double>{0.0, 0.5, 1.0});
      fill(p, "L_values", std::vector<double>{8, 10, 12, 14});
      fill(p, "bc", std::string("periodic"));
      for (double l : p.list("L_values", {})) {
        const int li = as_int(l, "L_values");
        if (li < 4 || li % 2 != 0) throw ConfigError("L_values must be even and >= 4");
        budget(li, kMaxXxzL, "L");
      }
      if (p.list("Jz_values", {}).empty()) throw ConfigError("Jz_values is empty");
      parse_bc(p.string("bc"));
      break;
    }
    case ExperimentId::Ti1dMSweep: {
      allow({"L_s", "L", "grid", "grid_start", "grid_stop", "grid_points"});
      p.require_known(allowed);
      fill(p, "L_s", 40.0);
      fill(p, "L", 10.0 * p.number("L_s"));
      resolve_grid(p, range(-1.95, 1.95, 40));
      if (p.integer("L_s", 0) < 1 || p.integer("L_s", 0) >= p.integer("L", 0)) {
        throw ConfigError("need 1 <= L_s < L");
      }
      budget(p.integer("L", 0), kMaxTiL, "L");
      break;
    }
    case ExperimentId::ChernAreaLaw:
    case ExperimentId::MetalLogVolume: {
      const bool chern = cfg.id == ExperimentId::ChernAreaLaw;
      allow({chern ? "m" : "t", "L_s_values", "L"});
      p.require_known(allowed);
      fill(p, chern ? "m" : "t", 1.0);
      fill(p, "L_s_values", chern ? int_range(4, 14) : int_range(4, 16));
      const auto sizes = p.list("L_s_values", {});
      if (sizes.empty()) throw ConfigError("L_s_values is empty");
      const int max_ls = as_int(*std::max_element(sizes.begin(), sizes.end()), "L_s_values");
      // Metal default follows the fit reference run (L = 64 for L_s <= 16).
      int default_l = chern ? 3 * max_ls : std::max(64, 3 * max_ls);
      if (default_l % 2) ++default_l;
      fill(p, "L", static_cast<double>(default_l));
      const int L = p.integer("L", 0);
      if (!chern && L % 2) throw ConfigError("metal_logvolume needs even L");
      if (L < max_ls) throw ConfigError("L must be at least the largest L_s");
      budget(L, kMax2dL, "L");
      break;
    }
    case ExperimentId::CountingDemo: {
      allow({"N_a_values"});
      p.require_known(allowed);
      fill(p, "N_a_values", int_range(1, 16));
      break;
    }
  }
  return cfg;
}

SweepResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.id) {
    case ExperimentId::AkltDSweep:
      return run_aklt(cfg);
    case ExperimentId::KitaevMuSweep:
      return run_kitaev(cfg);
    case ExperimentId::XxzScaling:
      return run_xxz(cfg);
    case ExperimentId::Ti1dMSweep:
      return run_ti1d(cfg);
    case ExperimentId::ChernAreaLaw: {
      const int L = cfg.params.integer("L", 0);
      const double m = cfg.params.number("m");
      return run_square(cfg, qwz_model(L, m), "qwz", m);
    }
    case ExperimentId::MetalLogVolume: {
      const int L = cfg.params.integer("L", 0);
      const double t = cfg.params.number("t");
      return run_square(cfg, square_metal(L, L, t, Boundary::Periodic, Boundary::Antiperiodic),
                        "metal", t);
    }
    case ExperimentId::CountingDemo:
      return run_counting(cfg);
  }
  throw Error("run_experiment: unknown experiment");
}

bool SweepResult::all_succeeded() const {
  return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.error.empty(); });
}

std::size_t SweepResult::column(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw Error("SweepResult: no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

double SweepResult::number(std::size_t row, const std::string& name) const {
  const auto& cell = rows.at(row).cells.at(column(name));
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  throw Error("SweepResult: column '" + name + "' is not numeric");
}

std::string SweepResult::text(std::size_t row, const std::string& name) const {
  const auto& cell = rows.at(row).cells.at(column(name));
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  return format_number(std::get<double>(cell));
}

void write_csv(std::ostream& out, const SweepResult& result, const ExperimentConfig& cfg) {
  out << "# entfluc " << code_version() << '\n';
  out << "# experiment = \"" << to_string(cfg.id) << "\"\n";
  for (const auto& [key, value] : cfg.params.values()) {
    if (key == "experiment") continue;
    out << "# " << key << " = " << KeyValueConfig::format(value) << '\n';
  }
  if (!cfg.params.has("seed")) out << "# seed = " << cfg.seed << '\n';
  for (const auto& note : result.notes) out << "# note: " << note << '\n';

  for (std::size_t c = 0; c < result.columns.size(); ++c) out << result.columns[c] << ',';
  out << "error\n";
  for (const auto& row : result.rows) {
    for (const auto& cell : row.cells) {
      if (const auto* d = std::get_if<double>(&cell)) {
        out << format_number(*d);
      } else {
        out << std::get<std::string>(cell);
      }
      out << ',';
    }
    std::string err = row.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out << err << '\n';
  }
}

std::size_t CsvTable::column(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    std::string available;
    for (const auto& c : columns) available += (available.empty() ? "" : ", ") + c;
    throw Error("CSV has no column '" + name + "' (available: " + available + ")");
  }
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<std::pair<double, double>> CsvTable::series(const std::string& x,
                                                        const std::string& y) const {
  const std::size_t cx = column(x);
  const std::size_t cy = column(y);
  const auto ce = std::find(columns.begin(), columns.end(), "error");
  std::vector<std::pair<double, double>> out;
  for (const auto& row : rows) {
    if (ce != columns.end()) {
      const auto idx = static_cast<std::size_t>(ce - columns.begin());
      if (idx < row.size() && !row[idx].empty()) continue;
    }
    try {
      const double vx = std::stod(row.at(cx));
      const double vy = std::stod(row.at(cy));
      if (std::isfinite(vx) && std::isfinite(vy)) out.emplace_back(vx, vy);
    } catch (const std::exception&) {
      throw Error("CSV: non-numeric value in column '" + x + "' or '" + y + "'");
    }
  }
  return out;
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(s);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      table.header_comments.push_back(line);
      continue;
    }
    if (table.columns.empty()) {
      table.columns = split(line);
    } else {
      table.rows.push_back(split(line));
    }
  }
  if (table.columns.empty()) throw Error("CSV: no header line");
  return table;
}

}  // namespace entfluc
