#include "entfluc/ed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "entfluc/error.hpp"

namespace entfluc {
namespace {

CVector random_start(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v[i] = cplx(re, im);
  }
  return v.normalized();
}

void orthogonalize(CVector& w, const std::vector<CVector>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) w -= b * b.dot(w);
  }
}

struct RitzPair {
  double value;
  CVector vector;
  int steps;
};

// One Lanczos run on H + shift * sum_l |l><l| (locked levels pushed above
// the spectrum); returns the lowest Ritz pair, stopping early once its
// residual estimate is below `target`. Projecting the locked vectors out
// instead leaves them at eigenvalue 0 of PHP, and round-off grows that
// component into a spurious Ritz value whenever the spectrum is positive.
RitzPair lanczos_run(const SparseOperator& H, CVector start, const std::vector<CVector>& locked,
                     double shift, int max_steps, double target, std::vector<double>* history) {
  std::vector<CVector> v;
  std::vector<double> alpha;
  std::vector<double> beta;
  orthogonalize(start, locked);
  start.normalize();
  v.push_back(std::move(start));

  Eigen::VectorXd y;
  double theta = 0.0;
  CVector w;
  for (int j = 0; j < max_steps; ++j) {
    H.apply(v.back(), w);
    for (const auto& l : locked) w += shift * l * l.dot(v.back());
    const double a = v.back().dot(w).real();
    alpha.push_back(a);
    orthogonalize(w, v);
    const double b = w.norm();

    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd off = m > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1))
                                : Eigen::VectorXd();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    theta = tri.eigenvalues()[0];
    y = tri.eigenvectors().col(0);
    if (history) history->push_back(theta);

    const double estimate = b * std::abs(y[m - 1]);
    const bool exhausted = b < 1e-14 * std::max(1.0, std::abs(theta));
    if (estimate < target || exhausted || j + 1 == max_steps) break;
    beta.push_back(b);
    v.push_back(w / b);
  }

  CVector psi = CVector::Zero(v.front().size());
  for (std::size_t i = 0; i < v.size() && i < static_cast<std::size_t>(y.size()); ++i) {
    psi += y[static_cast<Eigen::Index>(i)] * v[i];
  }
  orthogonalize(psi, locked);
  psi.normalize();
  return {theta, std::move(psi), static_cast<int>(alpha.size())};
}

GroundStateReport finish_report(GroundStateReport r, std::shared_ptr<const SectorBasis> basis,
                                std::vector<double> energies, std::vector<CVector> vectors, int k,
                                const SolverOptions& opts) {
  const std::size_t kept = std::min<std::size_t>(static_cast<std::size_t>(k), energies.size());
  for (std::size_t i = 0; i < kept; ++i) {
    r.states.push_back({basis, std::move(vectors[i]), energies[i]});
  }
  r.gap = energies.size() >= 2 ? std::max(0.0, energies[1] - energies[0])
                               : std::numeric_limits<double>::infinity();
  r.degenerate = r.gap < opts.degeneracy_tol * std::max(r.scale, 1e-300);
  return r;
}

}  // namespace

GroundStateReport ground_state(const SparseOperator& H, std::shared_ptr<const SectorBasis> basis,
                               int k, const SolverOptions& opts) {
  if (k < 1) throw Error("ground_state: k must be at least 1");
  const auto n = static_cast<Eigen::Index>(H.dim());
  if (n == 0) throw Error("ground_state: empty operator");
  if (basis && basis->size() != H.dim()) throw Error("ground_state: basis/operator size mismatch");
  if (k > n) throw Error("ground_state: more levels requested than the dimension");

  GroundStateReport report;
  report.scale = H.scale();
  const int levels = static_cast<int>(std::min<Eigen::Index>(std::max(k, 2), n));
  const double target = opts.tolerance * std::max(report.scale, 1e-300);

  std::vector<double> energies;
  std::vector<CVector> vectors;

  if (H.dim() <= opts.dense_threshold) {
    const CMatrix dense = H.to_dense();
    Eigen::VectorXd evals;
    CMatrix evecs;
    if (dense.imag().cwiseAbs().maxCoeff() == 0.0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense.real());
      evals = es.eigenvalues();
      evecs = es.eigenvectors().cast<cplx>();
    } else {
      Eigen::SelfAdjointEigenSolver<CMatrix> es(dense);
      evals = es.eigenvalues();
      evecs = es.eigenvectors();
    }
    for (int i = 0; i < levels; ++i) {
      energies.push_back(evals[i]);
      vectors.push_back(evecs.col(i));
      report.residuals.push_back((H * vectors.back() - evals[i] * vectors.back()).norm());
    }
    return finish_report(std::move(report), std::move(basis), std::move(energies),
                         std::move(vectors), k, opts);
  }

  report.used_lanczos = true;
  for (int level = 0; level < levels; ++level) {
    CVector start = random_start(n, opts.seed + static_cast<std::uint64_t>(level));
    double residual = std::numeric_limits<double>::infinity();
    RitzPair best{0.0, {}, 0};
    for (int restart = 0; restart <= opts.max_restarts; ++restart) {
      std::vector<double>* hist =
          (opts.record_history && level == 0 && restart == 0) ? &report.ritz_history : nullptr;
      best = lanczos_run(H, std::move(start), vectors, 2.0 * report.scale + 1.0, opts.krylov_size,
                         0.1 * target, hist);
      residual = (H * best.vector - best.value * best.vector).norm();
      if (residual < target) break;
      start = best.vector;
    }
    if (!(residual < target)) {
      std::ostringstream msg;
      msg << "Lanczos did not converge for level " << level << ": residual " << residual
          << " > " << target;
      throw ConvergenceError(msg.str(), residual);
    }
    energies.push_back(best.value);
    vectors.push_back(std::move(best.vector));
    report.residuals.push_back(residual);
  }

  // Locked levels come out in order up to round-off; sort to be safe.
  std::vector<std::size_t> order(energies.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return energies[a] < energies[b]; });
  std::vector<double> e_sorted;
  std::vector<CVector> v_sorted;
  std::vector<double> r_sorted;
  for (auto i : order) {
    e_sorted.push_back(energies[i]);
    v_sorted.push_back(std::move(vectors[i]));
    r_sorted.push_back(report.residuals[i]);
  }
  report.residuals = std::move(r_sorted);
  return finish_report(std::move(report), std::move(basis), std::move(e_sorted),
                       std::move(v_sorted), k, opts);
}

std::vector<double> lanczos_ritz_sequence(const SparseOperator& H, int steps, std::uint64_t seed) {
  std::vector<double> history;
  lanczos_run(H, random_start(static_cast<Eigen::Index>(H.dim()), seed), {}, 0.0, steps, 0.0,
              &history);
  return history;
}

}  // namespace entfluc
