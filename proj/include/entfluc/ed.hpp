#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "entfluc/basis.hpp"
#include "entfluc/sparse_operator.hpp"
#include "entfluc/types.hpp"

namespace entfluc {

/// Unit-norm amplitude vector over a SectorBasis.
struct ManyBodyState {
  std::shared_ptr<const SectorBasis> basis;
  CVector amplitudes;
  double energy = 0.0;
};

struct SolverOptions {
  std::size_t dense_threshold = 1024;  // dense path for dim <= threshold
  int krylov_size = 160;               // Lanczos vectors kept per restart
  int max_restarts = 40;
  double tolerance = 1e-10;            // residual, in units of H.scale()
  double degeneracy_tol = 1e-8;        // in units of H.scale()
  std::uint64_t seed = 0;
  bool record_history = false;         // lowest Ritz value per Lanczos step
};

struct GroundStateReport {
  std::vector<ManyBodyState> states;  // lowest k, energies non-decreasing
  double gap = 0.0;                   // E_1 - E_0
  bool degenerate = false;            // gap < degeneracy_tol * scale
  double scale = 0.0;
  std::vector<double> residuals;
  std::vector<double> ritz_history;   // first Lanczos run, if recorded
  bool used_lanczos = false;

  const ManyBodyState& ground() const { return states.front(); }
};

/// Lowest-k eigenpairs of a Hermitian operator. At least two levels are
/// computed internally so the gap is always reported (when dim >= 2).
/// Throws ConvergenceError when the residual bound is not reached.
GroundStateReport ground_state(const SparseOperator& H, std::shared_ptr<const SectorBasis> basis,
                               int k = 1, const SolverOptions& opts = {});

/// Lowest Ritz value after each step of a single unrestarted Lanczos run
/// of `steps` iterations (full reorthogonalization).
std::vector<double> lanczos_ritz_sequence(const SparseOperator& H, int steps,
                                          std::uint64_t seed = 0);

}  // namespace entfluc
