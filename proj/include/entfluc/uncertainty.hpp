#pragma once

#include <string>
#include <variant>
#include <vector>

#include "entfluc/entanglement.hpp"
#include "entfluc/observable.hpp"

namespace entfluc {

/// Max-norm of [A, rho] below which A counts as conserved.
inline constexpr double kConservationTol = 1e-10;
/// Eigenvalues of A closer than this are one measurement outcome.
inline constexpr double kOutcomeTol = 1e-8;

struct ConservationCheck {
  bool conserved = false;
  double commutator_norm = 0.0;
};

ConservationCheck check_conserved(const ReducedDensityMatrix& rho, const SubsystemObservable& A);

struct UncertaintyReport {
  double mean = 0.0;
  double variance = 0.0;
  double pairwise_lower_bound = 0.0;  // 1/2 sum_ij l_i l_j (<A>_i - <A>_j)^2
  bool conserved = false;
  double commutator_norm = 0.0;
};

/// <A> = Tr(rho A), var = Tr(rho A^2) - <A>^2, plus the pairwise bound
/// evaluated in the eigenbasis of rho.
UncertaintyReport variance_direct(const ReducedDensityMatrix& rho, const SubsystemObservable& A);

/// 1/2 sum_ij l_i l_j (<A>_i - <A>_j)^2 with <A>_i = <l_i|A|l_i>.
/// Equals the variance iff A is conserved; a lower bound otherwise.
double variance_pairwise(const EntanglementSpectrum& spec, const SubsystemObservable& A);

/// Coarse-grained entanglement spectrum: probability of each distinct outcome.
struct OutcomeDistribution {
  std::vector<double> outcomes;       // strictly increasing
  std::vector<double> probabilities;  // sums to 1

  double mean() const;
};

/// Aggregates lambda_i by charge; requires a charge-labelled spectrum.
OutcomeDistribution outcome_distribution(const EntanglementSpectrum& spec);

/// sum_{A_i > A_j} p_i p_j (A_i - A_j)^2
double variance_sector(const OutcomeDistribution& dist);

struct LowestK {
  int k = 1;
};
struct AboveThreshold {
  double lambda_min = 0.0;  // strict: lambda > lambda_min
};
struct ExplicitStates {
  std::vector<Eigen::Index> indices;
};
/// Lowest entanglement energies up to the largest gap among the first
/// `max_levels` levels (the gap in -ln(lambda) is the log-ratio of
/// neighbouring lambdas).
struct EntanglementGap {
  int max_levels = 16;
};
using SubspaceSelector = std::variant<LowestK, AboveThreshold, ExplicitStates, EntanglementGap>;

/// Indices (into the descending spectrum) picked by a selector.
std::vector<Eigen::Index> select_subspace(const EntanglementSpectrum& spec,
                                          const SubspaceSelector& selector);

struct SubspaceBoundReport {
  double lambda_sigma = 0.0;
  double sigma_variance = 0.0;  // variance in rho restricted to Sigma, renormalized
  double bound = 0.0;           // lambda_sigma^2 * sigma_variance
  double full_variance = 0.0;
  std::vector<Eigen::Index> members;
};

/// Throws Error on an empty selection.
SubspaceBoundReport subspace_bound(const EntanglementSpectrum& spec, const SubsystemObservable& A,
                                   const SubspaceSelector& selector = EntanglementGap{});

/// Idealized flat microstate model: 2^N_a states with lambda = 2^-N_a,
/// outcomes S^z = n - N_a/2 with binomial weights.
struct CountingDemo {
  OutcomeDistribution distribution;
  double variance = 0.0;
  double s_vn = 0.0;
  double s_renyi2 = 0.0;
};

CountingDemo counting_demo(int effective_spins);

}  // namespace entfluc
