#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "entfluc/basis.hpp"
#include "entfluc/ed.hpp"
#include "entfluc/observable.hpp"
#include "entfluc/types.hpp"

namespace entfluc {

inline constexpr double kSpectrumCutoff = 1e-14;

/// rho_Omega over the full d^N subsystem space (codes from Factorizer).
struct ReducedDensityMatrix {
  CMatrix matrix;
  int sites = 0;
  SiteKind kind = SiteKind::SpinHalf;

  Eigen::Index dim() const { return matrix.rows(); }
};

enum class TraceSide { Subsystem, Environment };

/// Traces out the complement of Omega (or of the environment, for
/// TraceSide::Environment). Fermion states need no sign corrections: the
/// basis is in Jordan-Wigner order and Omega is contiguous.
ReducedDensityMatrix reduced_density_matrix(const ManyBodyState& state, const Bipartition& part,
                                            TraceSide keep = TraceSide::Subsystem);

/// Eigen-decomposition of rho with optional conserved-charge labels.
/// `lambdas` are descending and clamped to [0, 1]; `entanglement_energies`
/// holds -ln(lambda) for lambda > kSpectrumCutoff.
struct EntanglementSpectrum {
  RVector lambdas;
  std::optional<CMatrix> vectors;
  std::optional<std::vector<double>> charges;
  std::vector<double> entanglement_energies;

  Eigen::Index size() const { return lambdas.size(); }
};

/// Without `A`, plain eigen-decomposition. With `A`, rho is diagonalized
/// inside each eigenspace of A, so every eigenvector carries a sharp charge;
/// throws NotConservedError when ||[A, rho]||_max >= conservation tolerance.
EntanglementSpectrum entanglement_spectrum(const ReducedDensityMatrix& rho,
                                           const SubsystemObservable* A = nullptr);

/// Builds a spectrum from bare probabilities (no vectors).
EntanglementSpectrum spectrum_from_lambdas(std::vector<double> lambdas,
                                           std::optional<std::vector<double>> charges = {});

struct EntropyReport {
  double s_vn = 0.0;      // nats
  double s_renyi2 = 0.0;  // nats
};

EntropyReport entropies(const EntanglementSpectrum& spec);

/// CSV rows: index,lambda,charge,entanglement_energy
void write_spectrum_csv(std::ostream& out, const EntanglementSpectrum& spec);

}  // namespace entfluc
