#pragma once

#include <variant>
#include <vector>

#include "entfluc/entanglement.hpp"
#include "entfluc/single_particle.hpp"
#include "entfluc/types.hpp"

namespace entfluc {

struct HalfFilling {};
struct FermiEnergy {
  double mu = 0.0;
};
/// Fill the `count` lowest levels; degenerate shells are split in index
/// order only when allow_degenerate is set.
struct ParticleCount {
  int count = 0;
  bool allow_degenerate = false;
};
using Filling = std::variant<HalfFilling, FermiEnergy, ParticleCount>;

/// C_ij = <c_i^dag c_j> restricted to Omega's orbitals, with its
/// eigen-decomposition (xi ascending).
struct CorrelationMatrix {
  CMatrix matrix;
  RVector xi;
  CMatrix eigenvectors;

  Eigen::Index dim() const { return matrix.rows(); }
};

/// Validates Hermiticity and xi in [-1e-10, 1 + 1e-10].
CorrelationMatrix make_correlation(CMatrix matrix);

/// Slater determinant of the occupied single-particle states.
class FermiSea {
 public:
  FermiSea(const SingleParticleSpectrum& spectrum, const Filling& filling);

  int particles() const { return static_cast<int>(occupied_.cols()); }
  Eigen::Index orbitals() const { return occupied_.rows(); }
  const CMatrix& occupied() const { return occupied_; }
  double fermi_gap() const { return fermi_gap_; }

  CorrelationMatrix correlation(const std::vector<int>& orbitals) const;

 private:
  CMatrix occupied_;
  double fermi_gap_ = 0.0;  // lowest empty minus highest filled level
};

/// Orbital indices (site * bands + alpha) of a set of sites.
std::vector<int> orbitals_of_sites(const SingleParticleModel& model, const std::vector<int>& sites);

/// Sites of the w x h rectangle with lower-left corner (x0, y0).
std::vector<int> rectangle_sites(const SingleParticleModel& model, int x0, int y0, int w, int h);

/// Full pipeline: diagonalize, fill, restrict to `sites`.
CorrelationMatrix correlation_matrix(const SingleParticleModel& model, const Filling& filling,
                                     const std::vector<int>& sites);

/// A = sum_ij A_ij c_i^dag c_j on Omega's orbitals.
struct SingleParticleObservable {
  CMatrix matrix;
  RVector eigenvalues;  // of A^T (same as of A), ascending
};

SingleParticleObservable make_single_particle_observable(CMatrix matrix);

/// Tr[A^T C A^T (1 - C)]
double variance_free(const CorrelationMatrix& C, const SingleParticleObservable& A);

/// sum_{xi, xi'} xi (1 - xi') |<xi|A^T|xi'>|^2
double variance_free_eigenbasis(const CorrelationMatrix& C, const SingleParticleObservable& A);

/// Tr(C - C^2)
double number_variance(const CorrelationMatrix& C);

/// S_vN = -sum[xi ln xi + (1-xi) ln(1-xi)], S_2 = -sum ln[xi^2 + (1-xi)^2].
EntropyReport entropy_from_xi(const CorrelationMatrix& C);

struct ConservedBounds {
  double lower = 0.0;  // A_min^2 dN^2
  double upper = 0.0;  // A_max^2 dN^2
  double variance = 0.0;
  double number_variance = 0.0;
  bool holds = false;
};

/// Requires ||[A^T, C]||_max < 1e-8 (NotConservedError otherwise).
ConservedBounds conserved_bounds(const CorrelationMatrix& C, const SingleParticleObservable& A);

struct VolumeLawBound {
  double variance = 0.0;
  double first_bound = 0.0;   // Tr[C (A^T)^2]
  double second_bound = 0.0;  // A_max^2 ceil(<N>)
  bool holds = false;
};

VolumeLawBound volume_law_bound(const CorrelationMatrix& C, const SingleParticleObservable& A);

}  // namespace entfluc
