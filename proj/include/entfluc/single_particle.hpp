#pragma once

#include <array>
#include <vector>

#include "entfluc/types.hpp"

namespace entfluc {

/// Hopping block T_d: contributes T_d at (r, r+d) and T_d^dag at (r+d, r),
/// so the Bloch Hamiltonian is H(k) = sum_d (T_d e^{ik.d} + h.c.) plus the
/// on-site block. The on-site block (d = 0) is added once and must be
/// Hermitian.
struct Hopping {
  std::array<int, 2> displacement{0, 0};
  CMatrix block;
};

/// Translation-invariant tight-binding model on a chain (ly = 1) or an
/// lx x ly square lattice. Orbital index = site * bands + alpha with
/// site = x + lx * y.
struct SingleParticleModel {
  int lx = 1;
  int ly = 1;
  int bands = 1;
  std::array<Boundary, 2> bc{Boundary::Periodic, Boundary::Periodic};
  CMatrix onsite;
  std::vector<Hopping> hoppings;

  int sites() const { return lx * ly; }
  int orbitals() const { return sites() * bands; }
  bool translation_invariant() const {
    return bc[0] != Boundary::Open && bc[1] != Boundary::Open;
  }
  void validate() const;
};

/// H(k) = (m - cos k) sz + sin k sx on an L-site chain.
SingleParticleModel topological_chain(int L, double m, Boundary bc = Boundary::Periodic);

/// H(k) = (m - cos kx - cos ky) sz + sin kx sx + sin ky sy on an L x L lattice.
SingleParticleModel qwz_model(int L, double m, Boundary bc_x = Boundary::Periodic,
                              Boundary bc_y = Boundary::Periodic);

/// eps_k = -2t (cos kx + cos ky) on an lx x ly lattice; ly = 1 gives a chain.
SingleParticleModel square_metal(int lx, int ly, double t, Boundary bc_x = Boundary::Periodic,
                                 Boundary bc_y = Boundary::Periodic);

/// Real-space Hermitian matrix; wrapped hoppings pick up -1 for
/// antiperiodic directions.
CMatrix build_single_particle(const SingleParticleModel& model);

/// Bloch Hamiltonian at crystal momentum (kx, ky).
CMatrix bloch_hamiltonian(const SingleParticleModel& model, double kx, double ky);

/// Allowed momenta along one direction (antiperiodic shifts by pi/L).
std::vector<double> allowed_momenta(int length, Boundary bc);

/// Eigenpairs of the single-particle matrix, ascending energies; columns of
/// `states` are orbital-space eigenvectors.
struct SingleParticleSpectrum {
  RVector energies;
  CMatrix states;
};

/// Dense diagonalization of build_single_particle(model).
SingleParticleSpectrum diagonalize_dense(const SingleParticleModel& model);

/// Exact diagonalization through Bloch blocks; requires translation
/// invariance in every direction.
SingleParticleSpectrum diagonalize_bloch(const SingleParticleModel& model);

/// Bloch path when available, dense otherwise.
SingleParticleSpectrum diagonalize(const SingleParticleModel& model);

}  // namespace entfluc
