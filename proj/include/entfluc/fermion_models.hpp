#pragma once

#include <optional>
#include <span>

#include "entfluc/basis.hpp"
#include "entfluc/sparse_operator.hpp"
#include "entfluc/spin_models.hpp"
#include "entfluc/types.hpp"

namespace entfluc {

/// Interacting Kitaev chain
///   H = -1/2 sum_j (t c_j^dag c_{j+1} + Delta c_j^dag c_{j+1}^dag + h.c.)
///       + V sum_j (n_j - 1/2)(n_{j+1} - 1/2) - mu sum_j n_j
/// Open chains sum bonds j = 0..L-2. Periodic chains add the fermionic bond
/// (L-1, 0); Antiperiodic adds it with t and Delta negated. The periodic
/// spin chain maps to Antiperiodic in the even-parity sector and to
/// Periodic in the odd one.
struct KitaevParams {
  double t = 1.0;
  double Delta = 0.0;
  double mu = 0.0;
  double V = 0.0;
  int L = 2;
  Boundary bc = Boundary::Open;

  void validate() const;
};

SparseOperator build_kitaev(const KitaevParams& params, const SectorBasis& basis);

/// Number-conserving quadratic Hamiltonian sum_ij h_ij c_i^dag c_j on a
/// Fermion basis whose sites are the single-particle orbitals.
SparseOperator build_quadratic(const CMatrix& single_particle, const SectorBasis& basis);

/// Result of applying a product of fermion operators to a Fock configuration.
struct FockImage {
  Config config;
  int sign;
};

/// Single creation (dagger = true) or annihilation operator on `site`.
struct FermionOp {
  int site;
  bool dagger;
};

/// Applies ops right-to-left (ops.back() acts first) with Jordan-Wigner
/// signs (-1)^(occupied sites below the acted-on site).
std::optional<FockImage> apply_fermion_ops(Config c, std::span<const FermionOp> ops);

/// Parameter map between the XYZ chain in a field and the Kitaev chain
/// (open boundaries):
///   t = -(Jx+Jy)/2, Delta = (Jy-Jx)/2, mu = -h, V = Jz,
/// with E_xyz = E_kitaev + energy_offset, energy_offset = -h L / 2.
struct JordanWignerMap {
  KitaevParams kitaev;
  double energy_offset;
};

JordanWignerMap kitaev_from_xyz(const SpinModelParams& xyz);
SpinModelParams xyz_from_kitaev(const KitaevParams& kitaev);

}  // namespace entfluc
