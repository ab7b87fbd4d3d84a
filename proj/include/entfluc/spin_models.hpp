#pragma once

#include <array>

#include "entfluc/basis.hpp"
#include "entfluc/sparse_operator.hpp"
#include "entfluc/types.hpp"

namespace entfluc {

/// Local spin operators in the digit basis (digit k <-> m = k - s).
struct SpinMatrices {
  CMatrix sx, sy, sz, splus, sminus, identity;
};

/// s = 1 for d = 3, s = 1/2 for d = 2.
SpinMatrices spin_matrices(int local_dim);

/// Two-site operator on the d^2 product space, index a*d + b for
/// (left digit a, right digit b).
CMatrix two_site(const CMatrix& left, const CMatrix& right);

enum class SpinKind { One, Half };

/// H = sum_j sum_nu J_nu S_j^nu S_{j+1}^nu + alpha sum_j (S_j . S_{j+1})^2
///   + D sum_j (S_j^z)^2 + h sum_j S_j^z
/// Units are set by J = 1 in the sweeps.
struct SpinModelParams {
  std::array<double, 3> J{1.0, 1.0, 1.0};
  double alpha = 0.0;
  double D = 0.0;
  double h = 0.0;
  int L = 2;
  Boundary bc = Boundary::Open;
  SpinKind spin = SpinKind::One;

  void validate() const;
};

/// Spin-1 chain with biquadratic term and single-ion anisotropy. Requires a
/// Spin1 basis; a total-S^z sector basis requires Jx == Jy.
SparseOperator build_aklt(const SpinModelParams& params, const SectorBasis& basis);

/// Spin-1/2 XYZ chain in a longitudinal field (alpha must be 0).
SparseOperator build_xyz(const SpinModelParams& params, const SectorBasis& basis);

/// Nearest-neighbour bond list for an L-site chain; the periodic closing
/// bond is (L-1, 0).
std::vector<std::pair<int, int>> chain_bonds(int L, Boundary bc);

}  // namespace entfluc
