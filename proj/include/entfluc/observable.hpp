#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entfluc/basis.hpp"
#include "entfluc/types.hpp"

namespace entfluc {

/// Hermitian operator on the full d^N subsystem space, in the same digit
/// ordering as the subsystem codes produced by Factorizer.
struct SubsystemObservable {
  std::string name;
  CMatrix matrix;
  bool is_sum_of_local = false;
  std::optional<CMatrix> local_term;  // per-site operator when sum of local

  Eigen::Index dim() const { return matrix.rows(); }
};

enum class SpinAxis { X, Y, Z };

/// sum_i op_i over `sites` sites of local dimension op.rows().
SubsystemObservable sum_of_local(std::string name, const CMatrix& op, int sites);

/// S^nu_Omega = sum_i S^nu_i on a spin-1 or spin-1/2 subsystem.
SubsystemObservable total_spin(SpinAxis axis, int sites, SiteKind kind);

/// N_Omega = sum_i n_i (fermions, or up spins for spin-1/2).
SubsystemObservable particle_number(int sites);

/// P = +1 (-1) for even (odd) subsystem particle number.
SubsystemObservable subsystem_parity(int sites);

/// Wraps an arbitrary Hermitian matrix.
SubsystemObservable make_observable(std::string name, CMatrix matrix);

}  // namespace entfluc
