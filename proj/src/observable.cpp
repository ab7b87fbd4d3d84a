#include "entfluc/observable.hpp"

#include <bit>

#include "entfluc/error.hpp"
#include "entfluc/spin_models.hpp"

namespace entfluc {

SubsystemObservable sum_of_local(std::string name, const CMatrix& op, int sites) {
  const auto d = static_cast<Config>(op.rows());
  Config dim = 1;
  for (int i = 0; i < sites; ++i) dim *= d;
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Config c = 0; c < dim; ++c) {
    Config w = 1;
    for (int s = 0; s < sites; ++s, w *= d) {
      const Config k = (c / w) % d;
      for (Config kp = 0; kp < d; ++kp) {
        const cplx v = op(static_cast<Eigen::Index>(kp), static_cast<Eigen::Index>(k));
        if (v == cplx{0.0}) continue;
        m(static_cast<Eigen::Index>(c + kp * w - k * w), static_cast<Eigen::Index>(c)) += v;
      }
    }
  }
  SubsystemObservable out;
  out.name = std::move(name);
  out.matrix = std::move(m);
  out.is_sum_of_local = true;
  out.local_term = op;
  return out;
}

SubsystemObservable total_spin(SpinAxis axis, int sites, SiteKind kind) {
  if (kind == SiteKind::Fermion) throw Error("total_spin: not defined for fermion sites");
  const auto s = spin_matrices(local_dim(kind));
  switch (axis) {
    case SpinAxis::X:
      return sum_of_local("Sx", s.sx, sites);
    case SpinAxis::Y:
      return sum_of_local("Sy", s.sy, sites);
    case SpinAxis::Z:
      break;
  }
  return sum_of_local("Sz", s.sz, sites);
}

SubsystemObservable particle_number(int sites) {
  CMatrix n = CMatrix::Zero(2, 2);
  n(1, 1) = 1.0;
  return sum_of_local("N", n, sites);
}

SubsystemObservable subsystem_parity(int sites) {
  const Config dim = Config{1} << sites;
  SubsystemObservable out;
  out.name = "P";
  out.matrix = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Config c = 0; c < dim; ++c) {
    out.matrix(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c)) =
        std::popcount(c) % 2 == 0 ? 1.0 : -1.0;
  }
  return out;
}

SubsystemObservable make_observable(std::string name, CMatrix matrix) {
  if (matrix.rows() != matrix.cols()) throw Error("make_observable: matrix must be square");
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error("make_observable: matrix must be Hermitian");
  }
  SubsystemObservable out;
  out.name = std::move(name);
  out.matrix = std::move(matrix);
  return out;
}

}  // namespace entfluc
