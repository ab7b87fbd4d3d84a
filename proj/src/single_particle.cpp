#include "entfluc/single_particle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "entfluc/error.hpp"

namespace entfluc {
namespace {

CMatrix pauli_x() {
  CMatrix s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}
CMatrix pauli_y() {
  CMatrix s(2, 2);
  s << 0, cplx(0, -1), cplx(0, 1), 0;
  return s;
}
CMatrix pauli_z() {
  CMatrix s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

// Wraps coordinate x + dx into [0, n); returns the boundary phase or 0 when
// the hop leaves an open boundary.
double wrap(int& x, int dx, int n, Boundary bc) {
  x += dx;
  double phase = 1.0;
  while (x >= n) {
    if (bc == Boundary::Open) return 0.0;
    x -= n;
    if (bc == Boundary::Antiperiodic) phase = -phase;
  }
  while (x < 0) {
    if (bc == Boundary::Open) return 0.0;
    x += n;
    if (bc == Boundary::Antiperiodic) phase = -phase;
  }
  return phase;
}

SingleParticleSpectrum from_dense(const CMatrix& h) {
  SingleParticleSpectrum out;
  if (h.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.real());
    out.energies = es.eigenvalues();
    out.states = es.eigenvectors().cast<cplx>();
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    out.energies = es.eigenvalues();
    out.states = es.eigenvectors();
  }
  return out;
}

}  // namespace

void SingleParticleModel::validate() const {
  if (lx < 1 || ly < 1 || bands < 1) throw Error("SingleParticleModel: invalid geometry");
  if (onsite.rows() != bands || onsite.cols() != bands) {
    throw Error("SingleParticleModel: on-site block must be bands x bands");
  }
  if ((onsite - onsite.adjoint()).cwiseAbs().maxCoeff() > 1e-14) {
    throw Error("SingleParticleModel: on-site block must be Hermitian");
  }
  for (const auto& hop : hoppings) {
    if (hop.block.rows() != bands || hop.block.cols() != bands) {
      throw Error("SingleParticleModel: hopping block must be bands x bands");
    }
    if (hop.displacement[0] == 0 && hop.displacement[1] == 0) {
      throw Error("SingleParticleModel: use the on-site block for zero displacement");
    }
  }
}

SingleParticleModel topological_chain(int L, double m, Boundary bc) {
  SingleParticleModel model;
  model.lx = L;
  model.ly = 1;
  model.bands = 2;
  model.bc = {bc, Boundary::Periodic};
  model.onsite = m * pauli_z();
  // -cos k sz + sin k sx  <->  T_{+1} = -sz/2 - i sx/2
  model.hoppings.push_back({{1, 0}, -0.5 * pauli_z() - cplx(0, 0.5) * pauli_x()});
  return model;
}

SingleParticleModel qwz_model(int L, double m, Boundary bc_x, Boundary bc_y) {
  SingleParticleModel model;
  model.lx = L;
  model.ly = L;
  model.bands = 2;
  model.bc = {bc_x, bc_y};
  model.onsite = m * pauli_z();
  model.hoppings.push_back({{1, 0}, -0.5 * pauli_z() - cplx(0, 0.5) * pauli_x()});
  model.hoppings.push_back({{0, 1}, -0.5 * pauli_z() - cplx(0, 0.5) * pauli_y()});
  return model;
}

SingleParticleModel square_metal(int lx, int ly, double t, Boundary bc_x, Boundary bc_y) {
  SingleParticleModel model;
  model.lx = lx;
  model.ly = ly;
  model.bands = 1;
  model.bc = {bc_x, bc_y};
  model.onsite = CMatrix::Zero(1, 1);
  model.hoppings.push_back({{1, 0}, CMatrix::Constant(1, 1, -t)});
  if (ly > 1) model.hoppings.push_back({{0, 1}, CMatrix::Constant(1, 1, -t)});
  return model;
}

CMatrix build_single_particle(const SingleParticleModel& model) {
  model.validate();
  const int nb = model.bands;
  const auto n = static_cast<Eigen::Index>(model.orbitals());
  CMatrix h = CMatrix::Zero(n, n);
  for (int y = 0; y < model.ly; ++y) {
    for (int x = 0; x < model.lx; ++x) {
      const Eigen::Index r = static_cast<Eigen::Index>(x + model.lx * y) * nb;
      h.block(r, r, nb, nb) += model.onsite;
      for (const auto& hop : model.hoppings) {
        int tx = x;
        int ty = y;
        const double px = wrap(tx, hop.displacement[0], model.lx, model.bc[0]);
        const double py = wrap(ty, hop.displacement[1], model.ly, model.bc[1]);
        const double phase = px * py;
        if (phase == 0.0) continue;
        const Eigen::Index rp = static_cast<Eigen::Index>(tx + model.lx * ty) * nb;
        h.block(r, rp, nb, nb) += phase * hop.block;
        h.block(rp, r, nb, nb) += phase * hop.block.adjoint();
      }
    }
  }
  return h;
}

CMatrix bloch_hamiltonian(const SingleParticleModel& model, double kx, double ky) {
  CMatrix hk = model.onsite;
  for (const auto& hop : model.hoppings) {
    const double arg = kx * hop.displacement[0] + ky * hop.displacement[1];
    const cplx phase = std::polar(1.0, arg);
    hk += phase * hop.block + std::conj(phase) * hop.block.adjoint();
  }
  return hk;
}

std::vector<double> allowed_momenta(int length, Boundary bc) {
  if (bc == Boundary::Open) throw Error("allowed_momenta: open boundaries have no crystal momentum");
  const double shift = bc == Boundary::Antiperiodic ? std::numbers::pi : 0.0;
  std::vector<double> ks(static_cast<std::size_t>(length));
  for (int n = 0; n < length; ++n) {
    ks[static_cast<std::size_t>(n)] = (2.0 * std::numbers::pi * n + shift) / length;
  }
  return ks;
}

SingleParticleSpectrum diagonalize_dense(const SingleParticleModel& model) {
  return from_dense(build_single_particle(model));
}

SingleParticleSpectrum diagonalize_bloch(const SingleParticleModel& model) {
  model.validate();
  if (!model.translation_invariant()) {
    throw Error("diagonalize_bloch: model has open boundaries");
  }
  const auto kxs = allowed_momenta(model.lx, model.bc[0]);
  const auto kys = allowed_momenta(model.ly, model.bc[1]);
  const int nb = model.bands;
  const auto n = static_cast<Eigen::Index>(model.orbitals());
  const double norm = 1.0 / std::sqrt(static_cast<double>(model.sites()));

  RVector energies(n);
  CMatrix states(n, n);
  Eigen::Index col = 0;
  for (int iy = 0; iy < model.ly; ++iy) {
    for (int ix = 0; ix < model.lx; ++ix) {
      const double kx = kxs[static_cast<std::size_t>(ix)];
      const double ky = kys[static_cast<std::size_t>(iy)];
      Eigen::SelfAdjointEigenSolver<CMatrix> es(bloch_hamiltonian(model, kx, ky));
      for (int b = 0; b < nb; ++b, ++col) {
        energies[col] = es.eigenvalues()[b];
        for (int y = 0; y < model.ly; ++y) {
          for (int x = 0; x < model.lx; ++x) {
            const cplx wave = std::polar(norm, kx * x + ky * y);
            const Eigen::Index r = static_cast<Eigen::Index>(x + model.lx * y) * nb;
            states.block(r, col, nb, 1) = wave * es.eigenvectors().col(b);
          }
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return energies[a] < energies[b]; });
  SingleParticleSpectrum out;
  out.energies.resize(n);
  out.states.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.energies[i] = energies[order[static_cast<std::size_t>(i)]];
    out.states.col(i) = states.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

SingleParticleSpectrum diagonalize(const SingleParticleModel& model) {
  return model.translation_invariant() ? diagonalize_bloch(model) : diagonalize_dense(model);
}

}  // namespace entfluc
