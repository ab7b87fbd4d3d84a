#include "entfluc/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "entfluc/error.hpp"
#include "entfluc/uncertainty.hpp"

namespace entfluc {
namespace {

constexpr double kOutcomeBinning = 1e-8;

struct EigenPairs {
  RVector values;
  CMatrix vectors;
};

EigenPairs hermitian_eigen(const CMatrix& m) {
  if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real());
    return {es.eigenvalues(), es.eigenvectors().cast<cplx>()};
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  return {es.eigenvalues(), es.eigenvectors()};
}

void sort_descending(EntanglementSpectrum& spec) {
  const Eigen::Index n = spec.lambdas.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return spec.lambdas[a] > spec.lambdas[b]; });
  RVector lambdas(n);
  for (Eigen::Index i = 0; i < n; ++i) lambdas[i] = spec.lambdas[order[static_cast<std::size_t>(i)]];
  spec.lambdas = std::move(lambdas);
  if (spec.vectors) {
    CMatrix v(spec.vectors->rows(), n);
    for (Eigen::Index i = 0; i < n; ++i) v.col(i) = spec.vectors->col(order[static_cast<std::size_t>(i)]);
    spec.vectors = std::move(v);
  }
  if (spec.charges) {
    std::vector<double> c(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      c[static_cast<std::size_t>(i)] = (*spec.charges)[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    }
    spec.charges = std::move(c);
  }
}

void finalize(EntanglementSpectrum& spec) {
  for (Eigen::Index i = 0; i < spec.lambdas.size(); ++i) {
    spec.lambdas[i] = std::clamp(spec.lambdas[i], 0.0, 1.0);
  }
  sort_descending(spec);
  spec.entanglement_energies.clear();
  for (Eigen::Index i = 0; i < spec.lambdas.size(); ++i) {
    if (spec.lambdas[i] > kSpectrumCutoff) spec.entanglement_energies.push_back(-std::log(spec.lambdas[i]));
  }
}

}  // namespace

ReducedDensityMatrix reduced_density_matrix(const ManyBodyState& state, const Bipartition& part,
                                            TraceSide keep) {
  if (!state.basis) throw Error("reduced_density_matrix: state has no basis attached");
  const SectorBasis& basis = *state.basis;
  if (part.total_sites() != basis.sites()) {
    throw Error("reduced_density_matrix: partition does not match the chain length");
  }
  if (static_cast<std::size_t>(state.amplitudes.size()) != basis.size()) {
    throw Error("reduced_density_matrix: amplitude length does not match the basis");
  }
  const Factorizer fac(part, basis.local_dim());
  const bool keep_omega = keep == TraceSide::Subsystem;
  const auto kept_dim =
      static_cast<Eigen::Index>(keep_omega ? fac.omega_dimension() : fac.environment_dimension());

  // Columns of M are labelled by the traced-out codes that actually occur.
  std::unordered_map<Config, Eigen::Index> column_of;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> where(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto [omega, env] = fac.split(basis.state(i));
    const Config kept = keep_omega ? omega : env;
    const Config traced = keep_omega ? env : omega;
    auto [it, inserted] = column_of.try_emplace(traced, static_cast<Eigen::Index>(column_of.size()));
    where[i] = {static_cast<Eigen::Index>(kept), it->second};
  }
  CMatrix m = CMatrix::Zero(kept_dim, static_cast<Eigen::Index>(column_of.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    m(where[i].first, where[i].second) = state.amplitudes[static_cast<Eigen::Index>(i)];
  }

  ReducedDensityMatrix rho;
  rho.kind = basis.kind();
  rho.sites = keep_omega ? part.length() : part.environment_length();
  rho.matrix = m * m.adjoint();
  rho.matrix = (rho.matrix + rho.matrix.adjoint()) / 2.0;
  return rho;
}

EntanglementSpectrum entanglement_spectrum(const ReducedDensityMatrix& rho,
                                           const SubsystemObservable* A) {
  EntanglementSpectrum spec;
  if (!A) {
    auto eig = hermitian_eigen(rho.matrix);
    spec.lambdas = eig.values;
    spec.vectors = std::move(eig.vectors);
    finalize(spec);
    return spec;
  }
  if (A->dim() != rho.dim()) throw Error("entanglement_spectrum: observable dimension mismatch");
  const auto cons = check_conserved(rho, *A);
  if (!cons.conserved) {
    throw NotConservedError("entanglement_spectrum: observable '" + A->name +
                                "' does not commute with rho; refusing to label",
                            cons.commutator_norm);
  }

  // Diagonalize rho within each eigenspace of A.
  auto a_eig = hermitian_eigen(A->matrix);
  const Eigen::Index n = rho.dim();
  spec.lambdas.resize(n);
  spec.vectors = CMatrix(n, n);
  spec.charges = std::vector<double>(static_cast<std::size_t>(n));
  Eigen::Index begin = 0;
  Eigen::Index out = 0;
  while (begin < n) {
    Eigen::Index end = begin + 1;
    while (end < n && a_eig.values[end] - a_eig.values[end - 1] < kOutcomeBinning) ++end;
    const CMatrix q = a_eig.vectors.middleCols(begin, end - begin);
    const double charge = a_eig.values.segment(begin, end - begin).mean();
    CMatrix block = q.adjoint() * rho.matrix * q;
    block = (block + block.adjoint()) / 2.0;
    auto eig = hermitian_eigen(block);
    for (Eigen::Index j = 0; j < eig.values.size(); ++j, ++out) {
      spec.lambdas[out] = eig.values[j];
      spec.vectors->col(out) = q * eig.vectors.col(j);
      (*spec.charges)[static_cast<std::size_t>(out)] = charge;
    }
    begin = end;
  }
  finalize(spec);
  return spec;
}

EntanglementSpectrum spectrum_from_lambdas(std::vector<double> lambdas,
                                           std::optional<std::vector<double>> charges) {
  if (charges && charges->size() != lambdas.size()) {
    throw Error("spectrum_from_lambdas: charges and lambdas differ in length");
  }
  EntanglementSpectrum spec;
  spec.lambdas = Eigen::Map<RVector>(lambdas.data(), static_cast<Eigen::Index>(lambdas.size()));
  spec.charges = std::move(charges);
  finalize(spec);
  return spec;
}

EntropyReport entropies(const EntanglementSpectrum& spec) {
  EntropyReport r;
  double purity = 0.0;
  for (Eigen::Index i = 0; i < spec.lambdas.size(); ++i) {
    const double l = spec.lambdas[i];
    if (l <= kSpectrumCutoff) continue;
    r.s_vn -= l * std::log(l);
    purity += l * l;
  }
  r.s_renyi2 = purity > 0.0 ? -std::log(purity) : 0.0;
  // Guard round-off on pure states.
  r.s_vn = std::max(r.s_vn, 0.0);
  r.s_renyi2 = std::max(r.s_renyi2, 0.0);
  return r;
}

void write_spectrum_csv(std::ostream& out, const EntanglementSpectrum& spec) {
  out << "index,lambda,charge,entanglement_energy\n";
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < spec.lambdas.size(); ++i) {
    const double l = spec.lambdas[i];
    out << i << ',' << l << ',';
    if (spec.charges) out << (*spec.charges)[static_cast<std::size_t>(i)];
    out << ',';
    if (l > kSpectrumCutoff) out << -std::log(l);
    out << '\n';
  }
}

}  // namespace entfluc
