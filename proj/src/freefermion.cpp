#include "entfluc/freefermion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entfluc/error.hpp"

namespace entfluc {
namespace {

constexpr double kXiSlack = 1e-10;
constexpr double kCommuteTol = 1e-8;

bool within(double lhs, double rhs) { return lhs <= rhs + 1e-10 * std::max(1.0, std::abs(rhs)); }

}  // namespace

CorrelationMatrix make_correlation(CMatrix matrix) {
  if (matrix.rows() != matrix.cols()) throw Error("make_correlation: matrix must be square");
  CorrelationMatrix c;
  if (matrix.size() > 0 && (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error("make_correlation: matrix must be Hermitian");
  }
  c.matrix = (matrix + matrix.adjoint()) / 2.0;
  if (c.matrix.size() == 0) {
    c.xi = RVector();
    c.eigenvectors = CMatrix();
    return c;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(c.matrix);
  c.xi = es.eigenvalues();
  c.eigenvectors = es.eigenvectors();
  if (c.xi.minCoeff() < -kXiSlack || c.xi.maxCoeff() > 1.0 + kXiSlack) {
    throw Error("make_correlation: eigenvalues outside [0, 1]");
  }
  return c;
}

FermiSea::FermiSea(const SingleParticleSpectrum& spectrum, const Filling& filling) {
  const Eigen::Index n = spectrum.energies.size();
  const double scale = std::max(1.0, spectrum.energies.cwiseAbs().maxCoeff());
  const double tol = 1e-9 * scale;

  Eigen::Index count = 0;
  bool allow_degenerate = false;
  if (std::holds_alternative<HalfFilling>(filling)) {
    if (n % 2 != 0) throw Error("FermiSea: half filling needs an even number of orbitals");
    count = n / 2;
  } else if (const auto* f = std::get_if<FermiEnergy>(&filling)) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(spectrum.energies[i] - f->mu) < tol) {
        throw DegenerateFermiLevelError("FermiSea: a level sits at the Fermi energy");
      }
      if (spectrum.energies[i] < f->mu) ++count;
    }
  } else {
    const auto& p = std::get<ParticleCount>(filling);
    if (p.count < 0 || p.count > n) throw Error("FermiSea: particle count out of range");
    count = p.count;
    allow_degenerate = p.allow_degenerate;
  }

  if (count > 0 && count < n) {
    fermi_gap_ = spectrum.energies[count] - spectrum.energies[count - 1];
    if (fermi_gap_ < tol && !allow_degenerate) {
      throw DegenerateFermiLevelError("FermiSea: degenerate levels straddle the Fermi level (gap " +
                                      std::to_string(fermi_gap_) + ")");
    }
  }
  occupied_ = spectrum.states.leftCols(count);
}

CorrelationMatrix FermiSea::correlation(const std::vector<int>& orbitals) const {
  CMatrix phi(static_cast<Eigen::Index>(orbitals.size()), occupied_.cols());
  for (std::size_t i = 0; i < orbitals.size(); ++i) {
    const int o = orbitals[i];
    if (o < 0 || o >= occupied_.rows()) throw Error("FermiSea: orbital index out of range");
    phi.row(static_cast<Eigen::Index>(i)) = occupied_.row(o);
  }
  // <c_i^dag c_j> = sum_occ conj(phi_i) phi_j
  return make_correlation(phi.conjugate() * phi.transpose());
}

std::vector<int> orbitals_of_sites(const SingleParticleModel& model, const std::vector<int>& sites) {
  std::vector<int> out;
  for (int s : sites) {
    if (s < 0 || s >= model.sites()) throw Error("orbitals_of_sites: site out of range");
    for (int b = 0; b < model.bands; ++b) out.push_back(s * model.bands + b);
  }
  return out;
}

std::vector<int> rectangle_sites(const SingleParticleModel& model, int x0, int y0, int w, int h) {
  if (x0 < 0 || y0 < 0 || w < 1 || h < 1 || x0 + w > model.lx || y0 + h > model.ly) {
    throw Error("rectangle_sites: rectangle does not fit in the lattice");
  }
  std::vector<int> sites;
  for (int y = y0; y < y0 + h; ++y)
    for (int x = x0; x < x0 + w; ++x) sites.push_back(x + model.lx * y);
  return sites;
}

CorrelationMatrix correlation_matrix(const SingleParticleModel& model, const Filling& filling,
                                     const std::vector<int>& sites) {
  const FermiSea sea(diagonalize(model), filling);
  return sea.correlation(orbitals_of_sites(model, sites));
}

SingleParticleObservable make_single_particle_observable(CMatrix matrix) {
  if (matrix.rows() != matrix.cols()) throw Error("single-particle observable must be square");
  if (matrix.size() > 0 && (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error("single-particle observable must be Hermitian");
  }
  SingleParticleObservable a;
  a.matrix = std::move(matrix);
  if (a.matrix.size() > 0) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix, Eigen::EigenvaluesOnly);
    a.eigenvalues = es.eigenvalues();
  }
  return a;
}

double variance_free(const CorrelationMatrix& C, const SingleParticleObservable& A) {
  if (A.matrix.rows() != C.dim()) throw Error("variance_free: dimension mismatch");
  const Eigen::Index n = C.dim();
  if (n == 0) return 0.0;
  const CMatrix at = A.matrix.transpose();
  const CMatrix hole = CMatrix::Identity(n, n) - C.matrix;
  return (at * C.matrix * at * hole).trace().real();
}

double variance_free_eigenbasis(const CorrelationMatrix& C, const SingleParticleObservable& A) {
  if (A.matrix.rows() != C.dim()) throw Error("variance_free_eigenbasis: dimension mismatch");
  const Eigen::Index n = C.dim();
  if (n == 0) return 0.0;
  const CMatrix elements = C.eigenvectors.adjoint() * A.matrix.transpose() * C.eigenvectors;
  double v = 0.0;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) v += C.xi[a] * (1.0 - C.xi[b]) * std::norm(elements(a, b));
  return v;
}

double number_variance(const CorrelationMatrix& C) {
  if (C.dim() == 0) return 0.0;
  return (C.matrix - C.matrix * C.matrix).trace().real();
}

EntropyReport entropy_from_xi(const CorrelationMatrix& C) {
  EntropyReport r;
  for (Eigen::Index i = 0; i < C.xi.size(); ++i) {
    const double x = std::clamp(C.xi[i], 0.0, 1.0);
    if (x > kSpectrumCutoff) r.s_vn -= x * std::log(x);
    if (1.0 - x > kSpectrumCutoff) r.s_vn -= (1.0 - x) * std::log(1.0 - x);
    r.s_renyi2 -= std::log(x * x + (1.0 - x) * (1.0 - x));
  }
  r.s_vn = std::max(r.s_vn, 0.0);
  r.s_renyi2 = std::max(r.s_renyi2, 0.0);
  return r;
}

ConservedBounds conserved_bounds(const CorrelationMatrix& C, const SingleParticleObservable& A) {
  if (A.matrix.rows() != C.dim()) throw Error("conserved_bounds: dimension mismatch");
  ConservedBounds b;
  if (C.dim() == 0) {
    b.holds = true;
    return b;
  }
  const CMatrix at = A.matrix.transpose();
  const double comm = (at * C.matrix - C.matrix * at).cwiseAbs().maxCoeff();
  if (comm >= kCommuteTol) {
    throw NotConservedError("conserved_bounds: [A^T, C] != 0, bounds hold only for conserved A",
                            comm);
  }
  const RVector mags = A.eigenvalues.cwiseAbs();
  const double a_min = mags.minCoeff();
  const double a_max = mags.maxCoeff();
  b.number_variance = number_variance(C);
  b.variance = variance_free(C, A);
  b.lower = a_min * a_min * b.number_variance;
  b.upper = a_max * a_max * b.number_variance;
  b.holds = within(b.lower, b.variance) && within(b.variance, b.upper);
  return b;
}

VolumeLawBound volume_law_bound(const CorrelationMatrix& C, const SingleParticleObservable& A) {
  if (A.matrix.rows() != C.dim()) throw Error("volume_law_bound: dimension mismatch");
  VolumeLawBound b;
  if (C.dim() == 0) {
    b.holds = true;
    return b;
  }
  const CMatrix at = A.matrix.transpose();
  b.variance = variance_free(C, A);
  b.first_bound = (C.matrix * at * at).trace().real();
  const double a_max = A.eigenvalues.cwiseAbs().maxCoeff();
  const double particles = std::max(0.0, C.matrix.trace().real());
  b.second_bound = a_max * a_max * std::ceil(particles - 1e-9);
  b.holds = within(b.variance, b.first_bound) && within(b.first_bound, b.second_bound);
  return b;
}

}  // namespace entfluc
