#pragma once
// Independent reference constructions used by the tests: dense Kronecker
// products, explicit Jordan-Wigner matrices, random states and operators.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "entfluc/types.hpp"

namespace oracle {

using entfluc::cplx;
using entfluc::CMatrix;
using entfluc::CVector;

// Operator `op` on `site` of an L-site chain; site 0 is the least
// significant digit, so it is the rightmost Kronecker factor.
inline CMatrix site_op(const CMatrix& op, int site, int L) {
  const auto d = op.rows();
  CMatrix out = CMatrix::Identity(1, 1);
  for (int s = L - 1; s >= 0; --s) {
    const CMatrix f = (s == site) ? op : CMatrix::Identity(d, d);
    CMatrix next(out.rows() * d, out.cols() * d);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(i * d, j * d, d, d) = out(i, j) * f;
    out = next;
  }
  return out;
}

struct Spin {
  CMatrix x, y, z;
};

inline Spin spin_half() {
  Spin s;
  s.x = CMatrix::Zero(2, 2);
  s.y = CMatrix::Zero(2, 2);
  s.z = CMatrix::Zero(2, 2);
  // digit 0 = down, 1 = up
  s.z(0, 0) = -0.5;
  s.z(1, 1) = 0.5;
  s.x(0, 1) = s.x(1, 0) = 0.5;
  s.y(1, 0) = cplx(0, -0.5);  // S^y = (S^+ - S^-) / 2i
  s.y(0, 1) = cplx(0, 0.5);
  return s;
}

inline Spin spin_one() {
  Spin s;
  const double r = 1.0 / std::sqrt(2.0);
  s.x = CMatrix::Zero(3, 3);
  s.y = CMatrix::Zero(3, 3);
  s.z = CMatrix::Zero(3, 3);
  // digit k <-> m = k - 1
  for (int k = 0; k < 3; ++k) s.z(k, k) = k - 1;
  s.x(0, 1) = s.x(1, 0) = s.x(1, 2) = s.x(2, 1) = r;
  s.y(1, 0) = s.y(2, 1) = cplx(0, -r);
  s.y(0, 1) = s.y(1, 2) = cplx(0, r);
  return s;
}

// sum_j [J.(S_j S_j+1) + alpha (S_j.S_j+1)^2] + D (S^z)^2 + h S^z
inline CMatrix spin_chain(const Spin& s, int L, bool periodic, double jx, double jy, double jz,
                          double alpha, double D, double h) {
  const auto d = s.z.rows();
  const auto dim = static_cast<Eigen::Index>(std::pow(d, L));
  CMatrix H = CMatrix::Zero(dim, dim);
  const int bonds = periodic ? L : L - 1;
  for (int b = 0; b < bonds; ++b) {
    const int i = b;
    const int j = (b + 1) % L;
    const CMatrix xx = site_op(s.x, i, L) * site_op(s.x, j, L);
    const CMatrix yy = site_op(s.y, i, L) * site_op(s.y, j, L);
    const CMatrix zz = site_op(s.z, i, L) * site_op(s.z, j, L);
    const CMatrix dot = xx + yy + zz;
    H += jx * xx + jy * yy + jz * zz + alpha * dot * dot;
  }
  for (int i = 0; i < L; ++i) {
    const CMatrix z = site_op(s.z, i, L);
    H += D * z * z + h * z;
  }
  return H;
}

// Jordan-Wigner annihilator c_j: (prod_{l<j} Z_l) a_j with digit 1 = occupied.
inline CMatrix annihilator(int j, int L) {
  const auto dim = Eigen::Index{1} << L;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (!((c >> j) & 1)) continue;
    int below = 0;
    for (int l = 0; l < j; ++l) below += static_cast<int>((c >> l) & 1);
    out(c - (Eigen::Index{1} << j), c) = (below % 2) ? -1.0 : 1.0;
  }
  return out;
}

// Interacting Kitaev chain built from explicit fermion matrices.
inline CMatrix kitaev_chain(int L, bool periodic, double t, double delta, double mu, double V) {
  const auto dim = Eigen::Index{1} << L;
  std::vector<CMatrix> c;
  for (int j = 0; j < L; ++j) c.push_back(annihilator(j, L));
  const CMatrix one = CMatrix::Identity(dim, dim);
  CMatrix H = CMatrix::Zero(dim, dim);
  const int bonds = periodic ? L : L - 1;
  for (int b = 0; b < bonds; ++b) {
    const int i = b;
    const int j = (b + 1) % L;
    const CMatrix hop = t * c[i].adjoint() * c[j] + delta * c[i].adjoint() * c[j].adjoint();
    H += -0.5 * (hop + CMatrix(hop.adjoint()));
    const CMatrix ni = c[i].adjoint() * c[i];
    const CMatrix nj = c[j].adjoint() * c[j];
    H += V * (ni - 0.5 * one) * (nj - 0.5 * one);
  }
  for (int j = 0; j < L; ++j) H -= mu * c[j].adjoint() * c[j];
  return H;
}

inline CMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return scale * 0.5 * (m + m.adjoint());
}

inline CMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<CMatrix> qr(random_hermitian(n, rng) + CMatrix::Identity(n, n) * cplx(0, 1));
  return qr.householderQ() * CMatrix::Identity(n, n);
}

inline CVector random_state(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = cplx(g(rng), g(rng));
  return v.normalized();
}

// Density matrix with `rank` nonzero eigenvalues (random Wishart).
inline CMatrix random_density(Eigen::Index n, Eigen::Index rank, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix x(n, rank);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < rank; ++j) x(i, j) = cplx(g(rng), g(rng));
  CMatrix rho = x * x.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

inline Eigen::VectorXd sorted_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  return es.eigenvalues();
}

}  // namespace oracle

namespace oracle {

// Ground state of sum h_ij c_i^dag c_j with `particles` fermions, built on
// the full Fock space; returns the many-body variance of
// A = sum_{i,j in omega} a_ij c_i^dag c_j and the single-particle gap at
// the filling (the many-body ground state is unique when it is positive).
struct FockVariance {
  double variance = 0.0;
  double spectral_gap = 0.0;
};

inline FockVariance fock_variance(const CMatrix& h, int particles, const std::vector<int>& omega,
                                  const CMatrix& a) {
  using Sparse = Eigen::SparseMatrix<cplx>;
  const int L = static_cast<int>(h.rows());
  const auto dim = Eigen::Index{1} << L;
  std::vector<Sparse> c;
  std::vector<Sparse> cd;
  for (int j = 0; j < L; ++j) {
    c.push_back(annihilator(j, L).sparseView());
    cd.push_back(c.back().adjoint());
  }
  Sparse Hs(dim, dim);
  Sparse Ns(dim, dim);
  for (int i = 0; i < L; ++i) {
    Ns += cd[i] * c[i];
    for (int j = 0; j < L; ++j) Hs += h(i, j) * (cd[i] * c[j]);
  }
  const CMatrix H = Hs;
  const CMatrix N = Ns;
  // penalize other particle numbers
  const CMatrix shift = N - static_cast<double>(particles) * CMatrix::Identity(dim, dim);
  const double penalty = 10.0 * (h.cwiseAbs().rowwise().sum().maxCoeff() * L + 1.0);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(H + penalty * shift * shift);
  const CVector psi = es.eigenvectors().col(0);

  Sparse A(dim, dim);
  for (std::size_t i = 0; i < omega.size(); ++i)
    for (std::size_t j = 0; j < omega.size(); ++j)
      A += a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * (cd[omega[i]] * c[omega[j]]);
  const CVector apsi = A * psi;
  const double mean = psi.dot(apsi).real();
  FockVariance out;
  out.variance = apsi.squaredNorm() - mean * mean;
  out.spectral_gap = es.eigenvalues()[1] - es.eigenvalues()[0];
  return out;
}

}  // namespace oracle
