#include "entfluc/spin_models.hpp"

#include <cmath>
#include <string>

#include "entfluc/error.hpp"

namespace entfluc {
namespace {

constexpr double kChop = 1e-13;

Config pow_d(int d, int e) {
  Config r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<Config>(d);
  return r;
}

void chop(CMatrix& m) {
  const double ref = m.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j)) < kChop * ref) m(i, j) = 0.0;
    }
  }
}

// Scatters a two-site bond matrix and an on-site matrix into the chain.
SparseOperator scatter(const CMatrix& bond, const CMatrix& onsite, int L, Boundary bc,
                       const SectorBasis& basis) {
  const int d = basis.local_dim();
  const auto bonds = chain_bonds(L, bc);
  std::vector<Config> weight(static_cast<std::size_t>(L));
  for (int s = 0; s < L; ++s) weight[static_cast<std::size_t>(s)] = pow_d(d, s);

  OperatorBuilder builder(basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Config c = basis.state(col);
    auto target = [&](Config cfg, cplx v) {
      auto row = basis.index(cfg);
      if (!row) {
        throw SymmetryViolationError(
            "Hamiltonian term leaves the requested sector; couplings break the sector symmetry");
      }
      builder.add(*row, col, v);
    };

    for (int s = 0; s < L; ++s) {
      const Config w = weight[static_cast<std::size_t>(s)];
      const int k = static_cast<int>((c / w) % d);
      for (int kp = 0; kp < d; ++kp) {
        const cplx v = onsite(kp, k);
        if (v == cplx{0.0}) continue;
        target(c + (static_cast<Config>(kp) - static_cast<Config>(k)) * w, v);
      }
    }
    for (const auto& [i, j] : bonds) {
      const Config wi = weight[static_cast<std::size_t>(i)];
      const Config wj = weight[static_cast<std::size_t>(j)];
      const int a = static_cast<int>((c / wi) % d);
      const int b = static_cast<int>((c / wj) % d);
      const Config base = c - static_cast<Config>(a) * wi - static_cast<Config>(b) * wj;
      for (int ap = 0; ap < d; ++ap) {
        for (int bp = 0; bp < d; ++bp) {
          const cplx v = bond(ap * d + bp, a * d + b);
          if (v == cplx{0.0}) continue;
          target(base + static_cast<Config>(ap) * wi + static_cast<Config>(bp) * wj, v);
        }
      }
    }
  }
  return builder.finish();
}

}  // namespace

SpinMatrices spin_matrices(int local_dim) {
  const double s = (local_dim - 1) / 2.0;
  const auto n = static_cast<Eigen::Index>(local_dim);
  SpinMatrices m;
  m.sz = CMatrix::Zero(n, n);
  m.splus = CMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mz = static_cast<double>(k) - s;
    m.sz(k, k) = mz;
    if (k + 1 < n) m.splus(k + 1, k) = std::sqrt(s * (s + 1) - mz * (mz + 1));
  }
  m.sminus = m.splus.adjoint();
  m.sx = (m.splus + m.sminus) / 2.0;
  m.sy = (m.splus - m.sminus) / cplx(0.0, 2.0);
  m.identity = CMatrix::Identity(n, n);
  return m;
}

CMatrix two_site(const CMatrix& left, const CMatrix& right) {
  const Eigen::Index d = left.rows();
  CMatrix out(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      for (Eigen::Index ap = 0; ap < d; ++ap)
        for (Eigen::Index bp = 0; bp < d; ++bp)
          out(ap * d + bp, a * d + b) = left(ap, a) * right(bp, b);
  return out;
}

std::vector<std::pair<int, int>> chain_bonds(int L, Boundary bc) {
  std::vector<std::pair<int, int>> bonds;
  for (int j = 0; j + 1 < L; ++j) bonds.emplace_back(j, j + 1);
  if (bc != Boundary::Open && L >= 2) bonds.emplace_back(L - 1, 0);
  return bonds;
}

void SpinModelParams::validate() const {
  for (double v : {J[0], J[1], J[2], alpha, D, h}) {
    if (!std::isfinite(v)) throw Error("SpinModelParams: couplings must be finite");
  }
  if (L < 1) throw Error("SpinModelParams: L must be positive");
  if (spin == SpinKind::Half && alpha != 0.0) {
    throw Error("SpinModelParams: biquadratic term is not defined for spin-1/2");
  }
  if (bc == Boundary::Antiperiodic) {
    throw Error("SpinModelParams: antiperiodic boundaries are not defined for spin chains");
  }
}

namespace {

SparseOperator build_spin_chain(const SpinModelParams& p, const SectorBasis& basis) {
  p.validate();
  if (basis.sites() != p.L) {
    throw Error("spin model: basis has " + std::to_string(basis.sites()) + " sites, params L=" +
                std::to_string(p.L));
  }
  const int d = basis.local_dim();
  const auto s = spin_matrices(d);
  const CMatrix dot = two_site(s.sx, s.sx) + two_site(s.sy, s.sy) + two_site(s.sz, s.sz);
  CMatrix bond = p.J[0] * two_site(s.sx, s.sx) + p.J[1] * two_site(s.sy, s.sy) +
                 p.J[2] * two_site(s.sz, s.sz);
  if (p.alpha != 0.0) bond += p.alpha * (dot * dot);
  chop(bond);
  CMatrix onsite = p.D * (s.sz * s.sz) + p.h * s.sz;
  return scatter(bond, onsite, p.L, p.bc, basis);
}

}  // namespace

SparseOperator build_aklt(const SpinModelParams& params, const SectorBasis& basis) {
  if (params.spin != SpinKind::One || basis.kind() != SiteKind::Spin1) {
    throw Error("build_aklt: requires spin-1 parameters and a Spin1 basis");
  }
  if (basis.sector() && params.J[0] != params.J[1]) {
    throw SymmetryViolationError("build_aklt: Jx != Jy does not conserve total S^z");
  }
  return build_spin_chain(params, basis);
}

SparseOperator build_xyz(const SpinModelParams& params, const SectorBasis& basis) {
  if (params.spin != SpinKind::Half || basis.kind() != SiteKind::SpinHalf) {
    throw Error("build_xyz: requires spin-1/2 parameters and a SpinHalf basis");
  }
  return build_spin_chain(params, basis);
}

}  // namespace entfluc
