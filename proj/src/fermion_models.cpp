#include "entfluc/fermion_models.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "entfluc/error.hpp"

namespace entfluc {
namespace {

int occupied_below(Config c, int site) {
  const Config mask = (Config{1} << site) - 1;
  return std::popcount(c & mask);
}

void require_fermions(const SectorBasis& basis, int sites, const char* who) {
  if (basis.kind() != SiteKind::Fermion) {
    throw Error(std::string(who) + ": requires a Fermion basis");
  }
  if (basis.sites() != sites) {
    throw Error(std::string(who) + ": basis has " + std::to_string(basis.sites()) +
                " sites, expected " + std::to_string(sites));
  }
}

class FockBuilder {
 public:
  explicit FockBuilder(const SectorBasis& basis) : basis_(basis), builder_(basis.size()) {}

  void add_term(std::size_t col, cplx coeff, std::span<const FermionOp> ops) {
    if (coeff == cplx{0.0}) return;
    auto image = apply_fermion_ops(basis_.state(col), ops);
    if (!image) return;
    auto row = basis_.index(image->config);
    if (!row) throw SymmetryViolationError("fermion term leaves the requested sector");
    builder_.add(*row, col, coeff * static_cast<double>(image->sign));
  }

  void add_diagonal(std::size_t col, double value) { builder_.add(col, col, value); }

  SparseOperator finish() { return builder_.finish(); }

 private:
  const SectorBasis& basis_;
  OperatorBuilder builder_;
};

}  // namespace

std::optional<FockImage> apply_fermion_ops(Config c, std::span<const FermionOp> ops) {
  int sign = 1;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    const Config bit = Config{1} << it->site;
    const bool occupied = (c & bit) != 0;
    if (occupied == it->dagger) return std::nullopt;
    if (occupied_below(c, it->site) % 2 != 0) sign = -sign;
    c ^= bit;
  }
  return FockImage{c, sign};
}

void KitaevParams::validate() const {
  for (double v : {t, Delta, mu, V}) {
    if (!std::isfinite(v)) throw Error("KitaevParams: parameters must be finite");
  }
  if (L < 2) throw Error("KitaevParams: need at least two sites");
  if (L > 62) throw Error("KitaevParams: chain too long for 64-bit configurations");
}

SparseOperator build_kitaev(const KitaevParams& p, const SectorBasis& basis) {
  p.validate();
  require_fermions(basis, p.L, "build_kitaev");
  const auto bonds = chain_bonds(p.L, p.bc);
  FockBuilder fb(basis);
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Config c = basis.state(col);
    double diag = 0.0;
    for (const auto& [i, j] : bonds) {
      // antiperiodic: the wrapped bond flips sign (t and Delta, not V)
      const double s = (p.bc == Boundary::Antiperiodic && i == p.L - 1 && j == 0) ? -1.0 : 1.0;
      const std::array<FermionOp, 2> hop{{{i, true}, {j, false}}};
      const std::array<FermionOp, 2> hop_back{{{j, true}, {i, false}}};
      const std::array<FermionOp, 2> pair{{{i, true}, {j, true}}};
      const std::array<FermionOp, 2> pair_back{{{j, false}, {i, false}}};
      fb.add_term(col, -0.5 * s * p.t, hop);
      fb.add_term(col, -0.5 * s * p.t, hop_back);
      fb.add_term(col, -0.5 * s * p.Delta, pair);
      fb.add_term(col, -0.5 * s * p.Delta, pair_back);
      const double ni = static_cast<double>((c >> i) & 1U);
      const double nj = static_cast<double>((c >> j) & 1U);
      diag += p.V * (ni - 0.5) * (nj - 0.5);
    }
    diag -= p.mu * static_cast<double>(std::popcount(c));
    fb.add_diagonal(col, diag);
  }
  return fb.finish();
}

SparseOperator build_quadratic(const CMatrix& h, const SectorBasis& basis) {
  const auto n = static_cast<int>(h.rows());
  if (h.cols() != h.rows()) throw Error("build_quadratic: matrix must be square");
  require_fermions(basis, n, "build_quadratic");
  FockBuilder fb(basis);
  for (std::size_t col = 0; col < basis.size(); ++col) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const std::array<FermionOp, 2> term{{{i, true}, {j, false}}};
        fb.add_term(col, h(i, j), term);
      }
    }
  }
  return fb.finish();
}

JordanWignerMap kitaev_from_xyz(const SpinModelParams& xyz) {
  xyz.validate();
  if (xyz.spin != SpinKind::Half) throw Error("kitaev_from_xyz: requires a spin-1/2 chain");
  JordanWignerMap m;
  m.kitaev.t = -(xyz.J[0] + xyz.J[1]) / 2.0;
  m.kitaev.Delta = (xyz.J[1] - xyz.J[0]) / 2.0;
  m.kitaev.mu = -xyz.h;
  m.kitaev.V = xyz.J[2];
  m.kitaev.L = xyz.L;
  m.kitaev.bc = xyz.bc;
  m.energy_offset = -xyz.h * xyz.L / 2.0;
  return m;
}

SpinModelParams xyz_from_kitaev(const KitaevParams& k) {
  k.validate();
  SpinModelParams p;
  p.spin = SpinKind::Half;
  p.J = {-k.t - k.Delta, -k.t + k.Delta, k.V};
  p.h = -k.mu;
  p.alpha = 0.0;
  p.D = 0.0;
  p.L = k.L;
  p.bc = k.bc;
  return p;
}

}  // namespace entfluc
