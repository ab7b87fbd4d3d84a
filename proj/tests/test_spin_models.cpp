#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "entfluc/error.hpp"
#include "entfluc/spin_models.hpp"
#include "oracles.hpp"

using namespace entfluc;

namespace {

// Rows/columns of `full` restricted to the codes of `basis`.
CMatrix restrict(const CMatrix& full, const SectorBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  CMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = full(static_cast<Eigen::Index>(basis.state(static_cast<std::size_t>(i))),
                       static_cast<Eigen::Index>(basis.state(static_cast<std::size_t>(j))));
  return out;
}

}  // namespace

TEST_CASE("local spin matrices obey the algebra") {
  for (int d : {2, 3}) {
    const auto s = spin_matrices(d);
    const double ss = d == 2 ? 0.75 : 2.0;
    const CMatrix cas = s.sx * s.sx + s.sy * s.sy + s.sz * s.sz;
    CHECK((cas - ss * s.identity).norm() < 1e-14);
    const CMatrix comm = s.sx * s.sy - s.sy * s.sx;
    CHECK((comm - cplx(0, 1) * s.sz).norm() < 1e-14);
  }
}

TEST_CASE("two-site spectra") {
  SUBCASE("spin-1/2 Heisenberg: singlet -3/4, triplet +1/4") {
    SpinModelParams p;
    p.spin = SpinKind::Half;
    p.L = 2;
    SectorBasis b(2, SiteKind::SpinHalf);
    const auto ev = oracle::sorted_eigenvalues(build_xyz(p, b).to_dense());
    CHECK(ev[0] == doctest::Approx(-0.75));
    for (int i = 1; i < 4; ++i) CHECK(ev[i] == doctest::Approx(0.25));
  }
  SUBCASE("AKLT bond: -2/3 on total spin 0,1 and +4/3 on spin 2") {
    SpinModelParams p;
    p.alpha = 1.0 / 3.0;
    p.L = 2;
    SectorBasis b(2, SiteKind::Spin1);
    const auto ev = oracle::sorted_eigenvalues(build_aklt(p, b).to_dense());
    for (int i = 0; i < 4; ++i) CHECK(ev[i] == doctest::Approx(-2.0 / 3.0));
    for (int i = 4; i < 9; ++i) CHECK(ev[i] == doctest::Approx(4.0 / 3.0));
  }
}

TEST_CASE("spin-1 chain matches the Kronecker-product oracle") {
  const auto s = oracle::spin_one();
  for (bool periodic : {false, true}) {
    SpinModelParams p;
    p.J = {0.7, 1.1, 0.9};
    p.alpha = 0.3;
    p.D = 0.45;
    p.h = -0.2;
    p.L = 4;
    p.bc = periodic ? Boundary::Periodic : Boundary::Open;
    SectorBasis full(4, SiteKind::Spin1);
    const CMatrix ref = oracle::spin_chain(s, 4, periodic, 0.7, 1.1, 0.9, 0.3, 0.45, -0.2);
    CHECK((build_aklt(p, full).to_dense() - ref).cwiseAbs().maxCoeff() < 1e-13);

    // sector block equals the restricted oracle when Jx == Jy
    p.J = {1.0, 1.0, 1.3};
    const CMatrix ref2 = oracle::spin_chain(s, 4, periodic, 1.0, 1.0, 1.3, 0.3, 0.45, -0.2);
    SectorBasis sec(4, SiteKind::Spin1, TwiceSz{2});
    CHECK((build_aklt(p, sec).to_dense() - restrict(ref2, sec)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("spin-1/2 XYZ chain matches the oracle") {
  const auto s = oracle::spin_half();
  SpinModelParams p;
  p.spin = SpinKind::Half;
  p.J = {0.3, -0.8, 1.2};
  p.h = 0.37;
  p.L = 6;
  p.bc = Boundary::Periodic;
  SectorBasis full(6, SiteKind::SpinHalf);
  const CMatrix ref = oracle::spin_chain(s, 6, true, 0.3, -0.8, 1.2, 0.0, 0.0, 0.37);
  CHECK((build_xyz(p, full).to_dense() - ref).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(build_xyz(p, full).hermiticity_defect() < 1e-15);
}

TEST_CASE("periodic minus open is the closing bond") {
  SpinModelParams p;
  p.alpha = 1.0 / 3.0;
  p.L = 5;
  SectorBasis b(5, SiteKind::Spin1, TwiceSz{0});
  const CMatrix open = build_aklt(p, b).to_dense();
  p.bc = Boundary::Periodic;
  const CMatrix periodic = build_aklt(p, b).to_dense();

  const auto s = oracle::spin_one();
  const CMatrix dot = oracle::site_op(s.x, 4, 5) * oracle::site_op(s.x, 0, 5) +
                      oracle::site_op(s.y, 4, 5) * oracle::site_op(s.y, 0, 5) +
                      oracle::site_op(s.z, 4, 5) * oracle::site_op(s.z, 0, 5);
  const CMatrix bond = dot + dot * dot / 3.0;
  CHECK((periodic - open - restrict(bond, b)).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(chain_bonds(5, Boundary::Periodic).back() == std::make_pair(4, 0));
  CHECK(chain_bonds(5, Boundary::Open).size() == 4);
}

TEST_CASE("Hamiltonian commutes with total Sz when Jx == Jy") {
  SpinModelParams p;
  p.alpha = 0.2;
  p.D = 0.8;
  p.L = 4;
  p.bc = Boundary::Periodic;
  SectorBasis full(4, SiteKind::Spin1);
  const CMatrix H = build_aklt(p, full).to_dense();
  const auto s = oracle::spin_one();
  CMatrix sz = CMatrix::Zero(81, 81);
  for (int i = 0; i < 4; ++i) sz += oracle::site_op(s.z, i, 4);
  CHECK((H * sz - sz * H).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("symmetry-breaking couplings are refused in a sector") {
  SpinModelParams p;
  p.J = {1.0, 0.5, 1.0};
  p.L = 4;
  SectorBasis b(4, SiteKind::Spin1, TwiceSz{0});
  CHECK_THROWS_AS(build_aklt(p, b), SymmetryViolationError);
  SectorBasis full(4, SiteKind::Spin1);
  CHECK_NOTHROW(build_aklt(p, full));

  SpinModelParams half;
  half.spin = SpinKind::Half;
  half.J = {1.0, 0.2, 1.0};
  half.L = 4;
  CHECK_THROWS_AS(build_xyz(half, SectorBasis(4, SiteKind::SpinHalf, TwiceSz{0})), SymmetryViolationError);
}

TEST_CASE("parameter validation") {
  SpinModelParams p;
  p.spin = SpinKind::Half;
  p.alpha = 0.5;
  p.L = 4;
  CHECK_THROWS_AS(p.validate(), Error);
  SpinModelParams q;
  q.L = 4;
  CHECK_THROWS_AS(build_xyz(q, SectorBasis(4, SiteKind::Spin1)), Error);
  q.bc = Boundary::Antiperiodic;
  CHECK_THROWS_AS(q.validate(), Error);
}
