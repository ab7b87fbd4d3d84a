#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "entfluc/ed.hpp"
#include "entfluc/entanglement.hpp"
#include "entfluc/error.hpp"
#include "entfluc/spin_models.hpp"
#include "oracles.hpp"

using namespace entfluc;

namespace {

ManyBodyState make_state(std::shared_ptr<const SectorBasis> basis, CVector amps) {
  return {std::move(basis), std::move(amps), 0.0};
}

// rho_ab = sum over environment digits, looping over all d^L codes.
CMatrix brute_force_rdm(const ManyBodyState& s, int start, int length) {
  const auto& b = *s.basis;
  const int d = b.local_dim();
  const int L = b.sites();
  Eigen::Index dim_o = 1;
  for (int i = 0; i < length; ++i) dim_o *= d;
  // full amplitude vector
  CVector full = CVector::Zero(static_cast<Eigen::Index>(b.full_dimension()));
  for (std::size_t i = 0; i < b.size(); ++i) full[static_cast<Eigen::Index>(b.state(i))] = s.amplitudes[static_cast<Eigen::Index>(i)];
  CMatrix rho = CMatrix::Zero(dim_o, dim_o);
  for (Eigen::Index c1 = 0; c1 < full.size(); ++c1) {
    for (Eigen::Index c2 = 0; c2 < full.size(); ++c2) {
      bool same_env = true;
      Eigen::Index a = 0;
      Eigen::Index bb = 0;
      Eigen::Index w = 1;
      for (int site = 0; site < L; ++site) {
        const int d1 = digit(static_cast<Config>(c1), site, d);
        const int d2 = digit(static_cast<Config>(c2), site, d);
        if (site >= start && site < start + length) {
          a += d1 * w;
          bb += d2 * w;
          w *= d;
        } else if (d1 != d2) {
          same_env = false;
          break;
        }
      }
      if (same_env) rho(a, bb) += full[c1] * std::conj(full[c2]);
    }
  }
  return rho;
}

}  // namespace

TEST_CASE("reduced density matrix matches the brute-force partial trace") {
  std::mt19937_64 rng(11);
  SUBCASE("spin-1 sector state, middle block") {
    auto b = std::make_shared<const SectorBasis>(5, SiteKind::Spin1, TwiceSz{0});
    const auto s = make_state(b, oracle::random_state(static_cast<Eigen::Index>(b->size()), rng));
    const auto rho = reduced_density_matrix(s, Bipartition(5, 1, 2));
    CHECK(rho.dim() == 9);
    CHECK((rho.matrix - brute_force_rdm(s, 1, 2)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(rho.matrix.trace().real() == doctest::Approx(1.0));
  }
  SUBCASE("full spin-1/2 space, right block") {
    auto b = std::make_shared<const SectorBasis>(6, SiteKind::SpinHalf);
    const auto s = make_state(b, oracle::random_state(64, rng));
    const auto rho = reduced_density_matrix(s, Bipartition(6, 3, 3));
    CHECK((rho.matrix - brute_force_rdm(s, 3, 3)).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("Schmidt: both sides have the same nonzero spectrum") {
  std::mt19937_64 rng(5);
  auto b = std::make_shared<const SectorBasis>(7, SiteKind::SpinHalf, TwiceSz{1});
  const auto s = make_state(b, oracle::random_state(static_cast<Eigen::Index>(b->size()), rng));
  const Bipartition part(7, 2, 3);
  const auto sa = entanglement_spectrum(reduced_density_matrix(s, part, TraceSide::Subsystem));
  const auto sb = entanglement_spectrum(reduced_density_matrix(s, part, TraceSide::Environment));
  CHECK(sa.size() == 8);
  CHECK(sb.size() == 16);
  for (Eigen::Index i = 0; i < 8; ++i) CHECK(sa.lambdas[i] == doctest::Approx(sb.lambdas[i]).epsilon(1e-10));
  for (Eigen::Index i = 8; i < 16; ++i) CHECK(sb.lambdas[i] < 1e-14);
  CHECK(entropies(sa).s_vn == doctest::Approx(entropies(sb).s_vn));
}

TEST_CASE("singlet and product states") {
  auto b = std::make_shared<const SectorBasis>(2, SiteKind::SpinHalf);
  CVector singlet = CVector::Zero(4);
  singlet[1] = 1.0 / std::sqrt(2.0);   // up on site 0
  singlet[2] = -1.0 / std::sqrt(2.0);  // up on site 1
  const auto spec = entanglement_spectrum(reduced_density_matrix(make_state(b, singlet), Bipartition(2, 0, 1)));
  CHECK(spec.lambdas[0] == doctest::Approx(0.5));
  CHECK(spec.lambdas[1] == doctest::Approx(0.5));
  const auto e = entropies(spec);
  CHECK(e.s_vn == doctest::Approx(std::numbers::ln2));
  CHECK(e.s_renyi2 == doctest::Approx(std::numbers::ln2));
  CHECK(spec.entanglement_energies.size() == 2);
  CHECK(spec.entanglement_energies[0] == doctest::Approx(std::numbers::ln2));

  CVector product = CVector::Zero(4);
  product[3] = 1.0;
  const auto p = entropies(entanglement_spectrum(reduced_density_matrix(make_state(b, product), Bipartition(2, 0, 1))));
  CHECK(p.s_vn == doctest::Approx(0.0));
  CHECK(p.s_renyi2 == doctest::Approx(0.0));
}

TEST_CASE("charge-labelled spectrum") {
  // Heisenberg ground state conserves the subsystem Sz
  SpinModelParams prm;
  prm.spin = SpinKind::Half;
  prm.L = 8;
  prm.bc = Boundary::Periodic;
  auto b = std::make_shared<const SectorBasis>(8, SiteKind::SpinHalf, TwiceSz{0});
  const auto gs = ground_state(build_xyz(prm, *b), b);
  const auto rho = reduced_density_matrix(gs.ground(), Bipartition(8, 0, 4));
  const auto sz = total_spin(SpinAxis::Z, 4, SiteKind::SpinHalf);
  const auto labelled = entanglement_spectrum(rho, &sz);
  const auto plain = entanglement_spectrum(rho);
  REQUIRE(labelled.charges);
  CHECK((labelled.lambdas - plain.lambdas).cwiseAbs().maxCoeff() < 1e-12);
  for (Eigen::Index i = 0; i < labelled.size(); ++i) {
    const CVector v = labelled.vectors->col(i);
    // eigenvector of both rho and Sz with the recorded charge
    CHECK((sz.matrix * v - (*labelled.charges)[static_cast<std::size_t>(i)] * v).norm() < 1e-10);
    CHECK((rho.matrix * v - labelled.lambdas[i] * v).norm() < 1e-10);
  }

  const auto sx = total_spin(SpinAxis::X, 4, SiteKind::SpinHalf);
  CHECK_NOTHROW(entanglement_spectrum(rho, &sx));  // singlet: Sx conserved too

  // a non-singlet product-like state breaks it
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(b->size()));
  amps[0] = 0.8;
  amps[5] = 0.6;
  const auto rho2 = reduced_density_matrix(make_state(b, amps), Bipartition(8, 0, 4));
  try {
    entanglement_spectrum(rho2, &sx);
    FAIL("expected NotConservedError");
  } catch (const NotConservedError& e) {
    CHECK(e.commutator_norm() > 1e-10);
  }
}

TEST_CASE("spectrum helpers") {
  const auto spec = spectrum_from_lambdas({0.25, 0.5, 0.25, 0.0}, std::vector<double>{-1, 0, 1, 2});
  CHECK(spec.lambdas[0] == doctest::Approx(0.5));
  CHECK(spec.entanglement_energies.size() == 3);
  CHECK(entropies(spec).s_vn == doctest::Approx(1.5 * std::numbers::ln2));
  CHECK(entropies(spec).s_renyi2 == doctest::Approx(-std::log(0.375)));

  std::ostringstream csv;
  write_spectrum_csv(csv, spec);
  CHECK(csv.str().rfind("index,lambda,charge,entanglement_energy", 0) == 0);
}

TEST_CASE("argument checks") {
  auto b = std::make_shared<const SectorBasis>(4, SiteKind::SpinHalf);
  const auto s = make_state(b, CVector::Zero(3));
  CHECK_THROWS_AS(reduced_density_matrix(s, Bipartition(4, 0, 2)), Error);
  const auto ok = make_state(b, CVector::Unit(16, 0));
  CHECK_THROWS_AS(reduced_density_matrix(ok, Bipartition(5, 0, 2)), Error);
}
