#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "entfluc/basis.hpp"
#include "entfluc/error.hpp"

using namespace entfluc;

namespace {
std::size_t binomial(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}
}  // namespace

TEST_CASE("digits are base-d with site 0 least significant") {
  // 2*9 + 0*3 + 1 = 19  ->  digits (1, 0, 2)
  CHECK(digit(19, 0, 3) == 1);
  CHECK(digit(19, 1, 3) == 0);
  CHECK(digit(19, 2, 3) == 2);
  CHECK(digit(0b1010, 1, 2) == 1);
  CHECK(digit(0b1010, 2, 2) == 0);
}

TEST_CASE("full basis has d^L states in code order") {
  SectorBasis b(4, SiteKind::Spin1);
  CHECK(b.size() == 81);
  CHECK(b.full_dimension() == 81);
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(b.state(i) == i);
    CHECK(b.index(i) == i);
  }
  CHECK_FALSE(b.index(81).has_value());
}

TEST_CASE("sector sizes") {
  SUBCASE("spin-1/2 Sz = 0 is a binomial") {
    for (int L = 2; L <= 12; L += 2) {
      CHECK(SectorBasis(L, SiteKind::SpinHalf, TwiceSz{0}).size() == binomial(L, L / 2));
    }
  }
  SUBCASE("spin-1 Sz = 0: central trinomial coefficients") {
    const std::size_t expected[] = {1, 1, 3, 7, 19, 51, 141, 393};
    for (int L = 1; L <= 7; ++L) CHECK(SectorBasis(L, SiteKind::Spin1, TwiceSz{0}).size() == expected[L]);
  }
  SUBCASE("fermion parity halves the space") {
    CHECK(SectorBasis(6, SiteKind::Fermion, Parity{1}).size() == 32);
    CHECK(SectorBasis(6, SiteKind::Fermion, Parity{-1}).size() == 32);
  }
  SUBCASE("particle number") {
    CHECK(SectorBasis(8, SiteKind::Fermion, ParticleNumber{3}).size() == binomial(8, 3));
  }
}

TEST_CASE("sector members carry the sector charge and index round-trips") {
  SectorBasis b(5, SiteKind::Spin1, TwiceSz{2});
  for (std::size_t i = 0; i < b.size(); ++i) {
    int twice_sz = 0;
    for (int s = 0; s < 5; ++s) twice_sz += 2 * (digit(b.state(i), s, 3) - 1);
    CHECK(twice_sz == 2);
    CHECK(b.index(b.state(i)) == i);
    if (i > 0) CHECK(b.state(i - 1) < b.state(i));
  }
  CHECK_FALSE(b.index(0).has_value());  // all m = -1
}

TEST_CASE("invalid sectors") {
  CHECK_THROWS_AS(SectorBasis(3, SiteKind::SpinHalf, TwiceSz{0}), EmptySectorError);
  CHECK_THROWS_AS(SectorBasis(4, SiteKind::Fermion, ParticleNumber{5}), EmptySectorError);
  CHECK_THROWS_AS(SectorBasis(4, SiteKind::Fermion, TwiceSz{0}), Error);
  CHECK_THROWS_AS(SectorBasis(4, SiteKind::Spin1, Parity{1}), Error);
}

TEST_CASE("bipartitions") {
  Bipartition p(8, 2, 3);
  CHECK(p.environment_length() == 5);
  CHECK(p.contains(2));
  CHECK(p.contains(4));
  CHECK_FALSE(p.contains(5));
  CHECK(p.environment_sites() == std::vector<int>{0, 1, 5, 6, 7});
  CHECK_THROWS_AS(Bipartition(8, 0, 0), Error);
  CHECK_THROWS_AS(Bipartition(8, 0, 8), Error);
  CHECK_THROWS_AS(Bipartition(8, 6, 3), Error);
  CHECK(Bipartition::from_sites(8, {4, 3, 5}).start() == 3);
  CHECK_THROWS_AS(Bipartition::from_sites(8, {1, 3}), Error);
}

TEST_CASE("factorize / recombine is a bijection") {
  for (int d : {2, 3}) {
    const int L = 6;
    Bipartition p(L, 2, 2);
    Factorizer f(p, d);
    CHECK(f.omega_dimension() == static_cast<Config>(d * d));
    Config full = 1;
    for (int i = 0; i < L; ++i) full *= static_cast<Config>(d);
    std::set<std::pair<Config, Config>> seen;
    for (Config c = 0; c < full; ++c) {
      const auto [o, e] = f.split(c);
      CHECK(o < f.omega_dimension());
      CHECK(e < f.environment_dimension());
      // subsystem digits are the digits of sites 2 and 3
      CHECK(o == static_cast<Config>(digit(c, 2, d) + d * digit(c, 3, d)));
      CHECK(f.combine(o, e) == c);
      CHECK(recombine(o, e, p, d) == c);
      CHECK(factorize(c, p, d) == std::make_pair(o, e));
      seen.insert({o, e});
    }
    CHECK(seen.size() == full);
  }
}
