#include "entfluc/basis.hpp"

#include <algorithm>
#include <string>

#include "entfluc/error.hpp"

namespace entfluc {
namespace {

Config ipow(Config base, int exp) {
  Config r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

int digit(Config c, int site, int d) {
  for (int i = 0; i < site; ++i) c /= d;
  return static_cast<int>(c % d);
}

int sector_charge(Config c, int sites, SiteKind kind, const Sector& sector) {
  const int d = local_dim(kind);
  int twice_sz = 0;
  int count = 0;
  for (int s = 0; s < sites; ++s) {
    const int k = static_cast<int>(c % d);
    c /= d;
    count += k;
    twice_sz += kind == SiteKind::Spin1 ? 2 * (k - 1) : 2 * k - 1;
  }
  return std::visit(
      [&](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TwiceSz>) {
          return twice_sz;
        } else if constexpr (std::is_same_v<T, ParticleNumber>) {
          return count;
        } else {
          return count % 2 == 0 ? 1 : -1;
        }
      },
      sector);
}

SectorBasis::SectorBasis(int sites, SiteKind kind, std::optional<Sector> sector)
    : sites_(sites), kind_(kind), sector_(sector) {
  if (sites < 1) throw Error("SectorBasis: need at least one site");
  const int d = entfluc::local_dim(kind);
  if (sites * (d == 3 ? 1.585 : 1.0) > 40) throw Error("SectorBasis: chain too long");
  full_dim_ = ipow(d, sites);

  int target = 0;
  if (sector_) {
    if (kind == SiteKind::Spin1 && !std::holds_alternative<TwiceSz>(*sector_)) {
      throw Error("SectorBasis: spin-1 chains support only total S^z sectors");
    }
    if (kind == SiteKind::Fermion && std::holds_alternative<TwiceSz>(*sector_)) {
      throw Error("SectorBasis: fermion chains use particle-number or parity sectors");
    }
    if (const auto* p = std::get_if<Parity>(&*sector_); p && p->value != 1 && p->value != -1) {
      throw EmptySectorError("SectorBasis: parity must be +1 or -1");
    }
    target = std::visit([](const auto& s) { return s.value; }, *sector_);
  }

  if (!sector_) {
    states_.resize(full_dim_);
    for (Config c = 0; c < full_dim_; ++c) states_[c] = c;
    return;
  }
  for (Config c = 0; c < full_dim_; ++c) {
    if (sector_charge(c, sites, kind, *sector_) == target) states_.push_back(c);
  }
  if (states_.empty()) {
    throw EmptySectorError("SectorBasis: sector with charge " + std::to_string(target) +
                           " is empty for L=" + std::to_string(sites));
  }
}

std::optional<std::size_t> SectorBasis::index(Config c) const {
  if (!sector_) {
    if (c < full_dim_) return static_cast<std::size_t>(c);
    return std::nullopt;
  }
  auto it = std::lower_bound(states_.begin(), states_.end(), c);
  if (it == states_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

Bipartition::Bipartition(int total_sites, int start, int length)
    : total_(total_sites), start_(start), length_(length) {
  if (length < 1 || length > total_sites - 1) {
    throw Error("Bipartition: subsystem length must satisfy 1 <= N <= L-1");
  }
  if (start < 0 || start + length > total_sites) {
    throw Error("Bipartition: subsystem must be a contiguous range inside the chain");
  }
}

Bipartition Bipartition::from_sites(int total_sites, std::vector<int> sites) {
  if (sites.empty()) throw Error("Bipartition: empty subsystem");
  std::sort(sites.begin(), sites.end());
  for (std::size_t i = 1; i < sites.size(); ++i) {
    if (sites[i] != sites[i - 1] + 1) throw Error("Bipartition: subsystem is not contiguous");
  }
  return Bipartition(total_sites, sites.front(), static_cast<int>(sites.size()));
}

std::vector<int> Bipartition::environment_sites() const {
  std::vector<int> env;
  for (int s = 0; s < total_; ++s) {
    if (!contains(s)) env.push_back(s);
  }
  return env;
}

Factorizer::Factorizer(const Bipartition& part, int local_dim)
    : d_(local_dim),
      low_dim_(ipow(local_dim, part.start())),
      omega_dim_(ipow(local_dim, part.length())),
      env_dim_(ipow(local_dim, part.environment_length())) {}

std::pair<Config, Config> Factorizer::split(Config c) const {
  const Config low = c % low_dim_;
  const Config rest = c / low_dim_;
  const Config omega = rest % omega_dim_;
  const Config high = rest / omega_dim_;
  return {omega, low + low_dim_ * high};
}

Config Factorizer::combine(Config omega, Config environment) const {
  const Config low = environment % low_dim_;
  const Config high = environment / low_dim_;
  return low + low_dim_ * (omega + omega_dim_ * high);
}

std::pair<Config, Config> factorize(Config c, const Bipartition& part, int local_dim) {
  return Factorizer(part, local_dim).split(c);
}

Config recombine(Config omega, Config environment, const Bipartition& part, int local_dim) {
  return Factorizer(part, local_dim).combine(omega, environment);
}

}  // namespace entfluc
