#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace entfluc {

// Configuration code: base-d integer, site 0 is the least-significant digit.
//   SpinHalf: digit 1 = up, 0 = down
//   Spin1:    digit k  <->  m = k - 1
//   Fermion:  digit = occupation, sites in Jordan-Wigner order
using Config = std::uint64_t;

enum class SiteKind { Spin1, SpinHalf, Fermion };

constexpr int local_dim(SiteKind kind) { return kind == SiteKind::Spin1 ? 3 : 2; }

// Total S^z in units of 1/2 (spin kinds only).
struct TwiceSz {
  int value;
  bool operator==(const TwiceSz&) const = default;
};

// Number of up spins / occupied fermion sites (two-state kinds only).
struct ParticleNumber {
  int value;
  bool operator==(const ParticleNumber&) const = default;
};

// (-1)^(number of up spins / particles), value in {+1, -1} (two-state kinds only).
struct Parity {
  int value;
  bool operator==(const Parity&) const = default;
};

using Sector = std::variant<TwiceSz, ParticleNumber, Parity>;

/// Digit value of `site` in a configuration with local dimension `d`.
int digit(Config c, int site, int d);

/// Charge of a configuration in the sense of `sector`'s alternative.
int sector_charge(Config c, int sites, SiteKind kind, const Sector& sector);

/// Ordered basis of a chain, optionally restricted to one symmetry sector.
///
/// States are stored sorted by configuration code, so the ordinal of a code
/// is found by binary search. Immutable after construction.
class SectorBasis {
 public:
  SectorBasis(int sites, SiteKind kind, std::optional<Sector> sector = std::nullopt);

  int sites() const { return sites_; }
  SiteKind kind() const { return kind_; }
  int local_dim() const { return entfluc::local_dim(kind_); }
  const std::optional<Sector>& sector() const { return sector_; }
  std::size_t size() const { return states_.size(); }
  std::span<const Config> states() const { return states_; }
  Config state(std::size_t i) const { return states_[i]; }

  /// Ordinal of `c`, or nullopt when `c` is not in this basis.
  std::optional<std::size_t> index(Config c) const;

  /// Dimension of the unrestricted space, d^L.
  Config full_dimension() const { return full_dim_; }

 private:
  int sites_;
  SiteKind kind_;
  std::optional<Sector> sector_;
  Config full_dim_;
  std::vector<Config> states_;
};

/// Contiguous subsystem Omega = [start, start + length) of an L-site open
/// ordering; the environment is the complement.
class Bipartition {
 public:
  Bipartition(int total_sites, int start, int length);

  /// Rejects site sets that are not a contiguous run.
  static Bipartition from_sites(int total_sites, std::vector<int> sites);

  int total_sites() const { return total_; }
  int start() const { return start_; }
  int length() const { return length_; }
  int environment_length() const { return total_ - length_; }
  bool contains(int site) const { return site >= start_ && site < start_ + length_; }

  /// Environment sites in ascending order.
  std::vector<int> environment_sites() const;

 private:
  int total_;
  int start_;
  int length_;
};

/// Splits configuration codes into (subsystem code, environment code).
///
/// Both codes keep site order: the lowest site of each part is its
/// least-significant digit.
class Factorizer {
 public:
  Factorizer(const Bipartition& part, int local_dim);

  std::pair<Config, Config> split(Config c) const;
  Config combine(Config omega, Config environment) const;

  Config omega_dimension() const { return omega_dim_; }
  Config environment_dimension() const { return env_dim_; }

 private:
  int d_;
  Config low_dim_;    // d^start: environment sites left of Omega
  Config omega_dim_;  // d^length
  Config env_dim_;
};

std::pair<Config, Config> factorize(Config c, const Bipartition& part, int local_dim);
Config recombine(Config omega, Config environment, const Bipartition& part, int local_dim);

}  // namespace entfluc
