#include "entfluc/uncertainty.hpp"

#include <algorithm>
#include <cmath>

#include "entfluc/error.hpp"

namespace entfluc {
namespace {

void require_vectors(const EntanglementSpectrum& spec, const SubsystemObservable& A,
                     const char* who) {
  if (!spec.vectors) throw Error(std::string(who) + ": spectrum carries no eigenvectors");
  if (spec.vectors->rows() != A.dim()) throw Error(std::string(who) + ": dimension mismatch");
}

// <l_i|A|l_i> and <l_i|A^2|l_i> for every spectral state.
std::pair<RVector, RVector> state_moments(const EntanglementSpectrum& spec,
                                          const SubsystemObservable& A) {
  const CMatrix av = A.matrix * (*spec.vectors);
  const Eigen::Index n = spec.size();
  RVector first(n);
  RVector second(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    first[i] = spec.vectors->col(i).dot(av.col(i)).real();
    second[i] = av.col(i).squaredNorm();
  }
  return {first, second};
}

}  // namespace

ConservationCheck check_conserved(const ReducedDensityMatrix& rho, const SubsystemObservable& A) {
  if (A.dim() != rho.dim()) throw Error("check_conserved: dimension mismatch");
  const CMatrix comm = A.matrix * rho.matrix - rho.matrix * A.matrix;
  ConservationCheck c;
  c.commutator_norm = comm.size() ? comm.cwiseAbs().maxCoeff() : 0.0;
  c.conserved = c.commutator_norm < kConservationTol;
  return c;
}

UncertaintyReport variance_direct(const ReducedDensityMatrix& rho, const SubsystemObservable& A) {
  const auto cons = check_conserved(rho, A);
  UncertaintyReport r;
  r.conserved = cons.conserved;
  r.commutator_norm = cons.commutator_norm;
  const CMatrix ra = rho.matrix * A.matrix;
  r.mean = ra.trace().real();
  // Tr(rho A^2) = sum_ij (rho A)_ij A_ji
  r.variance = (ra.array() * A.matrix.transpose().array()).sum().real() - r.mean * r.mean;
  r.pairwise_lower_bound = variance_pairwise(entanglement_spectrum(rho), A);
  return r;
}

double variance_pairwise(const EntanglementSpectrum& spec, const SubsystemObservable& A) {
  require_vectors(spec, A, "variance_pairwise");
  const RVector mean_i = state_moments(spec, A).first;
  const Eigen::Index n = spec.size();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double li = spec.lambdas[i];
    if (li == 0.0) continue;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double diff = mean_i[i] - mean_i[j];
      sum += li * spec.lambdas[j] * diff * diff;
    }
  }
  return 0.5 * sum;
}

double OutcomeDistribution::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) m += outcomes[i] * probabilities[i];
  return m;
}

OutcomeDistribution outcome_distribution(const EntanglementSpectrum& spec) {
  if (!spec.charges) throw Error("outcome_distribution: spectrum has no charge labels");
  std::vector<std::pair<double, double>> labelled;
  for (Eigen::Index i = 0; i < spec.size(); ++i) {
    labelled.emplace_back((*spec.charges)[static_cast<std::size_t>(i)], spec.lambdas[i]);
  }
  std::sort(labelled.begin(), labelled.end());
  OutcomeDistribution dist;
  std::size_t group_size = 0;
  for (const auto& [charge, lambda] : labelled) {
    if (!dist.outcomes.empty() && charge - dist.outcomes.back() < kOutcomeTol) {
      // running mean keeps the representative centred in its bin
      ++group_size;
      dist.outcomes.back() += (charge - dist.outcomes.back()) / static_cast<double>(group_size);
      dist.probabilities.back() += lambda;
    } else {
      dist.outcomes.push_back(charge);
      dist.probabilities.push_back(lambda);
      group_size = 1;
    }
  }
  return dist;
}

double variance_sector(const OutcomeDistribution& dist) {
  double v = 0.0;
  for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double diff = dist.outcomes[i] - dist.outcomes[j];
      v += dist.probabilities[i] * dist.probabilities[j] * diff * diff;
    }
  }
  return v;
}

std::vector<Eigen::Index> select_subspace(const EntanglementSpectrum& spec,
                                          const SubspaceSelector& selector) {
  const Eigen::Index n = spec.size();
  std::vector<Eigen::Index> picked;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LowestK>) {
          for (Eigen::Index i = 0; i < std::min<Eigen::Index>(s.k, n); ++i) picked.push_back(i);
        } else if constexpr (std::is_same_v<T, AboveThreshold>) {
          for (Eigen::Index i = 0; i < n; ++i) {
            if (spec.lambdas[i] > s.lambda_min) picked.push_back(i);
          }
        } else if constexpr (std::is_same_v<T, ExplicitStates>) {
          for (auto i : s.indices) {
            if (i < 0 || i >= n) throw Error("select_subspace: index out of range");
            picked.push_back(i);
          }
          std::sort(picked.begin(), picked.end());
          picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
        } else {
          const auto& eps = spec.entanglement_energies;
          const auto levels = std::min<std::size_t>(eps.size(), static_cast<std::size_t>(s.max_levels));
          std::size_t cut = levels > 0 ? levels - 1 : 0;
          double widest = -1.0;
          for (std::size_t i = 0; i + 1 < levels; ++i) {
            const double gap = eps[i + 1] - eps[i];
            if (gap > widest) {
              widest = gap;
              cut = i;
            }
          }
          for (std::size_t i = 0; i <= cut && levels > 0; ++i) {
            picked.push_back(static_cast<Eigen::Index>(i));
          }
        }
      },
      selector);
  return picked;
}

SubspaceBoundReport subspace_bound(const EntanglementSpectrum& spec, const SubsystemObservable& A,
                                   const SubspaceSelector& selector) {
  require_vectors(spec, A, "subspace_bound");
  SubspaceBoundReport r;
  r.members = select_subspace(spec, selector);
  if (r.members.empty()) throw Error("subspace_bound: selected subspace is empty");
  const auto [first, second] = state_moments(spec, A);

  double m1 = 0.0;
  double m2 = 0.0;
  for (Eigen::Index i = 0; i < spec.size(); ++i) {
    m1 += spec.lambdas[i] * first[i];
    m2 += spec.lambdas[i] * second[i];
  }
  r.full_variance = m2 - m1 * m1;

  for (auto i : r.members) r.lambda_sigma += spec.lambdas[i];
  if (r.lambda_sigma > 0.0) {
    double s1 = 0.0;
    double s2 = 0.0;
    for (auto i : r.members) {
      const double w = spec.lambdas[i] / r.lambda_sigma;
      s1 += w * first[i];
      s2 += w * second[i];
    }
    r.sigma_variance = s2 - s1 * s1;
  }
  r.bound = r.lambda_sigma * r.lambda_sigma * r.sigma_variance;
  return r;
}

CountingDemo counting_demo(int effective_spins) {
  if (effective_spins < 1) throw Error("counting_demo: need at least one effective spin");
  const double na = effective_spins;
  const double log_lambda = -na * std::log(2.0);
  CountingDemo demo;
  double purity = 0.0;
  for (int n = 0; n <= effective_spins; ++n) {
    const double log_binom =
        std::lgamma(na + 1.0) - std::lgamma(n + 1.0) - std::lgamma(na - n + 1.0);
    const double multiplicity = std::exp(log_binom);
    demo.distribution.outcomes.push_back(n - na / 2.0);
    demo.distribution.probabilities.push_back(std::exp(log_binom + log_lambda));
    demo.s_vn -= multiplicity * std::exp(log_lambda) * log_lambda;
    purity += multiplicity * std::exp(2.0 * log_lambda);
  }
  demo.s_renyi2 = -std::log(purity);
  demo.variance = variance_sector(demo.distribution);
  return demo;
}

}  // namespace entfluc
