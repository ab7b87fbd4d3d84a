#include "entfluc/scaling_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "entfluc/error.hpp"

namespace entfluc {

std::string to_string(ScalingLaw law) {
  switch (law) {
    case ScalingLaw::Constant:
      return "constant";
    case ScalingLaw::Linear:
      return "linear";
    case ScalingLaw::LinearLog:
      return "linearlog";
  }
  return "unknown";
}

ScalingLaw parse_scaling_law(std::string_view name) {
  if (name == "constant") return ScalingLaw::Constant;
  if (name == "linear") return ScalingLaw::Linear;
  if (name == "linearlog") return ScalingLaw::LinearLog;
  throw Error("unknown scaling law '" + std::string(name) + "' (constant, linear, linearlog)");
}

const LawFit& FitReport::fit(ScalingLaw law) const {
  for (const auto& f : fits) {
    if (f.law == law) return f;
  }
  throw Error("FitReport: law '" + to_string(law) + "' was not fitted");
}

double FitReport::residual_ratio(ScalingLaw worse, ScalingLaw better) const {
  const double denom = fit(better).rms;
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return fit(worse).rms / denom;
}

FitReport fit_scaling(std::span<const std::pair<double, double>> series,
                      const std::vector<ScalingLaw>& laws) {
  const auto n = static_cast<Eigen::Index>(series.size());
  if (n < 4) throw Error("fit_scaling: need at least 4 points");
  double mean_sq = 0.0;
  for (const auto& [x, y] : series) {
    if (!std::isfinite(x) || !std::isfinite(y)) throw Error("fit_scaling: non-finite data");
    mean_sq += y * y / static_cast<double>(n);
  }
  const auto [lo, hi] = std::minmax_element(series.begin(), series.end(),
                                            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (lo->first == hi->first) throw Error("fit_scaling: degenerate series (all x equal)");

  const double floor = 1e-28 * std::max(mean_sq, 1e-300);
  FitReport report;
  for (ScalingLaw law : laws) {
    const Eigen::Index k = law == ScalingLaw::Constant ? 1 : 2;
    Eigen::MatrixXd design(n, k);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double x = series[static_cast<std::size_t>(i)].first;
      y[i] = series[static_cast<std::size_t>(i)].second;
      switch (law) {
        case ScalingLaw::Constant:
          design(i, 0) = 1.0;
          break;
        case ScalingLaw::Linear:
          design(i, 0) = x;
          design(i, 1) = 1.0;
          break;
        case ScalingLaw::LinearLog:
          if (x <= 0.0) throw Error("fit_scaling: linearlog needs positive sizes");
          design(i, 0) = x * std::log(x);
          design(i, 1) = x;
          break;
      }
    }
    const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(y);
    const Eigen::VectorXd res = y - design * coef;

    LawFit f;
    f.law = law;
    f.coefficients.assign(coef.data(), coef.data() + coef.size());
    f.residuals.assign(res.data(), res.data() + res.size());
    f.rss = res.squaredNorm();
    f.rms = std::sqrt(f.rss / static_cast<double>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      const double denom = std::abs(y[i]);
      const double rel = denom > 0.0 ? std::abs(res[i]) / denom
                                     : (res[i] == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
      f.max_relative_residual = std::max(f.max_relative_residual, rel);
    }
    f.aic = static_cast<double>(n) * std::log(std::max(f.rss / static_cast<double>(n), floor)) +
            2.0 * static_cast<double>(k);
    report.fits.push_back(std::move(f));
  }
  const auto best = std::min_element(report.fits.begin(), report.fits.end(),
                                     [](const LawFit& a, const LawFit& b) { return a.aic < b.aic; });
  report.best = best->law;
  return report;
}

}  // namespace entfluc
