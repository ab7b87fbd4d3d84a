#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace entfluc {

/// Candidate size-scaling laws:
///   Constant   y = c
///   Linear     y = a x + b
///   LinearLog  y = a x ln x + b x
enum class ScalingLaw { Constant, Linear, LinearLog };

std::string to_string(ScalingLaw law);
ScalingLaw parse_scaling_law(std::string_view name);

struct LawFit {
  ScalingLaw law = ScalingLaw::Constant;
  std::vector<double> coefficients;  // in the order written above
  std::vector<double> residuals;     // y_i - fit(x_i)
  double rss = 0.0;
  double rms = 0.0;
  double max_relative_residual = 0.0;  // max_i |r_i| / |y_i|
  double aic = 0.0;                    // n ln(rss/n) + 2k, rss floored
};

struct FitReport {
  std::vector<LawFit> fits;
  ScalingLaw best = ScalingLaw::Constant;  // lowest AIC

  const LawFit& fit(ScalingLaw law) const;
  /// rms(worse) / rms(better)
  double residual_ratio(ScalingLaw worse, ScalingLaw better) const;
};

/// Least-squares fit of every law in `laws`. Needs at least 4 points with
/// distinct x; LinearLog additionally needs x > 0.
FitReport fit_scaling(std::span<const std::pair<double, double>> series,
                      const std::vector<ScalingLaw>& laws = {ScalingLaw::Constant,
                                                             ScalingLaw::Linear,
                                                             ScalingLaw::LinearLog});

}  // namespace entfluc
