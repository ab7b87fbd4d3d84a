#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "entfluc/error.hpp"
#include "entfluc/scaling_fit.hpp"

using namespace entfluc;

namespace {
std::vector<std::pair<double, double>> series(double (*f)(double)) {
  std::vector<std::pair<double, double>> s;
  for (int x = 4; x <= 14; ++x) s.emplace_back(x, f(x));
  return s;
}
}  // namespace

TEST_CASE("constant series: Constant wins") {
  const auto r = fit_scaling(series([](double) { return 2.5; }));
  CHECK(r.best == ScalingLaw::Constant);
  CHECK(r.fit(ScalingLaw::Constant).coefficients[0] == doctest::Approx(2.5));
}

TEST_CASE("values = 3 L_s: Linear wins with slope 3") {
  const auto r = fit_scaling(series([](double x) { return 3.0 * x; }));
  CHECK(r.best == ScalingLaw::Linear);
  const auto& f = r.fit(ScalingLaw::Linear);
  CHECK(std::abs(f.coefficients[0] - 3.0) < 1e-10);
  CHECK(std::abs(f.coefficients[1]) < 1e-9);
  CHECK(f.max_relative_residual < 1e-10);
  CHECK(r.fit(ScalingLaw::Constant).rms > 1.0);
}

TEST_CASE("x ln x data: LinearLog wins and beats Linear") {
  const auto r = fit_scaling(series([](double x) { return 0.2 * x * std::log(x) + 0.3 * x; }));
  CHECK(r.best == ScalingLaw::LinearLog);
  CHECK(r.fit(ScalingLaw::LinearLog).coefficients[0] == doctest::Approx(0.2));
  CHECK(r.fit(ScalingLaw::LinearLog).coefficients[1] == doctest::Approx(0.3));
  CHECK(r.residual_ratio(ScalingLaw::Linear, ScalingLaw::LinearLog) > 2.0);
}

TEST_CASE("residuals and rms are consistent") {
  std::vector<std::pair<double, double>> s = {{1, 1.0}, {2, 2.2}, {3, 2.9}, {4, 4.1}, {5, 5.0}};
  const auto r = fit_scaling(s, {ScalingLaw::Linear});
  const auto& f = r.fit(ScalingLaw::Linear);
  double rss = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double pred = f.coefficients[0] * s[i].first + f.coefficients[1];
    CHECK(f.residuals[i] == doctest::Approx(s[i].second - pred));
    rss += f.residuals[i] * f.residuals[i];
  }
  CHECK(f.rss == doctest::Approx(rss));
  CHECK(f.rms == doctest::Approx(std::sqrt(rss / 5)));
  CHECK_THROWS_AS(r.fit(ScalingLaw::Constant), Error);
}

TEST_CASE("degenerate input") {
  std::vector<std::pair<double, double>> three = {{1, 1}, {2, 2}, {3, 3}};
  CHECK_THROWS_AS(fit_scaling(three), Error);
  std::vector<std::pair<double, double>> same_x = {{2, 1}, {2, 2}, {2, 3}, {2, 4}};
  CHECK_THROWS_AS(fit_scaling(same_x), Error);
  std::vector<std::pair<double, double>> nonpositive = {{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  CHECK_THROWS_AS(fit_scaling(nonpositive), Error);
  CHECK_NOTHROW(fit_scaling(nonpositive, {ScalingLaw::Linear}));
}

TEST_CASE("law names") {
  for (auto law : {ScalingLaw::Constant, ScalingLaw::Linear, ScalingLaw::LinearLog}) {
    CHECK(parse_scaling_law(to_string(law)) == law);
  }
  CHECK_THROWS_AS(parse_scaling_law("power"), Error);
}
