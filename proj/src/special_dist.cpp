#include "nof1/special_dist.hpp"

#include <algorithm>
#include <boost/math/distributions/non_central_t.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <numbers>
#include <cmath>
#include <string>

#include "nof1/error.hpp"

namespace nof1 {
namespace {

using NoPromote = boost::math::policies::policy<boost::math::policies::promote_float<false>,
                                                boost::math::policies::promote_double<false>>;
using StudentT = boost::math::students_t_distribution<double, NoPromote>;
using NoncentralT = boost::math::non_central_t_distribution<double, NoPromote>;

void check_df(double df, const char* what) {
  if (!(df >= kMinDf) || !std::isfinite(df)) {
    throw DomainError(std::string(what) + ": degrees of freedom must be >= 0.01 (got " +
                      std::to_string(df) + ")");
  }
}

// Boost's series needs lambda^2 / 2 to fit an int; past this we integrate.
constexpr double kSeriesLambdaLimit = 2.0e4;

// P(T' > crit) by conditioning on Z in T' = (Z + lambda) / sqrt(V / df):
// given Z = z the event is a chi-square tail, so the integrand is smooth
// and the normal weight confines it to |z| < 14. Only used for |lambda|
// far beyond the kink at z = -lambda.
double nct_upper_large(double df, double lambda, double crit) {
  constexpr int kPanels = 4000;
  constexpr double kHalfWidth = 14.0;
  const double h = 2.0 * kHalfWidth / kPanels;
  const double a = df / 2.0;
  double acc = 0.0;
  for (int i = 0; i <= kPanels; ++i) {
    const double z = -kHalfWidth + i * h;
    const double u = z + lambda;
    double p = 0.0;
    if (crit == 0.0) {
      p = u > 0.0 ? 1.0 : 0.0;
    } else {
      const double x = 0.5 * df * (u / crit) * (u / crit);  // V / 2 at the boundary
      if (crit > 0.0) {
        p = u > 0.0 ? boost::math::gamma_p(a, x, NoPromote()) : 0.0;
      } else {
        p = u >= 0.0 ? 1.0 : boost::math::gamma_q(a, x, NoPromote());
      }
    }
    const double w = (i == 0 || i == kPanels) ? 0.5 : 1.0;
    acc += w * p * std::exp(-0.5 * z * z);
  }
  return acc * h / std::sqrt(2.0 * std::numbers::pi);
}

double nct_upper(double df, double lambda, double crit) {
  if (lambda == 0.0) return boost::math::cdf(boost::math::complement(StudentT(df), crit));
  if (std::abs(lambda) > kSeriesLambdaLimit) return nct_upper_large(df, lambda, crit);
  return boost::math::cdf(boost::math::complement(NoncentralT(df, lambda), crit));
}

double nct_lower(double df, double lambda, double crit) {
  // P(T'(lambda) < crit) = P(T'(-lambda) > -crit)
  return nct_upper(df, -lambda, -crit);
}

}  // namespace

double t_cdf(double t, double df) {
  check_df(df, "t_cdf");
  if (std::isnan(t)) throw DomainError("t_cdf: t is NaN");
  if (t == 0.0) return 0.5;
  return boost::math::cdf(StudentT(df), t);
}

double t_quantile(double prob, double df) {
  check_df(df, "t_quantile");
  if (!(prob > 0.0 && prob < 1.0)) throw DomainError("t_quantile: probability must be in (0, 1)");
  if (prob == 0.5) return 0.0;
  return boost::math::quantile(StudentT(df), prob);
}

double t_p_value(double t, double df, TailSide side) {
  check_df(df, "t_p_value");
  if (std::isnan(t)) throw DomainError("t_p_value: t is NaN");
  const StudentT dist(df);
  const double lower = boost::math::cdf(dist, t);
  const double upper = boost::math::cdf(boost::math::complement(dist, t));
  switch (side) {
    case TailSide::Lower: return lower;
    case TailSide::Upper: return upper;
    case TailSide::TwoSided: return std::min(1.0, 2.0 * std::min(lower, upper));
  }
  return 1.0;
}

double nct_power(double df, double lambda, double alpha, TailSide side) {
  check_df(df, "nct_power");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("nct_power: alpha must be in (0, 1)");
  if (std::isnan(lambda)) throw DomainError("nct_power: lambda is NaN");
  double power = 0.0;
  switch (side) {
    case TailSide::Upper:
      power = nct_upper(df, lambda, t_quantile(1.0 - alpha, df));
      break;
    case TailSide::Lower:
      power = nct_lower(df, lambda, t_quantile(alpha, df));
      break;
    case TailSide::TwoSided: {
      const double crit = t_quantile(1.0 - 0.5 * alpha, df);
      power = nct_upper(df, lambda, crit) + nct_lower(df, lambda, -crit);
      break;
    }
  }
  return std::clamp(power, 0.0, 1.0);
}

}  // namespace nof1
