#pragma once

// Student-t with real-valued degrees of freedom and noncentral-t power.

#include "nof1/types.hpp"

namespace nof1 {

// Degrees of freedom below this are rejected.
inline constexpr double kMinDf = 0.01;

// P(T_df <= t).
double t_cdf(double t, double df);

// Inverse of t_cdf in t; prob in (0, 1).
double t_quantile(double prob, double df);

// p-value of an observed statistic for the given alternative.
// TwoSided is 2 * min(lower, upper).
double t_p_value(double t, double df, TailSide side);

// Probability that a noncentral t with noncentrality lambda falls in the
// rejection region of a level-alpha test. TwoSided sums both tails of the
// noncentral distribution.
double nct_power(double df, double lambda, double alpha, TailSide side);

}  // namespace nof1
