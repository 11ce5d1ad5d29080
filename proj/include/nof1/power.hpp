#pragma once

// Theoretical power and detectable effect size for the serial tests and
// their usual analogues, treating the serial correlation as known.

#include <cstddef>

#include "nof1/types.hpp"

namespace nof1 {

struct PowerQuery {
  TestKind kind = TestKind::PairedLevel;
  std::size_t m_a = 0;
  std::size_t m_b = 0;  // two-sample only; 0 means equal to m_a
  double rho = 0.0;     // assumed serial correlation
  double alpha = 0.05;
  TailSide side = TailSide::Upper;
  double target_power = 0.80;
  double sigma = 1.0;             // reporting scale; effects are in sigma units
  Method method = Method::Serial;  // Usual: the classical test, rho taken as 0
};

// Noncentrality per unit effect and degrees of freedom of the test the
// query describes. The standard error is the test statistic's denominator
// with s^2 replaced by its expectation.
struct PowerDesign {
  double se = 0.0;  // standard error of the effect estimate, sigma units
  double df = 0.0;
};

// Throws ValidationError (or MinimumSizeError / DomainError) on a bad query.
void validate(const PowerQuery& q);
PowerDesign power_design(const PowerQuery& q);

// Power at a true effect of `delta` sigma in the direction of the
// alternative (a downward shift for Lower). delta = 0 gives alpha.
double theoretical_power(const PowerQuery& q, double delta);

// Smallest delta (sigma units) with theoretical_power = target_power, by
// bisection on [0, 100]. Throws ConvergenceError when the target is not
// reachable inside the bracket.
double detectable_effect(const PowerQuery& q);

}  // namespace nof1
