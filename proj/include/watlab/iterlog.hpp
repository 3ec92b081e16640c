#pragma once

#include <string>

namespace watlab {

/// log_j x is defined for x > domain_threshold(j) and positive for
/// x > domain_threshold(j + 1). Thresholds: 0, 1, e, e^e, e^(e^e), then
/// +inf once the tower overflows a double.
double domain_threshold(int j);

/// log_1 x = log x, log_j x = log(log_{j-1} x). Throws InvalidInput outside
/// the domain.
double log_iter(int j, double x);

/// L_q(x) = log_1 x * log_2 x * ... * log_q x; requires log_q x > 0.
double L_q(int q, double x);

/// a(x; L_q) = x L_q'(x) / L_q(x) = sum_{j=1..q} 1 / L_j(x).
double a_of_Lq(int q, double x);

struct IteratedLogParams {
    int q = 1;
    double alpha = 0.0;
    double gamma = 0.0;
};

/// q = 1: (1/log 3, 3). q >= 2: the smallest integer gamma with
/// log_{q+1} gamma > 0 and a(gamma; L_q) < 1, alpha = a(gamma; L_q).
/// The invariants (positivity, a < alpha and decreasing above gamma) are
/// re-checked on a log-spaced sample up to 1e8; a violation throws.
IteratedLogParams find_constants(int q);

/// C = log(16 / |f^(0)|^4); f^(0) = 0 throws HypothesisViolation.
double theorem_constant_C(double abs_f0);

}  // namespace watlab
