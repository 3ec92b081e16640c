#include "watlab/iterlog.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "watlab/errors.hpp"

namespace watlab {

double domain_threshold(int j) {
    if (j < 1) throw InvalidInput("iterated logarithm order must be >= 1");
    double t = 0.0;
    for (int i = 1; i < j; ++i) {
        t = std::exp(t);
        if (!std::isfinite(t)) return std::numeric_limits<double>::infinity();
    }
    return t;
}

double log_iter(int j, double x) {
    if (j < 1) throw InvalidInput("iterated logarithm order must be >= 1");
    double v = x;
    for (int i = 0; i < j; ++i) {
        if (!(v > 0.0))
            throw InvalidInput("log_" + std::to_string(j) + " is undefined at x = " + std::to_string(x) +
                               "; need x > " + std::to_string(domain_threshold(j)));
        v = std::log(v);
    }
    return v;
}

double L_q(int q, double x) {
    if (q < 1) throw InvalidInput("L_q needs q >= 1");
    double prod = 1.0;
    double v = x;
    for (int j = 1; j <= q; ++j) {
        if (!(v > 0.0)) break;
        v = std::log(v);
        if (!(v > 0.0)) break;
        prod *= v;
        if (j == q) return prod;
    }
    throw InvalidInput("L_" + std::to_string(q) + " needs log_" + std::to_string(q) +
                       " x > 0, i.e. x > " + std::to_string(domain_threshold(q + 1)));
}

double a_of_Lq(int q, double x) {
    L_q(q, x);  // domain check
    double sum = 0.0;
    double prod = 1.0;
    double v = x;
    for (int j = 1; j <= q; ++j) {
        v = std::log(v);
        prod *= v;
        sum += 1.0 / prod;
    }
    return sum;
}

double theorem_constant_C(double abs_f0) {
    if (!(abs_f0 > 0.0))
        throw HypothesisViolation("f_hat_0_nonzero", "theorem constant needs f^(0) != 0");
    return std::log(16.0 / (abs_f0 * abs_f0 * abs_f0 * abs_f0));
}

namespace {

void verify_params(const IteratedLogParams& p) {
    if (!(p.alpha > 0.0 && p.alpha < 1.0 && p.gamma >= 1.0))
        throw std::logic_error("iterated-log constants out of range");
    if (!(log_iter(p.q + 1, p.gamma) > 0.0))
        throw std::logic_error("log_{q+1}(gamma) is not positive");
    // strictly above gamma: a < alpha and decreasing
    double prev = a_of_Lq(p.q, p.gamma);
    const double lg0 = std::log(p.gamma), lg1 = std::log(1e8);
    constexpr int samples = 400;
    for (int i = 1; i <= samples && lg0 < lg1; ++i) {
        const double x = std::exp(lg0 + (lg1 - lg0) * i / samples);
        const double a = a_of_Lq(p.q, x);
        if (!(a > 0.0 && a < p.alpha && a < prev))
            throw std::logic_error("a(x; L_q) fails to decrease below alpha on the sample");
        prev = a;
    }
}

}  // namespace

IteratedLogParams find_constants(int q) {
    if (q < 1) throw InvalidInput("find_constants needs q >= 1");
    IteratedLogParams p;
    p.q = q;
    if (q == 1) {
        p.gamma = 3.0;
        p.alpha = 1.0 / std::log(3.0);
    } else {
        const double threshold = domain_threshold(q + 2);
        if (!std::isfinite(threshold) || threshold > 1e15)
            throw InvalidInput("no representable gamma_q for q = " + std::to_string(q) +
                               ": log_{q+1} becomes positive beyond double range");
        double g = std::floor(threshold) + 1.0;
        while (!(log_iter(q + 1, g) > 0.0) || !(a_of_Lq(q, g) < 1.0)) g += 1.0;
        p.gamma = g;
        p.alpha = a_of_Lq(q, g);
    }
    verify_params(p);
    return p;
}

}  // namespace watlab
