#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "watlab/coeffs.hpp"

namespace watlab {

/// Weight applied to |b_{n,n-k}|^2 in a tail series: 1/n, or L_q(n)/n.
struct SeriesWeight {
    int q = 0;  // 0 selects 1/n

    double operator()(std::int64_t n) const;  // throws InvalidInput outside the L_q domain
    bool defined_at(std::int64_t n) const;
    std::string name() const;
};

/// Partial sums of sum_n weight(n) |b_{n,n-k}|^2 over n >= 1 in the table.
struct SeriesProbe {
    std::int64_t k = 0;
    SeriesWeight weight;
    std::vector<std::int64_t> n;        // indices that contributed
    std::vector<double> partial_sums;   // s after each n
    std::vector<double> differences;    // s_j - s_{j-1}
    /// Least-squares slope of log s against log n over the upper half of the
    /// curve; NaN when fewer than two positive partial sums exist there.
    double loglog_slope = 0.0;
    /// s_last - s at half the last index: a crude tail proxy.
    double dyadic_tail = 0.0;
};

SeriesProbe tail_series(const DiagonalTable& table, std::int64_t k, SeriesWeight weight);

/// Dyadic block means mean_p = (1/(p+1)) sum_{m=M}^{M+p} |b_{m,m-k}|^2 for
/// p = 4, 8, ... and least-squares slopes of log mean_p against log p and
/// against log L_2(p).
struct DecayFit {
    std::int64_t k = 0;
    std::int64_t M = 1;
    std::vector<std::int64_t> p;
    std::vector<double> mean;
    bool defined = false;  // false when any mean is zero
    double slope_log_p = 0.0;
    double slope_log_L2 = 0.0;
};

/// Throws InvalidInput when the table holds fewer than 3 ladder points.
DecayFit decay_fit(const DiagonalTable& table, std::int64_t k, std::int64_t M);

/// Ordinary least-squares slope of y against x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

nlohmann::ordered_json to_json(const SeriesProbe& probe);
nlohmann::ordered_json to_json(const DecayFit& fit);

}  // namespace watlab
