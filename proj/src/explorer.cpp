#include "watlab/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "watlab/errors.hpp"
#include "watlab/iterlog.hpp"
#include "watlab/summation.hpp"

namespace watlab {

double SeriesWeight::operator()(std::int64_t n) const {
    if (n < 1) throw InvalidInput("series weights need n >= 1");
    const double x = static_cast<double>(n);
    if (q == 0) return 1.0 / x;
    return L_q(q, x) / x;
}

bool SeriesWeight::defined_at(std::int64_t n) const {
    if (n < 1) return false;
    if (q == 0) return true;
    return static_cast<double>(n) > domain_threshold(q + 1);
}

std::string SeriesWeight::name() const {
    return q == 0 ? std::string("inv_n") : "L" + std::to_string(q) + "_over_n";
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    CompensatedSum sx, sy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx.add(x[i]);
        sy.add(y[i]);
    }
    const double n = static_cast<double>(x.size());
    const double mx = sx.value() / n, my = sy.value() / n;
    CompensatedSum sxy, sxx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy.add((x[i] - mx) * (y[i] - my));
        sxx.add((x[i] - mx) * (x[i] - mx));
    }
    if (!(sxx.value() > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return sxy.value() / sxx.value();
}

SeriesProbe tail_series(const DiagonalTable& table, std::int64_t k, SeriesWeight weight) {
    if (k < -table.k_max || k > table.k_max) throw InvalidInput("k outside the table window");
    if (weight.q < 0) throw InvalidInput("weight order q must be >= 0");
    SeriesProbe probe;
    probe.k = k;
    probe.weight = weight;
    CompensatedSum acc;
    double prev = 0.0;
    for (std::int64_t n = std::max<std::int64_t>(1, table.n_min); n <= table.n_max; ++n) {
        if (!weight.defined_at(n)) continue;
        acc.add(weight(n) * table.abs2(n, k));
        const double s = acc.value();
        probe.n.push_back(n);
        probe.partial_sums.push_back(s);
        probe.differences.push_back(s - prev);
        prev = s;
    }

    std::vector<double> lx, ly;
    const std::size_t half = probe.n.size() / 2;
    for (std::size_t i = half; i < probe.n.size(); ++i) {
        if (probe.partial_sums[i] > 0.0) {
            lx.push_back(std::log(static_cast<double>(probe.n[i])));
            ly.push_back(std::log(probe.partial_sums[i]));
        }
    }
    probe.loglog_slope = least_squares_slope(lx, ly);
    if (!probe.n.empty()) probe.dyadic_tail = probe.partial_sums.back() - probe.partial_sums[half];
    return probe;
}

DecayFit decay_fit(const DiagonalTable& table, std::int64_t k, std::int64_t M) {
    if (M < 1) throw InvalidInput("block start M must be >= 1");
    if (k < -table.k_max || k > table.k_max) throw InvalidInput("k outside the table window");
    if (M < table.n_min) throw InvalidInput("table does not start at M");
    DecayFit fit;
    fit.k = k;
    fit.M = M;
    for (std::int64_t p = 4; M + p <= table.n_max; p *= 2) {
        CompensatedSum acc;
        for (std::int64_t m = M; m <= M + p; ++m) acc.add(table.abs2(m, k));
        fit.p.push_back(p);
        fit.mean.push_back(acc.value() / static_cast<double>(p + 1));
    }
    if (fit.p.size() < 3)
        throw InvalidInput("decay fit needs at least 3 dyadic block lengths; table ends at n = " +
                           std::to_string(table.n_max));

    fit.defined = true;
    std::vector<double> lp, ll2, lm;
    for (std::size_t i = 0; i < fit.p.size(); ++i) {
        if (!(fit.mean[i] > 0.0)) {
            fit.defined = false;
            break;
        }
        const double x = static_cast<double>(fit.p[i]);
        lp.push_back(std::log(x));
        ll2.push_back(std::log(L_q(2, x)));
        lm.push_back(std::log(fit.mean[i]));
    }
    if (fit.defined) {
        fit.slope_log_p = least_squares_slope(lp, lm);
        fit.slope_log_L2 = least_squares_slope(ll2, lm);
    } else {
        fit.slope_log_p = fit.slope_log_L2 = std::numeric_limits<double>::quiet_NaN();
    }
    return fit;
}

namespace {

nlohmann::ordered_json number_or_null(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}

}  // namespace

nlohmann::ordered_json to_json(const SeriesProbe& probe) {
    nlohmann::ordered_json j;
    j["probe"] = "tail_series";
    j["k"] = probe.k;
    j["weight"] = probe.weight.name();
    j["terms"] = probe.n.size();
    j["n_first"] = probe.n.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(probe.n.front());
    j["n_last"] = probe.n.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(probe.n.back());
    j["final_partial_sum"] = probe.partial_sums.empty() ? 0.0 : probe.partial_sums.back();
    j["loglog_slope"] = number_or_null(probe.loglog_slope);
    j["dyadic_tail"] = probe.dyadic_tail;
    return j;
}

nlohmann::ordered_json to_json(const DecayFit& fit) {
    nlohmann::ordered_json j;
    j["probe"] = "decay_fit";
    j["k"] = fit.k;
    j["M"] = fit.M;
    j["p"] = fit.p;
    j["mean"] = fit.mean;
    j["defined"] = fit.defined;
    j["slope_log_p"] = number_or_null(fit.slope_log_p);
    j["slope_log_L2"] = number_or_null(fit.slope_log_L2);
    return j;
}

}  // namespace watlab
