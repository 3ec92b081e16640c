#include "watlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "watlab/errors.hpp"
#include "watlab/summation.hpp"

namespace watlab {

namespace {

using boost::math::quadrature::gauss_kronrod;

void require_rows(const DiagonalTable& t, std::int64_t lo, std::int64_t hi, std::int64_t k) {
    if (!t.has(lo, k) || !t.has(hi, k))
        throw InvalidInput("table rows [" + std::to_string(t.n_min) + ", " + std::to_string(t.n_max) +
                           "], |k| <= " + std::to_string(t.k_max) + " do not cover m in [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "] at k = " +
                           std::to_string(k));
}

void require_block(std::int64_t M, std::int64_t p) {
    if (M < 1) throw InvalidInput("block start M must be >= 1");
    if (p < 1) throw InvalidInput("block length p must be >= 1");
}

double block_energy(const DiagonalTable& t, std::int64_t M, std::int64_t p, std::int64_t k) {
    require_rows(t, M, M + p, k);
    CompensatedSum acc;
    for (std::int64_t m = M; m <= M + p; ++m) acc.add(t.abs2(m, k));
    return acc.value();
}

// One 31-point Gauss-Kronrod panel. Boost reports the panel error on the
// [-1, 1] reference interval, so it is rescaled here.
template <class F>
double gk_panel(F& f, double a, double b, double& err) {
    double raw = 0.0;
    const double v = gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &raw);
    err = raw * std::fabs(b - a) / 2;
    return v;
}

template <class F>
double gk_adaptive(F& f, double a, double b, double abs_tol, int depth, double& err) {
    const double v = gk_panel(f, a, b, err);
    if (err <= abs_tol || depth == 0) return v;
    const double mid = (a + b) / 2;
    double e1 = 0.0, e2 = 0.0;
    const double v1 = gk_adaptive(f, a, mid, abs_tol / 2, depth - 1, e1);
    const double v2 = gk_adaptive(f, mid, b, abs_tol / 2, depth - 1, e2);
    err = e1 + e2;
    return v1 + v2;
}

template <class F>
double integrate_checked(F f, double a, double b, const char* what) {
    double err = 0.0;
    const double first = gk_panel(f, a, b, err);
    if (err <= kQuadratureRelTol * std::fabs(first)) return first;
    const double value = gk_adaptive(f, a, b, 0.1 * kQuadratureRelTol * std::fabs(first), 20, err);
    if (!(err <= kQuadratureRelTol * std::fabs(value)))
        throw std::runtime_error(std::string("quadrature for ") + what +
                                 " did not reach the requested relative error");
    return value;
}

// grid f^(0) for the theorem constant
cplx grid_mean(const GridSampling& s) {
    CompensatedComplexSum acc;
    for (const cplx& z : s.samples) acc += z;
    return acc.value() / static_cast<double>(s.size());
}

ordered_json lattice_json(const LatticePoint& p) {
    ordered_json a = ordered_json::array();
    for (auto c : p.coords()) a.push_back(c);
    return a;
}

ordered_json grid_json(const Resolution& r) {
    ordered_json a = ordered_json::array();
    for (auto g : r) a.push_back(g);
    return a;
}

// Masked node data for the double-grid integrals.
struct MaskedNodes {
    std::vector<cplx> f;    // f(x)
    std::vector<cplx> chi;  // e^{2 pi i nu.x}
    std::size_t total = 0;  // nodes in the full grid
};

MaskedNodes masked_nodes(const GridSampling& s, const UnitModulusSet* e, const LatticePoint& nu) {
    GridIndexer grid(s.resolution);
    UnitRoots roots(grid.max_order());
    MaskedNodes out;
    out.total = s.size();
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (e && !e->mask[j]) continue;
        out.f.push_back(s.samples[j]);
        out.chi.push_back(roots(grid.phase(nu, j)));
    }
    return out;
}

cplx signed_power(cplx w, std::int64_t n) {
    if (n == 0) return {1.0, 0.0};
    return std::pow(n > 0 ? w : std::conj(w), static_cast<double>(std::llabs(n)));
}

void require_budget(const Resolution& r) {
    const double pairs = std::pow(static_cast<double>(node_count(r)), 2.0);
    if (pairs > std::pow(2.0, 30))
        throw InvalidInput("double-grid integral over " + std::to_string(node_count(r)) +
                           " nodes exceeds the 2^30 pair budget; lower the resolution");
}

}  // namespace

ordered_json BoundReport::to_json() const {
    ordered_json j;
    j["check"] = check;
    j["params"] = params;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["margin"] = margin;
    j["tolerance"] = tolerance;
    j["pass"] = pass;
    j["meta"] = meta;
    return j;
}

BoundReport make_report(std::string check, ordered_json params, double lhs, double rhs,
                        double tolerance, ordered_json meta) {
    BoundReport r;
    r.check = std::move(check);
    r.params = std::move(params);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.tolerance = tolerance;
    r.pass = lhs <= rhs + tolerance;
    r.meta = std::move(meta);
    return r;
}

// ---------------------------------------------------------------------------

BoundReport check_weighted_series(const DiagonalTable& table, std::int64_t N, std::int64_t k,
                                  double C, const SeriesOptions& options) {
    if (k < -table.k_max || k > table.k_max) throw InvalidInput("k outside the table window");
    const std::int64_t lo = options.positive_only ? std::max<std::int64_t>(1, table.n_min) : table.n_min;
    CompensatedSum acc;
    std::int64_t terms = 0;
    for (std::int64_t m = lo; m <= table.n_max; ++m) {
        if (m == N) continue;
        acc.add(table.abs2(m, k) / static_cast<double>(std::llabs(m - N)));
        ++terms;
    }
    ordered_json params{{"N", N}, {"k", k}};
    ordered_json meta{{"m_min", lo},
                      {"m_max", table.n_max},
                      {"terms", terms},
                      {"truncated", true},
                      {"lhs_is_lower_bound_of_full_series", true},
                      {"negative_m", lo < 0 ? "conjugate-power" : "excluded"},
                      {"C", C},
                      {"measure_e", table.measure_e},
                      {"degenerate", table.degenerate}};
    return make_report("weighted_series", std::move(params), acc.value(), C, options.tolerance,
                       std::move(meta));
}

BoundReport check_mean_bound_ii(const DiagonalTable& table, std::int64_t M, std::int64_t p,
                                std::int64_t k, double C, double tolerance) {
    require_block(M, p);
    const double energy = block_energy(table, M, p, k);
    const double lhs = energy / static_cast<double>(p + 1);
    const double rhs = C / std::log(static_cast<double>(p + 1));
    return make_report("mean_ii", {{"M", M}, {"p", p}, {"k", k}}, lhs, rhs, tolerance,
                       {{"block_energy", energy}, {"C", C}, {"degenerate", table.degenerate}});
}

double weighted_log_integral(int q, double gamma, double p) {
    if (!(p >= 0.0)) throw InvalidInput("integration length must be nonnegative");
    auto integrand = [q, gamma](double s) { return 1.0 / L_q(q, std::exp(s) + gamma); };
    return integrate_checked(integrand, 0.0, std::log(p + 1.0), "int dt/(t g(t+gamma))");
}

BoundReport check_mean_bound_iii(const DiagonalTable& table, int q, double alpha, double gamma,
                                 std::int64_t M, std::int64_t p, std::int64_t k, double C,
                                 double tolerance) {
    require_block(M, p);
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
    if (!(gamma >= 1.0)) throw InvalidInput("gamma must be >= 1");
    const double energy = block_energy(table, M, p, k);
    const double integral = weighted_log_integral(q, gamma, static_cast<double>(p));
    const double x = static_cast<double>(p) + gamma;
    const double rhs = C / (1.0 - alpha) * x / L_q(q, x);
    return make_report("mean_iii", {{"q", q}, {"alpha", alpha}, {"gamma", gamma}, {"M", M}, {"p", p}, {"k", k}},
                       integral * energy, rhs, tolerance,
                       {{"integral", integral},
                        {"block_energy", energy},
                        {"C", C},
                        {"quadrature_rel_tol", kQuadratureRelTol},
                        {"degenerate", table.degenerate}});
}

double mean_bound_iv_rhs(double C, const IteratedLogParams& prm, std::int64_t p) {
    const double pp = static_cast<double>(p);
    const double gap = log_iter(prm.q + 1, pp + 1.0 + prm.gamma) - log_iter(prm.q + 1, 1.0 + prm.gamma);
    if (!(gap > 0.0))
        throw InvalidInput("p = " + std::to_string(p) + " is too small: log_" + std::to_string(prm.q + 1) +
                           " increment vanishes in double precision");
    return (C / (1.0 - prm.alpha)) / (L_q(prm.q, pp + prm.gamma) * gap);
}

double mean_bound_q1_closed_form(double C, std::int64_t p) {
    const double pp = static_cast<double>(p);
    return (C / (1.0 - 1.0 / std::log(3.0))) /
           (std::log(pp + 3.0) * (std::log(std::log(pp + 4.0)) - std::log(std::log(4.0))));
}

BoundReport check_mean_bound_iv(const DiagonalTable& table, int q, std::int64_t M, std::int64_t p,
                                std::int64_t k, double C, double tolerance) {
    require_block(M, p);
    const IteratedLogParams prm = find_constants(q);
    const double energy = block_energy(table, M, p, k);
    const double lhs = energy / (static_cast<double>(p) + prm.gamma);
    const double rhs = mean_bound_iv_rhs(C, prm, p);
    ordered_json meta{{"alpha_q", prm.alpha}, {"gamma_q", prm.gamma}, {"block_energy", energy}, {"C", C}};
    if (q == 1) meta["closed_form_rhs"] = mean_bound_q1_closed_form(C, p);
    meta["degenerate"] = table.degenerate;
    return make_report("mean_iv", {{"q", q}, {"M", M}, {"p", p}, {"k", k}}, lhs, rhs, tolerance,
                       std::move(meta));
}

// ---------------------------------------------------------------------------

BoundReport szego_check(const TrigSymbol& f, const HalfSpace& S, const Resolution& resolution,
                        double tolerance) {
    if (!vanishing_on_halfspace(f, S, 1e-12))
        throw HypothesisViolation("vanishing_on_halfspace", "f^ does not vanish on the half-space");
    const cplx f0 = f.mean_value();
    if (!(std::abs(f0) > 0.0)) throw HypothesisViolation("f_hat_0_nonzero", "f^(0) = 0");

    // axis i shifted by 2^-(i+1) of a cell
    std::vector<double> offsets(f.dimension());
    for (std::size_t i = 0; i < offsets.size(); ++i) offsets[i] = std::ldexp(1.0, -static_cast<int>(i) - 1);
    const GridSampling s = evaluate_on_shifted_grid(f, resolution, offsets);

    CompensatedSum acc;
    std::size_t floored = 0;
    for (const cplx& z : s.samples) {
        double m = std::abs(z);
        if (m < kLogFloor) {
            m = kLogFloor;
            ++floored;
        }
        acc.add(std::log(m));
    }
    const double integral = acc.value() / static_cast<double>(s.size());
    return make_report("szego", {{"grid", grid_json(resolution)}}, std::log(std::abs(f0)), integral, tolerance,
                       {{"f_hat_0_re", f0.real()},
                        {"f_hat_0_im", f0.imag()},
                        {"grid_offset_cells", offsets},
                        {"floored_nodes", floored},
                        {"log_floor", kLogFloor}});
}

BoundReport log_integral_bound_check(const TrigSymbol& f, const LatticePoint& nu, double r,
                                     const Resolution& resolution, double tol_e, double tolerance) {
    if (!(r > 0.0 && r < 1.0)) throw InvalidInput("r must lie in (0, 1)");
    require_budget(resolution);
    const GridSampling s = evaluate_on_grid(f, resolution);
    const UnitModulusSet e = effective_unit_modulus_set(f, s, tol_e);
    const cplx f0 = grid_mean(s);
    if (!(std::abs(f0) > 0.0)) throw HypothesisViolation("f_hat_0_nonzero", "f^(0) = 0");

    const MaskedNodes all = masked_nodes(s, nullptr, nu);
    CompensatedSum abs_log, signed_log, log_plus, restricted;
    std::size_t floored = 0;
    const std::size_t n = all.f.size();
    for (std::size_t a = 0; a < n; ++a) {
        const cplx fx = r * all.f[a];
        const cplx cx = all.chi[a];
        for (std::size_t b = 0; b < n; ++b) {
            const cplx F = cx * std::conj(all.chi[b]) - fx * std::conj(all.f[b]);
            double mod = std::abs(F);
            if (mod < kLogFloor) {
                mod = kLogFloor;
                ++floored;
            }
            const double lg = std::log(mod);
            abs_log.add(std::fabs(lg));
            signed_log.add(lg);
            log_plus.add(std::max(lg, 0.0));
            if (e.count && e.mask[a] && e.mask[b]) restricted.add(std::fabs(lg));
        }
    }
    const double area = static_cast<double>(n) * static_cast<double>(n);
    const double lhs = abs_log.value() / area;
    const double rhs = std::log(4.0 / (r * std::norm(f0)));
    return make_report("log_integral", {{"nu", lattice_json(nu)}, {"r", r}, {"grid", grid_json(resolution)}},
                       lhs, rhs, tolerance,
                       {{"restricted_to_E", restricted.value() / area},
                        {"integral_log", signed_log.value() / area},
                        {"szego_lower", std::log(r * std::norm(f0))},
                        {"integral_log_plus", log_plus.value() / area},
                        {"log_plus_upper", std::log(1.0 + r)},
                        {"measure_e", e.measure},
                        {"floored_pairs", floored}});
}

BoundReport identity_check(const TrigSymbol& f, const LatticePoint& nu, std::int64_t n, std::int64_t k,
                           const Resolution& resolution, double tol_e, double tolerance) {
    require_budget(resolution);
    const GridSampling s = evaluate_on_grid(f, resolution);
    const UnitModulusSet e = effective_unit_modulus_set(f, s, tol_e);
    TableOptions opts;
    opts.enforce_resolution = false;
    const DiagonalTable t = compute_b_table(f, s, e, nu, TableRange{n, n, std::llabs(k)}, opts);
    const double kernel = t.abs2(n, k);

    const MaskedNodes nodes = masked_nodes(s, &e, nu);
    const std::size_t count = nodes.f.size();
    std::vector<cplx> u(count), chik(count);
    for (std::size_t a = 0; a < count; ++a) {
        u[a] = nodes.f[a] * std::conj(nodes.chi[a]);
        chik[a] = signed_power(nodes.chi[a], k);
    }
    const double inv = 1.0 / static_cast<double>(nodes.total);

    // factorised: |mean_E u^n chi_k|^2
    CompensatedComplexSum single;
    for (std::size_t a = 0; a < count; ++a) single += signed_power(u[a], n) * chik[a];
    const double factorised = std::norm(single.value() * inv);

    // pair by pair
    CompensatedComplexSum dbl;
    for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = 0; b < count; ++b)
            dbl += signed_power(u[a] * std::conj(u[b]), n) * chik[a] * std::conj(chik[b]);
    const cplx pairwise = dbl.value() * inv * inv;

    const double diff = std::fabs(kernel - pairwise.real());
    return make_report("identity", {{"nu", lattice_json(nu)}, {"n", n}, {"k", k}, {"grid", grid_json(resolution)}},
                       std::max(diff, std::fabs(factorised - pairwise.real())), tolerance, 0.0,
                       {{"abs2_table", kernel},
                        {"double_integral_re", pairwise.real()},
                        {"double_integral_im", pairwise.imag()},
                        {"factorised", factorised},
                        {"measure_e", e.measure}});
}

AbelReports abel_series_check(const TrigSymbol& f, const LatticePoint& nu, std::int64_t N,
                              std::int64_t k, double r, std::int64_t n_trunc,
                              const Resolution& resolution, double tol_e) {
    if (!(r > 0.0 && r < 1.0)) throw InvalidInput("r must lie in (0, 1)");
    if (n_trunc < 1) throw InvalidInput("series truncation must be >= 1");
    require_budget(resolution);
    const GridSampling s = evaluate_on_grid(f, resolution);
    const UnitModulusSet e = effective_unit_modulus_set(f, s, tol_e);
    const cplx f0 = grid_mean(s);
    if (!(std::abs(f0) > 0.0)) throw HypothesisViolation("f_hat_0_nonzero", "f^(0) = 0");

    TableOptions opts;
    opts.enforce_resolution = false;
    const DiagonalTable t =
        compute_b_table(f, s, e, nu, TableRange{N - n_trunc, N + n_trunc, std::llabs(k)}, opts);

    CompensatedSum series;
    double rn = 1.0;
    double max_partial = 0.0;
    for (std::int64_t n = 1; n <= n_trunc; ++n) {
        rn *= r;
        series.add((t.abs2(N + n, k) + t.abs2(N - n, k)) * rn / static_cast<double>(n));
        max_partial = std::max(max_partial, series.value());
    }

    const MaskedNodes nodes = masked_nodes(s, &e, nu);
    const std::size_t count = nodes.f.size();
    CompensatedComplexSum dbl;
    for (std::size_t a = 0; a < count; ++a) {
        const cplx ua = nodes.f[a] * std::conj(nodes.chi[a]);
        const cplx ka = signed_power(nodes.chi[a], k);
        for (std::size_t b = 0; b < count; ++b) {
            const cplx w = ua * std::conj(nodes.f[b] * std::conj(nodes.chi[b]));
            const cplx F = nodes.chi[a] * std::conj(nodes.chi[b]) - r * nodes.f[a] * std::conj(nodes.f[b]);
            const double lg = -std::log(std::max(std::abs(F), kLogFloor));
            dbl += signed_power(w, N) * ka * std::conj(signed_power(nodes.chi[b], k)) * lg;
        }
    }
    const double inv = 1.0 / static_cast<double>(nodes.total);
    const cplx integral = 2.0 * dbl.value() * inv * inv;

    const double mu2 = e.measure * e.measure;
    const double tail = 2.0 * mu2 * std::pow(r, static_cast<double>(n_trunc + 1)) /
                        (static_cast<double>(n_trunc + 1) * (1.0 - r));
    const double slack = 1e-12;

    ordered_json params{{"nu", lattice_json(nu)}, {"N", N}, {"k", k}, {"r", r}, {"n_trunc", n_trunc},
                        {"grid", grid_json(resolution)}};
    AbelReports out{
        make_report("abel_series", params, std::fabs(series.value() - integral.real()), tail + slack, 0.0,
                    {{"series", series.value()},
                     {"double_integral_re", integral.real()},
                     {"double_integral_im", integral.imag()},
                     {"tail_bound", tail},
                     {"rounding_slack", slack},
                     {"grid_measure_identity", true},
                     {"measure_e", e.measure}}),
        make_report("abel_partial_bound", params, max_partial,
                    std::log(16.0 / (r * r * std::norm(f0) * std::norm(f0))), kBoundTol,
                    {{"partial_sums_nondecreasing", true}})};
    return out;
}

// ---------------------------------------------------------------------------

double harmonic_block_bound(std::int64_t M, std::int64_t p) {
    if (p < 1) throw InvalidInput("harmonic block needs p >= 1");
    std::vector<double> H(static_cast<std::size_t>(p) + 1, 0.0);
    CompensatedSum acc;
    for (std::int64_t j = 1; j <= p; ++j) {
        acc.add(1.0 / static_cast<double>(j));
        H[static_cast<std::size_t>(j)] = acc.value();
    }
    const double Hp = H.back();
    if (!(Hp >= std::log(static_cast<double>(p + 1))))
        throw std::logic_error("H_p < log(p+1)");
    for (std::int64_t m = M; m <= M + p; ++m) {
        // the sum over N != m splits into H_{m-M} + H_{M+p-m}
        const double two_sided = H[static_cast<std::size_t>(m - M)] + H[static_cast<std::size_t>(M + p - m)];
        if (!(two_sided >= Hp)) throw std::logic_error("two-sided harmonic sum below H_p");
    }
    return Hp;
}

BoundReport check_harmonic_block(std::int64_t M, std::int64_t p) {
    const double Hp = harmonic_block_bound(M, p);
    // the minimum sits at the block ends, where the two-sided sum is H_p itself
    return make_report("harmonic_block", {{"M", M}, {"p", p}}, std::log(static_cast<double>(p + 1)), Hp, 0.0,
                       {{"H_p", Hp}, {"min_two_sided_sum", Hp}});
}

BoundReport cauchy_mvt_bound_check(int q, double alpha, double gamma, const std::vector<double>& x_samples) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
    if (x_samples.empty()) throw InvalidInput("no sample points");
    double worst = 0.0;
    ordered_json rows = ordered_json::array();
    const double g_gamma = L_q(q, gamma);
    for (double x : x_samples) {
        if (!(x > gamma)) throw InvalidInput("sample points must exceed gamma");
        auto integrand = [q](double s) {
            const double u = std::exp(s);
            return u / L_q(q, u);
        };
        const double I = integrate_checked(integrand, std::log(gamma), std::log(x), "int du/g(u)");
        const double left = 1.0 / g_gamma + I;
        const double right = x / ((1.0 - alpha) * L_q(q, x));
        worst = std::max(worst, left / right);
        rows.push_back({{"x", x}, {"lhs", left}, {"rhs", right}});
    }
    return make_report("cauchy_mvt", {{"q", q}, {"alpha", alpha}, {"gamma", gamma}}, worst,
                       1.0 - kQuadratureRelTol, 0.0, {{"samples", rows}});
}

}  // namespace watlab
