#include "watlab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "watlab/errors.hpp"
#include "watlab/explorer.hpp"
#include "watlab/iterlog.hpp"

namespace watlab {

namespace fs = std::filesystem;

void check_hypotheses(const RunConfig& c) {
    const cplx f0 = c.symbol.mean_value();
    if (!(std::abs(f0) > 0.0))
        throw HypothesisViolation("f_hat_0_nonzero", "f^(0) = 0, so the theorem constant is undefined");
    if (!c.halfspace.reflect().contains(c.nu))
        throw HypothesisViolation("nu_in_minus_S", "nu = " + c.nu.to_string() + " is not in -S");
    if (!vanishing_on_halfspace(c.symbol, c.halfspace, 1e-12))
        throw HypothesisViolation("vanishing_on_halfspace", "the spectrum of f meets the half-space S");
    const double sup = sup_norm(evaluate_on_grid(c.symbol, c.grid));
    if (sup > 1.0 + kSupNormSlack)
        throw HypothesisViolation("sup_norm_at_most_one",
                                  "grid sup norm of f is " + format_double(sup) + " > 1");
}

std::string symbol_hash(const RunConfig& c) { return sha256_hex(c.symbol_spec.dump()); }

DiagonalTable build_table(const RunConfig& c) {
    DiagonalTable t = compute_b_table(c.symbol, c.grid, c.tol_e, c.nu, TableRange{c.n_min, c.n_max, c.k_window});
    t.symbol_id = symbol_hash(c);
    return t;
}

void require_table_matches(const RunConfig& c, const DiagonalTable& t) {
    std::string why;
    if (t.symbol_id != symbol_hash(c)) why = "symbol hash";
    else if (t.nu != c.nu) why = "nu";
    else if (t.resolution != c.grid) why = "grid";
    else if (t.n_min != c.n_min || t.n_max != c.n_max) why = "n range";
    else if (t.k_max != c.k_window) why = "k window";
    else if (t.tol_e != c.tol_e) why = "tol_e";
    if (!why.empty()) throw InvalidInput("table.csv does not belong to this config (" + why + " differs)");
}

namespace {

std::vector<std::int64_t> all_k(const std::vector<std::int64_t>& ks, std::int64_t K) {
    if (!ks.empty()) return ks;
    std::vector<std::int64_t> out;
    for (std::int64_t k = -K; k <= K; ++k) out.push_back(k);
    return out;
}

ordered_json grid_json(const Resolution& r) {
    ordered_json a = ordered_json::array();
    for (auto g : r) a.push_back(g);
    return a;
}

ordered_json table_meta(const DiagonalTable& t) {
    return {{"grid", grid_json(t.resolution)}, {"tol_e", t.tol_e},   {"measure_e", t.measure_e},
            {"n_min", t.n_min},                {"n_max", t.n_max},   {"k_max", t.k_max},
            {"symbol_sha256", t.symbol_id}};
}

BoundReport with_table(BoundReport r, const DiagonalTable& t) {
    r.meta["table"] = table_meta(t);
    return r;
}

std::vector<double> cauchy_samples(double gamma, double x_max, int count) {
    std::vector<double> xs{gamma + 1e-6 * gamma};
    const double l0 = std::log(gamma), l1 = std::log(std::max(x_max, gamma * 1.01));
    for (int i = 1; i <= count; ++i) xs.push_back(std::exp(l0 + (l1 - l0) * i / count));
    return xs;
}

void oracle_reports(const RunConfig& c, const DiagonalTable& t, const OraclePlan& plan,
                    std::vector<BoundReport>& out) {
    const std::int64_t n_lo = std::max<std::int64_t>(1, t.n_min);
    const std::int64_t n_hi = std::min(t.n_max, plan.n_max);
    Resolution doubled = t.resolution;
    for (auto& g : doubled) g *= 2;
    double table_diff = 0.0, refine_diff = 0.0;
    std::int64_t entries = 0;
    for (std::int64_t n = n_lo; n <= n_hi; ++n)
        for (std::int64_t k = -plan.k_max; k <= plan.k_max; ++k) {
            const cplx b = brute_force_b(c.symbol, c.nu, n, k, t.resolution, t.tol_e);
            const cplx b2 = brute_force_b(c.symbol, c.nu, n, k, doubled, t.tol_e);
            table_diff = std::max(table_diff, std::abs(t.at(n, k) - b));
            refine_diff = std::max(refine_diff, std::abs(b2 - b));
            ++entries;
        }
    ordered_json params{{"n_min", n_lo}, {"n_max", n_hi}, {"k_max", plan.k_max}};
    out.push_back(with_table(make_report("oracle", params, table_diff, 1e-9, 0.0,
                                         {{"entries", entries}, {"oracle_grid", grid_json(t.resolution)}}),
                             t));
    out.push_back(with_table(make_report("oracle_refinement", params, refine_diff, 1e-10, 0.0,
                                         {{"entries", entries},
                                          {"coarse_grid", grid_json(t.resolution)},
                                          {"fine_grid", grid_json(doubled)}}),
                             t));
}

}  // namespace

std::vector<BoundReport> run_checks(const RunConfig& c, const DiagonalTable& t) {
    const double C = theorem_constant_C(std::abs(c.symbol.mean_value()));
    const CheckPlan& plan = c.checks;
    std::vector<BoundReport> out;

    if (plan.weighted_series)
        for (auto N : plan.weighted_series->N)
            for (auto k : all_k(plan.weighted_series->k, t.k_max))
                out.push_back(with_table(
                    check_weighted_series(t, N, k, C, {plan.weighted_series->positive_only, kBoundTol}), t));
    if (plan.mean_ii)
        for (auto M : plan.mean_ii->M)
            for (auto p : plan.mean_ii->p)
                for (auto k : all_k(plan.mean_ii->k, t.k_max))
                    out.push_back(with_table(check_mean_bound_ii(t, M, p, k, C), t));
    if (plan.mean_iii)
        for (int q : plan.mean_iii->q) {
            const IteratedLogParams prm = find_constants(q);
            for (auto M : plan.mean_iii->M)
                for (auto p : plan.mean_iii->p)
                    for (auto k : all_k(plan.mean_iii->k, t.k_max))
                        out.push_back(
                            with_table(check_mean_bound_iii(t, q, prm.alpha, prm.gamma, M, p, k, C), t));
        }
    if (plan.mean_iv)
        for (int q : plan.mean_iv->q)
            for (auto M : plan.mean_iv->M)
                for (auto p : plan.mean_iv->p)
                    for (auto k : all_k(plan.mean_iv->k, t.k_max))
                        out.push_back(with_table(check_mean_bound_iv(t, q, M, p, k, C), t));
    if (plan.szego) out.push_back(szego_check(c.symbol, c.halfspace, plan.szego->grid));
    if (plan.log_integral)
        for (double r : plan.log_integral->r)
            out.push_back(log_integral_bound_check(c.symbol, c.nu, r, plan.log_integral->grid, c.tol_e));
    if (plan.identity)
        for (std::int64_t n = 1; n <= plan.identity->n_max; ++n)
            for (std::int64_t k = -plan.identity->k_max; k <= plan.identity->k_max; ++k)
                out.push_back(identity_check(c.symbol, c.nu, n, k, plan.identity->grid, c.tol_e));
    if (plan.abel)
        for (auto N : plan.abel->N)
            for (auto k : plan.abel->k)
                for (double r : plan.abel->r) {
                    AbelReports a =
                        abel_series_check(c.symbol, c.nu, N, k, r, plan.abel->n_trunc, plan.abel->grid, c.tol_e);
                    out.push_back(std::move(a.agreement));
                    out.push_back(std::move(a.partial_bound));
                }
    if (plan.harmonic)
        for (auto M : plan.harmonic->M)
            for (auto p : plan.harmonic->p) out.push_back(check_harmonic_block(M, p));
    if (plan.cauchy_mvt)
        for (int q : plan.cauchy_mvt->q) {
            const IteratedLogParams prm = find_constants(q);
            out.push_back(cauchy_mvt_bound_check(q, prm.alpha, prm.gamma,
                                                 cauchy_samples(prm.gamma, plan.cauchy_mvt->x_max,
                                                                plan.cauchy_mvt->samples)));
        }
    if (plan.oracle) oracle_reports(c, t, *plan.oracle, out);
    return out;
}

ExploreOutput run_explore(const RunConfig& c, const DiagonalTable& t) {
    ExploreOutput out;
    const double C = theorem_constant_C(std::abs(c.symbol.mean_value()));
    ordered_json probes = ordered_json::array();
    const ExplorePlan plan = c.explore.value_or(ExplorePlan{});
    for (auto k : plan.k) {
        for (int q : plan.weights_q) {
            const SeriesProbe probe = tail_series(t, k, SeriesWeight{q});
            ordered_json j = to_json(probe);
            if (q == 0 && !probe.partial_sums.empty()) j["final_over_C"] = probe.partial_sums.back() / C;
            probes.push_back(j);
            PlotSeries plot{"tail_k" + std::to_string(k) + "_" + probe.weight.name(), {}};
            for (std::size_t i = 0; i < probe.n.size(); ++i)
                plot.points.emplace_back(static_cast<double>(probe.n[i]), probe.partial_sums[i]);
            out.plots.push_back(std::move(plot));
        }
        try {
            const DecayFit fit = decay_fit(t, k, plan.M);
            probes.push_back(to_json(fit));
            PlotSeries plot{"decay_k" + std::to_string(k), {}};
            for (std::size_t i = 0; i < fit.p.size(); ++i)
                plot.points.emplace_back(static_cast<double>(fit.p[i]), fit.mean[i]);
            out.plots.push_back(std::move(plot));
        } catch (const InvalidInput& e) {
            probes.push_back({{"probe", "decay_fit"}, {"k", k}, {"M", plan.M}, {"skipped", e.what()}});
        }
    }
    out.summary = {{"schema", "watlab.explore/1"},
                   {"symbol_sha256", t.symbol_id},
                   {"C", C},
                   {"diagnostic_only", true},
                   {"probes", probes}};
    return out;
}

void write_reports_jsonl(const std::vector<BoundReport>& reports, std::ostream& os) {
    for (const auto& r : reports) os << r.to_json().dump() << '\n';
}

void write_plot(const PlotSeries& plot, std::ostream& os) {
    os << "# " << plot.name << "\n";
    for (const auto& [x, y] : plot.points) os << format_double(x) << ' ' << format_double(y) << '\n';
}

namespace {

std::string file_sha256(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

}  // namespace

ordered_json build_manifest(const RunConfig& c, const fs::path& out_dir, const ordered_json& extra) {
    ordered_json m;
    m["schema"] = "watlab.manifest/1";
    m["tool"] = "watlab";
    m["version"] = kToolVersion;
    const ordered_json cfg = c.to_json();
    m["config_sha256"] = sha256_hex(cfg.dump());
    m["symbol_sha256"] = symbol_hash(c);
    m["config"] = cfg;
    for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();

    std::vector<std::string> names;
    for (const char* f : {"table.csv", "reports.jsonl", "explore.json"})
        if (fs::exists(out_dir / f)) names.emplace_back(f);
    if (fs::is_directory(out_dir / "plots")) {
        std::vector<std::string> plots;
        for (const auto& e : fs::directory_iterator(out_dir / "plots"))
            if (e.path().extension() == ".dat") plots.push_back("plots/" + e.path().filename().string());
        std::sort(plots.begin(), plots.end());
        names.insert(names.end(), plots.begin(), plots.end());
    }
    ordered_json files = ordered_json::object();
    for (const auto& n : names) files[n] = file_sha256(out_dir / n);
    m["files"] = files;
    return m;
}

}  // namespace watlab
