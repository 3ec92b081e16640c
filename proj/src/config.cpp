#include "watlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <openssl/evp.h>

#include "watlab/coeffs.hpp"
#include "watlab/errors.hpp"

namespace watlab {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw InvalidInput("config: " + where + ": " + what);
}

void reject_unknown_keys(const ordered_json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) bad(where, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) bad(where, "unknown key \"" + it.key() + "\"");
    }
}

std::int64_t as_int(const ordered_json& v, const std::string& where) {
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::nearbyint(d) == d && std::fabs(d) < 9.0e15) return static_cast<std::int64_t>(d);
    }
    bad(where, "expected an integer");
}

double as_double(const ordered_json& v, const std::string& where) {
    if (!v.is_number()) bad(where, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) bad(where, "expected a finite number");
    return d;
}

cplx as_complex(const ordered_json& v, const std::string& where) {
    if (v.is_number()) return {as_double(v, where), 0.0};
    if (v.is_array() && v.size() == 2) return {as_double(v[0], where), as_double(v[1], where)};
    if (v.is_object()) {
        reject_unknown_keys(v, where, {"re", "im"});
        return {v.contains("re") ? as_double(v["re"], where) : 0.0,
                v.contains("im") ? as_double(v["im"], where) : 0.0};
    }
    bad(where, "expected a complex number (number, [re, im] or {re, im})");
}

ordered_json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

template <class T>
std::vector<T> list_of(const ordered_json& obj, const char* key, std::vector<T> fallback,
                       const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const ordered_json& v = obj[key];
    std::vector<T> out;
    auto one = [&](const ordered_json& x) {
        if constexpr (std::is_floating_point_v<T>)
            out.push_back(as_double(x, where + "." + key));
        else
            out.push_back(static_cast<T>(as_int(x, where + "." + key)));
    };
    if (v.is_array()) {
        for (const auto& x : v) one(x);
    } else {
        one(v);
    }
    if (out.empty()) bad(where + "." + key, "empty list");
    return out;
}

std::vector<std::int64_t> k_list(const ordered_json& obj, const std::string& where) {
    if (!obj.contains("k") || (obj["k"].is_string() && obj["k"] == "all")) return {};
    return list_of<std::int64_t>(obj, "k", {}, where);
}

Resolution parse_grid(const ordered_json& v, std::size_t d, const std::string& where) {
    Resolution r;
    if (v.is_array()) {
        for (const auto& x : v) {
            const std::int64_t g = as_int(x, where);
            if (g < 2) bad(where, "grid sizes must be >= 2");
            r.push_back(static_cast<std::size_t>(g));
        }
        if (r.size() == 1 && d > 1) r.assign(d, r[0]);
    } else {
        const std::int64_t g = as_int(v, where);
        if (g < 2) bad(where, "grid sizes must be >= 2");
        r.assign(d, static_cast<std::size_t>(g));
    }
    try {
        validate_resolution(r, d);
    } catch (const InvalidInput& e) {
        bad(where, e.what());
    }
    return r;
}

Resolution default_grid(std::size_t d, std::size_t one_dim, std::size_t multi_dim, const TrigSymbol& f) {
    Resolution r(d, d == 1 ? one_dim : multi_dim);
    const Resolution ny = f.nyquist_resolution();
    for (std::size_t i = 0; i < d; ++i) r[i] = std::max(r[i], ny[i]);
    return r;
}

Resolution grid_or_default(const ordered_json& obj, std::size_t d, std::size_t one_dim,
                           std::size_t multi_dim, const TrigSymbol& f, const std::string& where) {
    if (obj.contains("grid")) return parse_grid(obj["grid"], d, where + ".grid");
    return default_grid(d, one_dim, multi_dim, f);
}

ordered_json section(const ordered_json& checks, const char* name, bool& enabled) {
    enabled = false;
    if (!checks.contains(name)) return ordered_json::object();
    const ordered_json& v = checks[name];
    if (v.is_boolean()) {
        enabled = v.get<bool>();
        return ordered_json::object();
    }
    if (!v.is_object()) bad(std::string("checks.") + name, "expected an object or a boolean");
    enabled = true;
    return v;
}

template <class T>
ordered_json json_list(const std::vector<T>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& x : v) a.push_back(x);
    return a;
}

ordered_json k_json(const std::vector<std::int64_t>& k) {
    if (k.empty()) return "all";
    return json_list(k);
}

void require_k(const std::vector<std::int64_t>& ks, std::int64_t K, const std::string& where) {
    for (auto k : ks)
        if (k < -K || k > K) bad(where, "k = " + std::to_string(k) + " outside the window [-K, K]");
}

void require_blocks(const MeanPlan& m, const RunConfig& c, const std::string& where) {
    for (auto M : m.M) {
        if (M < 1) bad(where, "M must be >= 1");
        if (M < c.n_min) bad(where, "M = " + std::to_string(M) + " below the table start n_min");
        for (auto p : m.p) {
            if (p < 1) bad(where, "p must be >= 1");
            if (M + p > c.n_max)
                bad(where, "block [" + std::to_string(M) + ", " + std::to_string(M + p) +
                               "] runs past n_max = " + std::to_string(c.n_max));
        }
    }
    require_k(m.k, c.k_window, where);
}

}  // namespace

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names{
        "weighted_series", "mean_ii", "mean_iii", "mean_iv",     "szego", "log_integral",
        "identity",        "abel",    "harmonic", "cauchy_mvt", "oracle"};
    return names;
}

TrigSymbol symbol_from_json(const ordered_json& spec) {
    const std::string where = "symbol";
    reject_unknown_keys(spec, where, {"dimension", "family", "params", "spectrum"});
    const std::size_t d = spec.contains("dimension")
                              ? static_cast<std::size_t>(std::max<std::int64_t>(0, as_int(spec["dimension"], where + ".dimension")))
                              : 1;
    if (d == 0 || d > 8) bad(where + ".dimension", "must lie in [1, 8]");
    const bool has_spec = spec.contains("spectrum");
    const bool has_family = spec.contains("family");
    if (has_spec == has_family) bad(where, "give exactly one of \"family\" and \"spectrum\"");
    if (has_spec) {
        if (spec.contains("params")) bad(where, "\"params\" belongs to a family symbol");
        if (!spec["spectrum"].is_array() || spec["spectrum"].empty())
            bad(where + ".spectrum", "expected a non-empty array");
        std::vector<SpectralTerm> terms;
        for (const auto& t : spec["spectrum"]) {
            reject_unknown_keys(t, where + ".spectrum[]", {"index", "re", "im"});
            if (!t.contains("index")) bad(where + ".spectrum[]", "missing index");
            std::vector<std::int64_t> idx;
            if (t["index"].is_array())
                for (const auto& x : t["index"]) idx.push_back(as_int(x, where + ".spectrum[].index"));
            else
                idx.push_back(as_int(t["index"], where + ".spectrum[].index"));
            const double re = t.contains("re") ? as_double(t["re"], where + ".spectrum[].re") : 0.0;
            const double im = t.contains("im") ? as_double(t["im"], where + ".spectrum[].im") : 0.0;
            terms.push_back({LatticePoint(std::move(idx)), {re, im}});
        }
        return TrigSymbol::from_spectrum(d, std::move(terms));
    }
    const std::string family = spec["family"].is_string() ? spec["family"].get<std::string>() : "";
    if (family == "blaschke") {
        if (d != 1) bad(where, "Blaschke products live on T^1");
        if (!spec.contains("params")) bad(where, "Blaschke product needs params (list of zeros)");
        std::vector<cplx> params;
        const ordered_json& p = spec["params"];
        if (p.is_array()) {
            for (const auto& a : p) params.push_back(as_complex(a, where + ".params[]"));
        } else {
            params.push_back(as_complex(p, where + ".params"));
        }
        return TrigSymbol::blaschke(std::move(params));
    }
    if (family == "constant") {
        const cplx c = spec.contains("params") ? as_complex(spec["params"], where + ".params") : cplx{1.0, 0.0};
        return TrigSymbol::constant(d, c);
    }
    bad(where + ".family", "expected \"blaschke\" or \"constant\"");
}

namespace {

ordered_json canonical_symbol(const TrigSymbol& f) {
    ordered_json s;
    s["dimension"] = f.dimension();
    switch (f.family()) {
        case TrigSymbol::Family::Blaschke: {
            s["family"] = "blaschke";
            ordered_json a = ordered_json::array();
            for (const cplx& p : f.blaschke_params()) a.push_back(complex_json(p));
            s["params"] = a;
            break;
        }
        case TrigSymbol::Family::Constant:
            s["family"] = "constant";
            s["params"] = complex_json(f.constant_value());
            break;
        case TrigSymbol::Family::Spectrum: {
            ordered_json a = ordered_json::array();
            for (const auto& t : f.spectrum()) {
                ordered_json idx = ordered_json::array();
                for (auto c : t.index.coords()) idx.push_back(c);
                a.push_back({{"index", idx}, {"re", t.coefficient.real()}, {"im", t.coefficient.imag()}});
            }
            s["spectrum"] = a;
            break;
        }
    }
    return s;
}

}  // namespace

RunConfig parse_config(const ordered_json& doc) {
    reject_unknown_keys(doc, "document",
                        {"schema", "symbol", "halfspace", "nu", "grid", "n_min", "n_max", "k_window",
                         "tol_e", "checks", "explore", "preset"});
    if (!doc.contains("schema") || doc["schema"] != kConfigSchema)
        bad("schema", std::string("expected \"") + kConfigSchema + "\"");
    if (!doc.contains("symbol")) bad("symbol", "missing");

    RunConfig c;
    c.symbol = symbol_from_json(doc["symbol"]);
    c.symbol_spec = canonical_symbol(c.symbol);
    const std::size_t d = c.symbol.dimension();

    if (doc.contains("halfspace")) {
        const ordered_json& h = doc["halfspace"];
        reject_unknown_keys(h, "halfspace", {"axis_order", "axis_sign"});
        std::vector<std::size_t> order;
        std::vector<int> sign;
        if (h.contains("axis_order"))
            for (auto v : list_of<std::int64_t>(h, "axis_order", {}, "halfspace")) {
                if (v < 0) bad("halfspace.axis_order", "negative axis");
                order.push_back(static_cast<std::size_t>(v));
            }
        else
            for (std::size_t i = 0; i < d; ++i) order.push_back(i);
        if (h.contains("axis_sign"))
            for (auto v : list_of<std::int64_t>(h, "axis_sign", {}, "halfspace")) sign.push_back(static_cast<int>(v));
        else
            sign.assign(d, 1);
        if (order.size() != d || sign.size() != d) bad("halfspace", "axis lists must have length d");
        c.halfspace = HalfSpace(std::move(order), std::move(sign));
    } else {
        c.halfspace = HalfSpace(d);
    }

    if (!doc.contains("nu")) bad("nu", "missing");
    {
        std::vector<std::int64_t> nu = list_of<std::int64_t>(doc, "nu", {}, "document");
        if (nu.size() != d) bad("nu", "length must equal the symbol dimension");
        c.nu = LatticePoint(std::move(nu));
    }
    c.n_min = doc.contains("n_min") ? as_int(doc["n_min"], "n_min") : 1;
    if (!doc.contains("n_max")) bad("n_max", "missing");
    c.n_max = as_int(doc["n_max"], "n_max");
    if (c.n_max < c.n_min) bad("n_max", "must be >= n_min");
    if (std::max(std::llabs(c.n_min), std::llabs(c.n_max)) > 100000000) bad("n_max", "too large");
    c.k_window = doc.contains("k_window") ? as_int(doc["k_window"], "k_window") : 0;
    if (c.k_window < 0 || c.k_window > 64) bad("k_window", "must lie in [0, 64]");
    c.tol_e = doc.contains("tol_e") ? as_double(doc["tol_e"], "tol_e") : kDefaultUnitModulusTol;
    if (!(c.tol_e > 0.0 && c.tol_e < 1.0)) bad("tol_e", "must lie in (0, 1)");

    const std::int64_t n_abs = std::max(std::llabs(c.n_min), std::llabs(c.n_max));
    if (!doc.contains("grid") || (doc["grid"].is_string() && doc["grid"] == "auto"))
        c.grid = required_resolution(c.symbol, c.nu, n_abs, c.k_window);
    else
        c.grid = parse_grid(doc["grid"], d, "grid");

    const ordered_json checks = doc.contains("checks") ? doc["checks"] : ordered_json::object();
    {
        std::vector<const char*> allowed;
        for (const auto& n : check_names()) allowed.push_back(n.c_str());
        if (!checks.is_object()) bad("checks", "expected an object");
        for (auto it = checks.begin(); it != checks.end(); ++it)
            if (std::find(check_names().begin(), check_names().end(), it.key()) == check_names().end())
                bad("checks", "unknown check \"" + it.key() + "\"");
    }
    bool on = false;
    CheckPlan& plan = c.checks;

    if (auto s = section(checks, "weighted_series", on); on) {
        reject_unknown_keys(s, "checks.weighted_series", {"N", "k", "positive_only"});
        SeriesPlan p;
        p.N = list_of<std::int64_t>(s, "N", p.N, "checks.weighted_series");
        p.k = k_list(s, "checks.weighted_series");
        if (s.contains("positive_only")) {
            if (!s["positive_only"].is_boolean()) bad("checks.weighted_series.positive_only", "expected a boolean");
            p.positive_only = s["positive_only"].get<bool>();
        }
        require_k(p.k, c.k_window, "checks.weighted_series");
        plan.weighted_series = p;
    }
    for (const char* name : {"mean_ii", "mean_iii", "mean_iv"}) {
        if (auto s = section(checks, name, on); on) {
            const std::string where = std::string("checks.") + name;
            reject_unknown_keys(s, where, {"q", "M", "p", "k"});
            MeanPlan m;
            if (std::string(name) == "mean_ii" && s.contains("q")) bad(where, "q does not apply");
            m.q = list_of<int>(s, "q", m.q, where);
            for (int q : m.q)
                if (q < 1 || q > 3) bad(where + ".q", "q must lie in [1, 3]");
            m.M = list_of<std::int64_t>(s, "M", m.M, where);
            m.p = list_of<std::int64_t>(s, "p", m.p, where);
            m.k = k_list(s, where);
            require_blocks(m, c, where);
            if (std::string(name) == "mean_ii") plan.mean_ii = m;
            else if (std::string(name) == "mean_iii") plan.mean_iii = m;
            else plan.mean_iv = m;
        }
    }
    if (auto s = section(checks, "szego", on); on) {
        reject_unknown_keys(s, "checks.szego", {"grid"});
        plan.szego = SzegoPlan{grid_or_default(s, d, std::size_t{1} << 14, 512, c.symbol, "checks.szego")};
    }
    if (auto s = section(checks, "log_integral", on); on) {
        reject_unknown_keys(s, "checks.log_integral", {"grid", "r"});
        LogIntegralPlan p;
        p.grid = grid_or_default(s, d, 128, 32, c.symbol, "checks.log_integral");
        p.r = list_of<double>(s, "r", p.r, "checks.log_integral");
        for (double r : p.r)
            if (!(r > 0.0 && r < 1.0)) bad("checks.log_integral.r", "r must lie in (0, 1)");
        plan.log_integral = p;
    }
    if (auto s = section(checks, "identity", on); on) {
        reject_unknown_keys(s, "checks.identity", {"grid", "n_max", "k_max"});
        IdentityPlan p;
        p.grid = grid_or_default(s, d, 256, 64, c.symbol, "checks.identity");
        if (s.contains("n_max")) p.n_max = as_int(s["n_max"], "checks.identity.n_max");
        if (s.contains("k_max")) p.k_max = as_int(s["k_max"], "checks.identity.k_max");
        if (p.n_max < 1 || p.k_max < 0) bad("checks.identity", "need n_max >= 1 and k_max >= 0");
        plan.identity = p;
    }
    if (auto s = section(checks, "abel", on); on) {
        reject_unknown_keys(s, "checks.abel", {"grid", "N", "k", "r", "n_trunc"});
        AbelPlan p;
        p.grid = grid_or_default(s, d, 128, 32, c.symbol, "checks.abel");
        p.N = list_of<std::int64_t>(s, "N", p.N, "checks.abel");
        p.k = list_of<std::int64_t>(s, "k", p.k, "checks.abel");
        p.r = list_of<double>(s, "r", p.r, "checks.abel");
        for (double r : p.r)
            if (!(r > 0.0 && r < 1.0)) bad("checks.abel.r", "r must lie in (0, 1)");
        if (s.contains("n_trunc")) p.n_trunc = as_int(s["n_trunc"], "checks.abel.n_trunc");
        if (p.n_trunc < 1) bad("checks.abel.n_trunc", "must be >= 1");
        plan.abel = p;
    }
    if (auto s = section(checks, "harmonic", on); on) {
        reject_unknown_keys(s, "checks.harmonic", {"M", "p"});
        HarmonicPlan p;
        p.M = list_of<std::int64_t>(s, "M", p.M, "checks.harmonic");
        p.p = list_of<std::int64_t>(s, "p", p.p, "checks.harmonic");
        for (auto x : p.p)
            if (x < 1 || x > 10000000) bad("checks.harmonic.p", "p must lie in [1, 1e7]");
        plan.harmonic = p;
    }
    if (auto s = section(checks, "cauchy_mvt", on); on) {
        reject_unknown_keys(s, "checks.cauchy_mvt", {"q", "x_max", "samples"});
        CauchyPlan p;
        p.q = list_of<int>(s, "q", p.q, "checks.cauchy_mvt");
        for (int q : p.q)
            if (q < 1 || q > 3) bad("checks.cauchy_mvt.q", "q must lie in [1, 3]");
        if (s.contains("x_max")) p.x_max = as_double(s["x_max"], "checks.cauchy_mvt.x_max");
        if (s.contains("samples")) p.samples = static_cast<int>(as_int(s["samples"], "checks.cauchy_mvt.samples"));
        if (p.samples < 1 || p.samples > 10000) bad("checks.cauchy_mvt.samples", "must lie in [1, 10000]");
        plan.cauchy_mvt = p;
    }
    if (auto s = section(checks, "oracle", on); on) {
        reject_unknown_keys(s, "checks.oracle", {"n_max", "k_max"});
        OraclePlan p;
        if (s.contains("n_max")) p.n_max = as_int(s["n_max"], "checks.oracle.n_max");
        if (s.contains("k_max")) p.k_max = as_int(s["k_max"], "checks.oracle.k_max");
        if (p.n_max < 1 || p.k_max < 0 || p.k_max > c.k_window)
            bad("checks.oracle", "need n_max >= 1 and 0 <= k_max <= k_window");
        plan.oracle = p;
    }

    if (doc.contains("explore") && !(doc["explore"].is_boolean() && !doc["explore"].get<bool>())) {
        const ordered_json e = doc["explore"].is_boolean() ? ordered_json::object() : doc["explore"];
        reject_unknown_keys(e, "explore", {"k", "weights_q", "M"});
        ExplorePlan p;
        p.k = list_of<std::int64_t>(e, "k", p.k, "explore");
        p.weights_q = list_of<int>(e, "weights_q", p.weights_q, "explore");
        for (int q : p.weights_q)
            if (q < 0 || q > 3) bad("explore.weights_q", "weights are 0 (1/n) or q in [1, 3]");
        if (e.contains("M")) p.M = as_int(e["M"], "explore.M");
        if (p.M < 1 || p.M < c.n_min) bad("explore.M", "must be >= max(1, n_min)");
        require_k(p.k, c.k_window, "explore");
        c.explore = p;
    }
    return c;
}

ordered_json RunConfig::to_json() const {
    ordered_json j;
    j["schema"] = kConfigSchema;
    j["symbol"] = symbol_spec;
    ordered_json order = ordered_json::array(), sign = ordered_json::array();
    for (auto a : halfspace.axis_order()) order.push_back(a);
    for (auto s : halfspace.axis_sign()) sign.push_back(s);
    j["halfspace"] = {{"axis_order", order}, {"axis_sign", sign}};
    ordered_json nu_j = ordered_json::array();
    for (auto v : nu.coords()) nu_j.push_back(v);
    j["nu"] = nu_j;
    j["grid"] = json_list(grid);
    j["n_min"] = n_min;
    j["n_max"] = n_max;
    j["k_window"] = k_window;
    j["tol_e"] = tol_e;

    ordered_json ch = ordered_json::object();
    if (checks.weighted_series)
        ch["weighted_series"] = {{"N", json_list(checks.weighted_series->N)},
                                 {"k", k_json(checks.weighted_series->k)},
                                 {"positive_only", checks.weighted_series->positive_only}};
    auto mean_json = [](const MeanPlan& m, bool with_q) {
        ordered_json o;
        if (with_q) o["q"] = json_list(m.q);
        o["M"] = json_list(m.M);
        o["p"] = json_list(m.p);
        o["k"] = k_json(m.k);
        return o;
    };
    if (checks.mean_ii) ch["mean_ii"] = mean_json(*checks.mean_ii, false);
    if (checks.mean_iii) ch["mean_iii"] = mean_json(*checks.mean_iii, true);
    if (checks.mean_iv) ch["mean_iv"] = mean_json(*checks.mean_iv, true);
    if (checks.szego) ch["szego"] = {{"grid", json_list(checks.szego->grid)}};
    if (checks.log_integral)
        ch["log_integral"] = {{"grid", json_list(checks.log_integral->grid)}, {"r", json_list(checks.log_integral->r)}};
    if (checks.identity)
        ch["identity"] = {{"grid", json_list(checks.identity->grid)},
                          {"n_max", checks.identity->n_max},
                          {"k_max", checks.identity->k_max}};
    if (checks.abel)
        ch["abel"] = {{"grid", json_list(checks.abel->grid)}, {"N", json_list(checks.abel->N)},
                      {"k", json_list(checks.abel->k)},       {"r", json_list(checks.abel->r)},
                      {"n_trunc", checks.abel->n_trunc}};
    if (checks.harmonic) ch["harmonic"] = {{"M", json_list(checks.harmonic->M)}, {"p", json_list(checks.harmonic->p)}};
    if (checks.cauchy_mvt)
        ch["cauchy_mvt"] = {{"q", json_list(checks.cauchy_mvt->q)},
                            {"x_max", checks.cauchy_mvt->x_max},
                            {"samples", checks.cauchy_mvt->samples}};
    if (checks.oracle) ch["oracle"] = {{"n_max", checks.oracle->n_max}, {"k_max", checks.oracle->k_max}};
    j["checks"] = ch;
    if (explore)
        j["explore"] = {{"k", json_list(explore->k)}, {"weights_q", json_list(explore->weights_q)}, {"M", explore->M}};
    else
        j["explore"] = false;
    return j;
}

// ---------------------------------------------------------------------------

std::vector<std::string> preset_names() {
    return {"constant", "blaschke-half", "blaschke-two", "torus-degenerate", "szego-equality"};
}

ordered_json preset_document(const std::string& name) {
    const ordered_json negative_line = {{"axis_order", {0}}, {"axis_sign", {-1}}};
    const ordered_json all_checks = {
        {"weighted_series", {{"N", {0, 10, 100}}, {"k", "all"}}},
        {"mean_ii", {{"M", {1}}, {"p", {10, 100}}, {"k", "all"}}},
        {"mean_iii", {{"q", {1}}, {"M", {1}}, {"p", {10, 100}}, {"k", "all"}}},
        {"mean_iv", {{"q", {1, 2}}, {"M", {1}}, {"p", {10, 100}}, {"k", "all"}}},
        {"szego", true},
        {"log_integral", {{"r", {0.5, 0.9}}}},
        {"identity", {{"n_max", 16}, {"k_max", 3}}},
        {"abel", {{"N", {0}}, {"k", {0}}, {"r", {0.5, 0.9}}, {"n_trunc", 200}}},
        {"harmonic", {{"M", {1}}, {"p", {1, 10, 100}}}},
        {"cauchy_mvt", {{"q", {1, 2}}, {"x_max", 1e8}, {"samples", 40}}},
        {"oracle", {{"n_max", 64}, {"k_max", 4}}}};

    ordered_json doc;
    doc["schema"] = kConfigSchema;
    doc["preset"] = name;
    if (name == "constant") {
        doc["symbol"] = {{"dimension", 1}, {"family", "constant"}, {"params", {{"re", 1.0}, {"im", 0.0}}}};
        doc["halfspace"] = negative_line;
        doc["nu"] = {1};
        doc["n_min"] = -128;
        doc["n_max"] = 128;
        doc["k_window"] = 4;
        doc["grid"] = "auto";
        doc["checks"] = all_checks;
        doc["explore"] = {{"k", {0, 1}}, {"weights_q", {0, 1}}, {"M", 1}};
    } else if (name == "blaschke-half") {
        doc["symbol"] = {{"dimension", 1}, {"family", "blaschke"}, {"params", {0.5}}};
        doc["halfspace"] = negative_line;
        doc["nu"] = {1};
        doc["n_min"] = 1;
        doc["n_max"] = 20000;
        doc["k_window"] = 4;
        doc["grid"] = 65536;
        doc["checks"] = all_checks;
        doc["checks"]["mean_ii"]["p"] = {10, 100, 1000, 10000};
        doc["checks"]["mean_iii"]["p"] = {10, 100, 1000, 10000};
        doc["checks"]["mean_iv"]["p"] = {10, 100, 1000, 10000};
        doc["checks"]["harmonic"]["p"] = {1, 10, 100, 1000, 10000};
        doc["explore"] = {{"k", {0, 1, -1}}, {"weights_q", {0, 1, 2}}, {"M", 1}};
    } else if (name == "blaschke-two") {
        doc["symbol"] = {{"dimension", 1}, {"family", "blaschke"}, {"params", {0.5, 0.3}}};
        doc["halfspace"] = negative_line;
        doc["nu"] = {1};
        doc["n_min"] = 1;
        doc["n_max"] = 4096;
        doc["k_window"] = 4;
        doc["grid"] = 32768;
        doc["checks"] = all_checks;
        doc["checks"]["mean_ii"]["p"] = {10, 100, 1000};
        doc["checks"]["mean_iii"]["p"] = {10, 100, 1000};
        doc["checks"]["mean_iv"]["p"] = {10, 100, 1000};
        doc["explore"] = {{"k", {0, 1}}, {"weights_q", {0, 1}}, {"M", 1}};
    } else if (name == "torus-degenerate") {
        doc["symbol"] = {{"dimension", 2},
                         {"spectrum", {{{"index", {0, 0}}, {"re", 0.5}, {"im", 0.0}},
                                       {{"index", {1, 1}}, {"re", 0.5}, {"im", 0.0}}}}};
        doc["halfspace"] = {{"axis_order", {0, 1}}, {"axis_sign", {-1, -1}}};
        doc["nu"] = {1, 0};
        doc["n_min"] = 1;
        doc["n_max"] = 16;
        doc["k_window"] = 3;
        doc["grid"] = {64, 64};
        doc["checks"] = all_checks;
        doc["checks"]["weighted_series"]["N"] = {0, 10};
        doc["checks"]["mean_ii"]["p"] = {4, 8};
        doc["checks"]["mean_iii"]["p"] = {4, 8};
        doc["checks"]["mean_iv"]["p"] = {4, 8};
        doc["checks"]["oracle"] = {{"n_max", 16}, {"k_max", 3}};
        doc["explore"] = {{"k", {0}}, {"weights_q", {0}}, {"M", 1}};
    } else if (name == "szego-equality") {
        doc["symbol"] = {{"dimension", 1},
                         {"spectrum", {{{"index", {0}}, {"re", 0.5}, {"im", 0.0}},
                                       {{"index", {1}}, {"re", 0.5}, {"im", 0.0}}}}};
        doc["halfspace"] = negative_line;
        doc["nu"] = {1};
        doc["n_min"] = 1;
        doc["n_max"] = 256;
        doc["k_window"] = 4;
        doc["grid"] = "auto";
        doc["checks"] = all_checks;
        doc["checks"]["szego"] = {{"grid", 2097152}};
        doc["explore"] = {{"k", {0}}, {"weights_q", {0}}, {"M", 1}};
    } else {
        std::string known;
        for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
        throw InvalidInput("unknown preset \"" + name + "\" (known: " + known + ")");
    }
    return doc;
}

ordered_json apply_overrides(ordered_json doc, const Overrides& o) {
    if (o.n_max) doc["n_max"] = *o.n_max;
    if (o.k_window) doc["k_window"] = *o.k_window;
    if (o.grid) {
        ordered_json g = ordered_json::array();
        for (auto x : *o.grid) g.push_back(x);
        doc["grid"] = g;
    }
    if (o.tol_e) doc["tol_e"] = *o.tol_e;
    if (o.checks) {
        ordered_json old = doc.contains("checks") ? doc["checks"] : ordered_json::object();
        ordered_json kept = ordered_json::object();
        for (const auto& name : *o.checks) {
            if (std::find(check_names().begin(), check_names().end(), name) == check_names().end())
                throw InvalidInput("--checks: unknown check \"" + name + "\"");
            kept[name] = old.contains(name) && !(old[name].is_boolean() && !old[name].get<bool>()) ? old[name]
                                                                                                 : ordered_json(true);
        }
        doc["checks"] = kept;
    }
    return doc;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 15]);
    }
    return out;
}

}  // namespace watlab
