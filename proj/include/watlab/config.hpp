#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "watlab/lattice.hpp"
#include "watlab/symbol.hpp"

namespace watlab {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kConfigSchema = "watlab.run/1";
inline constexpr const char* kToolVersion = "1.0.0";

struct SeriesPlan {
    std::vector<std::int64_t> N{0};
    std::vector<std::int64_t> k;  // empty: every k in the window
    bool positive_only = false;
};

struct MeanPlan {
    std::vector<int> q{1};  // unused by mean_ii
    std::vector<std::int64_t> M{1};
    std::vector<std::int64_t> p{10};
    std::vector<std::int64_t> k;
};

struct SzegoPlan {
    Resolution grid;
};

struct LogIntegralPlan {
    Resolution grid;
    std::vector<double> r{0.5, 0.9};
};

struct IdentityPlan {
    Resolution grid;
    std::int64_t n_max = 16;
    std::int64_t k_max = 3;
};

struct AbelPlan {
    Resolution grid;
    std::vector<std::int64_t> N{0};
    std::vector<std::int64_t> k{0};
    std::vector<double> r{0.5, 0.9};
    std::int64_t n_trunc = 200;
};

struct HarmonicPlan {
    std::vector<std::int64_t> M{1};
    std::vector<std::int64_t> p{1, 10, 100};
};

struct CauchyPlan {
    std::vector<int> q{1, 2};
    double x_max = 1e8;
    int samples = 40;
};

struct OraclePlan {
    std::int64_t n_max = 64;
    std::int64_t k_max = 4;
};

struct CheckPlan {
    std::optional<SeriesPlan> weighted_series;
    std::optional<MeanPlan> mean_ii;
    std::optional<MeanPlan> mean_iii;
    std::optional<MeanPlan> mean_iv;
    std::optional<SzegoPlan> szego;
    std::optional<LogIntegralPlan> log_integral;
    std::optional<IdentityPlan> identity;
    std::optional<AbelPlan> abel;
    std::optional<HarmonicPlan> harmonic;
    std::optional<CauchyPlan> cauchy_mvt;
    std::optional<OraclePlan> oracle;
};

struct ExplorePlan {
    std::vector<std::int64_t> k{0};
    std::vector<int> weights_q{0, 1};  // 0 is 1/n
    std::int64_t M = 1;
};

/// Fully resolved run configuration.
struct RunConfig {
    ordered_json symbol_spec;
    TrigSymbol symbol;
    HalfSpace halfspace{1};
    LatticePoint nu;
    Resolution grid;  // table grid
    std::int64_t n_min = 1;
    std::int64_t n_max = 1;
    std::int64_t k_window = 0;
    double tol_e = kDefaultUnitModulusTol;
    CheckPlan checks;
    std::optional<ExplorePlan> explore;

    /// Canonical JSON form; parse_config(to_json()) reproduces the config.
    ordered_json to_json() const;
};

/// Names accepted in the "checks" section, in report order.
const std::vector<std::string>& check_names();

/// Throws InvalidInput on any schema or value error. A missing or "auto"
/// grid becomes required_resolution for the table range.
RunConfig parse_config(const ordered_json& doc);

std::vector<std::string> preset_names();
/// Throws InvalidInput for an unknown name.
ordered_json preset_document(const std::string& name);

/// Command-line overrides, applied to the raw document before parsing.
struct Overrides {
    std::optional<std::int64_t> n_max;
    std::optional<std::int64_t> k_window;
    std::optional<std::vector<std::size_t>> grid;
    std::optional<double> tol_e;
    std::optional<std::vector<std::string>> checks;  // keep only these
};

ordered_json apply_overrides(ordered_json doc, const Overrides& o);

TrigSymbol symbol_from_json(const ordered_json& spec);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace watlab
