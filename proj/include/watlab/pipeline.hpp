#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "watlab/bounds.hpp"
#include "watlab/coeffs.hpp"
#include "watlab/config.hpp"

namespace watlab {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitHypothesis = 65;
inline constexpr int kExitSoftware = 70;
inline constexpr int kExitIo = 74;

/// Throws HypothesisViolation naming the first failed hypothesis:
/// f_hat_0_nonzero, nu_in_minus_S, vanishing_on_halfspace, sup_norm_at_most_one.
void check_hypotheses(const RunConfig& config);

/// SHA-256 of the canonical symbol JSON.
std::string symbol_hash(const RunConfig& config);

DiagonalTable build_table(const RunConfig& config);

/// Throws InvalidInput when a table read back from disk does not belong to
/// the config (symbol, nu, grid, range, tolerance).
void require_table_matches(const RunConfig& config, const DiagonalTable& table);

/// Every enabled check, in check_names() order then parameter order.
std::vector<BoundReport> run_checks(const RunConfig& config, const DiagonalTable& table);

struct PlotSeries {
    std::string name;  // file stem under plots/
    std::vector<std::pair<double, double>> points;
};

struct ExploreOutput {
    ordered_json summary;
    std::vector<PlotSeries> plots;
};

/// Diagnostics only; never fails on the data.
ExploreOutput run_explore(const RunConfig& config, const DiagonalTable& table);

void write_reports_jsonl(const std::vector<BoundReport>& reports, std::ostream& os);
void write_plot(const PlotSeries& plot, std::ostream& os);

/// manifest.json: config, its hash, tool version and the SHA-256 of every
/// artifact present in the directory. No timestamps.
ordered_json build_manifest(const RunConfig& config, const std::filesystem::path& out_dir,
                            const ordered_json& extra);

/// Command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace watlab
