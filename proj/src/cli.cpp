#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "watlab/errors.hpp"
#include "watlab/explorer.hpp"
#include "watlab/iterlog.hpp"
#include "watlab/pipeline.hpp"

namespace watlab {

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
    std::string config_path;
    std::string preset;
    std::string out_dir = "watlab-out";
    std::int64_t n_max = 0;
    std::int64_t k_window = -1;
    std::string grid;
    double tol_e = 0.0;
    std::string checks;
};

void add_common(CLI::App* sub, CommonOptions& o) {
    sub->add_option("--config", o.config_path, "run configuration (JSON)");
    sub->add_option("--preset", o.preset, "built-in configuration")
        ->check(CLI::IsMember(preset_names()));
    sub->add_option("--out", o.out_dir, "output directory")->capture_default_str();
    sub->add_option("--n-max", o.n_max, "override n_max");
    sub->add_option("--k-window", o.k_window, "override the k window K");
    sub->add_option("--grid", o.grid, "override the table grid, e.g. 65536 or 64,64");
    sub->add_option("--tol-e", o.tol_e, "override the unit-modulus tolerance");
    sub->add_option("--checks", o.checks, "comma-separated checks to run");
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

Overrides overrides_from(const CommonOptions& o, CLI::App* sub) {
    Overrides ov;
    if (sub->count("--n-max")) ov.n_max = o.n_max;
    if (sub->count("--k-window")) ov.k_window = o.k_window;
    if (sub->count("--tol-e")) ov.tol_e = o.tol_e;
    if (sub->count("--grid")) {
        std::vector<std::size_t> g;
        for (const auto& part : split_commas(o.grid)) {
            try {
                std::size_t pos = 0;
                const unsigned long long v = std::stoull(part, &pos);
                if (pos != part.size()) throw std::invalid_argument(part);
                g.push_back(static_cast<std::size_t>(v));
            } catch (const std::exception&) {
                throw InvalidInput("--grid: \"" + part + "\" is not a grid size");
            }
        }
        if (g.empty()) throw InvalidInput("--grid: empty");
        ov.grid = g;
    }
    if (sub->count("--checks")) ov.checks = split_commas(o.checks);
    return ov;
}

ordered_json read_json_file(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw InvalidInput("cannot open " + p.string());
    try {
        return ordered_json::parse(in, nullptr, true, true);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(p.string() + ": " + e.what());
    }
}

/// Config from --config, --preset, or the manifest left in --out.
ordered_json load_document(const CommonOptions& o, bool allow_manifest) {
    if (!o.config_path.empty() && !o.preset.empty()) throw InvalidInput("give --config or --preset, not both");
    if (!o.config_path.empty()) return read_json_file(o.config_path);
    if (!o.preset.empty()) return preset_document(o.preset);
    const fs::path manifest = fs::path(o.out_dir) / "manifest.json";
    if (allow_manifest && fs::exists(manifest)) {
        ordered_json m = read_json_file(manifest);
        if (!m.contains("config")) throw InvalidInput(manifest.string() + " has no config");
        ordered_json doc = m["config"];
        if (m.contains("preset")) doc["preset"] = m["preset"];
        return doc;
    }
    throw InvalidInput("no configuration: give --config or --preset");
}

struct Loaded {
    ordered_json doc;
    RunConfig config;
};

Loaded load(const CommonOptions& o, CLI::App* sub, bool allow_manifest) {
    Loaded l;
    l.doc = apply_overrides(load_document(o, allow_manifest), overrides_from(o, sub));
    l.config = parse_config(l.doc);
    return l;
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream os(p, std::ios::binary);
    os << text;
    if (!os) throw std::ios_base::failure("cannot write " + p.string());
}

std::string table_text(const DiagonalTable& t) {
    std::ostringstream os;
    write_table_csv(t, os);
    return os.str();
}

DiagonalTable table_for(const Loaded& l, const fs::path& out_dir) {
    const fs::path csv = out_dir / "table.csv";
    if (fs::exists(csv)) {
        std::ifstream in(csv);
        DiagonalTable t = read_table_csv(in);
        require_table_matches(l.config, t);
        return t;
    }
    return build_table(l.config);
}

ordered_json table_summary(const DiagonalTable& t) {
    return {{"rows", t.n_max - t.n_min + 1},
            {"k_max", t.k_max},
            {"measure_e", t.measure_e},
            {"degenerate", t.degenerate},
            {"resolved", t.resolved},
            {"max_abs", t.max_abs()}};
}

ordered_json preset_extra(const Loaded& l) {
    ordered_json e = ordered_json::object();
    if (l.doc.contains("preset")) e["preset"] = l.doc["preset"];
    return e;
}

void write_manifest(const Loaded& l, const fs::path& out_dir, ordered_json extra) {
    write_text(out_dir / "manifest.json", build_manifest(l.config, out_dir, extra).dump(2) + "\n");
}

struct CheckTally {
    std::size_t total = 0;
    std::size_t passed = 0;
};

CheckTally write_reports(const std::vector<BoundReport>& reports, const fs::path& out_dir, std::ostream& err) {
    std::ostringstream os;
    write_reports_jsonl(reports, os);
    write_text(out_dir / "reports.jsonl", os.str());
    CheckTally tally;
    for (const auto& r : reports) {
        ++tally.total;
        if (r.pass) ++tally.passed;
        else err << "FAIL " << r.check << " " << r.params.dump() << " lhs=" << format_double(r.lhs)
                 << " rhs=" << format_double(r.rhs) << "\n";
    }
    return tally;
}

void write_explore(const ExploreOutput& ex, const fs::path& out_dir) {
    fs::create_directories(out_dir / "plots");
    for (const auto& p : ex.plots) {
        std::ostringstream os;
        write_plot(p, os);
        write_text(out_dir / "plots" / (p.name + ".dat"), os.str());
    }
    write_text(out_dir / "explore.json", ex.summary.dump(2) + "\n");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Restricted Fourier coefficient tables and decay-bound checks", "watlab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    CommonOptions run_o, table_o, check_o, explore_o, szego_o;
    auto* run_cmd = app.add_subcommand("run", "table, checks and explorer in one pass");
    auto* table_cmd = app.add_subcommand("table", "compute and export the coefficient table");
    auto* check_cmd = app.add_subcommand("check", "run the enabled checks on table.csv");
    auto* explore_cmd = app.add_subcommand("explore", "diagnostic tail and decay probes");
    auto* szego_cmd = app.add_subcommand("szego", "log-integral inequality for the symbol");
    auto* constants_cmd = app.add_subcommand("constants", "print alpha_q and gamma_q");
    add_common(run_cmd, run_o);
    add_common(table_cmd, table_o);
    add_common(check_cmd, check_o);
    add_common(explore_cmd, explore_o);
    add_common(szego_cmd, szego_o);
    int q = 1;
    constants_cmd->add_option("q", q, "order of the iterated logarithm")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion& e) {
        out << kToolVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "watlab: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*constants_cmd) {
            const IteratedLogParams p = find_constants(q);
            out << ordered_json{{"q", p.q}, {"alpha", p.alpha}, {"gamma", p.gamma}}.dump() << "\n";
            return kExitOk;
        }

        if (*szego_cmd) {
            Loaded l = load(szego_o, szego_cmd, true);
            const Resolution grid = l.config.checks.szego ? l.config.checks.szego->grid
                                                          : parse_config([&] {
                                                                ordered_json d = l.doc;
                                                                d["checks"] = {{"szego", true}};
                                                                return d;
                                                            }()).checks.szego->grid;
            const BoundReport r = szego_check(l.config.symbol, l.config.halfspace, grid);
            out << r.to_json().dump() << "\n";
            out << "margin " << format_double(r.margin) << (r.pass ? " PASS" : " FAIL") << "\n";
            return r.pass ? kExitOk : kExitCheckFailed;
        }

        CommonOptions& o = *run_cmd ? run_o : *table_cmd ? table_o : *check_cmd ? check_o : explore_o;
        CLI::App* sub = *run_cmd ? run_cmd : *table_cmd ? table_cmd : *check_cmd ? check_cmd : explore_cmd;
        const bool from_manifest = *check_cmd || *explore_cmd;
        Loaded l = load(o, sub, from_manifest);
        check_hypotheses(l.config);
        const fs::path out_dir = o.out_dir;
        fs::create_directories(out_dir);

        if (*table_cmd) {
            const DiagonalTable t = build_table(l.config);
            write_text(out_dir / "table.csv", table_text(t));
            ordered_json extra = preset_extra(l);
            extra["table"] = table_summary(t);
            write_manifest(l, out_dir, extra);
            out << "table: " << t.n_max - t.n_min + 1 << " rows x " << t.row_width()
                << " diagonals -> " << (out_dir / "table.csv").string() << "\n";
            return kExitOk;
        }
        if (*check_cmd) {
            const DiagonalTable t = table_for(l, out_dir);
            const CheckTally tally = write_reports(run_checks(l.config, t), out_dir, err);
            ordered_json extra = preset_extra(l);
            extra["table"] = table_summary(t);
            extra["reports"] = {{"total", tally.total}, {"passed", tally.passed}};
            write_manifest(l, out_dir, extra);
            out << "checks: " << tally.passed << "/" << tally.total << " passed\n";
            return tally.passed == tally.total ? kExitOk : kExitCheckFailed;
        }
        if (*explore_cmd) {
            const DiagonalTable t = table_for(l, out_dir);
            write_explore(run_explore(l.config, t), out_dir);
            out << "explore: " << (out_dir / "explore.json").string() << "\n";
            return kExitOk;
        }

        // run
        const DiagonalTable t = build_table(l.config);
        write_text(out_dir / "table.csv", table_text(t));
        const CheckTally tally = write_reports(run_checks(l.config, t), out_dir, err);
        if (l.config.explore) write_explore(run_explore(l.config, t), out_dir);
        ordered_json extra = preset_extra(l);
        extra["table"] = table_summary(t);
        extra["reports"] = {{"total", tally.total}, {"passed", tally.passed}};
        write_manifest(l, out_dir, extra);
        out << "run: table " << t.n_max - t.n_min + 1 << " rows, checks " << tally.passed << "/"
            << tally.total << " passed -> " << out_dir.string() << "\n";
        return tally.passed == tally.total ? kExitOk : kExitCheckFailed;
    } catch (const HypothesisViolation& e) {
        err << "watlab: hypothesis violated: " << e.hypothesis() << ": " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const InvalidInput& e) {
        err << "watlab: invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "watlab: invalid config: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::ios_base::failure& e) {
        err << "watlab: " << e.what() << "\n";
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        err << "watlab: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        err << "watlab: internal error: " << e.what() << "\n";
        return kExitSoftware;
    }
}

}  // namespace watlab
