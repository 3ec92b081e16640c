#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "watlab/config.hpp"
#include "watlab/errors.hpp"
#include "watlab/pipeline.hpp"

using namespace watlab;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result cli(std::vector<std::string> args) {
    args.insert(args.begin(), "watlab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::path("cli_scratch") / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

fs::path write_config(const fs::path& dir, const ordered_json& doc) {
    const fs::path p = dir / "config.json";
    std::ofstream(p) << doc.dump(2);
    return p;
}

ordered_json small_config() {
    return ordered_json::parse(R"({
      "schema": "watlab.run/1",
      "symbol": {"dimension": 1, "family": "blaschke", "params": [0.5, {"re": 0.1, "im": -0.2}]},
      "halfspace": {"axis_order": [0], "axis_sign": [-1]},
      "nu": [1],
      "n_max": 200,
      "k_window": 2,
      "checks": {
        "weighted_series": {"N": [0, 5]},
        "mean_ii": {"M": [1], "p": [10, 100]},
        "mean_iv": {"q": [1], "p": [10, 100]},
        "szego": {"grid": 4096},
        "identity": {"n_max": 4, "k_max": 1},
        "oracle": {"n_max": 8, "k_max": 2}
      },
      "explore": {"k": [0], "weights_q": [0, 1]}
    })");
}

}  // namespace

TEST_CASE("constants subcommand") {
    auto r = cli({"constants", "1"});
    CHECK(r.code == kExitOk);
    auto j = ordered_json::parse(r.out);
    CHECK(j["gamma"] == 3.0);
    CHECK(j["alpha"].get<double>() == doctest::Approx(0.9102392266268373).epsilon(1e-15));
    CHECK(cli({"constants", "2"}).out.find("16") != std::string::npos);
    CHECK(cli({"constants", "0"}).code == kExitUsage);
}

TEST_CASE("usage errors exit 64") {
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"frobnicate"}).code == kExitUsage);
    CHECK(cli({"run", "--preset", "no-such-preset"}).code == kExitUsage);
    CHECK(cli({"run"}).code == kExitUsage);
    CHECK(cli({"run", "--config", "does/not/exist.json"}).code == kExitUsage);
    CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("config validation exits 64") {
    const fs::path dir = scratch("invalid");
    auto expect_64 = [&](ordered_json doc) {
        const auto p = write_config(dir, doc);
        auto r = cli({"run", "--config", p.string(), "--out", (dir / "out").string()});
        CHECK(r.code == kExitUsage);
        CHECK_FALSE(r.err.empty());
    };
    auto d = small_config();
    d["schema"] = "watlab.run/0";
    expect_64(d);
    d = small_config();
    d["typo"] = 1;
    expect_64(d);
    d = small_config();
    d["symbol"]["params"] = {1.5};
    expect_64(d);
    d = small_config();
    d["grid"] = 1000;
    expect_64(d);
    d = small_config();
    d["checks"]["mean_ii"]["p"] = {500};
    expect_64(d);
    d = small_config();
    d["checks"]["nonsense"] = true;
    expect_64(d);
    d = small_config();
    d["grid"] = 64;  // too coarse for n_max = 200
    expect_64(d);
    {
        const auto p = write_config(dir, small_config());
        std::ofstream(p) << "{ not json";
        CHECK(cli({"run", "--config", p.string()}).code == kExitUsage);
    }
}

TEST_CASE("hypothesis violations exit 65") {
    const fs::path dir = scratch("hypotheses");
    auto expect_65 = [&](ordered_json doc, const std::string& name) {
        const auto p = write_config(dir, doc);
        auto r = cli({"run", "--config", p.string(), "--out", (dir / "out").string()});
        CHECK(r.code == kExitHypothesis);
        CHECK(r.err.find(name) != std::string::npos);
    };
    auto d = small_config();
    d["nu"] = {-1};
    expect_65(d, "nu_in_minus_S");
    d = small_config();
    d["symbol"] = {{"family", "blaschke"}, {"params", {0.0}}};
    expect_65(d, "f_hat_0_nonzero");
    d = small_config();
    d["symbol"] = {{"spectrum", {{{"index", {1}}, {"re", 1.0}}}}};
    expect_65(d, "f_hat_0_nonzero");
    d = small_config();
    d["symbol"] = {{"spectrum", {{{"index", {0}}, {"re", 0.5}}, {{"index", {-1}}, {"re", 0.5}}}}};
    expect_65(d, "vanishing_on_halfspace");
    d = small_config();
    d["symbol"] = {{"spectrum", {{{"index", {0}}, {"re", 0.7}}, {{"index", {1}}, {"re", 0.7}}}}};
    expect_65(d, "sup_norm_at_most_one");
    d = small_config();
    d["symbol"] = {{"family", "constant"}, {"params", 1.5}};
    expect_65(d, "sup_norm_at_most_one");
}

TEST_CASE("run writes every artifact and is deterministic") {
    const fs::path dir = scratch("run");
    const auto cfg = write_config(dir, small_config());
    auto a = cli({"run", "--config", cfg.string(), "--out", (dir / "a").string()});
    REQUIRE(a.code == kExitOk);
    auto b = cli({"run", "--config", cfg.string(), "--out", (dir / "b").string()});
    REQUIRE(b.code == kExitOk);
    for (const char* f : {"table.csv", "reports.jsonl", "explore.json", "manifest.json",
                          "plots/tail_k0_inv_n.dat", "plots/tail_k0_L1_over_n.dat", "plots/decay_k0.dat"}) {
        REQUIRE(fs::exists(dir / "a" / f));
        CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    }
    auto manifest = ordered_json::parse(slurp(dir / "a" / "manifest.json"));
    CHECK(manifest["version"] == kToolVersion);
    CHECK(manifest["config_sha256"].get<std::string>().size() == 64);
    CHECK(manifest["files"].contains("table.csv"));
    CHECK(manifest["files"]["table.csv"] == sha256_hex(slurp(dir / "a" / "table.csv")));

    std::istringstream lines(slurp(dir / "a" / "reports.jsonl"));
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        auto j = ordered_json::parse(line);
        CHECK(j["pass"] == true);
        CHECK(j.contains("tolerance"));
        ++n;
    }
    CHECK(n > 20);

    const std::string plot = slurp(dir / "a" / "plots" / "decay_k0.dat");
    std::istringstream ps(plot);
    std::getline(ps, line);
    CHECK(line[0] == '#');
    double x, y;
    CHECK(static_cast<bool>(ps >> x >> y));
}

TEST_CASE("table then check reproduces the run reports") {
    const fs::path dir = scratch("split");
    const auto cfg = write_config(dir, small_config());
    REQUIRE(cli({"run", "--config", cfg.string(), "--out", (dir / "run").string()}).code == kExitOk);
    REQUIRE(cli({"table", "--config", cfg.string(), "--out", (dir / "split").string()}).code == kExitOk);
    REQUIRE(cli({"check", "--out", (dir / "split").string()}).code == kExitOk);
    CHECK(slurp(dir / "split" / "reports.jsonl") == slurp(dir / "run" / "reports.jsonl"));
    CHECK(slurp(dir / "split" / "table.csv") == slurp(dir / "run" / "table.csv"));
    REQUIRE(cli({"explore", "--out", (dir / "split").string()}).code == kExitOk);
    CHECK(slurp(dir / "split" / "explore.json") == slurp(dir / "run" / "explore.json"));
}

TEST_CASE("a table that violates a bound fails the check with exit 2") {
    const fs::path dir = scratch("tampered");
    const auto cfg = write_config(dir, small_config());
    REQUIRE(cli({"table", "--config", cfg.string(), "--out", dir.string()}).code == kExitOk);
    std::string csv = slurp(dir / "table.csv");
    const auto pos = csv.find("\n7,0,");
    REQUIRE(pos != std::string::npos);
    const auto end = csv.find('\n', pos + 1);
    csv.replace(pos, end - pos, "\n7,0,30,0,900");
    std::ofstream(dir / "table.csv") << csv;
    auto r = cli({"check", "--config", cfg.string(), "--out", dir.string(), "--checks", "weighted_series"});
    CHECK(r.code == kExitCheckFailed);
    CHECK(r.err.find("FAIL weighted_series") != std::string::npos);
}

TEST_CASE("a table from another config is refused") {
    const fs::path dir = scratch("mismatch");
    const auto cfg = write_config(dir, small_config());
    REQUIRE(cli({"table", "--config", cfg.string(), "--out", dir.string()}).code == kExitOk);
    auto other = small_config();
    other["symbol"]["params"] = {0.4};
    const auto cfg2 = write_config(dir, other);
    CHECK(cli({"check", "--config", cfg2.string(), "--out", dir.string()}).code == kExitUsage);
}

TEST_CASE("overrides") {
    const fs::path dir = scratch("overrides");
    auto r = cli({"run", "--preset", "blaschke-two", "--n-max", "300", "--grid", "4096", "--checks",
                  "weighted_series,mean_ii", "--out", dir.string()});
    // preset blocks reach p = 1000, past the overridden n_max
    CHECK(r.code == kExitUsage);
    r = cli({"run", "--preset", "blaschke-two", "--n-max", "300", "--grid", "4096", "--checks", "weighted_series",
             "--k-window", "2", "--tol-e", "1e-10", "--out", dir.string()});
    CHECK(r.code == kExitOk);
    auto manifest = ordered_json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["config"]["n_max"] == 300);
    CHECK(manifest["config"]["grid"][0] == 4096);
    CHECK(manifest["config"]["tol_e"] == 1e-10);
    CHECK(manifest["config"]["checks"].size() == 1);
    CHECK(manifest["preset"] == "blaschke-two");
    CHECK(cli({"run", "--preset", "blaschke-two", "--checks", "bogus"}).code == kExitUsage);
    CHECK(cli({"run", "--preset", "blaschke-two", "--grid", "abc"}).code == kExitUsage);
}

TEST_CASE("szego subcommand") {
    auto r = cli({"szego", "--preset", "constant"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("margin 0 PASS") != std::string::npos);
}

TEST_CASE("config round trip") {
    for (const auto& name : preset_names()) {
        const RunConfig c = parse_config(preset_document(name));
        const RunConfig again = parse_config(c.to_json());
        CHECK(again.to_json() == c.to_json());
    }
}

TEST_CASE("degenerate preset") {
    const fs::path dir = scratch("torus");
    auto r = cli({"run", "--preset", "torus-degenerate", "--out", dir.string()});
    CHECK(r.code == kExitOk);
    CHECK(slurp(dir / "table.csv").find("# degenerate=true") != std::string::npos);
}
