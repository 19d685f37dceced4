// Batch front end over the sellback C API: parse flags, run one experiment,
// write its table and the run manifest.
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sellback.h"

namespace {

struct GridFlag {
    std::string param;
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;
};

// --grid param=start:stop:steps
std::optional<GridFlag> parse_grid_flag(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) return std::nullopt;
    GridFlag grid;
    grid.param = text.substr(0, eq);
    const std::string spec = text.substr(eq + 1);
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) return std::nullopt;
    try {
        grid.start = std::stod(spec.substr(0, c1));
        grid.stop = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
        std::size_t consumed = 0;
        const std::string steps_text = spec.substr(c2 + 1);
        grid.steps = std::stoi(steps_text, &consumed);
        if (consumed != steps_text.size()) return std::nullopt;
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return grid;
}

int die(const std::string& context) {
    std::cerr << "error: " << context;
    const char* detail = sb_last_error();
    if (detail != nullptr && detail[0] != '\0') std::cerr << ": " << detail;
    std::cerr << "\n";
    return 1;
}

bool write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << text;
    out.flush();
    return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prosumer sell-back incentive simulator"};
    app.require_subcommand(1);
    app.fallthrough();  // --config etc. may follow the subcommand

    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::vector<std::string> grid_flags;

    app.add_option("--config", config_path, "Scenario configuration file (JSON)")
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory for tables and manifest");
    app.add_option("--seed", seed, "Override the scenario seed");
    app.add_option("--grid", grid_flags,
                   "Sweep grid override, param=start:stop:steps (repeatable)");

    const std::vector<std::pair<std::string, std::string>> subcommands = {
        {"contract-compare", "Mean committed amounts per (sell-back price, lambda) cell"},
        {"penalty-sweep", "Market aggregates while the penalty price varies"},
        {"sellback-sweep", "Market aggregates while the sell-back price varies"},
        {"lottery-sweep", "Market aggregates while the lottery prize varies"},
        {"penetration-sweep", "Lottery market across prosumer-penetration levels"},
        {"single-prosumer", "Optimal contracts for one prosumer profile"},
    };
    for (const auto& [name, description] : subcommands) {
        app.add_subcommand(name, description);
    }

    CLI11_PARSE(app, argc, argv);
    const std::string subcommand = app.get_subcommands().front()->get_name();

    std::string config_text;
    if (!config_path.empty()) {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot read " << config_path << "\n";
            return 1;
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        config_text = buffer.str();
    }

    sb_scenario* scenario = nullptr;
    if (sb_scenario_parse(config_text.c_str(), &scenario) != SB_OK) {
        return die("invalid configuration");
    }
    struct ScenarioGuard {
        sb_scenario* handle;
        ~ScenarioGuard() { sb_scenario_free(handle); }
    } scenario_guard{scenario};

    if (seed && sb_scenario_set_seed(scenario, *seed) != SB_OK) {
        return die("invalid seed");
    }
    for (const std::string& flag : grid_flags) {
        const auto grid = parse_grid_flag(flag);
        if (!grid) {
            std::cerr << "error: bad --grid value '" << flag
                      << "', expected param=start:stop:steps\n";
            return 1;
        }
        if (sb_scenario_set_grid(scenario, grid->param.c_str(), grid->start,
                                 grid->stop, grid->steps) != SB_OK) {
            return die("invalid grid '" + flag + "'");
        }
    }

    sb_table* table = nullptr;
    if (sb_run(scenario, subcommand.c_str(), &table) != SB_OK) {
        return die(subcommand + " failed");
    }
    struct TableGuard {
        sb_table* handle;
        ~TableGuard() { sb_table_free(handle); }
    } table_guard{table};

    char* manifest = nullptr;
    if (sb_manifest(scenario, subcommand.c_str(), &manifest) != SB_OK) {
        return die("manifest generation failed");
    }
    const std::string manifest_text = manifest;
    sb_string_free(manifest);

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory " << out_dir << ": "
                  << ec.message() << "\n";
        return 1;
    }
    const std::filesystem::path table_path =
        std::filesystem::path(out_dir) / (subcommand + ".csv");
    const std::filesystem::path manifest_path =
        std::filesystem::path(out_dir) / "manifest.json";

    if (sb_table_write_csv(table, table_path.string().c_str()) != SB_OK) {
        return die("cannot write " + table_path.string());
    }
    if (!write_text_file(manifest_path, manifest_text)) {
        // Remove the half-finished run so reruns never mix outputs.
        std::filesystem::remove(table_path, ec);
        std::cerr << "error: cannot write " << manifest_path.string() << "\n";
        return 1;
    }

    std::cout << table_path.string() << "\n" << manifest_path.string() << "\n";
    return 0;
}
