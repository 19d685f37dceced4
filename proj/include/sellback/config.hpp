// Scenario configuration: JSON text in, fully-resolved market scenario and
// run settings out. Omitted keys fall back to the default community setup;
// unknown keys are rejected with their full path.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "sellback/market.hpp"

namespace sellback {

enum class Subcommand {
    ContractCompare,
    PenaltySweep,
    SellbackSweep,
    LotterySweep,
    PenetrationSweep,
    SingleProsumer,
};

const char* to_string(Subcommand cmd);
std::optional<Subcommand> subcommand_from_string(const std::string& name);

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;

    std::vector<double> points() const;
    void validate(const std::string& name) const;
};

// Sentinel for "resolve the lottery scale to 0.1 / n at dispatch".
inline constexpr double kAutoLotteryScale = 0.0;

struct RunConfig {
    std::map<std::string, GridSpec> grids;
    double single_omega = 5.0;
    double lottery_prize = 20000.0;
    double lottery_scale = kAutoLotteryScale;  // 0 resolves to 0.1 / n
    std::optional<Subcommand> subcommand;
};

struct ParsedConfig {
    MarketScenario scenario;
    RunConfig run;
};

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Parses a JSON configuration. Empty or all-defaults input yields the
// default scenario (7500 consumers, 2500 prosumers, retail 1.5, cost 1 + 2e-5 x,
// lambda 2, gamma 0.5, seed 42).
ParsedConfig parse_config(const std::string& json_text);

// Fully-resolved configuration for a run; valid parse_config input, so a
// manifest re-fed as --config reproduces the tables byte for byte.
std::string manifest_json(const MarketScenario& scenario, const RunConfig& run,
                          Subcommand cmd);

}  // namespace sellback
