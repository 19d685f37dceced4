// Population-level retail market simulation: draw consumers and prosumers,
// run an incentive mechanism, and aggregate demand, sell-back and savings.
#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "sellback/contract.hpp"
#include "sellback/lottery.hpp"

namespace sellback {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    void validate(const char* name) const;
};

// Quadratic cost of serving demand x: a x + b x^2.
struct CostModel {
    double a = 1.0;
    double b = 2e-5;

    double operator()(double x) const { return a * x + b * x * x; }
};

struct CptConfig {
    ValueFunctionParams value;
    WeightFunctionParams weight;

    static CptConfig prospect_defaults() {
        return {{2.0, 1.0, 1.0}, WeightFunctionParams::prelec(0.5)};
    }
    static CptConfig risk_neutral() {
        return {ValueFunctionParams::risk_neutral(), WeightFunctionParams::identity()};
    }
};

using Mechanism = std::variant<ContractTerms, LotterySpec>;

struct MarketScenario {
    std::size_t n_consumers = 7500;
    std::size_t n_prosumers = 2500;
    Interval consumer_omega{3.0, 7.0};
    Interval prosumer_omega{4.0, 7.0};
    Interval generation_noise{0.0, 0.5};
    double alpha = 1.0;
    double retail_price = 1.5;
    CostModel cost{1.0, 2e-5};
    Mechanism mechanism = ContractTerms{1.0, 3.5};
    CptConfig cpt = CptConfig::prospect_defaults();
    std::uint64_t seed = 42;

    void validate() const;
};

struct ConsumerDraw {
    double omega = 0.0;
};

struct ProsumerDraw {
    double omega = 0.0;
    double generation = 0.0;  // realized s = omega / alpha + r
};

struct Population {
    std::vector<ConsumerDraw> consumers;
    std::vector<ProsumerDraw> prosumers;
};

struct ProsumerRecord {
    double omega = 0.0;
    double generation = 0.0;
    double contract = 0.0;  // 0 under the lottery mechanism
    double sellback = 0.0;
};

struct SimulationResult {
    double base_demand = 0.0;
    double total_sellback = 0.0;
    double net_demand = 0.0;
    double incentive_cost = 0.0;
    double savings = 0.0;
    // Net demand below zero is reported as-is; the quadratic cost formula is
    // still applied but its economic meaning is doubtful there.
    bool negative_net_demand = false;
    std::vector<ProsumerRecord> prosumers;

    double mean_contract() const;
    double mean_sellback() const;
};

enum class Execution { Sequential, Parallel };

Population draw_population(const MarketScenario& scenario);

// Base demand of the pure consumers at the retail price.
double base_demand(const MarketScenario& scenario, const Population& population);

SimulationResult run_contract_simulation(const MarketScenario& scenario,
                                         Execution exec = Execution::Parallel);

SimulationResult run_lottery_simulation(const MarketScenario& scenario,
                                        Execution exec = Execution::Parallel);

// Lottery runs at fixed prize across prosumer-penetration levels; the
// consumer count shrinks so N + n stays equal to the scenario's total, and
// the automatic lottery scale is re-resolved per level.
std::vector<SimulationResult> penetration_sweep(const MarketScenario& scenario,
                                                std::span<const std::size_t> levels,
                                                Execution exec = Execution::Parallel);

struct ContractComparisonCell {
    double p_s = 0.0;
    double lambda = 0.0;
    double mean_contract_pt = 0.0;
    double mean_contract_eut = 0.0;
};

// Mean committed amounts under the scenario's weighting (at each lambda) and
// under the risk-neutral reference, per (p_s, lambda) grid cell.
std::vector<ContractComparisonCell> contract_comparison_sweep(
    const MarketScenario& scenario, std::span<const double> p_s_grid,
    std::span<const double> lambda_grid, Execution exec = Execution::Parallel);

}  // namespace sellback
