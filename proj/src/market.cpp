#include "sellback/market.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>

#include "sellback/rng.hpp"

namespace sellback {

namespace {

// Runs fn(i) for i in [0, count); the parallel path only partitions the index
// range, every result lands in a caller-owned slot, so outputs are
// bit-identical to the sequential path.
void for_each_index(std::size_t count, Execution exec,
                    const std::function<void(std::size_t)>& fn) {
    if (exec == Execution::Sequential || count < 256) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t workers = std::clamp<std::size_t>(hw, 2, 8);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&fn, begin, end] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& t : threads) t.join();
}

ProsumerProfile make_profile(const MarketScenario& scenario, const ProsumerDraw& draw) {
    const double base = draw.omega / scenario.alpha;
    return ProsumerProfile(
        draw.omega, scenario.alpha,
        GenerationModel::uniform(base + scenario.generation_noise.lo,
                                 base + scenario.generation_noise.hi));
}

// Aggregation is a fixed-index-order reduction, so parallel prosumer solves
// cannot perturb the totals.
SimulationResult aggregate(const MarketScenario& scenario, const Population& pop,
                           std::vector<ProsumerRecord> records,
                           double incentive_cost) {
    SimulationResult result;
    result.prosumers = std::move(records);
    result.base_demand = base_demand(scenario, pop);
    double z = 0.0;
    for (const auto& r : result.prosumers) z += r.sellback;
    result.total_sellback = z;
    result.net_demand = result.base_demand - result.total_sellback;
    result.negative_net_demand = result.net_demand < 0.0;
    result.incentive_cost = incentive_cost;
    result.savings = scenario.cost(result.base_demand) -
                     scenario.cost(result.net_demand) - result.incentive_cost;
    return result;
}

}  // namespace

void Interval::validate(const char* name) const {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo <= hi)) {
        throw std::invalid_argument(std::string(name) + ": requires lo <= hi");
    }
}

void MarketScenario::validate() const {
    consumer_omega.validate("consumer_omega");
    prosumer_omega.validate("prosumer_omega");
    generation_noise.validate("generation_noise");
    if (!(consumer_omega.lo > 0.0) || !(prosumer_omega.lo > 0.0)) {
        throw std::invalid_argument("omega ranges must be positive");
    }
    if (!(generation_noise.lo >= 0.0)) {
        throw std::invalid_argument("generation_noise: must be nonnegative");
    }
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("alpha must be positive");
    }
    if (!(retail_price >= 0.0)) {
        throw std::invalid_argument("retail_price must be nonnegative");
    }
    cpt.value.validate();
    cpt.weight.validate();
}

Population draw_population(const MarketScenario& scenario) {
    scenario.validate();
    Population pop;
    pop.consumers.resize(scenario.n_consumers);
    pop.prosumers.resize(scenario.n_prosumers);
    for (std::size_t i = 0; i < scenario.n_consumers; ++i) {
        auto gen = rng::stream(scenario.seed, rng::StreamTag::Consumer, i);
        pop.consumers[i].omega =
            gen.uniform(scenario.consumer_omega.lo, scenario.consumer_omega.hi);
    }
    for (std::size_t j = 0; j < scenario.n_prosumers; ++j) {
        auto gen = rng::stream(scenario.seed, rng::StreamTag::Prosumer, j);
        const double omega =
            gen.uniform(scenario.prosumer_omega.lo, scenario.prosumer_omega.hi);
        const double noise =
            gen.uniform(scenario.generation_noise.lo, scenario.generation_noise.hi);
        pop.prosumers[j] = {omega, omega / scenario.alpha + noise};
    }
    return pop;
}

double base_demand(const MarketScenario& scenario, const Population& population) {
    double total = 0.0;
    for (const auto& c : population.consumers) {
        total += consumer_demand(c.omega, scenario.alpha, scenario.retail_price);
    }
    return total;
}

double SimulationResult::mean_contract() const {
    if (prosumers.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& r : prosumers) sum += r.contract;
    return sum / static_cast<double>(prosumers.size());
}

double SimulationResult::mean_sellback() const {
    if (prosumers.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& r : prosumers) sum += r.sellback;
    return sum / static_cast<double>(prosumers.size());
}

SimulationResult run_contract_simulation(const MarketScenario& scenario,
                                         Execution exec) {
    scenario.validate();
    const auto* terms = std::get_if<ContractTerms>(&scenario.mechanism);
    if (terms == nullptr) {
        throw std::invalid_argument(
            "run_contract_simulation: scenario mechanism is not a contract");
    }
    const Population pop = draw_population(scenario);
    std::vector<ProsumerRecord> records(pop.prosumers.size());
    for_each_index(pop.prosumers.size(), exec, [&](std::size_t j) {
        const ProsumerDraw& draw = pop.prosumers[j];
        const ProsumerProfile profile = make_profile(scenario, draw);
        const double contract =
            optimal_contract_pt(profile, *terms, scenario.cpt.value, scenario.cpt.weight)
                .contract;
        const double sold = realtime_sellback(profile, *terms, draw.generation, contract);
        records[j] = {draw.omega, draw.generation, contract, sold};
    });
    double incentive = 0.0;
    for (const auto& r : records) {
        incentive += terms->p_s * r.contract -
                     terms->p_e * std::max(0.0, r.contract - r.sellback);
    }
    return aggregate(scenario, pop, std::move(records), incentive);
}

SimulationResult run_lottery_simulation(const MarketScenario& scenario,
                                        Execution exec) {
    scenario.validate();
    const auto* spec = std::get_if<LotterySpec>(&scenario.mechanism);
    if (spec == nullptr) {
        throw std::invalid_argument(
            "run_lottery_simulation: scenario mechanism is not a lottery");
    }
    const Population pop = draw_population(scenario);
    const LotterySpec resolved = *spec;
    std::vector<ProsumerRecord> records(pop.prosumers.size());
    for_each_index(pop.prosumers.size(), exec, [&](std::size_t j) {
        const ProsumerDraw& draw = pop.prosumers[j];
        const ProsumerProfile profile = make_profile(scenario, draw);
        const double sold = optimal_lottery_sellback(profile, resolved,
                                                     scenario.cpt.weight,
                                                     draw.generation);
        records[j] = {draw.omega, draw.generation, 0.0, sold};
    });
    // Feasibility: the realized winning chances must stay a probability mix.
    std::vector<double> sellbacks;
    sellbacks.reserve(records.size());
    for (const auto& r : records) sellbacks.push_back(r.sellback);
    if (!sellbacks.empty()) {
        winning_probabilities(sellbacks, resolved.scale);
    }
    return aggregate(scenario, pop, std::move(records), resolved.prize);
}

std::vector<SimulationResult> penetration_sweep(const MarketScenario& scenario,
                                                std::span<const std::size_t> levels,
                                                Execution exec) {
    scenario.validate();
    const auto* spec = std::get_if<LotterySpec>(&scenario.mechanism);
    if (spec == nullptr) {
        throw std::invalid_argument("penetration_sweep: scenario mechanism is not a lottery");
    }
    const std::size_t total = scenario.n_consumers + scenario.n_prosumers;
    std::vector<SimulationResult> results;
    results.reserve(levels.size());
    for (std::size_t n : levels) {
        if (n == 0 || n > total) {
            throw std::invalid_argument(
                "penetration_sweep: prosumer count must lie in [1, N + n]");
        }
        MarketScenario level = scenario;
        level.n_prosumers = n;
        level.n_consumers = total - n;
        level.mechanism = LotterySpec{spec->prize, 0.1 / static_cast<double>(n)};
        results.push_back(run_lottery_simulation(level, exec));
    }
    return results;
}

std::vector<ContractComparisonCell> contract_comparison_sweep(
    const MarketScenario& scenario, std::span<const double> p_s_grid,
    std::span<const double> lambda_grid, Execution exec) {
    scenario.validate();
    const auto* terms = std::get_if<ContractTerms>(&scenario.mechanism);
    if (terms == nullptr) {
        throw std::invalid_argument(
            "contract_comparison_sweep: scenario mechanism is not a contract");
    }
    std::vector<ContractComparisonCell> cells;
    cells.reserve(p_s_grid.size() * lambda_grid.size());
    for (double lambda : lambda_grid) {
        for (double p_s : p_s_grid) {
            MarketScenario pt = scenario;
            pt.mechanism = ContractTerms{p_s, terms->p_e};
            pt.cpt.value.lambda = lambda;
            if (lambda == 1.0) {
                // lambda = 1 rows are the risk-neutral baseline, weights included.
                pt.cpt = CptConfig::risk_neutral();
            }
            MarketScenario eut = pt;
            eut.cpt = CptConfig::risk_neutral();
            const SimulationResult pt_run = run_contract_simulation(pt, exec);
            const SimulationResult eut_run = run_contract_simulation(eut, exec);
            cells.push_back({p_s, lambda, pt_run.mean_contract(), eut_run.mean_contract()});
        }
    }
    return cells;
}

}  // namespace sellback
