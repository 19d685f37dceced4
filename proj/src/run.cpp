#include "sellback/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sellback {

namespace {

std::map<std::string, GridSpec> default_grids(Subcommand cmd) {
    switch (cmd) {
        case Subcommand::ContractCompare:
            return {{"sellback_price", {0.5, 3.4, 30}}, {"lambda", {1.0, 3.0, 5}}};
        case Subcommand::PenaltySweep:
            return {{"penalty_price", {2.05, 3.5, 30}}};
        case Subcommand::SellbackSweep:
            return {{"sellback_price", {0.5, 3.4, 30}}};
        case Subcommand::LotterySweep:
            return {{"prize", {0.0, 20000.0, 21}}};
        case Subcommand::PenetrationSweep:
            return {{"n_prosumers", {1000.0, 4000.0, 7}}};
        case Subcommand::SingleProsumer:
            return {};
    }
    return {};
}

void append_aggregates(std::vector<double>& row, const SimulationResult& r) {
    row.push_back(r.base_demand);
    row.push_back(r.total_sellback);
    row.push_back(r.net_demand);
}

SimulationResult contract_run(const MarketScenario& scenario, double p_s, double p_e,
                              bool risk_neutral, Execution exec) {
    MarketScenario s = scenario;
    s.mechanism = ContractTerms{p_s, p_e};
    if (risk_neutral) s.cpt = CptConfig::risk_neutral();
    return run_contract_simulation(s, exec);
}

Table penalty_style_sweep(const MarketScenario& scenario, const RunConfig& run,
                          Subcommand cmd, Execution exec) {
    const bool sweep_penalty = cmd == Subcommand::PenaltySweep;
    const GridSpec grid = resolved_grid(run, cmd,
                                        sweep_penalty ? "penalty_price" : "sellback_price");
    const auto* terms = std::get_if<ContractTerms>(&scenario.mechanism);
    if (terms == nullptr) {
        throw std::invalid_argument("contract sweep: scenario has no contract terms");
    }
    Table table;
    table.columns = {sweep_penalty ? "penalty_price" : "sellback_price",
                     "base_demand",
                     "total_sellback",
                     "net_demand",
                     "mean_contract_pt",
                     "mean_contract_eut",
                     "incentive_cost",
                     "savings"};
    for (double x : grid.points()) {
        const double p_s = sweep_penalty ? terms->p_s : x;
        const double p_e = sweep_penalty ? x : terms->p_e;
        const SimulationResult pt = contract_run(scenario, p_s, p_e, false, exec);
        const SimulationResult eut = contract_run(scenario, p_s, p_e, true, exec);
        std::vector<double> row{x};
        append_aggregates(row, pt);
        row.push_back(pt.mean_contract());
        row.push_back(eut.mean_contract());
        row.push_back(pt.incentive_cost);
        row.push_back(pt.savings);
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table contract_compare(const MarketScenario& scenario, const RunConfig& run,
                       Execution exec) {
    const GridSpec ps_grid = resolved_grid(run, Subcommand::ContractCompare, "sellback_price");
    const GridSpec lambda_grid = resolved_grid(run, Subcommand::ContractCompare, "lambda");
    const auto ps_points = ps_grid.points();
    const auto lambda_points = lambda_grid.points();
    const auto cells = contract_comparison_sweep(scenario, ps_points, lambda_points, exec);
    Table table;
    table.columns = {"sellback_price", "lambda", "mean_contract_pt", "mean_contract_eut"};
    for (const auto& cell : cells) {
        table.rows.push_back({cell.p_s, cell.lambda, cell.mean_contract_pt,
                              cell.mean_contract_eut});
    }
    return table;
}

double resolve_lottery_scale(const MarketScenario& scenario, const RunConfig& run) {
    if (run.lottery_scale != kAutoLotteryScale) return run.lottery_scale;
    if (scenario.n_prosumers == 0) {
        throw std::invalid_argument(
            "lottery: automatic scale 0.1 / n is undefined with zero prosumers");
    }
    return 0.1 / static_cast<double>(scenario.n_prosumers);
}

Table lottery_sweep(const MarketScenario& scenario, const RunConfig& run,
                    Execution exec) {
    const GridSpec grid = resolved_grid(run, Subcommand::LotterySweep, "prize");
    const double scale = resolve_lottery_scale(scenario, run);
    Table table;
    table.columns = {"prize", "base_demand", "total_sellback", "net_demand",
                     "incentive_cost", "savings"};
    for (double prize : grid.points()) {
        if (!(prize >= 0.0)) {
            throw std::invalid_argument("lottery sweep: prize grid must be nonnegative");
        }
        MarketScenario s = scenario;
        s.mechanism = LotterySpec{prize, scale};
        const SimulationResult r = run_lottery_simulation(s, exec);
        std::vector<double> row{prize};
        append_aggregates(row, r);
        row.push_back(r.incentive_cost);
        row.push_back(r.savings);
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table penetration(const MarketScenario& scenario, const RunConfig& run,
                  Execution exec) {
    const GridSpec grid = resolved_grid(run, Subcommand::PenetrationSweep, "n_prosumers");
    std::vector<std::size_t> levels;
    for (double x : grid.points()) {
        const double rounded = std::round(x);
        if (!(rounded >= 1.0)) {
            throw std::invalid_argument("penetration sweep: prosumer counts must be >= 1");
        }
        levels.push_back(static_cast<std::size_t>(rounded));
    }
    MarketScenario s = scenario;
    // penetration_sweep re-resolves m = 0.1 / n per level; the scale here is
    // only a placeholder carrying the prize.
    s.mechanism = LotterySpec{run.lottery_prize,
                              0.1 / static_cast<double>(std::max<std::size_t>(
                                        1, scenario.n_prosumers))};
    const auto results = penetration_sweep(s, levels, exec);
    Table table;
    table.columns = {"n_prosumers", "base_demand", "total_sellback", "net_demand",
                     "incentive_cost", "savings"};
    for (std::size_t i = 0; i < results.size(); ++i) {
        std::vector<double> row{static_cast<double>(levels[i])};
        append_aggregates(row, results[i]);
        row.push_back(results[i].incentive_cost);
        row.push_back(results[i].savings);
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table single_prosumer(const MarketScenario& scenario, const RunConfig& run) {
    const auto* terms = std::get_if<ContractTerms>(&scenario.mechanism);
    if (terms == nullptr) {
        throw std::invalid_argument("single-prosumer: scenario has no contract terms");
    }
    const double omega = run.single_omega;
    const double base = omega / scenario.alpha;
    const ProsumerProfile profile(
        omega, scenario.alpha,
        GenerationModel::uniform(base + scenario.generation_noise.lo,
                                 base + scenario.generation_noise.hi));
    const double c_pt =
        optimal_contract_pt(profile, *terms, scenario.cpt.value, scenario.cpt.weight)
            .contract;
    const double c_eut = optimal_contract_eut(profile, *terms);
    Table table;
    table.columns = {"omega",         "alpha",  "s_min", "s_max",     "sellback_price",
                     "penalty_price", "lambda", "gamma", "c_star_pt", "c_star_eut"};
    table.rows.push_back({omega, scenario.alpha, profile.generation.s_min,
                          profile.generation.s_max, terms->p_s, terms->p_e,
                          scenario.cpt.value.lambda, scenario.cpt.weight.gamma, c_pt,
                          c_eut});
    return table;
}

}  // namespace

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c > 0) out += ',';
        out += columns[c];
    }
    out += '\n';
    char buffer[40];
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            std::snprintf(buffer, sizeof(buffer), "%.9g", row[c]);
            out += buffer;
        }
        out += '\n';
    }
    return out;
}

GridSpec resolved_grid(const RunConfig& run, Subcommand cmd, const std::string& param) {
    const auto it = run.grids.find(param);
    if (it != run.grids.end()) return it->second;
    const auto defaults = default_grids(cmd);
    const auto def = defaults.find(param);
    if (def == defaults.end()) {
        throw std::invalid_argument(std::string("no grid for parameter ") + param);
    }
    return def->second;
}

Table run_experiment(const MarketScenario& scenario, const RunConfig& run,
                     Subcommand cmd, Execution exec) {
    scenario.validate();
    switch (cmd) {
        case Subcommand::ContractCompare:
            return contract_compare(scenario, run, exec);
        case Subcommand::PenaltySweep:
        case Subcommand::SellbackSweep:
            return penalty_style_sweep(scenario, run, cmd, exec);
        case Subcommand::LotterySweep:
            return lottery_sweep(scenario, run, exec);
        case Subcommand::PenetrationSweep:
            return penetration(scenario, run, exec);
        case Subcommand::SingleProsumer:
            return single_prosumer(scenario, run);
    }
    throw std::invalid_argument("run_experiment: unknown subcommand");
}

}  // namespace sellback
