// extern "C" surface over the C++ core: exceptions become status codes, a
// thread-local message keeps the diagnostics.
#include "sellback.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "sellback/config.hpp"
#include "sellback/contract.hpp"
#include "sellback/lottery.hpp"
#include "sellback/run.hpp"

namespace {

thread_local std::string g_last_error;

constexpr const char* kVersion = "1.0.0";

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

sb_status fail(sb_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

sb_status ok() {
    g_last_error.clear();
    return SB_OK;
}

template <typename Fn>
sb_status guarded(Fn&& fn) {
    try {
        fn();
        return ok();
    } catch (const sellback::ConfigError& e) {
        return fail(SB_ERR_PARSE, e.what());
    } catch (const IoError& e) {
        return fail(SB_ERR_IO, e.what());
    } catch (const std::domain_error& e) {
        return fail(SB_ERR_DOMAIN, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(SB_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::runtime_error& e) {
        return fail(SB_ERR_SOLVER, e.what());
    } catch (const std::bad_alloc&) {
        return fail(SB_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(SB_ERR_INTERNAL, e.what());
    }
}

sellback::WeightFunctionParams make_weights(double gamma, int identity_weights) {
    return identity_weights != 0 ? sellback::WeightFunctionParams::identity()
                                 : sellback::WeightFunctionParams::prelec(gamma);
}

sellback::ProsumerProfile make_profile(double omega, double alpha, double s_min,
                                       double s_max) {
    return sellback::ProsumerProfile(
        omega, alpha, sellback::GenerationModel::uniform(s_min, s_max));
}

char* copy_string(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

}  // namespace

struct sb_scenario {
    sellback::MarketScenario scenario;
    sellback::RunConfig run;
};

struct sb_table {
    sellback::Table table;
};

extern "C" {

const char* sb_version(void) { return kVersion; }

const char* sb_last_error(void) { return g_last_error.c_str(); }

sb_status sb_value(double lambda, double eta, double beta, double y, double* out) {
    if (out == nullptr) return fail(SB_ERR_INVALID_ARGUMENT, "out is null");
    return guarded([&] {
        sellback::ValueFunctionParams params{lambda, eta, beta};
        params.validate();
        *out = sellback::value(params, y);
    });
}

sb_status sb_weight(double gamma, int identity_weights, double q, double* out) {
    if (out == nullptr) return fail(SB_ERR_INVALID_ARGUMENT, "out is null");
    return guarded([&] {
        const auto params = make_weights(gamma, identity_weights);
        params.validate();
        *out = sellback::weight(params, q);
    });
}

sb_status sb_weight_inverse(double gamma, int identity_weights, double w,
                            double* out) {
    if (out == nullptr) return fail(SB_ERR_INVALID_ARGUMENT, "out is null");
    return guarded([&] {
        const auto params = make_weights(gamma, identity_weights);
        params.validate();
        *out = sellback::weight_inverse(params, w);
    });
}

sb_status sb_optimal_contract(double omega, double alpha, double s_min, double s_max,
                              double sellback_price, double penalty_price,
                              double lambda, double eta, double beta, double gamma,
                              int identity_weights, double* out_contract,
                              int* used_closed_form) {
    if (out_contract == nullptr) return fail(SB_ERR_INVALID_ARGUMENT, "out is null");
    return guarded([&] {
        const auto profile = make_profile(omega, alpha, s_min, s_max);
        const sellback::ContractTerms terms{sellback_price, penalty_price};
        const sellback::ValueFunctionParams vparams{lambda, eta, beta};
        const auto solution = sellback::optimal_contract_pt(
            profile, terms, vparams, make_weights(gamma, identity_weights));
        *out_contract = solution.contract;
        if (used_closed_form != nullptr) {
            *used_closed_form = solution.closed_form ? 1 : 0;
        }
    });
}

sb_status sb_optimal_contract_eut(double omega, double alpha, double s_min,
                                  double s_max, double sellback_price,
                                  double penalty_price, double* out_contract) {
    if (out_contract == nullptr) return fail(SB_ERR_INVALID_ARGUMENT, "out is null");
    return guarded([&] {
        const auto profile = make_profile(omega, alpha, s_min, s_max);
        *out_contract = sellback::optimal_contract_eut(
            profile, sellback::ContractTerms{sellback_price, penalty_price});
    });
}

sb_status sb_realtime_sellback(double omega, double alpha, double s_min, double s_max,
                               double sellback_price, double penalty_price, double s,
                               double contract, double* out_sellback) {
    if (out_sellback == nullptr) return fail(SB_ERR_INVALID_ARGUMENT, "out is null");
    return guarded([&] {
        const auto profile = make_profile(omega, alpha, s_min, s_max);
        *out_sellback = sellback::realtime_sellback(
            profile, sellback::ContractTerms{sellback_price, penalty_price}, s,
            contract);
    });
}

sb_status sb_optimal_lottery_sellback(double omega, double alpha, double s_min,
                                      double s_max, double prize, double scale,
                                      double gamma, int identity_weights, double s,
                                      double* out_sellback) {
    if (out_sellback == nullptr) return fail(SB_ERR_INVALID_ARGUMENT, "out is null");
    return guarded([&] {
        const auto profile = make_profile(omega, alpha, s_min, s_max);
        *out_sellback = sellback::optimal_lottery_sellback(
            profile, sellback::LotterySpec{prize, scale},
            make_weights(gamma, identity_weights), s);
    });
}

sb_status sb_scenario_parse(const char* json_text, sb_scenario** out) {
    if (out == nullptr) return fail(SB_ERR_INVALID_ARGUMENT, "out is null");
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<sb_scenario>();
        const sellback::ParsedConfig parsed =
            sellback::parse_config(json_text == nullptr ? "" : json_text);
        handle->scenario = parsed.scenario;
        handle->run = parsed.run;
        *out = handle.release();
    });
}

void sb_scenario_free(sb_scenario* scenario) { delete scenario; }

sb_status sb_scenario_set_seed(sb_scenario* scenario, uint64_t seed) {
    if (scenario == nullptr) return fail(SB_ERR_INVALID_ARGUMENT, "scenario is null");
    scenario->scenario.seed = seed;
    return ok();
}

sb_status sb_scenario_set_grid(sb_scenario* scenario, const char* param, double start,
                               double stop, int steps) {
    if (scenario == nullptr || param == nullptr) {
        return fail(SB_ERR_INVALID_ARGUMENT, "scenario or param is null");
    }
    return guarded([&] {
        sellback::GridSpec grid{start, stop, steps};
        grid.validate(param);
        static const char* kParams[] = {"sellback_price", "penalty_price", "lambda",
                                        "prize", "n_prosumers"};
        bool known = false;
        for (const char* p : kParams) known |= std::string(param) == p;
        if (!known) {
            throw std::invalid_argument(std::string("unknown grid parameter ") + param);
        }
        scenario->run.grids[param] = grid;
    });
}

sb_status sb_run(const sb_scenario* scenario, const char* subcommand, sb_table** out) {
    if (scenario == nullptr || subcommand == nullptr || out == nullptr) {
        return fail(SB_ERR_INVALID_ARGUMENT, "scenario, subcommand or out is null");
    }
    *out = nullptr;
    return guarded([&] {
        const auto cmd = sellback::subcommand_from_string(subcommand);
        if (!cmd) {
            throw std::invalid_argument(std::string("unknown subcommand ") + subcommand);
        }
        auto handle = std::make_unique<sb_table>();
        handle->table = sellback::run_experiment(scenario->scenario, scenario->run, *cmd);
        *out = handle.release();
    });
}

sb_status sb_manifest(const sb_scenario* scenario, const char* subcommand,
                      char** out_json) {
    if (scenario == nullptr || subcommand == nullptr || out_json == nullptr) {
        return fail(SB_ERR_INVALID_ARGUMENT, "scenario, subcommand or out is null");
    }
    *out_json = nullptr;
    return guarded([&] {
        const auto cmd = sellback::subcommand_from_string(subcommand);
        if (!cmd) {
            throw std::invalid_argument(std::string("unknown subcommand ") + subcommand);
        }
        *out_json = copy_string(
            sellback::manifest_json(scenario->scenario, scenario->run, *cmd));
    });
}

void sb_string_free(char* text) { delete[] text; }

int32_t sb_table_rows(const sb_table* table) {
    return table == nullptr ? 0 : static_cast<int32_t>(table->table.rows.size());
}

int32_t sb_table_cols(const sb_table* table) {
    return table == nullptr ? 0 : static_cast<int32_t>(table->table.columns.size());
}

const char* sb_table_column_name(const sb_table* table, int32_t col) {
    if (table == nullptr || col < 0 ||
        col >= static_cast<int32_t>(table->table.columns.size())) {
        return nullptr;
    }
    return table->table.columns[static_cast<std::size_t>(col)].c_str();
}

sb_status sb_table_cell(const sb_table* table, int32_t row, int32_t col, double* out) {
    if (table == nullptr || out == nullptr) {
        return fail(SB_ERR_INVALID_ARGUMENT, "table or out is null");
    }
    if (row < 0 || row >= sb_table_rows(table) || col < 0 || col >= sb_table_cols(table)) {
        return fail(SB_ERR_INVALID_ARGUMENT, "cell index out of range");
    }
    *out = table->table.rows[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
    return ok();
}

sb_status sb_table_csv(const sb_table* table, char** out_text) {
    if (table == nullptr || out_text == nullptr) {
        return fail(SB_ERR_INVALID_ARGUMENT, "table or out is null");
    }
    *out_text = nullptr;
    return guarded([&] { *out_text = copy_string(table->table.to_csv()); });
}

sb_status sb_table_write_csv(const sb_table* table, const char* path) {
    if (table == nullptr || path == nullptr) {
        return fail(SB_ERR_INVALID_ARGUMENT, "table or path is null");
    }
    return guarded([&] {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError(std::string("cannot open ") + path + " for writing");
        }
        out << table->table.to_csv();
        out.flush();
        if (!out) {
            std::remove(path);
            throw IoError(std::string("write failed for ") + path);
        }
    });
}

void sb_table_free(sb_table* table) { delete table; }

}  // extern "C"
