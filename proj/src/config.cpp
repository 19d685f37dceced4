#include "sellback/config.hpp"

#include <cmath>
#include <limits>
#include <set>

#include <json.hpp>

namespace sellback {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config error at " + path + ": " + what);
}

// Wraps one JSON object level and tracks which keys were consumed so that
// unrecognized keys can be reported by path.
class ObjectReader {
  public:
    ObjectReader(const json& node, std::string path)
        : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) fail(path_, "expected an object");
    }

    bool has(const std::string& key) {
        seen_.insert(key);
        return node_.contains(key);
    }

    const json& at(const std::string& key) {
        seen_.insert(key);
        return node_.at(key);
    }

    std::string child_path(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

    double number(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (!v.is_number()) fail(child_path(key), "expected a number");
        return v.get<double>();
    }

    std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (!v.is_number_unsigned()) fail(child_path(key), "expected a nonnegative integer");
        return v.get<std::uint64_t>();
    }

    std::string text(const std::string& key, const std::string& fallback) {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (!v.is_string()) fail(child_path(key), "expected a string");
        return v.get<std::string>();
    }

    Interval interval(const std::string& key, Interval fallback) {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
            fail(child_path(key), "expected [lo, hi]");
        }
        return {v[0].get<double>(), v[1].get<double>()};
    }

    void finish() const {
        for (const auto& [key, unused] : node_.items()) {
            if (!seen_.contains(key)) fail(child_path(key), "unknown key");
        }
    }

  private:
    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

GridSpec read_grid(const json& node, const std::string& path) {
    ObjectReader reader(node, path);
    GridSpec grid;
    grid.start = reader.number("start", std::numeric_limits<double>::quiet_NaN());
    grid.stop = reader.number("stop", std::numeric_limits<double>::quiet_NaN());
    const double steps = reader.number("steps", 0.0);
    reader.finish();
    if (!std::isfinite(grid.start) || !std::isfinite(grid.stop)) {
        fail(path, "grid requires numeric start and stop");
    }
    grid.steps = static_cast<int>(steps);
    if (static_cast<double>(grid.steps) != steps) fail(path + ".steps", "expected an integer");
    grid.validate(path);
    return grid;
}

const std::set<std::string> kGridParams = {
    "sellback_price", "penalty_price", "lambda", "prize", "n_prosumers"};

}  // namespace

const char* to_string(Subcommand cmd) {
    switch (cmd) {
        case Subcommand::ContractCompare: return "contract-compare";
        case Subcommand::PenaltySweep: return "penalty-sweep";
        case Subcommand::SellbackSweep: return "sellback-sweep";
        case Subcommand::LotterySweep: return "lottery-sweep";
        case Subcommand::PenetrationSweep: return "penetration-sweep";
        case Subcommand::SingleProsumer: return "single-prosumer";
    }
    return "unknown";
}

std::optional<Subcommand> subcommand_from_string(const std::string& name) {
    for (Subcommand cmd :
         {Subcommand::ContractCompare, Subcommand::PenaltySweep, Subcommand::SellbackSweep,
          Subcommand::LotterySweep, Subcommand::PenetrationSweep,
          Subcommand::SingleProsumer}) {
        if (name == to_string(cmd)) return cmd;
    }
    return std::nullopt;
}

std::vector<double> GridSpec::points() const {
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double t = steps == 1 ? 0.0
                                    : static_cast<double>(i) / static_cast<double>(steps - 1);
        pts.push_back(start + t * (stop - start));
    }
    return pts;
}

void GridSpec::validate(const std::string& name) const {
    if (steps < 2) fail(name, "sweep grids need at least 2 steps");
    if (!(stop >= start)) fail(name, "requires stop >= start");
}

ParsedConfig parse_config(const std::string& json_text) {
    json root;
    const std::string trimmed = [&] {
        const auto begin = json_text.find_first_not_of(" \t\r\n");
        return begin == std::string::npos ? std::string() : json_text.substr(begin);
    }();
    if (trimmed.empty()) {
        root = json::object();
    } else {
        try {
            root = json::parse(json_text);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("config error: malformed JSON: ") + e.what());
        }
    }

    ParsedConfig parsed;
    MarketScenario& s = parsed.scenario;
    ObjectReader top(root, "");

    s.seed = top.unsigned_integer("seed", s.seed);
    s.alpha = top.number("alpha", s.alpha);
    s.retail_price = top.number("retail_price", s.retail_price);

    if (top.has("consumers")) {
        ObjectReader consumers(top.at("consumers"), "consumers");
        s.n_consumers = static_cast<std::size_t>(
            consumers.unsigned_integer("count", s.n_consumers));
        s.consumer_omega = consumers.interval("omega_range", s.consumer_omega);
        consumers.finish();
    }
    if (top.has("prosumers")) {
        ObjectReader prosumers(top.at("prosumers"), "prosumers");
        s.n_prosumers = static_cast<std::size_t>(
            prosumers.unsigned_integer("count", s.n_prosumers));
        s.prosumer_omega = prosumers.interval("omega_range", s.prosumer_omega);
        s.generation_noise =
            prosumers.interval("generation_noise_range", s.generation_noise);
        prosumers.finish();
    }
    if (top.has("cost")) {
        ObjectReader cost(top.at("cost"), "cost");
        s.cost.a = cost.number("a", s.cost.a);
        s.cost.b = cost.number("b", s.cost.b);
        cost.finish();
    }

    ContractTerms default_terms{1.0, 3.5};
    double p_s = default_terms.p_s;
    double p_e = default_terms.p_e;
    if (top.has("contract")) {
        ObjectReader contract(top.at("contract"), "contract");
        p_s = contract.number("sellback_price", p_s);
        p_e = contract.number("penalty_price", p_e);
        contract.finish();
    }
    double prize = 20000.0;
    double scale = kAutoLotteryScale;
    if (top.has("lottery")) {
        ObjectReader lottery(top.at("lottery"), "lottery");
        prize = lottery.number("prize", prize);
        if (lottery.has("scale")) {
            scale = lottery.at("scale").get<double>();
            if (!(scale > 0.0)) fail("lottery.scale", "must be positive");
        }
        lottery.finish();
        if (!(prize >= 0.0)) fail("lottery.prize", "must be nonnegative");
    }

    CptConfig cpt = CptConfig::prospect_defaults();
    if (top.has("cpt")) {
        ObjectReader cpt_reader(top.at("cpt"), "cpt");
        cpt.value.lambda = cpt_reader.number("lambda", cpt.value.lambda);
        cpt.value.eta = cpt_reader.number("eta", cpt.value.eta);
        cpt.value.beta = cpt_reader.number("beta", cpt.value.beta);
        const std::string weighting = cpt_reader.text("weighting", "prelec");
        const double gamma = cpt_reader.number("gamma", cpt.weight.gamma);
        cpt_reader.finish();
        if (weighting == "prelec") {
            cpt.weight = WeightFunctionParams::prelec(gamma);
        } else if (weighting == "identity") {
            cpt.weight = WeightFunctionParams::identity();
        } else {
            fail("cpt.weighting", "expected \"prelec\" or \"identity\"");
        }
        try {
            cpt.value.validate();
            cpt.weight.validate();
        } catch (const std::exception& e) {
            fail("cpt", e.what());
        }
    }
    s.cpt = cpt;

    if (top.has("single_prosumer")) {
        ObjectReader single(top.at("single_prosumer"), "single_prosumer");
        parsed.run.single_omega = single.number("omega", parsed.run.single_omega);
        single.finish();
        if (!(parsed.run.single_omega > 0.0)) {
            fail("single_prosumer.omega", "must be positive");
        }
    }

    if (top.has("grids")) {
        ObjectReader grids(top.at("grids"), "grids");
        for (const auto& [key, node] : top.at("grids").items()) {
            if (!kGridParams.contains(key)) fail("grids." + key, "unknown grid parameter");
            grids.has(key);
            parsed.run.grids[key] = read_grid(node, "grids." + key);
        }
        grids.finish();
    }

    if (top.has("subcommand")) {
        const std::string name = top.text("subcommand", "");
        const auto cmd = subcommand_from_string(name);
        if (!cmd) fail("subcommand", "unknown subcommand \"" + name + "\"");
        parsed.run.subcommand = cmd;
    }
    top.finish();

    try {
        const ContractTerms terms{p_s, p_e};
        s.mechanism = terms;
        s.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config error: ") + e.what());
    }
    // Scenario carries the contract by default; drivers swap in the lottery
    // (prize, scale) pair for lottery experiments.
    parsed.scenario.mechanism = ContractTerms{p_s, p_e};
    parsed.run.lottery_prize = prize;
    parsed.run.lottery_scale = scale;
    return parsed;
}

std::string manifest_json(const MarketScenario& scenario, const RunConfig& run,
                          Subcommand cmd) {
    const auto* terms = std::get_if<ContractTerms>(&scenario.mechanism);
    ContractTerms contract = terms ? *terms : ContractTerms{1.0, 3.5};
    json root;
    root["seed"] = scenario.seed;
    root["alpha"] = scenario.alpha;
    root["retail_price"] = scenario.retail_price;
    root["consumers"] = {{"count", scenario.n_consumers},
                         {"omega_range", {scenario.consumer_omega.lo,
                                          scenario.consumer_omega.hi}}};
    root["prosumers"] = {
        {"count", scenario.n_prosumers},
        {"omega_range", {scenario.prosumer_omega.lo, scenario.prosumer_omega.hi}},
        {"generation_noise_range",
         {scenario.generation_noise.lo, scenario.generation_noise.hi}}};
    root["cost"] = {{"a", scenario.cost.a}, {"b", scenario.cost.b}};
    root["contract"] = {{"sellback_price", contract.p_s},
                        {"penalty_price", contract.p_e}};
    json lottery = {{"prize", run.lottery_prize}};
    if (run.lottery_scale != kAutoLotteryScale) lottery["scale"] = run.lottery_scale;
    root["lottery"] = lottery;
    root["cpt"] = {{"lambda", scenario.cpt.value.lambda},
                   {"eta", scenario.cpt.value.eta},
                   {"beta", scenario.cpt.value.beta},
                   {"weighting", scenario.cpt.weight.is_identity() ? "identity" : "prelec"},
                   {"gamma", scenario.cpt.weight.gamma}};
    root["single_prosumer"] = {{"omega", run.single_omega}};
    json grids = json::object();
    for (const auto& [name, grid] : run.grids) {
        grids[name] = {{"start", grid.start}, {"stop", grid.stop}, {"steps", grid.steps}};
    }
    root["grids"] = grids;
    root["subcommand"] = to_string(cmd);
    return root.dump(2) + "\n";
}

}  // namespace sellback
