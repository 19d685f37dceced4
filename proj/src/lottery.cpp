#include "sellback/lottery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sellback/numeric.hpp"

namespace sellback {

namespace {

constexpr double kRootXTol = 1e-12;
constexpr double kRootFTol = 1e-10;
constexpr int kRootMaxIterations = 200;
constexpr double kInvE = 0.36787944117144233;

double quadratic_convenience(const ProsumerProfile& p, double consumption) {
    return p.omega * consumption - 0.5 * p.alpha * consumption * consumption;
}

}  // namespace

LotterySpec::LotterySpec(double prize_in, double scale_in)
    : prize(prize_in), scale(scale_in) {
    if (!(prize >= 0.0)) {
        throw std::invalid_argument("LotterySpec: prize must be nonnegative");
    }
    if (!(scale > 0.0)) {
        throw std::invalid_argument("LotterySpec: scale must be positive");
    }
}

double lottery_utility(const ProsumerProfile& profile, const LotterySpec& spec,
                       const WeightFunctionParams& wparams, double s, double z) {
    wparams.validate();
    if (!(z >= 0.0 && z <= s)) {
        throw std::domain_error("lottery_utility: sell-back must lie in [0, s]");
    }
    const double q = spec.scale * z;
    if (q > 1.0) {
        throw std::domain_error("lottery_utility: winning chance m z exceeds 1");
    }
    return quadratic_convenience(profile, s - z) + spec.prize * weight(wparams, q);
}

double optimal_lottery_sellback(const ProsumerProfile& profile,
                                const LotterySpec& spec,
                                const WeightFunctionParams& wparams, double s) {
    wparams.validate();
    if (!(s >= profile.generation.s_min - 1e-9 && s <= profile.generation.s_max + 1e-9)) {
        throw std::domain_error("optimal_lottery_sellback: s outside generation support");
    }
    if (spec.scale * s > 1.0) {
        throw std::invalid_argument(
            "optimal_lottery_sellback: infeasible scale, m s exceeds 1");
    }
    if (s <= 0.0) return 0.0;

    // Surplus point: with no prize the quadratic term peaks at z = s - omega/alpha.
    const double surplus = std::clamp(s - profile.max_demand(), 0.0, s);
    if (spec.prize == 0.0) return surplus;

    const auto utility = [&](double z) {
        return lottery_utility(profile, spec, wparams, s, z);
    };
    // U'(z) = -omega + alpha (s - z) + R m pi'(m z); diverges to +inf as
    // z -> 0+, so any interior root sits strictly above 0.
    const auto slope = [&](double z) {
        const double marginal = spec.prize * spec.scale *
                                weight_derivative(wparams, spec.scale * z);
        return -profile.omega + profile.alpha * (s - z) + marginal;
    };

    // pi is concave up to q = 1/e, so the slope is strictly decreasing there
    // and brackets at most one root.
    const double concave_hi =
        wparams.is_identity() ? s : std::min(s, kInvE / spec.scale);
    const double z_lo = 1e-12 * s;

    double best = s;
    double best_utility = utility(s);
    const auto consider = [&](double z) {
        const double u = utility(z);
        if (u > best_utility) {
            best_utility = u;
            best = z;
        }
    };

    const double slope_lo = slope(z_lo);
    const double slope_hi = slope(concave_hi);
    if (slope_lo > 0.0 && slope_hi < 0.0) {
        const auto root = numeric::find_root(slope, z_lo, concave_hi, kRootXTol,
                                             kRootFTol, kRootMaxIterations);
        if (!root.converged) {
            throw std::runtime_error(
                "optimal_lottery_sellback: root solve failed to converge on bracket [" +
                std::to_string(z_lo) + ", " + std::to_string(concave_hi) + "]");
        }
        consider(root.x);
    } else if (slope_lo <= 0.0) {
        // Slope already nonpositive at the lower edge: utility falls from the
        // start, so search the whole range directly.
        consider(numeric::maximize(utility, z_lo, s, kRootXTol));
    }
    if (concave_hi < s) {
        // Beyond the inflection the weighting turns convex and the utility
        // need not be unimodal; seed with a coarse scan and polish locally.
        constexpr int kScan = 64;
        const double step = (s - concave_hi) / kScan;
        double scan_best = concave_hi;
        double scan_value = utility(concave_hi);
        for (int i = 1; i <= kScan; ++i) {
            const double z = (i == kScan) ? s : concave_hi + i * step;
            const double u = utility(z);
            if (u > scan_value) {
                scan_value = u;
                scan_best = z;
            }
        }
        consider(scan_best);
        consider(numeric::maximize(utility, std::max(concave_hi, scan_best - step),
                                   std::min(s, scan_best + step), kRootXTol));
    }
    consider(surplus);
    return best;
}

WinningProbabilities winning_probabilities(std::span<const double> sellbacks,
                                           double scale) {
    if (!(scale > 0.0)) {
        throw std::invalid_argument("winning_probabilities: scale must be positive");
    }
    WinningProbabilities result;
    result.per_prosumer.reserve(sellbacks.size());
    double total = 0.0;
    for (double z : sellbacks) {
        if (!(z >= 0.0)) {
            throw std::domain_error("winning_probabilities: negative sell-back");
        }
        const double q = scale * z;
        result.per_prosumer.push_back(q);
        total += q;
    }
    if (total > 1.0 + 1e-9) {
        throw std::invalid_argument(
            "winning_probabilities: total winning chance exceeds 1");
    }
    result.none = std::max(0.0, 1.0 - total);
    return result;
}

}  // namespace sellback
