// Fixed-prize lottery mechanism: perceived utility of selling back under a
// win probability proportional to the contribution, and the optimal
// sell-back solve.
#pragma once

#include <span>
#include <vector>

#include "sellback/cpt.hpp"
#include "sellback/prosumer.hpp"

namespace sellback {

// Prize R and probability-per-unit scale m; q = m z is a prosumer's chance
// of winning. m must keep the population's total chance at or below 1.
struct LotterySpec {
    double prize = 0.0;
    double scale = 0.0;

    LotterySpec(double prize, double scale);
};

// Perceived utility of selling back z out of realized generation s: the
// quadratic consumption term plus R pi(m z). The quadratic form is used on
// its whole range, matching the mechanism's stated objective.
double lottery_utility(const ProsumerProfile& profile, const LotterySpec& spec,
                       const WeightFunctionParams& wparams, double s, double z);

// Global maximizer of lottery_utility over z in [0, s]. The first-order
// condition is solved by bracketed root finding on the concave stretch of
// the weighting curve; the interior candidate is compared against both
// boundaries (and against a direct search beyond the concave stretch when
// the inflection falls inside [0, s]).
double optimal_lottery_sellback(const ProsumerProfile& profile,
                                const LotterySpec& spec,
                                const WeightFunctionParams& wparams, double s);

struct WinningProbabilities {
    std::vector<double> per_prosumer;
    double none = 1.0;
};

// q_j = m z_j for each prosumer plus the residual no-winner probability.
// Rejects infeasible configurations where the probabilities exceed 1.
WinningProbabilities winning_probabilities(std::span<const double> sellbacks,
                                           double scale);

}  // namespace sellback
