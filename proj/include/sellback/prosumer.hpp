// Consumer and prosumer economics: the saturating convenience function,
// price-responsive demand, and the renewable generation model.
#pragma once

#include <memory>

#include "sellback/distribution.hpp"

namespace sellback {

// Renewable generation over one period: a distribution on [s_min, s_max].
struct GenerationModel {
    double s_min = 0.0;
    double s_max = 0.0;
    DistributionPtr distribution;

    static GenerationModel uniform(double s_min, double s_max);
    const Distribution& dist() const { return *distribution; }
};

// One prosumer: willingness-for-demand omega, convenience curvature alpha,
// and a generation model whose support sits at or above omega / alpha (the
// prosumer never buys from the grid in the studied period).
struct ProsumerProfile {
    double omega = 0.0;
    double alpha = 1.0;
    GenerationModel generation;

    ProsumerProfile(double omega, double alpha, GenerationModel generation);

    double max_demand() const { return omega / alpha; }
};

// Monetized comfort of consuming x: quadratic up to the satiation point
// omega / alpha, flat at omega^2 / (2 alpha) beyond it.
double convenience(double omega, double alpha, double x);

// Convenience left after selling back z out of generation s.
double sellback_convenience(const ProsumerProfile& profile, double s, double z);

// Demand maximizing consumption payoff at retail price p: (omega - p) / alpha,
// floored at zero.
double consumer_demand(double omega, double alpha, double retail_price);

}  // namespace sellback
