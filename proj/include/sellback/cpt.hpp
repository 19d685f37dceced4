// Prospect-theory primitives: perceived value function, Prelec probability
// weighting (plus an identity mode that recovers expected-utility behavior),
// valuation of discrete prospects with editing, and the cumulative valuation
// of a distribution.
#pragma once

#include <vector>

#include "sellback/distribution.hpp"

namespace sellback {

// Perceived value v(y): y^eta on gains, -lambda * (-y)^beta on losses.
// lambda = eta = beta = 1 recovers the risk-neutral identity.
struct ValueFunctionParams {
    double lambda = 2.0;
    double eta = 1.0;
    double beta = 1.0;

    void validate() const;
    static ValueFunctionParams risk_neutral() { return {1.0, 1.0, 1.0}; }
};

enum class WeightKind { Prelec, Identity };

// Probability weighting pi(q). The Prelec form exp(-(-ln q)^gamma) has its
// fixed point at 1/e: probabilities below it are overweighted, above it
// underweighted. The identity mode keeps pi(q) = q so that the same code
// paths evaluate expected-utility decisions.
struct WeightFunctionParams {
    WeightKind kind = WeightKind::Prelec;
    double gamma = 0.5;

    void validate() const;
    static WeightFunctionParams prelec(double gamma = 0.5) {
        return {WeightKind::Prelec, gamma};
    }
    static WeightFunctionParams identity() { return {WeightKind::Identity, 1.0}; }
    bool is_identity() const { return kind == WeightKind::Identity; }
};

struct Outcome {
    double payoff = 0.0;
    double probability = 0.0;
};

// Outcome list with probabilities summing to at most 1; the null outcome
// may be left implicit.
struct DiscreteProspect {
    std::vector<Outcome> outcomes;
};

struct EditedProspect {
    double constant = 0.0;
    DiscreteProspect residual;
};

double value(const ValueFunctionParams& params, double y);

// Marginal value dv/dy away from the kink at 0.
double value_derivative(const ValueFunctionParams& params, double y);

double weight(const WeightFunctionParams& params, double q);

// Analytic inverse of the weighting function on [0, 1].
double weight_inverse(const WeightFunctionParams& params, double w);

// d pi / d q on (0, 1); diverges at both endpoints for the Prelec form and
// is clamped to +infinity there.
double weight_derivative(const WeightFunctionParams& params, double q);

// Splits off the deterministic component of a prospect whose probabilities
// sum to 1. The constant is the outcome closest to zero, so the residual
// always contains a zero outcome.
EditedProspect edit_prospect(const DiscreteProspect& prospect);

// Perceived utility of a discrete prospect. Prospects that are certain to
// resolve (probabilities summing to 1) and single-signed are valued after
// editing, so that a sure component is worth exactly itself; all other
// prospects are valued as sum_i v(y_i) pi(q_i).
double prospect_value(const ValueFunctionParams& vparams,
                      const WeightFunctionParams& wparams,
                      const DiscreteProspect& prospect);

// Cumulative valuation of a random payoff with distribution `dist` over a
// finite support: losses are weighted through pi(F(y)), gains through
// -pi(1 - F(y)).
double cpt_value(const ValueFunctionParams& vparams,
                 const WeightFunctionParams& wparams,
                 const Distribution& dist);

}  // namespace sellback
