#include "sellback/cpt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sellback/numeric.hpp"

namespace sellback {

namespace {

constexpr double kProbabilitySumTol = 1e-9;
constexpr double kQuadratureTol = 1e-8;

double outcome_probability_sum(const DiscreteProspect& p) {
    double sum = 0.0;
    for (const auto& o : p.outcomes) {
        if (!(o.probability >= 0.0 && o.probability <= 1.0)) {
            throw std::domain_error("prospect: outcome probability outside [0, 1]");
        }
        sum += o.probability;
    }
    return sum;
}

double raw_prospect_sum(const ValueFunctionParams& vp, const WeightFunctionParams& wp,
                        const DiscreteProspect& p) {
    double total = 0.0;
    for (const auto& o : p.outcomes) {
        total += value(vp, o.payoff) * weight(wp, o.probability);
    }
    return total;
}

bool single_signed(const DiscreteProspect& p) {
    bool any_gain = false, any_loss = false;
    for (const auto& o : p.outcomes) {
        any_gain |= o.payoff > 0.0;
        any_loss |= o.payoff < 0.0;
    }
    return !(any_gain && any_loss);
}

}  // namespace

void ValueFunctionParams::validate() const {
    if (!(lambda >= 1.0)) {
        throw std::invalid_argument("ValueFunctionParams: lambda must be >= 1");
    }
    if (!(eta > 0.0 && eta <= 1.0) || !(beta > 0.0 && beta <= 1.0)) {
        throw std::invalid_argument("ValueFunctionParams: eta and beta must lie in (0, 1]");
    }
}

void WeightFunctionParams::validate() const {
    if (kind == WeightKind::Prelec && !(gamma > 0.0 && gamma < 1.0)) {
        throw std::invalid_argument("WeightFunctionParams: gamma must lie in (0, 1)");
    }
}

double value(const ValueFunctionParams& params, double y) {
    if (y >= 0.0) {
        return params.eta == 1.0 ? y : std::pow(y, params.eta);
    }
    const double magnitude = params.beta == 1.0 ? -y : std::pow(-y, params.beta);
    return -params.lambda * magnitude;
}

double value_derivative(const ValueFunctionParams& params, double y) {
    if (y >= 0.0) {
        return params.eta == 1.0 ? 1.0 : params.eta * std::pow(y, params.eta - 1.0);
    }
    return params.lambda *
           (params.beta == 1.0 ? 1.0 : params.beta * std::pow(-y, params.beta - 1.0));
}

double weight(const WeightFunctionParams& params, double q) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::domain_error("weight: probability outside [0, 1]");
    }
    if (params.kind == WeightKind::Identity) return q;
    if (q == 0.0) return 0.0;  // limit value; the formula is undefined at 0
    if (q == 1.0) return 1.0;
    return std::exp(-std::pow(-std::log(q), params.gamma));
}

double weight_inverse(const WeightFunctionParams& params, double w) {
    if (!(w >= 0.0 && w <= 1.0)) {
        throw std::domain_error("weight_inverse: weight outside [0, 1]");
    }
    if (params.kind == WeightKind::Identity) return w;
    if (w == 0.0) return 0.0;
    if (w == 1.0) return 1.0;
    return std::exp(-std::pow(-std::log(w), 1.0 / params.gamma));
}

double weight_derivative(const WeightFunctionParams& params, double q) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::domain_error("weight_derivative: probability outside [0, 1]");
    }
    if (params.kind == WeightKind::Identity) return 1.0;
    if (q == 0.0 || q == 1.0) return std::numeric_limits<double>::infinity();
    // pi'(q) = gamma * exp(-L^gamma) * L^(gamma-1) / q with L = -ln q,
    // evaluated in log space to survive tiny q.
    const double big_l = -std::log(q);
    const double log_deriv = std::log(params.gamma) +
                             (params.gamma - 1.0) * std::log(big_l) -
                             std::pow(big_l, params.gamma) + big_l;
    if (log_deriv > 700.0) return std::numeric_limits<double>::infinity();
    return std::exp(log_deriv);
}

EditedProspect edit_prospect(const DiscreteProspect& prospect) {
    if (prospect.outcomes.empty()) {
        throw std::invalid_argument("edit_prospect: empty prospect");
    }
    if (std::abs(outcome_probability_sum(prospect) - 1.0) > kProbabilitySumTol) {
        throw std::invalid_argument("edit_prospect: probabilities must sum to 1");
    }
    const auto closest = std::min_element(
        prospect.outcomes.begin(), prospect.outcomes.end(),
        [](const Outcome& a, const Outcome& b) {
            return std::abs(a.payoff) < std::abs(b.payoff);
        });
    EditedProspect edited;
    edited.constant = closest->payoff;
    edited.residual.outcomes.reserve(prospect.outcomes.size());
    for (const auto& o : prospect.outcomes) {
        edited.residual.outcomes.push_back({o.payoff - edited.constant, o.probability});
    }
    return edited;
}

double prospect_value(const ValueFunctionParams& vparams,
                      const WeightFunctionParams& wparams,
                      const DiscreteProspect& prospect) {
    vparams.validate();
    wparams.validate();
    const double sum = outcome_probability_sum(prospect);
    if (sum > 1.0 + kProbabilitySumTol) {
        throw std::domain_error("prospect_value: probabilities sum beyond 1");
    }
    if (!prospect.outcomes.empty() && std::abs(sum - 1.0) <= kProbabilitySumTol &&
        single_signed(prospect)) {
        const EditedProspect edited = edit_prospect(prospect);
        return edited.constant + raw_prospect_sum(vparams, wparams, edited.residual);
    }
    return raw_prospect_sum(vparams, wparams, prospect);
}

double cpt_value(const ValueFunctionParams& vparams,
                 const WeightFunctionParams& wparams, const Distribution& dist) {
    vparams.validate();
    wparams.validate();
    const double lo = dist.lo();
    const double hi = dist.hi();
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
        throw std::invalid_argument("cpt_value: distribution support must be finite");
    }
    if (lo == hi) return value(vparams, lo);  // point mass

    // Integration by parts turns both halves into integrals of the bounded
    // weight-of-CDF curve; substituting u = y^eta (resp. u = (-y)^beta)
    // absorbs the marginal-value singularity at 0 when the exponent is < 1:
    //   gains:  int_0^hi  v'(y) pi(1 - F(y)) dy = int_0^{hi^eta}  pi(1 - F(u^{1/eta})) du
    //   losses: int_lo^0  v'(y) pi(F(y)) dy    = int_0^{(-lo)^beta} pi(F(-u^{1/beta})) du
    double total = 0.0;
    if (hi > 0.0) {
        const double eta = vparams.eta;
        total += numeric::integrate(
            [&](double u) { return weight(wparams, 1.0 - dist.cdf(std::pow(u, 1.0 / eta))); },
            0.0, std::pow(hi, eta), kQuadratureTol);
    }
    if (lo < 0.0) {
        const double beta = vparams.beta;
        total -= vparams.lambda *
                 numeric::integrate(
                     [&](double u) { return weight(wparams, dist.cdf(-std::pow(u, 1.0 / beta))); },
                     0.0, std::pow(-lo, beta), kQuadratureTol);
    }
    return total;
}

}  // namespace sellback
