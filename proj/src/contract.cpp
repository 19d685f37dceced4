#include "sellback/contract.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sellback/numeric.hpp"

namespace sellback {

namespace {
constexpr double kQuadratureTol = 1e-8;
constexpr double kArgmaxTol = 1e-10;
}

ContractTerms::ContractTerms(double sellback_price, double penalty_price)
    : p_s(sellback_price), p_e(penalty_price) {
    if (!(p_s > 0.0)) {
        throw std::invalid_argument("ContractTerms: sell-back price must be positive");
    }
    if (!(p_e > p_s)) {
        throw std::invalid_argument(
            "ContractTerms: penalty price must exceed the sell-back price");
    }
}

RealTimeBounds realtime_bounds(const ProsumerProfile& profile,
                               const ContractTerms& terms, double s) {
    return {s - profile.omega / profile.alpha,
            s - (profile.omega - terms.p_e) / profile.alpha};
}

ContractBounds contract_bounds(const ProsumerProfile& profile,
                               const ContractTerms& terms) {
    const double shift = (profile.omega - terms.p_e) / profile.alpha;
    return {profile.generation.s_min - shift, profile.generation.s_max - shift};
}

double realtime_sellback(const ProsumerProfile& profile, const ContractTerms& terms,
                         double s, double contract) {
    if (!(contract >= 0.0)) {
        throw std::domain_error("realtime_sellback: contract must be nonnegative");
    }
    const RealTimeBounds b = realtime_bounds(profile, terms, s);
    return std::clamp(contract, b.z1, b.z2);
}

double contract_payment_value(const ProsumerProfile& profile,
                              const ContractTerms& terms,
                              const ValueFunctionParams& vparams,
                              const WeightFunctionParams& wparams, double contract) {
    vparams.validate();
    wparams.validate();
    const ContractBounds b = contract_bounds(profile, terms);
    if (!(contract >= b.z2_min - 1e-12 && contract <= b.z2_max + 1e-12)) {
        throw std::domain_error(
            "contract_payment_value: contract outside [z2_min, z2_max]");
    }
    const double c = std::clamp(contract, b.z2_min, b.z2_max);
    const double shift = (profile.omega - terms.p_e) / profile.alpha;
    const Distribution& gen = profile.generation.dist();
    // F_z(z) = F_s(z + shift). Integrating the weighted shortfall by parts
    // and substituting u = (C - z)^beta leaves a bounded integrand:
    //   E_p(C) = p_s C - lambda p_e int_0^{(C - z2_min)^beta}
    //                       pi(F_s(C - u^{1/beta} + shift)) du
    const double beta = vparams.beta;
    const double span = c - b.z2_min;
    double penalty_term = 0.0;
    if (span > 0.0) {
        penalty_term = numeric::integrate(
            [&](double u) {
                const double z = c - std::pow(u, 1.0 / beta);
                return weight(wparams, gen.cdf(z + shift));
            },
            0.0, std::pow(span, beta), kQuadratureTol);
    }
    return terms.p_s * c - vparams.lambda * terms.p_e * penalty_term;
}

ContractSolution optimal_contract_pt(const ProsumerProfile& profile,
                                     const ContractTerms& terms,
                                     const ValueFunctionParams& vparams,
                                     const WeightFunctionParams& wparams) {
    vparams.validate();
    wparams.validate();
    const ContractBounds b = contract_bounds(profile, terms);
    const double lo = std::max(0.0, b.z2_min);
    const double hi = b.z2_max;
    if (hi <= lo) return {hi, true};

    if (vparams.eta == 1.0 && vparams.beta == 1.0) {
        const double ratio = terms.p_s / (vparams.lambda * terms.p_e);
        if (!(ratio > 0.0 && ratio < 1.0)) {
            throw std::domain_error(
                "optimal_contract_pt: p_s / (lambda p_e) must lie in (0, 1)");
        }
        const double q = weight_inverse(wparams, ratio);
        const double raw = profile.generation.dist().quantile(q) +
                           (terms.p_e - profile.omega) / profile.alpha;
        return {std::clamp(raw, lo, hi), true};
    }

    // Exponents other than 1 pull the loss curvature inside the integral, so
    // the quantile form no longer applies; fall back to a numeric argmax of
    // the perceived payment (concave in C).
    const double argmax = numeric::maximize(
        [&](double c) {
            return contract_payment_value(profile, terms, vparams, wparams, c);
        },
        lo, hi, kArgmaxTol);
    return {argmax, false};
}

double optimal_contract_eut(const ProsumerProfile& profile,
                            const ContractTerms& terms) {
    return optimal_contract_pt(profile, terms, ValueFunctionParams::risk_neutral(),
                               WeightFunctionParams::identity())
        .contract;
}

bool corollary1_holds(const ContractTerms& terms, const ValueFunctionParams& vparams,
                      const WeightFunctionParams& wparams) {
    vparams.validate();
    wparams.validate();
    const double pt_quantile_arg =
        weight_inverse(wparams, terms.p_s / (vparams.lambda * terms.p_e));
    return pt_quantile_arg < terms.p_s / terms.p_e;
}

bool corollary2_check(const ProsumerProfile& profile, const ContractTerms& terms,
                      double s, double c_eut, double c_pt) {
    if (!(c_eut >= c_pt)) {
        throw std::invalid_argument("corollary2_check: requires c_eut >= c_pt");
    }
    return realtime_sellback(profile, terms, s, c_eut) >=
           realtime_sellback(profile, terms, s, c_pt);
}

}  // namespace sellback
