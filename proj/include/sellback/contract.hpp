// Day-ahead contract mechanism: real-time sell-back response, perceived
// day-ahead payment, optimal contract amounts under prospect and expected
// utility, and the comparison predicates between the two.
#pragma once

#include "sellback/cpt.hpp"
#include "sellback/prosumer.hpp"

namespace sellback {

// Day-ahead sell-back price and real-time shortfall penalty; the penalty
// must exceed the sell-back price or arbitrarily large contracts pay.
struct ContractTerms {
    double p_s = 1.0;
    double p_e = 3.5;

    ContractTerms(double sellback_price, double penalty_price);
};

// Real-time decision corners for realized generation s:
//   z1 = s - omega / alpha          (sell the surplus, consume to satiation)
//   z2 = s - (omega - p_e) / alpha  (cut consumption until marginal
//                                    convenience equals the penalty price)
struct RealTimeBounds {
    double z1 = 0.0;
    double z2 = 0.0;
};

// Range of z2 across the generation support; the admissible contract range.
struct ContractBounds {
    double z2_min = 0.0;
    double z2_max = 0.0;
};

RealTimeBounds realtime_bounds(const ProsumerProfile& profile,
                               const ContractTerms& terms, double s);

ContractBounds contract_bounds(const ProsumerProfile& profile,
                               const ContractTerms& terms);

// Optimal real-time sell-back for committed amount C: C clamped to [z1, z2].
double realtime_sellback(const ProsumerProfile& profile, const ContractTerms& terms,
                         double s, double contract);

// Perceived day-ahead payment of committing C in [z2_min, z2_max]: the sure
// revenue p_s * C net of the probability-weighted shortfall penalty.
double contract_payment_value(const ProsumerProfile& profile,
                              const ContractTerms& terms,
                              const ValueFunctionParams& vparams,
                              const WeightFunctionParams& wparams, double contract);

struct ContractSolution {
    double contract = 0.0;
    // False when the value-function exponents force a numeric argmax instead
    // of the quantile closed form.
    bool closed_form = true;
};

// Argmax of contract_payment_value. With eta = beta = 1 this is
// F_s^-1(pi^-1(p_s / (lambda p_e))) + (p_e - omega) / alpha, clamped to the
// admissible range.
ContractSolution optimal_contract_pt(const ProsumerProfile& profile,
                                     const ContractTerms& terms,
                                     const ValueFunctionParams& vparams,
                                     const WeightFunctionParams& wparams);

// Risk-neutral special case: lambda = 1 with identity weights.
double optimal_contract_eut(const ProsumerProfile& profile,
                            const ContractTerms& terms);

// Whether the prospect-theory contract undercuts the risk-neutral one for
// these terms: pi^-1(p_s / (lambda p_e)) < p_s / p_e. Guaranteed whenever
// p_s < p_e / e and lambda > 1.
bool corollary1_holds(const ContractTerms& terms, const ValueFunctionParams& vparams,
                      const WeightFunctionParams& wparams);

// Whether the larger of two committed amounts also sells back at least as
// much in real time. Requires c_eut >= c_pt.
bool corollary2_check(const ProsumerProfile& profile, const ContractTerms& terms,
                      double s, double c_eut, double c_pt);

}  // namespace sellback
