#include <cmath>
#include <limits>
#include <stdexcept>

#include <doctest.h>

#include "sellback/cpt.hpp"
#include "test_helpers.hpp"

using namespace sellback;

namespace {
const ValueFunctionParams kValue{2.0, 1.0, 1.0};
const WeightFunctionParams kPrelec = WeightFunctionParams::prelec(0.5);
constexpr double kInvE = 0.36787944117144233;
}

TEST_CASE("value function: linear gains, lambda-scaled losses") {
    CHECK(value(kValue, 0.0) == 0.0);
    CHECK(value(kValue, 3.0) == 3.0);
    CHECK(value(kValue, -3.0) == -6.0);
    // curvature variant
    const ValueFunctionParams curved{1.5, 0.8, 0.7};
    CHECK(value(curved, 2.0) == doctest::Approx(std::pow(2.0, 0.8)).epsilon(1e-12));
    CHECK(value(curved, -2.0) ==
          doctest::Approx(-1.5 * std::pow(2.0, 0.7)).epsilon(1e-12));
}

TEST_CASE("value function: loss aversion for lambda > 1") {
    auto gen = testutil::property_rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double y = gen.uniform(1e-6, 100.0);
        const ValueFunctionParams params{1.0 + gen.uniform(0.01, 3.0), 1.0, 1.0};
        CHECK(-value(params, -y) > value(params, y));
    }
}

TEST_CASE("value params validation") {
    const ValueFunctionParams low_lambda{0.5, 1.0, 1.0};
    const ValueFunctionParams high_eta{2.0, 1.5, 1.0};
    const ValueFunctionParams zero_beta{2.0, 1.0, 0.0};
    CHECK_THROWS_AS(low_lambda.validate(), std::invalid_argument);
    CHECK_THROWS_AS(high_eta.validate(), std::invalid_argument);
    CHECK_THROWS_AS(zero_beta.validate(), std::invalid_argument);
}

TEST_CASE("weight: fixed point, frozen values, boundaries") {
    CHECK(std::abs(weight(kPrelec, kInvE) - kInvE) <= 1e-12);
    // exp(-sqrt(-ln q)) evaluated at high precision
    CHECK(weight(kPrelec, 0.25) == doctest::Approx(0.30807561511624476).epsilon(1e-12));
    CHECK(weight(kPrelec, 0.75) == doctest::Approx(0.5848733088323499).epsilon(1e-12));
    CHECK(weight(kPrelec, 0.25) > 0.25);
    CHECK(weight(kPrelec, 0.75) < 0.75);
    CHECK(weight(kPrelec, 0.0) == 0.0);
    CHECK(weight(kPrelec, 1.0) == 1.0);
    CHECK_THROWS_AS(weight(kPrelec, -0.1), std::domain_error);
    CHECK_THROWS_AS(weight(kPrelec, 1.1), std::domain_error);
    CHECK_THROWS_AS(WeightFunctionParams::prelec(1.0).validate(), std::invalid_argument);
}

TEST_CASE("weight: strictly increasing, over/under-weighting on a 1e3 grid") {
    double prev = 0.0;
    for (int i = 1; i <= 1000; ++i) {
        const double q = static_cast<double>(i) / 1001.0;
        const double w = weight(kPrelec, q);
        CHECK(w > prev);
        if (q < kInvE) CHECK(w > q);
        if (q > kInvE) CHECK(w < q);
        prev = w;
    }
}

TEST_CASE("weight identity mode") {
    const auto id = WeightFunctionParams::identity();
    for (double q : {0.0, 0.1, 0.5, 0.9, 1.0}) {
        CHECK(weight(id, q) == q);
        CHECK(weight_inverse(id, q) == q);
        CHECK(weight_derivative(id, q) == 1.0);
    }
}

TEST_CASE("weight_inverse: frozen values and bisection oracle") {
    CHECK(weight_inverse(kPrelec, kInvE) == doctest::Approx(kInvE).epsilon(1e-12));
    CHECK(weight_inverse(kPrelec, 1.0) == 1.0);
    CHECK(weight_inverse(kPrelec, 0.0) == 0.0);
    const double w_target = 1.0 / 7.0;
    CHECK(weight_inverse(kPrelec, w_target) ==
          doctest::Approx(0.022673321540362664).epsilon(1e-12));

    // Bisection on the weighting function confirms the analytic inverse.
    double lo = 1e-15, hi = 1.0 - 1e-15;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (weight(kPrelec, mid) < w_target ? lo : hi) = mid;
    }
    CHECK(weight_inverse(kPrelec, w_target) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-9));
    CHECK(weight(kPrelec, weight_inverse(kPrelec, w_target)) ==
          doctest::Approx(w_target).epsilon(1e-12));
}

TEST_CASE("weight o weight_inverse is the identity within 1e-10") {
    for (int i = 0; i <= 1000; ++i) {
        const double w = 1e-6 + (1.0 - 2e-6) * static_cast<double>(i) / 1000.0;
        CHECK(std::abs(weight(kPrelec, weight_inverse(kPrelec, w)) - w) <= 1e-10);
    }
    CHECK_THROWS_AS(weight_inverse(kPrelec, -0.01), std::domain_error);
    CHECK_THROWS_AS(weight_inverse(kPrelec, 1.01), std::domain_error);
    // Sharper distortions push the intermediate probability against the
    // limits of double precision near 0 and 1, so the edge band is excluded.
    for (double gamma : {0.3, 0.8}) {
        const auto params = WeightFunctionParams::prelec(gamma);
        for (int i = 0; i <= 1000; ++i) {
            const double w = 1e-3 + (1.0 - 2e-3) * static_cast<double>(i) / 1000.0;
            CHECK(std::abs(weight(params, weight_inverse(params, w)) - w) <= 1e-9);
        }
    }
}

TEST_CASE("prospect_value: certainty, null prospect, small-probability prize") {
    DiscreteProspect certain{{{7.5, 1.0}}};
    CHECK(prospect_value(kValue, kPrelec, certain) == doctest::Approx(7.5).epsilon(1e-12));

    DiscreteProspect empty;
    CHECK(prospect_value(kValue, kPrelec, empty) == 0.0);

    DiscreteProspect prize{{{10000.0, 0.001}}};
    CHECK(prospect_value(kValue, kPrelec, prize) ==
          doctest::Approx(10000.0 * 0.07220392404702458).epsilon(1e-12));

    DiscreteProspect overfull{{{1.0, 0.8}, {2.0, 0.8}}};
    CHECK_THROWS_AS(prospect_value(kValue, kPrelec, overfull), std::domain_error);
    DiscreteProspect bad_prob{{{1.0, -0.2}}};
    CHECK_THROWS_AS(prospect_value(kValue, kPrelec, bad_prob), std::domain_error);
}

TEST_CASE("edit_prospect: constant extraction and the value identity") {
    const DiscreteProspect deterministic{{{5.0, 0.3}, {5.0, 0.7}}};
    const auto edited = edit_prospect(deterministic);
    CHECK(edited.constant == 5.0);
    CHECK(edited.residual.outcomes[0].payoff == 0.0);
    CHECK(edited.residual.outcomes[1].payoff == 0.0);
    CHECK(prospect_value(kValue, kPrelec, deterministic) == doctest::Approx(5.0));

    const DiscreteProspect gains{{{3.0, 0.5}, {7.0, 0.5}}};
    const auto gains_edited = edit_prospect(gains);
    CHECK(gains_edited.constant == 3.0);
    CHECK(gains_edited.residual.outcomes[0].payoff == 0.0);
    CHECK(gains_edited.residual.outcomes[1].payoff == 4.0);
    const double direct = prospect_value(kValue, kPrelec, gains);
    const double via_editing =
        gains_edited.constant + prospect_value(kValue, kPrelec, gains_edited.residual);
    CHECK(std::abs(direct - via_editing) <= 1e-10);
    CHECK(direct == doctest::Approx(4.73974708630284).epsilon(1e-12));

    DiscreteProspect open{{{3.0, 0.5}, {7.0, 0.25}}};
    CHECK_THROWS_AS(edit_prospect(open), std::invalid_argument);
    CHECK_THROWS_AS(edit_prospect(DiscreteProspect{}), std::invalid_argument);
}

TEST_CASE("edit_prospect: round-trip identity on random certain prospects") {
    auto gen = testutil::property_rng(2);
    for (int i = 0; i < 2000; ++i) {
        const int n = 2 + static_cast<int>(gen.next_u64() % 4);
        const double sign = (gen.next_u64() & 1) ? 1.0 : -1.0;
        DiscreteProspect p;
        std::vector<double> raw(static_cast<std::size_t>(n));
        double total = 0.0;
        for (auto& r : raw) {
            r = gen.uniform(0.05, 1.0);
            total += r;
        }
        for (int k = 0; k < n; ++k) {
            p.outcomes.push_back({sign * gen.uniform(0.0, 50.0),
                                  raw[static_cast<std::size_t>(k)] / total});
        }
        const auto edited = edit_prospect(p);
        const double lhs = prospect_value(kValue, kPrelec, p);
        const double rhs =
            edited.constant + prospect_value(kValue, kPrelec, edited.residual);
        CHECK(std::abs(lhs - rhs) <= 1e-10);
    }
}

TEST_CASE("cpt_value: point masses collapse to the value function") {
    UniformDistribution at4(4.0, 4.0);
    CHECK(cpt_value(kValue, kPrelec, at4) == 4.0);
    UniformDistribution atm4(-4.0, -4.0);
    CHECK(cpt_value(kValue, kPrelec, atm4) == -8.0);
}

TEST_CASE("cpt_value: two-point loss matches the rank-dependent discrete sum") {
    // Atoms -2 w.p. 0.5 and -1 w.p. 0.5. Ranked from the worst loss, the
    // decision weights are pi(F(-2)) and pi(F(-1)) - pi(F(-2)).
    testutil::TwoPointDistribution dist(-2.0, 0.5, -1.0);
    const double pi_half = weight(kPrelec, 0.5);
    const double oracle = value(kValue, -2.0) * pi_half +
                          value(kValue, -1.0) * (weight(kPrelec, 1.0) - pi_half);
    CHECK(oracle == doctest::Approx(-2.86987354315142).epsilon(1e-12));
    CHECK(cpt_value(kValue, kPrelec, dist) == doctest::Approx(oracle).epsilon(1e-7));
}

TEST_CASE("cpt_value: identity weights and lambda 1 reduce to the mean") {
    const auto neutral = ValueFunctionParams::risk_neutral();
    const auto id = WeightFunctionParams::identity();
    for (auto [lo, hi] : {std::pair{-2.0, 5.0}, {-4.0, -1.0}, {0.5, 3.0}}) {
        UniformDistribution u(lo, hi);
        CHECK(cpt_value(neutral, id, u) ==
              doctest::Approx(0.5 * (lo + hi)).epsilon(1e-7));
    }
}

TEST_CASE("cpt_value: rejects unbounded support") {
    class Unbounded final : public Distribution {
      public:
        double cdf(double x) const override { return x < 0.0 ? std::exp(x) : 1.0; }
        double quantile(double u) const override { return std::log(u); }
        double density(double x) const override { return x < 0.0 ? std::exp(x) : 0.0; }
        double lo() const override { return -std::numeric_limits<double>::infinity(); }
        double hi() const override { return 0.0; }
    } unbounded;
    CHECK_THROWS_AS(cpt_value(kValue, kPrelec, unbounded), std::invalid_argument);
}

TEST_CASE("distribution: quantile inverts the cdf on the support") {
    UniformDistribution u(2.0, 7.0);
    for (int i = 0; i <= 100; ++i) {
        const double x = 2.0 + 5.0 * static_cast<double>(i) / 100.0;
        CHECK(u.quantile(u.cdf(x)) == doctest::Approx(x).epsilon(1e-12));
    }
    CHECK(u.cdf(1.9) == 0.0);
    CHECK(u.cdf(7.0) == 1.0);
    CHECK(u.density(3.0) == doctest::Approx(0.2));
    CHECK(u.density(7.5) == 0.0);
    CHECK_THROWS_AS(u.quantile(1.5), std::domain_error);
    CHECK_THROWS_AS(UniformDistribution(3.0, 2.0), std::invalid_argument);
}
