// Shared helpers for the test suites.
#pragma once

#include <cmath>
#include <vector>

#include "sellback/distribution.hpp"
#include "sellback/rng.hpp"

namespace testutil {

// Deterministic generator for property sweeps.
inline sellback::rng::SplitMix64 property_rng(std::uint64_t salt = 0) {
    return sellback::rng::SplitMix64(0x5e11bac4d00dULL ^ salt);
}

// Finite distribution over sorted atoms; used as an independent fixture for
// the rank-dependent valuation oracle.
class TwoPointDistribution final : public sellback::Distribution {
  public:
    TwoPointDistribution(double x1, double p1, double x2)
        : x1_(x1), p1_(p1), x2_(x2) {}

    double cdf(double x) const override {
        if (x < x1_) return 0.0;
        if (x < x2_) return p1_;
        return 1.0;
    }
    double quantile(double u) const override { return u <= p1_ ? x1_ : x2_; }
    double density(double) const override { return 0.0; }
    double lo() const override { return x1_; }
    double hi() const override { return x2_; }

  private:
    double x1_;
    double p1_;
    double x2_;
};

}  // namespace testutil
