// Distribution capability used by the valuation integrals and the
// generation model: CDF, quantile, density and finite support bounds.
#pragma once

#include <memory>

namespace sellback {

class Distribution {
  public:
    virtual ~Distribution() = default;

    // P(X <= x); nondecreasing, 0 below the support, 1 at and above its top.
    virtual double cdf(double x) const = 0;
    // Smallest x with cdf(x) >= u, for u in [0, 1].
    virtual double quantile(double u) const = 0;
    virtual double density(double x) const = 0;
    virtual double lo() const = 0;
    virtual double hi() const = 0;
};

// Uniform on [a, b]. a == b degenerates to a point mass, in which case the
// quantile collapses to the atom.
class UniformDistribution final : public Distribution {
  public:
    UniformDistribution(double a, double b);

    double cdf(double x) const override;
    double quantile(double u) const override;
    double density(double x) const override;
    double lo() const override { return a_; }
    double hi() const override { return b_; }

  private:
    double a_;
    double b_;
};

using DistributionPtr = std::shared_ptr<const Distribution>;

}  // namespace sellback
