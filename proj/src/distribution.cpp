#include "sellback/distribution.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sellback {

UniformDistribution::UniformDistribution(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b) || a > b) {
        throw std::invalid_argument("UniformDistribution: requires finite a <= b");
    }
}

double UniformDistribution::cdf(double x) const {
    if (x < a_) return 0.0;
    if (x >= b_) return 1.0;
    return (x - a_) / (b_ - a_);
}

double UniformDistribution::quantile(double u) const {
    if (u < 0.0 || u > 1.0) {
        throw std::domain_error("UniformDistribution::quantile: u outside [0, 1]");
    }
    if (a_ == b_) return a_;  // point mass
    return a_ + u * (b_ - a_);
}

double UniformDistribution::density(double x) const {
    if (a_ == b_) {
        return x == a_ ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return (x >= a_ && x <= b_) ? 1.0 / (b_ - a_) : 0.0;
}

}  // namespace sellback
