#include "sellback/prosumer.hpp"

#include <cmath>
#include <stdexcept>

namespace sellback {

namespace {
constexpr double kSupportSlack = 1e-9;
}

GenerationModel GenerationModel::uniform(double s_min, double s_max) {
    if (!(s_min >= 0.0) || !(s_max >= s_min)) {
        throw std::invalid_argument("GenerationModel: requires 0 <= s_min <= s_max");
    }
    return {s_min, s_max, std::make_shared<UniformDistribution>(s_min, s_max)};
}

ProsumerProfile::ProsumerProfile(double omega_in, double alpha_in,
                                 GenerationModel generation_in)
    : omega(omega_in), alpha(alpha_in), generation(std::move(generation_in)) {
    if (!(omega >= 0.0)) {
        throw std::invalid_argument("ProsumerProfile: omega must be nonnegative");
    }
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("ProsumerProfile: alpha must be positive");
    }
    if (!generation.distribution) {
        throw std::invalid_argument("ProsumerProfile: generation model missing");
    }
    if (generation.s_min < omega / alpha - kSupportSlack) {
        throw std::invalid_argument(
            "ProsumerProfile: generation support must lie at or above omega / alpha");
    }
}

double convenience(double omega, double alpha, double x) {
    if (!(x >= 0.0)) {
        throw std::domain_error("convenience: consumption must be nonnegative");
    }
    if (x >= omega / alpha) return omega * omega / (2.0 * alpha);
    return omega * x - alpha * x * x / 2.0;
}

double sellback_convenience(const ProsumerProfile& profile, double s, double z) {
    if (!(z >= 0.0 && z <= s)) {
        throw std::domain_error("sellback_convenience: sell-back must lie in [0, s]");
    }
    return convenience(profile.omega, profile.alpha, s - z);
}

double consumer_demand(double omega, double alpha, double retail_price) {
    if (!(retail_price >= 0.0)) {
        throw std::domain_error("consumer_demand: price must be nonnegative");
    }
    return std::max(0.0, (omega - retail_price) / alpha);
}

}  // namespace sellback
