#include "rfskit/cardinality.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "rfskit/errors.hpp"

namespace rfskit {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
} // namespace

PoissonCardinality::PoissonCardinality(double rate) : rate_(rate) {
    if (!(rate > 0.0)) throw ValidationError("Poisson rate must be > 0");
}

double PoissonCardinality::log_pmf(int m) const {
    if (m < 0) return kNegInf;
    // log-gamma keeps m! exact in log domain for all m.
    return m * std::log(rate_) - rate_ - std::lgamma(m + 1.0);
}

CategoricalCardinality::CategoricalCardinality(std::vector<double> probs)
    : probs_(std::move(probs)) {
    if (probs_.empty()) throw ValidationError("categorical cardinality needs at least p_0");
    double total = 0.0;
    for (double p : probs_) {
        if (p < 0.0) throw ValidationError("categorical probabilities must be >= 0");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw ValidationError("categorical probabilities must sum to 1");
}

double CategoricalCardinality::log_pmf(int m) const {
    if (m < 0 || m > max_card()) return kNegInf;
    const double p = probs_[static_cast<std::size_t>(m)];
    return p > 0.0 ? std::log(p) : kNegInf;
}

int CategoricalCardinality::sample(Rng& rng) const {
    const double u = rng.uniform01();
    double cum = 0.0;
    for (std::size_t m = 0; m < probs_.size(); ++m) {
        cum += probs_[m];
        if (u < cum) return static_cast<int>(m);
    }
    return max_card();
}

double cardinality_log_pmf(const Cardinality& c, int m) {
    return std::visit([m](const auto& dist) { return dist.log_pmf(m); }, c);
}

int sample_cardinality(const Cardinality& c, Rng& rng) {
    return std::visit([&rng](const auto& dist) { return dist.sample(rng); }, c);
}

} // namespace rfskit
