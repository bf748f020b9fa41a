#pragma once

#include <variant>
#include <vector>

#include "rfskit/rng.hpp"

namespace rfskit {

class PoissonCardinality {
public:
    explicit PoissonCardinality(double rate);

    double rate() const { return rate_; }
    double log_pmf(int m) const;
    int sample(Rng& rng) const { return rng.poisson(rate_); }

private:
    double rate_;
};

/// Distribution over {0..K} given by an explicit probability vector.
/// Evaluation is strict: m > K or zero mass yields -inf.
class CategoricalCardinality {
public:
    explicit CategoricalCardinality(std::vector<double> probs);

    int max_card() const { return static_cast<int>(probs_.size()) - 1; }
    const std::vector<double>& probs() const { return probs_; }
    double log_pmf(int m) const;
    int sample(Rng& rng) const;

private:
    std::vector<double> probs_; // p_0 .. p_K, normalized
};

using Cardinality = std::variant<PoissonCardinality, CategoricalCardinality>;

double cardinality_log_pmf(const Cardinality& c, int m);
int sample_cardinality(const Cardinality& c, Rng& rng);

} // namespace rfskit
