#include "rfskit/infer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rfskit/errors.hpp"

namespace rfskit {

Scorer scorer_from_string(const std::string& name) {
    if (name == "nb") return Scorer::nb;
    if (name == "rfs_density") return Scorer::rfs_density;
    if (name == "ranking") return Scorer::ranking;
    throw ValidationError("unknown scorer '" + name + "' (expected nb, rfs_density, or ranking)");
}

std::string to_string(Scorer s) {
    switch (s) {
        case Scorer::nb: return "nb";
        case Scorer::rfs_density: return "rfs_density";
        case Scorer::ranking: return "ranking";
    }
    throw ValidationError("unknown scorer value");
}

double score_pattern(const IidClusterModel& model, Scorer scorer, const PointPattern& p) {
    switch (scorer) {
        case Scorer::nb: return nb_log_likelihood(model.feature(), p);
        case Scorer::rfs_density: return model.log_density(p);
        case Scorer::ranking: return model.ranking_log_score(p);
    }
    throw ValidationError("unknown scorer value");
}

BagClassifier::BagClassifier(std::vector<IidClusterModel> models, Scorer scorer,
                             std::vector<double> priors)
    : models_(std::move(models)), scorer_(scorer) {
    const size_t c = models_.size();
    if (c < 2) throw ValidationError("classifier needs at least two classes");
    for (const auto& m : models_)
        if (m.feature().dim() != models_.front().feature().dim())
            throw ValidationError("classifier: models disagree on feature dimension");
    if (priors.empty()) priors.assign(c, 1.0 / static_cast<double>(c));
    if (priors.size() != c)
        throw ValidationError("classifier: prior count does not match class count");
    double total = 0.0;
    for (double p : priors) {
        if (!(p >= 0.0)) throw ValidationError("classifier: priors must be nonnegative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw ValidationError("classifier: priors must sum to one");
    log_priors_.reserve(c);
    for (double p : priors)
        log_priors_.push_back(p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity());
}

std::vector<double> BagClassifier::log_scores(const PointPattern& p) const {
    std::vector<double> out(models_.size());
    for (size_t i = 0; i < models_.size(); ++i)
        out[i] = log_priors_[i] + score_pattern(models_[i], scorer_, p);
    return out;
}

ClassDecision BagClassifier::classify(const PointPattern& p) const {
    std::vector<double> scores = log_scores(p);
    size_t best = 0;
    for (size_t i = 1; i < scores.size(); ++i)
        if (scores[i] > scores[best]) best = i; // strict: ties keep the smaller index
    ClassDecision d;
    d.label = static_cast<int>(best) + 1;
    d.log_posterior = scores[best];
    d.all_impossible = std::isinf(scores[best]) && scores[best] < 0.0;
    return d;
}

double fit_threshold(std::vector<double> scores, const ThresholdSpec& spec) {
    if (scores.empty()) throw ValidationError("threshold: no scores to fit on");
    if (spec.q < 1 || spec.q >= spec.Q)
        throw ValidationError("threshold: need 1 <= q < Q");
    for (double s : scores)
        if (std::isnan(s)) throw NumericError("threshold: NaN score in training set");
    std::sort(scores.begin(), scores.end());
    const size_t n = scores.size();
    // ceil(q*n/Q) in integer arithmetic, then to 0-based.
    size_t rank = (static_cast<size_t>(spec.q) * n + static_cast<size_t>(spec.Q) - 1) /
                  static_cast<size_t>(spec.Q);
    if (rank == 0) rank = 1;
    return scores[rank - 1];
}

} // namespace rfskit
