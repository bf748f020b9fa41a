#pragma once

#include <string>
#include <vector>

#include "rfskit/models.hpp"

namespace rfskit {

/// Which log-score a model assigns to a pattern.
///   nb:          sum of feature log-densities only (cardinality-blind,
///                and not invariant under a change of measurement units)
///   rfs_density: the full point-pattern log-density
///   ranking:     cardinality-consistent score with the feature term
///                normalized by its L2 mass
enum class Scorer { nb, rfs_density, ranking };

Scorer scorer_from_string(const std::string& name);
std::string to_string(Scorer s);

double score_pattern(const IidClusterModel& model, Scorer scorer, const PointPattern& p);

struct ClassDecision {
    int label = 0;             // 1-based class index
    double log_posterior = 0.0; // unnormalized: log prior + log score
    bool all_impossible = false; // every class scored -inf; label is the first class
};

/// MAP classification over per-class models. Priors default to uniform and
/// must sum to one. Ties break toward the smallest class index.
class BagClassifier {
  public:
    BagClassifier(std::vector<IidClusterModel> models, Scorer scorer,
                  std::vector<double> priors = {});

    ClassDecision classify(const PointPattern& p) const;
    std::vector<double> log_scores(const PointPattern& p) const; // prior + score per class

    int class_count() const { return static_cast<int>(models_.size()); }
    Scorer scorer() const { return scorer_; }
    const IidClusterModel& model(int label) const { return models_.at(static_cast<size_t>(label - 1)); }
    const std::vector<double>& log_priors() const { return log_priors_; }

  private:
    std::vector<IidClusterModel> models_;
    Scorer scorer_;
    std::vector<double> log_priors_;
};

struct ThresholdSpec {
    int q = 2;  // which quantile, 1-based
    int Q = 10; // how many quantiles
};

/// Nearest-rank lower quantile of the training scores: sort ascending and
/// take the element at rank ceil(q*n/Q), 1-indexed. Scores at exactly the
/// threshold count as normal.
double fit_threshold(std::vector<double> scores, const ThresholdSpec& spec);

struct NoveltyVerdict {
    double score = 0.0;
    bool anomaly = false;
};

class NoveltyDetector {
  public:
    NoveltyDetector(IidClusterModel model, Scorer scorer, double threshold)
        : model_(std::move(model)), scorer_(scorer), threshold_(threshold) {}

    NoveltyVerdict judge(const PointPattern& p) const {
        double s = score_pattern(model_, scorer_, p);
        return {s, s < threshold_};
    }

    const IidClusterModel& model() const { return model_; }
    Scorer scorer() const { return scorer_; }
    double threshold() const { return threshold_; }

  private:
    IidClusterModel model_;
    Scorer scorer_;
    double threshold_;
};

} // namespace rfskit
