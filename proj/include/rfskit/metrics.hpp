#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rfskit/pattern.hpp"

namespace rfskit {

/// Fraction of positions where the labels agree.
double accuracy(const std::vector<int>& preds, const std::vector<int>& truth);

struct F1Result {
    long tp = 0, fp = 0, fn = 0, tn = 0;
    double precision = 0.0; // 0 when nothing was predicted positive
    double recall = 0.0;    // 0 when nothing is positive in truth
    double f1 = 0.0;        // 0 when precision + recall == 0
};

/// Anomaly (true) is the positive class.
F1Result f1_score(const std::vector<bool>& preds, const std::vector<bool>& truth);

struct FoldSplit {
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
};

/// Deterministic k near-equal folds. With labels present each label's items
/// are shuffled in their own substream and dealt round-robin, so per-label
/// fold sizes differ by at most one.
std::vector<FoldSplit> kfold(const Dataset& data, int k, std::uint64_t seed);

struct FiveNumber {
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

/// Nearest-rank five-number summary: quartile i is the sorted element at
/// rank ceil(i*n/4), 1-indexed.
FiveNumber score_summary(std::vector<double> scores);

struct TrialStats {
    double mean = 0.0;
    double stddev = 0.0; // sample standard deviation, 0 for a single trial
};

TrialStats trial_stats(const std::vector<double>& values);

/// CSV with a "trial" index column followed by one column per metric.
std::string trials_csv(const std::vector<std::string>& metric_names,
                       const std::vector<std::vector<double>>& rows);

/// One CSV row per group: name, five numbers, and the shared threshold
/// overlay when present.
std::string boxplot_csv(const std::vector<std::pair<std::string, FiveNumber>>& groups,
                        std::optional<double> threshold);

} // namespace rfskit
