#include "rfskit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "rfskit/errors.hpp"
#include "rfskit/rng.hpp"

namespace rfskit {

double accuracy(const std::vector<int>& preds, const std::vector<int>& truth) {
    if (preds.empty()) throw ValidationError("accuracy: empty input");
    if (preds.size() != truth.size()) throw ValidationError("accuracy: length mismatch");
    long correct = 0;
    for (size_t i = 0; i < preds.size(); ++i)
        if (preds[i] == truth[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(preds.size());
}

F1Result f1_score(const std::vector<bool>& preds, const std::vector<bool>& truth) {
    if (preds.size() != truth.size()) throw ValidationError("f1: length mismatch");
    F1Result r;
    for (size_t i = 0; i < preds.size(); ++i) {
        if (preds[i] && truth[i]) ++r.tp;
        else if (preds[i] && !truth[i]) ++r.fp;
        else if (!preds[i] && truth[i]) ++r.fn;
        else ++r.tn;
    }
    r.precision = r.tp + r.fp > 0 ? static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fp) : 0.0;
    r.recall = r.tp + r.fn > 0 ? static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fn) : 0.0;
    r.f1 = r.precision + r.recall > 0.0
               ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
               : 0.0;
    return r;
}

std::vector<FoldSplit> kfold(const Dataset& data, int k, std::uint64_t seed) {
    const size_t n = data.items.size();
    if (k < 2) throw ValidationError("kfold: k must be at least 2");
    if (static_cast<size_t>(k) > n) throw ValidationError("kfold: k exceeds dataset size");

    // Strata keyed by label; unlabeled items share stratum 0.
    std::map<int, std::vector<size_t>> strata;
    for (size_t i = 0; i < n; ++i) strata[data.items[i].label.value_or(0)].push_back(i);

    std::vector<FoldSplit> folds(static_cast<size_t>(k));
    for (auto& [label, indices] : strata) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(label));
        for (size_t i = indices.size(); i > 1; --i)
            std::swap(indices[i - 1], indices[static_cast<size_t>(
                                          rng.uniform_int(0, static_cast<long>(i) - 1))]);
        for (size_t j = 0; j < indices.size(); ++j)
            folds[j % static_cast<size_t>(k)].test_indices.push_back(indices[j]);
    }

    for (auto& fold : folds) {
        std::sort(fold.test_indices.begin(), fold.test_indices.end());
        std::vector<bool> in_test(n, false);
        for (size_t i : fold.test_indices) in_test[i] = true;
        for (size_t i = 0; i < n; ++i)
            if (!in_test[i]) fold.train_indices.push_back(i);
    }
    return folds;
}

FiveNumber score_summary(std::vector<double> scores) {
    if (scores.empty()) throw ValidationError("score summary: empty group");
    std::sort(scores.begin(), scores.end());
    const size_t n = scores.size();
    auto at_rank = [&](size_t q) { // ceil(q*n/4), 1-indexed
        size_t rank = (q * n + 3) / 4;
        return scores[std::max<size_t>(rank, 1) - 1];
    };
    return {scores.front(), at_rank(1), at_rank(2), at_rank(3), scores.back()};
}

TrialStats trial_stats(const std::vector<double>& values) {
    if (values.empty()) throw ValidationError("trial stats: empty input");
    TrialStats s;
    for (double v : values) s.mean += v;
    s.mean /= static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

std::string trials_csv(const std::vector<std::string>& metric_names,
                       const std::vector<std::vector<double>>& rows) {
    std::ostringstream out;
    out.precision(17);
    out << "trial";
    for (const auto& name : metric_names) out << ',' << name;
    out << '\n';
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != metric_names.size())
            throw ValidationError("trials csv: row width does not match header");
        out << i + 1;
        for (double v : rows[i]) out << ',' << v;
        out << '\n';
    }
    return out.str();
}

std::string boxplot_csv(const std::vector<std::pair<std::string, FiveNumber>>& groups,
                        std::optional<double> threshold) {
    std::ostringstream out;
    out.precision(17);
    out << "group,min,q1,median,q3,max" << (threshold ? ",threshold" : "") << '\n';
    for (const auto& [name, f] : groups) {
        out << name << ',' << f.min << ',' << f.q1 << ',' << f.median << ',' << f.q3 << ','
            << f.max;
        if (threshold) out << ',' << *threshold;
        out << '\n';
    }
    return out.str();
}

} // namespace rfskit
