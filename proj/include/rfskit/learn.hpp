#pragma once

#include <optional>

#include "rfskit/models.hpp"

namespace rfskit {

struct FitConfig {
    enum class Family { poisson, categorical };

    Family cardinality_family = Family::poisson;
    int categorical_max = 0;                // 0 = size support from the data maximum
    bool add_one_smoothing = false;         // categorical only
    std::optional<double> covariance_ridge; // absolute epsilon; default 1e-9 * mean diagonal
    UnitContext unit;
};

/// Rate = mean observed cardinality. Errors if the dataset is empty or all
/// patterns are empty (the rate must be positive).
PoissonCardinality fit_poisson_cardinality(const Dataset& data);

/// Empirical frequencies over {0..K}; add-one smoothing gives
/// (count_k + 1) / (N + K + 1). Errors if a cardinality exceeds an
/// explicitly requested K.
CategoricalCardinality fit_categorical_cardinality(const Dataset& data, const FitConfig& cfg);

/// Pooled maximum-likelihood Gaussian over the features of every bag
/// combined: mean and (1/M)-normalized scatter, plus a small ridge on the
/// diagonal. How features were split into bags does not affect the result.
GaussianDensity fit_gaussian_features(const Dataset& data, const FitConfig& cfg);

struct FitReport {
    long bag_count = 0;
    long feature_count = 0;
    double ridge_applied = 0.0;
    double log_likelihood = 0.0; // total over the training bags, at the fit
};

struct FitResult {
    IidClusterModel model;
    FitReport report;
};

/// Joint maximum likelihood: the cardinality fit sees only the bag sizes,
/// the feature fit only the pooled features.
FitResult fit_iid_cluster(const Dataset& data, const FitConfig& cfg);

} // namespace rfskit
