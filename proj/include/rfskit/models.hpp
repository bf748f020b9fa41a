#pragma once

#include <memory>

#include "rfskit/cardinality.hpp"
#include "rfskit/densities.hpp"
#include "rfskit/pattern.hpp"

namespace rfskit {

/// Likelihood model for point patterns: a cardinality distribution over the
/// number of points, i.i.d. features from a common density, and the
/// hyper-volume unit constant that makes the set density unitless.
/// All evaluation is in log domain.
class IidClusterModel {
public:
    IidClusterModel(Cardinality cardinality, std::shared_ptr<const FeatureDensity> feature,
                    UnitContext unit = UnitContext());

    const Cardinality& cardinality() const { return cardinality_; }
    const FeatureDensity& feature() const { return *feature_; }
    std::shared_ptr<const FeatureDensity> feature_ptr() const { return feature_; }
    const UnitContext& unit() const { return unit_; }

    /// Log of the set density:
    ///   log p_c(m) + log m! + m log U + sum_i log p_f(x_i)
    /// -inf when the cardinality has zero mass (or a feature has zero
    /// density). Invariant under a joint change of measurement units that
    /// rescales features, pushes the density forward, and scales U by s^d.
    double log_density(const PointPattern& p) const;

    /// Unit-free ranking score for novelty detection:
    ///   log p_c(m) + sum_i [log p_f(x_i) - log ||p_f||^2]
    /// Its conditional expectation given cardinality m is exactly p_c(m),
    /// so scores are comparable across cardinalities.
    double ranking_log_score(const PointPattern& p) const;

private:
    Cardinality cardinality_;
    std::shared_ptr<const FeatureDensity> feature_;
    UnitContext unit_;
};

/// Sum of per-feature log densities (the bag likelihood of a naive Bayes
/// model). 0 for the empty pattern. Deliberately not unit-invariant: its
/// value shifts by -m*d*log(s) when coordinates are measured in units
/// scaled by s.
double nb_log_likelihood(const FeatureDensity& f, const PointPattern& p);

/// Closed-form Poisson point process log density,
///   m log(rate) - rate + m log U + sum_i log p_f(x_i),
/// algebraically equal to IidClusterModel::log_density with a Poisson
/// cardinality; kept as an independent code path.
double poisson_rfs_log_density(double rate, const FeatureDensity& f, const UnitContext& unit,
                               const PointPattern& p);

/// Sum of log feature densities with the dimension check shared by all
/// pattern likelihoods; -inf if any point has zero density.
double sum_log_pdf(const FeatureDensity& f, const PointPattern& p);

} // namespace rfskit
