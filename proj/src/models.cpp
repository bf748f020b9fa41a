#include "rfskit/models.hpp"

#include <cmath>

#include "rfskit/errors.hpp"

namespace rfskit {

IidClusterModel::IidClusterModel(Cardinality cardinality,
                                 std::shared_ptr<const FeatureDensity> feature, UnitContext unit)
    : cardinality_(std::move(cardinality)), feature_(std::move(feature)), unit_(unit) {
    if (!feature_) throw ValidationError("iid-cluster model needs a feature density");
}

double sum_log_pdf(const FeatureDensity& f, const PointPattern& p) {
    const Eigen::Index m = p.cardinality();
    if (m > 0 && p.dim() != f.dim())
        throw ValidationError("pattern dimension does not match feature density");
    double total = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) total += f.log_pdf(p.points().row(i).transpose());
    return total;
}

double nb_log_likelihood(const FeatureDensity& f, const PointPattern& p) {
    return sum_log_pdf(f, p);
}

double IidClusterModel::log_density(const PointPattern& p) const {
    const int m = static_cast<int>(p.cardinality());
    const double card = cardinality_log_pmf(cardinality_, m);
    if (std::isinf(card)) return card;
    return card + std::lgamma(m + 1.0) + m * std::log(unit_.hyper_volume_unit) +
           sum_log_pdf(*feature_, p);
}

double IidClusterModel::ranking_log_score(const PointPattern& p) const {
    const int m = static_cast<int>(p.cardinality());
    const double card = cardinality_log_pmf(cardinality_, m);
    if (std::isinf(card)) return card;
    return card + sum_log_pdf(*feature_, p) - m * std::log(feature_->l2_norm_sq());
}

double poisson_rfs_log_density(double rate, const FeatureDensity& f, const UnitContext& unit,
                               const PointPattern& p) {
    if (!(rate > 0.0)) throw ValidationError("Poisson rate must be > 0");
    const int m = static_cast<int>(p.cardinality());
    return m * std::log(rate) - rate + m * std::log(unit.hyper_volume_unit) + sum_log_pdf(f, p);
}

} // namespace rfskit
