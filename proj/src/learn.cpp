#include "rfskit/learn.hpp"

#include <algorithm>
#include <cmath>

#include "rfskit/errors.hpp"

namespace rfskit {

namespace {

long total_feature_count(const Dataset& data) {
    long m = 0;
    for (const auto& item : data.items) m += item.pattern.cardinality();
    return m;
}

GaussianDensity fit_gaussian_impl(const Dataset& data, const FitConfig& cfg,
                                  double* ridge_out) {
    if (data.items.empty()) throw ValidationError("fit: empty dataset");
    const long m_total = total_feature_count(data);
    if (m_total < 2) throw ValidationError("fit: need at least two pooled features");
    const int d = data.dim;
    if (d <= 0) throw ValidationError("fit: dataset has no feature dimension");

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    for (const auto& item : data.items)
        for (long i = 0; i < item.pattern.cardinality(); ++i)
            mean += item.pattern.point(i).transpose();
    mean /= static_cast<double>(m_total);

    // Scatter normalized by the pooled feature count, not the bag count.
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
    for (const auto& item : data.items)
        for (long i = 0; i < item.pattern.cardinality(); ++i) {
            Eigen::VectorXd c = item.pattern.point(i).transpose() - mean;
            cov.noalias() += c * c.transpose();
        }
    cov /= static_cast<double>(m_total);

    double ridge = cfg.covariance_ridge.value_or(1e-9 * cov.trace() / d);
    if (ridge < 0.0) throw ValidationError("fit: covariance ridge must be nonnegative");
    cov.diagonal().array() += ridge;
    if (ridge_out) *ridge_out = ridge;

    return GaussianDensity(mean, cov);
}

} // namespace

PoissonCardinality fit_poisson_cardinality(const Dataset& data) {
    if (data.items.empty()) throw ValidationError("fit: empty dataset");
    double mean = static_cast<double>(total_feature_count(data)) /
                  static_cast<double>(data.items.size());
    if (mean <= 0.0)
        throw ValidationError("fit: every training pattern is empty, Poisson rate would be zero");
    return PoissonCardinality(mean);
}

CategoricalCardinality fit_categorical_cardinality(const Dataset& data, const FitConfig& cfg) {
    if (data.items.empty()) throw ValidationError("fit: empty dataset");
    long observed_max = 0;
    for (const auto& item : data.items)
        observed_max = std::max(observed_max, item.pattern.cardinality());
    long k = cfg.categorical_max > 0 ? cfg.categorical_max : observed_max;
    if (observed_max > k)
        throw ValidationError("fit: observed cardinality " + std::to_string(observed_max) +
                              " exceeds requested categorical support " + std::to_string(k));

    std::vector<double> counts(static_cast<size_t>(k) + 1, 0.0);
    for (const auto& item : data.items)
        counts[static_cast<size_t>(item.pattern.cardinality())] += 1.0;

    double denom = static_cast<double>(data.items.size());
    if (cfg.add_one_smoothing) {
        for (auto& c : counts) c += 1.0;
        denom += static_cast<double>(k) + 1.0;
    }
    for (auto& c : counts) c /= denom;
    return CategoricalCardinality(counts);
}

GaussianDensity fit_gaussian_features(const Dataset& data, const FitConfig& cfg) {
    return fit_gaussian_impl(data, cfg, nullptr);
}

FitResult fit_iid_cluster(const Dataset& data, const FitConfig& cfg) {
    double ridge = 0.0;
    GaussianDensity feature = fit_gaussian_impl(data, cfg, &ridge);

    Cardinality card = cfg.cardinality_family == FitConfig::Family::poisson
                           ? Cardinality(fit_poisson_cardinality(data))
                           : Cardinality(fit_categorical_cardinality(data, cfg));

    FitResult out{IidClusterModel(std::move(card),
                                  std::make_shared<GaussianDensity>(std::move(feature)),
                                  cfg.unit),
                  FitReport{}};
    out.report.bag_count = static_cast<long>(data.items.size());
    out.report.feature_count = total_feature_count(data);
    out.report.ridge_applied = ridge;
    for (const auto& item : data.items)
        out.report.log_likelihood += out.model.log_density(item.pattern);
    return out;
}

} // namespace rfskit
