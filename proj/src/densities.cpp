#include "rfskit/densities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rfskit/errors.hpp"

namespace rfskit {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454836;  // log(2*pi)
constexpr double kLog4Pi = 2.5310242469692907930;  // log(4*pi)
} // namespace

GaussianDensity::GaussianDensity(Eigen::VectorXd mean, Eigen::MatrixXd covariance)
    : mean_(std::move(mean)), cov_(std::move(covariance)) {
    const Eigen::Index d = mean_.size();
    if (d < 1) throw ValidationError("Gaussian dimension must be >= 1");
    if (cov_.rows() != d || cov_.cols() != d)
        throw ValidationError("covariance shape must match mean dimension");

    const double scale = std::max(1.0, cov_.cwiseAbs().maxCoeff());
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw ValidationError("covariance must be symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov_);
    if (eig.info() != Eigen::Success)
        throw NumericError("covariance eigendecomposition failed");
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0))
        throw NumericError("covariance is not positive definite");
    if (hi / lo > 1e12)
        throw NumericError("covariance is near-singular (condition number > 1e12)");

    Eigen::LLT<Eigen::MatrixXd> llt(cov_);
    if (llt.info() != Eigen::Success)
        throw NumericError("covariance is not positive definite");
    chol_lower_ = llt.matrixL();
    log_det_ = 2.0 * chol_lower_.diagonal().array().log().sum();
}

double GaussianDensity::log_pdf(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    if (x.size() != mean_.size())
        throw ValidationError("feature dimension mismatch in Gaussian log-pdf");
    const Eigen::VectorXd z =
        chol_lower_.triangularView<Eigen::Lower>().solve(x - mean_);
    const double d = static_cast<double>(mean_.size());
    return -0.5 * d * kLog2Pi - 0.5 * log_det_ - 0.5 * z.squaredNorm();
}

double GaussianDensity::l2_norm_sq() const {
    const double d = static_cast<double>(mean_.size());
    return std::exp(-0.5 * d * kLog4Pi - 0.5 * log_det_);
}

Eigen::VectorXd GaussianDensity::sample(Rng& rng) const {
    Eigen::VectorXd z(mean_.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
    return mean_ + chol_lower_ * z;
}

PiecewiseConstantDensity::PiecewiseConstantDensity(std::vector<double> edges,
                                                   std::vector<double> values)
    : edges_(std::move(edges)), values_(std::move(values)) {
    if (edges_.size() < 2 || values_.size() + 1 != edges_.size())
        throw ValidationError("piecewise density needs B+1 edges for B values");
    if (!std::is_sorted(edges_.begin(), edges_.end()) ||
        std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw ValidationError("piecewise density edges must be strictly increasing");
    double mass = 0.0;
    cum_mass_.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] < 0.0) throw ValidationError("piecewise density values must be >= 0");
        mass += values_[i] * (edges_[i + 1] - edges_[i]);
        cum_mass_.push_back(mass);
    }
    if (std::abs(mass - 1.0) > 1e-9)
        throw ValidationError("piecewise density must integrate to 1");
}

double PiecewiseConstantDensity::log_pdf(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    if (x.size() != 1)
        throw ValidationError("piecewise density is one-dimensional");
    const double v = x(0);
    if (v < edges_.front() || v >= edges_.back()) return kNegInf;
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), v);
    const auto bin = static_cast<std::size_t>(it - edges_.begin()) - 1;
    return values_[bin] > 0.0 ? std::log(values_[bin]) : kNegInf;
}

double PiecewiseConstantDensity::l2_norm_sq() const {
    double total = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i)
        total += values_[i] * values_[i] * (edges_[i + 1] - edges_[i]);
    return total;
}

Eigen::VectorXd PiecewiseConstantDensity::sample(Rng& rng) const {
    const double u = rng.uniform01();
    const auto it = std::upper_bound(cum_mass_.begin(), cum_mass_.end(), u);
    const auto bin = std::min(static_cast<std::size_t>(it - cum_mass_.begin()),
                              values_.size() - 1);
    const double lo = edges_[bin], hi = edges_[bin + 1];
    Eigen::VectorXd out(1);
    out(0) = lo + (hi - lo) * rng.uniform01();
    return out;
}

PiecewiseConstantDensity PiecewiseConstantDensity::rescaled(double s) const {
    if (!(s > 0.0)) throw ValidationError("rescale factor must be > 0");
    std::vector<double> edges = edges_;
    std::vector<double> values = values_;
    for (auto& e : edges) e *= s;
    for (auto& v : values) v /= s;
    return PiecewiseConstantDensity(std::move(edges), std::move(values));
}

} // namespace rfskit
