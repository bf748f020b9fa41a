#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "rfskit/rng.hpp"

namespace rfskit {

/// A probability density on the feature space. Implementations must provide
/// the log-density, the squared L2-norm (integral of the squared density,
/// which carries units of inverse hyper-volume), and a sampler.
class FeatureDensity {
public:
    virtual ~FeatureDensity() = default;

    virtual Eigen::Index dim() const = 0;
    virtual double log_pdf(const Eigen::Ref<const Eigen::VectorXd>& x) const = 0;
    virtual double l2_norm_sq() const = 0;
    virtual Eigen::VectorXd sample(Rng& rng) const = 0;
    virtual std::unique_ptr<FeatureDensity> clone() const = 0;
};

/// Multivariate normal with symmetric positive-definite covariance.
/// Construction rejects asymmetric, non-positive-definite, and
/// near-singular (condition number > 1e12) covariances.
class GaussianDensity final : public FeatureDensity {
public:
    GaussianDensity(Eigen::VectorXd mean, Eigen::MatrixXd covariance);

    Eigen::Index dim() const override { return mean_.size(); }
    double log_pdf(const Eigen::Ref<const Eigen::VectorXd>& x) const override;
    /// Closed form (4*pi)^(-d/2) det(Sigma)^(-1/2).
    double l2_norm_sq() const override;
    Eigen::VectorXd sample(Rng& rng) const override;
    std::unique_ptr<FeatureDensity> clone() const override {
        return std::make_unique<GaussianDensity>(*this);
    }

    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::MatrixXd& covariance() const { return cov_; }

private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
    Eigen::MatrixXd chol_lower_;
    double log_det_ = 0.0;
};

/// Piecewise-constant density on the real line: value values[i] on
/// [edges[i], edges[i+1]), zero outside. Must integrate to 1 (within 1e-9).
class PiecewiseConstantDensity final : public FeatureDensity {
public:
    PiecewiseConstantDensity(std::vector<double> edges, std::vector<double> values);

    Eigen::Index dim() const override { return 1; }
    double log_pdf(const Eigen::Ref<const Eigen::VectorXd>& x) const override;
    double l2_norm_sq() const override;
    Eigen::VectorXd sample(Rng& rng) const override;
    std::unique_ptr<FeatureDensity> clone() const override {
        return std::make_unique<PiecewiseConstantDensity>(*this);
    }

    /// The density after measuring coordinates in units scaled by s
    /// (edges multiply by s, values divide by s).
    PiecewiseConstantDensity rescaled(double s) const;

    const std::vector<double>& edges() const { return edges_; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> edges_;
    std::vector<double> values_;
    std::vector<double> cum_mass_; // cumulative bin masses for sampling
};

} // namespace rfskit
