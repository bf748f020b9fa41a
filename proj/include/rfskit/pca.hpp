#pragma once

#include <string>

#include <json.hpp>

#include "rfskit/pattern.hpp"

namespace rfskit {

/// Linear feature-space reduction fitted on the pooled features of a
/// dataset: center, then project onto the leading eigenvectors of the
/// pooled covariance. Each eigenvector's sign is fixed so its
/// largest-magnitude component is positive, making the fit reproducible.
struct PcaProjection {
    Eigen::VectorXd center;
    Eigen::MatrixXd components;  // target_dim x input_dim, rows orthonormal
    Eigen::VectorXd eigenvalues; // all input_dim eigenvalues, descending

    Eigen::Index input_dim() const { return components.cols(); }
    Eigen::Index target_dim() const { return components.rows(); }
    /// Share of pooled variance kept by the projection.
    double retained_variance() const;
};

/// Needs pooled feature count >= 2 and covariance rank >= target_dim.
PcaProjection fit_pca(const Dataset& data, int target_dim);

Eigen::VectorXd apply_pca(const PcaProjection& proj, const Eigen::VectorXd& x);
PointPattern apply_pca(const PcaProjection& proj, const PointPattern& p);
Dataset apply_pca(const PcaProjection& proj, const Dataset& data);

nlohmann::json pca_to_json(const PcaProjection& proj);
PcaProjection pca_from_json(const nlohmann::json& j);
PcaProjection read_pca_json(const std::string& path);
void write_pca_json(const PcaProjection& proj, const std::string& path);

} // namespace rfskit
