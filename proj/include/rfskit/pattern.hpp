#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "rfskit/errors.hpp"

namespace rfskit {

/// One observation: a finite multi-set of d-dimensional feature vectors.
/// Stored row-major as an m x d matrix; the row order is a storage artifact,
/// all operations on patterns are permutation-invariant. Duplicates are
/// legal and the empty pattern is a first-class value.
class PointPattern {
public:
    PointPattern() : points_(0, 0) {}
    explicit PointPattern(Eigen::MatrixXd points) : points_(std::move(points)) {}
    PointPattern(std::initializer_list<std::initializer_list<double>> rows);

    static PointPattern empty(Eigen::Index dim) { return PointPattern(Eigen::MatrixXd(0, dim)); }

    Eigen::Index cardinality() const { return points_.rows(); }
    Eigen::Index dim() const { return points_.cols(); }
    const Eigen::MatrixXd& points() const { return points_; }
    Eigen::RowVectorXd point(Eigen::Index i) const { return points_.row(i); }

    /// Multiset equality of the stored rows; all empty patterns are equal
    /// (the dimension of an empty pattern is a construction artifact).
    bool operator==(const PointPattern& other) const {
        if (points_.rows() != other.points_.rows()) return false;
        if (points_.rows() == 0) return true;
        return points_.cols() == other.points_.cols() && points_ == other.points_;
    }

private:
    Eigen::MatrixXd points_;
};

/// Multiply every coordinate by s (a change of measurement unit). s > 0.
PointPattern rescale_pattern(const PointPattern& p, double s);

struct LabeledPattern {
    PointPattern pattern;
    std::optional<int> label; // in {1..C} when present
    std::string id;           // interchange identifier; generated when absent
};

/// Labeled (or unlabeled) collection of patterns of a common dimension.
struct Dataset {
    std::vector<LabeledPattern> items;
    Eigen::Index dim = 0;
    int class_count = 0; // 0 when unlabeled

    std::size_t size() const { return items.size(); }
    void validate() const;
};

Dataset make_dataset(std::vector<LabeledPattern> items);

/// Hyper-volume of one unit cell of the feature space, in working units.
struct UnitContext {
    double hyper_volume_unit = 1.0;

    UnitContext() = default;
    explicit UnitContext(double u) : hyper_volume_unit(u) {
        if (!(u > 0.0)) throw ValidationError("hyper-volume unit must be > 0");
    }
};

} // namespace rfskit
