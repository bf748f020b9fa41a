#include "rfskit/pattern.hpp"

#include <algorithm>

namespace rfskit {

PointPattern::PointPattern(std::initializer_list<std::initializer_list<double>> rows) {
    const auto m = static_cast<Eigen::Index>(rows.size());
    if (m == 0) {
        points_.resize(0, 0);
        return;
    }
    const auto d = static_cast<Eigen::Index>(rows.begin()->size());
    points_.resize(m, d);
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        if (static_cast<Eigen::Index>(row.size()) != d)
            throw ValidationError("point pattern rows must share one dimension");
        Eigen::Index j = 0;
        for (double v : row) points_(i, j++) = v;
        ++i;
    }
}

PointPattern rescale_pattern(const PointPattern& p, double s) {
    if (!(s > 0.0)) throw ValidationError("rescale factor must be > 0");
    return PointPattern(p.points() * s);
}

void Dataset::validate() const {
    for (const auto& item : items) {
        if (item.pattern.cardinality() > 0 && item.pattern.dim() != dim)
            throw ValidationError("dataset patterns must share dimension " + std::to_string(dim));
        if (item.label) {
            if (*item.label < 1 || *item.label > class_count)
                throw ValidationError("label " + std::to_string(*item.label) +
                                      " outside declared class range 1.." + std::to_string(class_count));
        }
    }
}

Dataset make_dataset(std::vector<LabeledPattern> items) {
    Dataset ds;
    ds.items = std::move(items);
    for (const auto& item : ds.items) {
        if (item.pattern.cardinality() > 0) {
            ds.dim = item.pattern.dim();
            break;
        }
    }
    for (const auto& item : ds.items)
        if (item.label) ds.class_count = std::max(ds.class_count, *item.label);
    ds.validate();
    return ds;
}

} // namespace rfskit
