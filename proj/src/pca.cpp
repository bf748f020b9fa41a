#include "rfskit/pca.hpp"

#include <fstream>

#include "rfskit/dataset_io.hpp"
#include "rfskit/errors.hpp"

namespace rfskit {

namespace {

using nlohmann::json;

json vector_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = j[static_cast<size_t>(i)].get<double>();
    return v;
}

} // namespace

double PcaProjection::retained_variance() const {
    double total = eigenvalues.sum();
    if (total <= 0.0) return 0.0;
    return eigenvalues.head(target_dim()).sum() / total;
}

PcaProjection fit_pca(const Dataset& data, int target_dim) {
    const Eigen::Index d = data.dim;
    if (target_dim < 1) throw ValidationError("pca: target dimension must be at least 1");
    if (target_dim > d)
        throw ValidationError("pca: target dimension exceeds feature dimension");

    long m_total = 0;
    for (const auto& item : data.items) m_total += item.pattern.cardinality();
    if (m_total < 2) throw ValidationError("pca: need at least two pooled features");

    Eigen::VectorXd center = Eigen::VectorXd::Zero(d);
    for (const auto& item : data.items)
        for (Eigen::Index i = 0; i < item.pattern.cardinality(); ++i)
            center += item.pattern.points().row(i).transpose();
    center /= static_cast<double>(m_total);

    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
    for (const auto& item : data.items)
        for (Eigen::Index i = 0; i < item.pattern.cardinality(); ++i) {
            Eigen::VectorXd c = item.pattern.points().row(i).transpose() - center;
            cov.noalias() += c * c.transpose();
        }
    cov /= static_cast<double>(m_total);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw NumericError("pca: eigendecomposition failed");

    // Solver order is ascending; flip to descending.
    Eigen::VectorXd eigenvalues = solver.eigenvalues().reverse();
    Eigen::MatrixXd vectors(target_dim, d);
    for (int r = 0; r < target_dim; ++r)
        vectors.row(r) = solver.eigenvectors().col(d - 1 - r).transpose();

    double rank_tol = 1e-12 * std::max(1.0, eigenvalues.size() > 0 ? eigenvalues[0] : 0.0);
    long rank = 0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
        if (eigenvalues[i] > rank_tol) ++rank;
    if (rank < target_dim)
        throw NumericError("pca: pooled covariance rank " + std::to_string(rank) +
                           " is below the requested dimension " + std::to_string(target_dim));

    for (int r = 0; r < target_dim; ++r) {
        Eigen::Index imax = 0;
        vectors.row(r).cwiseAbs().maxCoeff(&imax);
        if (vectors(r, imax) < 0.0) vectors.row(r) = -vectors.row(r);
    }

    return {std::move(center), std::move(vectors), std::move(eigenvalues)};
}

Eigen::VectorXd apply_pca(const PcaProjection& proj, const Eigen::VectorXd& x) {
    if (x.size() != proj.input_dim())
        throw ValidationError("pca: point dimension does not match the projection");
    return proj.components * (x - proj.center);
}

PointPattern apply_pca(const PcaProjection& proj, const PointPattern& p) {
    if (p.cardinality() == 0) return PointPattern::empty(proj.target_dim());
    if (p.dim() != proj.input_dim())
        throw ValidationError("pca: pattern dimension does not match the projection");
    Eigen::MatrixXd out =
        (p.points().rowwise() - proj.center.transpose()) * proj.components.transpose();
    return PointPattern(std::move(out));
}

Dataset apply_pca(const PcaProjection& proj, const Dataset& data) {
    std::vector<LabeledPattern> items;
    items.reserve(data.items.size());
    for (const auto& item : data.items)
        items.push_back({apply_pca(proj, item.pattern), item.label, item.id});
    return make_dataset(std::move(items));
}

json pca_to_json(const PcaProjection& proj) {
    json comps = json::array();
    for (Eigen::Index r = 0; r < proj.components.rows(); ++r)
        comps.push_back(vector_json(proj.components.row(r).transpose()));
    return {{"type", "pca_projection"},
            {"center", vector_json(proj.center)},
            {"components", comps},
            {"eigenvalues", vector_json(proj.eigenvalues)}};
}

PcaProjection pca_from_json(const json& j) {
    if (!j.is_object() || j.value("type", "") != std::string("pca_projection"))
        throw ValidationError("pca: expected an object with type 'pca_projection'");
    for (const char* key : {"center", "components", "eigenvalues"})
        if (!j.contains(key) || !j[key].is_array())
            throw ValidationError(std::string("pca: missing array '") + key + "'");

    PcaProjection proj;
    proj.center = vector_from_json(j["center"]);
    proj.eigenvalues = vector_from_json(j["eigenvalues"]);
    const json& comps = j["components"];
    if (comps.empty()) throw ValidationError("pca: components must be non-empty");
    proj.components = Eigen::MatrixXd(static_cast<Eigen::Index>(comps.size()), proj.center.size());
    for (Eigen::Index r = 0; r < proj.components.rows(); ++r) {
        Eigen::VectorXd row = vector_from_json(comps[static_cast<size_t>(r)]);
        if (row.size() != proj.center.size())
            throw ValidationError("pca: component width does not match center");
        proj.components.row(r) = row.transpose();
    }
    return proj;
}

PcaProjection read_pca_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    try {
        return pca_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_pca_json(const PcaProjection& proj, const std::string& path) {
    write_text_file(path, pca_to_json(proj).dump(2) + "\n");
}

} // namespace rfskit
