#include "rfskit/model_io.hpp"

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

Eigen::VectorXd vector_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw ValidationError(std::string("model: ") + what + " must be a non-empty array");
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const json& e = j[static_cast<size_t>(i)];
        if (!e.is_number()) throw ValidationError(std::string("model: ") + what + " entries must be numbers");
        v[i] = e.get<double>();
    }
    return v;
}

Eigen::MatrixXd matrix_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw ValidationError(std::string("model: ") + what + " must be a non-empty array of rows");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = j[0].is_array() ? static_cast<Eigen::Index>(j[0].size()) : 0;
    if (cols == 0) throw ValidationError(std::string("model: ") + what + " rows must be non-empty arrays");
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw ValidationError(std::string("model: ") + what + " rows have inconsistent widths");
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = row[static_cast<size_t>(k)].get<double>();
    }
    return m;
}

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

} // namespace

json model_to_json(const IidClusterModel& m) {
    json card;
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, PoissonCardinality>) {
                card = {{"type", "poisson"}, {"rate", c.rate()}};
            } else {
                card = {{"type", "categorical"}, {"probs", c.probs()}};
            }
        },
        m.cardinality());

    const auto* g = dynamic_cast<const GaussianDensity*>(&m.feature());
    if (!g) throw ValidationError("model: only gaussian feature densities have a file format");
    json cov = json::array();
    for (Eigen::Index i = 0; i < g->covariance().rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < g->covariance().cols(); ++j)
            row.push_back(g->covariance()(i, j));
        cov.push_back(std::move(row));
    }

    return {{"type", "iid_cluster"},
            {"unit", m.unit().hyper_volume_unit},
            {"cardinality", card},
            {"feature", {{"type", "gaussian"}, {"mean", vector_json(g->mean())}, {"cov", cov}}}};
}

IidClusterModel model_from_json(const json& j) {
    if (!j.is_object() || j.value("type", "") != std::string("iid_cluster"))
        throw ValidationError("model: expected an object with type 'iid_cluster'");
    if (!j.contains("unit") || !j["unit"].is_number())
        throw ValidationError("model: missing numeric 'unit'");
    UnitContext unit(j["unit"].get<double>());

    if (!j.contains("cardinality") || !j["cardinality"].is_object())
        throw ValidationError("model: missing 'cardinality' object");
    const json& cj = j["cardinality"];
    std::string ctype = cj.value("type", "");
    Cardinality card = [&]() -> Cardinality {
        if (ctype == "poisson") {
            if (!cj.contains("rate") || !cj["rate"].is_number())
                throw ValidationError("model: poisson cardinality needs a numeric 'rate'");
            return PoissonCardinality(cj["rate"].get<double>());
        }
        if (ctype == "categorical") {
            if (!cj.contains("probs") || !cj["probs"].is_array())
                throw ValidationError("model: categorical cardinality needs a 'probs' array");
            return CategoricalCardinality(cj["probs"].get<std::vector<double>>());
        }
        throw ValidationError("model: unknown cardinality type '" + ctype + "'");
    }();

    if (!j.contains("feature") || !j["feature"].is_object())
        throw ValidationError("model: missing 'feature' object");
    const json& fj = j["feature"];
    if (fj.value("type", "") != std::string("gaussian"))
        throw ValidationError("model: unknown feature type '" + fj.value("type", "") + "'");
    Eigen::VectorXd mean = vector_from_json(fj.at("mean"), "feature mean");
    Eigen::MatrixXd cov = matrix_from_json(fj.at("cov"), "feature cov");

    return IidClusterModel(std::move(card), std::make_shared<GaussianDensity>(mean, cov), unit);
}

IidClusterModel read_model_json(const std::string& path) {
    return model_from_json(parse_file(path));
}

void write_model_json(const IidClusterModel& m, const std::string& path) {
    write_text_file(path, model_to_json(m).dump(2) + "\n");
}

json detector_to_json(const NoveltyDetector& d, const ThresholdSpec& spec) {
    return {{"model", model_to_json(d.model())},
            {"scorer", to_string(d.scorer())},
            {"threshold", d.threshold()},
            {"threshold_spec", {{"q", spec.q}, {"Q", spec.Q}}}};
}

NoveltyDetector detector_from_json(const json& j, ThresholdSpec* spec_out) {
    if (!j.is_object() || !j.contains("model") || !j.contains("scorer") ||
        !j.contains("threshold"))
        throw ValidationError("detector: expected an object with model, scorer, and threshold");
    if (!j["threshold"].is_number()) throw ValidationError("detector: threshold must be a number");
    if (spec_out) {
        ThresholdSpec spec;
        if (j.contains("threshold_spec")) {
            spec.q = j["threshold_spec"].value("q", spec.q);
            spec.Q = j["threshold_spec"].value("Q", spec.Q);
        }
        *spec_out = spec;
    }
    return NoveltyDetector(model_from_json(j["model"]),
                           scorer_from_string(j["scorer"].get<std::string>()),
                           j["threshold"].get<double>());
}

NoveltyDetector read_detector_json(const std::string& path, ThresholdSpec* spec_out) {
    return detector_from_json(parse_file(path), spec_out);
}

void write_detector_json(const NoveltyDetector& d, const ThresholdSpec& spec,
                         const std::string& path) {
    write_text_file(path, detector_to_json(d, spec).dump(2) + "\n");
}

json fit_report_json(const FitReport& r) {
    return {{"bag_count", r.bag_count},
            {"feature_count", r.feature_count},
            {"ridge_applied", r.ridge_applied},
            {"log_likelihood", r.log_likelihood}};
}

} // namespace rfskit
