// Python surface of the library. Wraps the pattern type, the likelihood
// model, fitting, classification, novelty scoring, the scenario generators,
// and the JSONL interchange, with numpy arrays crossing the boundary.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <sstream>
#include <tuple>
#include <utility>
#include <vector>

#include "rfskit/dataset_io.hpp"
#include "rfskit/infer.hpp"
#include "rfskit/learn.hpp"
#include "rfskit/model_io.hpp"
#include "rfskit/models.hpp"
#include "rfskit/pattern.hpp"
#include "rfskit/sim.hpp"

namespace py = pybind11;
using namespace rfskit;

namespace {

using Item = std::tuple<PointPattern, std::optional<int>, std::string>;

std::vector<Item> dataset_to_items(const Dataset& d) {
    std::vector<Item> out;
    out.reserve(d.items.size());
    for (const auto& it : d.items) out.emplace_back(it.pattern, it.label, it.id);
    return out;
}

Dataset items_to_dataset(const std::vector<Item>& items) {
    std::vector<LabeledPattern> lp;
    lp.reserve(items.size());
    for (const auto& [pattern, label, id] : items) lp.push_back({pattern, label, id});
    return make_dataset(std::move(lp));
}

Dataset patterns_to_dataset(const std::vector<PointPattern>& patterns) {
    std::vector<LabeledPattern> lp;
    lp.reserve(patterns.size());
    for (std::size_t i = 0; i < patterns.size(); ++i)
        lp.push_back({patterns[i], std::nullopt, "b" + std::to_string(i)});
    return make_dataset(std::move(lp));
}

IidClusterModel make_poisson_model(double rate, Eigen::VectorXd mean, Eigen::MatrixXd cov,
                                   double unit) {
    return IidClusterModel(PoissonCardinality(rate),
                           std::make_shared<GaussianDensity>(std::move(mean), std::move(cov)),
                           UnitContext(unit));
}

IidClusterModel make_categorical_model(std::vector<double> probs, Eigen::VectorXd mean,
                                       Eigen::MatrixXd cov, double unit) {
    return IidClusterModel(CategoricalCardinality(std::move(probs)),
                           std::make_shared<GaussianDensity>(std::move(mean), std::move(cov)),
                           UnitContext(unit));
}

const GaussianDensity& as_gaussian(const IidClusterModel& m) {
    const auto* g = dynamic_cast<const GaussianDensity*>(&m.feature());
    if (!g) throw ValidationError("model feature density is not Gaussian");
    return *g;
}

FitConfig build_fit_config(const std::string& family, int categorical_max,
                           bool add_one_smoothing, std::optional<double> ridge, double unit) {
    FitConfig cfg;
    if (family == "poisson") {
        cfg.cardinality_family = FitConfig::Family::poisson;
    } else if (family == "categorical") {
        cfg.cardinality_family = FitConfig::Family::categorical;
    } else {
        throw ValidationError("unknown cardinality family '" + family +
                              "' (expected poisson or categorical)");
    }
    cfg.categorical_max = categorical_max;
    cfg.add_one_smoothing = add_one_smoothing;
    cfg.covariance_ridge = ridge;
    cfg.unit = UnitContext(unit);
    return cfg;
}

py::dict report_to_dict(const FitReport& r) {
    py::dict d;
    d["bag_count"] = r.bag_count;
    d["feature_count"] = r.feature_count;
    d["ridge_applied"] = r.ridge_applied;
    d["log_likelihood"] = r.log_likelihood;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Point-pattern likelihood models: set densities over variable-size "
              "observations, separable maximum-likelihood fitting, MAP classification, "
              "and threshold-based novelty detection.";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<PointPattern>(m, "Pattern",
                             "A finite multiset of d-dimensional feature vectors, stored as an "
                             "(m, d) array. Row order carries no meaning; the empty pattern is "
                             "a legal value.")
        .def(py::init<Eigen::MatrixXd>(), py::arg("points"))
        .def_static("empty", &PointPattern::empty, py::arg("dim"),
                    "Pattern with zero points in a d-dimensional space.")
        .def_property_readonly("points",
                               [](const PointPattern& p) -> Eigen::MatrixXd { return p.points(); })
        .def_property_readonly("cardinality",
                               [](const PointPattern& p) { return static_cast<long>(p.cardinality()); })
        .def_property_readonly("dim",
                               [](const PointPattern& p) { return static_cast<long>(p.dim()); })
        .def("rescaled",
             [](const PointPattern& p, double s) { return rescale_pattern(p, s); },
             py::arg("s"), "Every coordinate multiplied by s (a change of measurement unit).")
        .def("__len__", [](const PointPattern& p) { return static_cast<std::size_t>(p.cardinality()); })
        .def("__eq__",
             [](const PointPattern& a, const PointPattern& b) { return a == b; },
             py::is_operator())
        .def("__repr__", [](const PointPattern& p) {
            std::ostringstream os;
            os << "Pattern(cardinality=" << p.cardinality() << ", dim=" << p.dim() << ")";
            return os.str();
        });

    py::class_<IidClusterModel>(m, "Model",
                                "Likelihood model for point patterns: a cardinality distribution, "
                                "i.i.d. features from a common density, and the hyper-volume unit "
                                "that makes the set density unitless.")
        .def_static("poisson", &make_poisson_model, py::arg("rate"), py::arg("mean"),
                    py::arg("cov"), py::arg("unit") = 1.0,
                    "Poisson cardinality with Gaussian features.")
        .def_static("categorical", &make_categorical_model, py::arg("probs"), py::arg("mean"),
                    py::arg("cov"), py::arg("unit") = 1.0,
                    "Categorical cardinality over {0..K} with Gaussian features.")
        .def("log_density", &IidClusterModel::log_density, py::arg("pattern"),
             "log p_c(m) + log m! + m log U + sum_i log p_f(x_i); -inf on zero mass.")
        .def("ranking_score", &IidClusterModel::ranking_log_score, py::arg("pattern"),
             "Unit-free score log p_c(m) + sum_i [log p_f(x_i) - log ||p_f||^2]; its "
             "conditional expectation given cardinality m is exactly p_c(m).")
        .def("nb_score",
             [](const IidClusterModel& mod, const PointPattern& p) {
                 return nb_log_likelihood(mod.feature(), p);
             },
             py::arg("pattern"),
             "Sum of per-feature log densities only (cardinality-blind, unit-dependent).")
        .def("score",
             [](const IidClusterModel& mod, const std::string& scorer, const PointPattern& p) {
                 return score_pattern(mod, scorer_from_string(scorer), p);
             },
             py::arg("scorer"), py::arg("pattern"),
             "Score under a named rule: 'nb', 'rfs_density', or 'ranking'.")
        .def_property_readonly("unit",
                               [](const IidClusterModel& mod) { return mod.unit().hyper_volume_unit; })
        .def_property_readonly("feature_mean",
                               [](const IidClusterModel& mod) -> Eigen::VectorXd {
                                   return as_gaussian(mod).mean();
                               })
        .def_property_readonly("feature_cov",
                               [](const IidClusterModel& mod) -> Eigen::MatrixXd {
                                   return as_gaussian(mod).covariance();
                               })
        .def_property_readonly("cardinality",
                               [](const IidClusterModel& mod) {
                                   py::dict d;
                                   if (const auto* p = std::get_if<PoissonCardinality>(&mod.cardinality())) {
                                       d["type"] = "poisson";
                                       d["rate"] = p->rate();
                                   } else {
                                       const auto& c = std::get<CategoricalCardinality>(mod.cardinality());
                                       d["type"] = "categorical";
                                       d["probs"] = c.probs();
                                   }
                                   return d;
                               })
        .def("to_json",
             [](const IidClusterModel& mod) { return model_to_json(mod).dump(2); },
             "Serialize to the same JSON document the command-line tool reads and writes.")
        .def_static("from_json",
                    [](const std::string& text) {
                        return model_from_json(nlohmann::json::parse(text));
                    },
                    py::arg("text"))
        .def("__repr__", [](const IidClusterModel& mod) {
            std::ostringstream os;
            os << "Model(dim=" << mod.feature().dim() << ", unit=" << mod.unit().hyper_volume_unit
               << ")";
            return os.str();
        });

    m.def("fit",
          [](const std::vector<PointPattern>& patterns, const std::string& family,
             int categorical_max, bool add_one_smoothing, std::optional<double> ridge,
             double unit) {
              FitResult r = fit_iid_cluster(
                  patterns_to_dataset(patterns),
                  build_fit_config(family, categorical_max, add_one_smoothing, ridge, unit));
              return py::make_tuple(r.model, report_to_dict(r.report));
          },
          py::arg("patterns"), py::arg("family") = "poisson", py::arg("categorical_max") = 0,
          py::arg("add_one_smoothing") = false, py::arg("ridge") = std::nullopt,
          py::arg("unit") = 1.0,
          "Separable maximum likelihood over a list of patterns: the cardinality fit sees "
          "only the bag sizes, the feature fit only the pooled features. Returns "
          "(Model, report dict).");

    py::class_<BagClassifier>(m, "Classifier",
                              "MAP classification over per-class models; priors default to "
                              "uniform and ties break toward the smallest class index.")
        .def(py::init([](std::vector<IidClusterModel> models, const std::string& scorer,
                         std::vector<double> priors) {
                 return BagClassifier(std::move(models), scorer_from_string(scorer),
                                      std::move(priors));
             }),
             py::arg("models"), py::arg("scorer") = "rfs_density",
             py::arg("priors") = std::vector<double>{})
        .def("classify",
             [](const BagClassifier& c, const PointPattern& p) { return c.classify(p).label; },
             py::arg("pattern"), "The 1-based label of the most probable class.")
        .def("log_scores", &BagClassifier::log_scores, py::arg("pattern"),
             "Unnormalized log posterior (log prior + log score) per class.")
        .def_property_readonly("class_count", &BagClassifier::class_count);

    m.def("fit_threshold",
          [](std::vector<double> scores, int q, int Q) {
              return fit_threshold(std::move(scores), ThresholdSpec{q, Q});
          },
          py::arg("scores"), py::arg("q") = 2, py::arg("Q") = 10,
          "Nearest-rank lower quantile of the scores: sort ascending, take rank "
          "ceil(q*n/Q), 1-indexed.");

    py::class_<NoveltyDetector>(m, "Detector",
                                "A trained model, a scorer name, and a fitted threshold; "
                                "patterns scoring strictly below the threshold are anomalies.")
        .def(py::init([](IidClusterModel model, const std::string& scorer, double threshold) {
                 return NoveltyDetector(std::move(model), scorer_from_string(scorer), threshold);
             }),
             py::arg("model"), py::arg("scorer"), py::arg("threshold"))
        .def("judge",
             [](const NoveltyDetector& d, const PointPattern& p) {
                 NoveltyVerdict v = d.judge(p);
                 return py::make_tuple(v.score, v.anomaly);
             },
             py::arg("pattern"), "Returns (score, is_anomaly).")
        .def_property_readonly("threshold", &NoveltyDetector::threshold)
        .def_property_readonly("scorer",
                               [](const NoveltyDetector& d) { return to_string(d.scorer()); })
        .def_property_readonly("model", &NoveltyDetector::model);

    m.def("simulate",
          [](const std::string& scenario, std::uint64_t seed, std::optional<long> train_per_class,
             std::optional<long> test_per_class, std::optional<long> train_count,
             std::optional<long> test_normal, std::optional<long> test_low,
             std::optional<long> test_high, std::optional<long> test_feature) {
              ScenarioSpec spec = ScenarioSpec::make(scenario, seed);
              if (train_per_class) spec.classification3.train_per_class = *train_per_class;
              if (test_per_class) spec.classification3.test_per_class = *test_per_class;
              if (train_count) spec.novelty1.train_count = *train_count;
              if (test_normal) spec.novelty1.test_normal = *test_normal;
              if (test_low) spec.novelty1.test_low = *test_low;
              if (test_high) spec.novelty1.test_high = *test_high;
              if (test_feature) spec.novelty1.test_feature = *test_feature;
              ScenarioData data = generate_scenario(spec);
              py::dict out;
              out["train"] = dataset_to_items(data.train);
              out["test"] = dataset_to_items(data.test);
              out["metadata"] = scenario_metadata(spec).dump(2);
              return out;
          },
          py::arg("scenario"), py::arg("seed"), py::kw_only(),
          py::arg("train_per_class") = std::nullopt, py::arg("test_per_class") = std::nullopt,
          py::arg("train_count") = std::nullopt, py::arg("test_normal") = std::nullopt,
          py::arg("test_low") = std::nullopt, py::arg("test_high") = std::nullopt,
          py::arg("test_feature") = std::nullopt,
          "Draw a named benchmark scenario ('classification3' or 'novelty1') with a fixed "
          "seed. Returns {'train': [(Pattern, label, id)], 'test': [...], 'metadata': str}; "
          "labels are None on unlabeled items. Test draws come from substreams distinct "
          "from the training ones, so changing test counts never perturbs the train set.");

    m.def("load_jsonl",
          [](const std::string& path) { return dataset_to_items(read_dataset_jsonl(path)); },
          py::arg("path"),
          "Read a JSONL dataset ({'id','label','points'} per line) as a list of "
          "(Pattern, label, id) tuples.");

    m.def("save_jsonl",
          [](const std::vector<Item>& items, const std::string& path) {
              write_dataset_jsonl(items_to_dataset(items), path);
          },
          py::arg("items"), py::arg("path"),
          "Write (Pattern, label, id) tuples as a JSONL dataset; numbers survive a round "
          "trip exactly.");
}
