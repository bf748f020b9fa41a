// Command-line runner for point-pattern experiments: simulate, preprocess,
// fit, classify, detect, evaluate. Every command is a pure function of its
// inputs and flags; randomized commands take an explicit --seed. Exit codes:
// 0 ok, 2 usage, 3 invalid data, 4 numeric failure.

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rfskit/dataset_io.hpp"
#include "rfskit/errors.hpp"
#include "rfskit/infer.hpp"
#include "rfskit/learn.hpp"
#include "rfskit/metrics.hpp"
#include "rfskit/model_io.hpp"
#include "rfskit/pca.hpp"
#include "rfskit/sim.hpp"

namespace {

using nlohmann::json;
using namespace rfskit;

// ---- config file preprocessing ---------------------------------------------
// A JSON object {"flag-name": value, ...} may supply any flag; flags given on
// the command line win. Arrays expand to repeated flags, booleans to bare
// flags (true) or nothing (false).

bool has_flag(const std::vector<std::string>& tokens, const std::string& flag) {
    for (const auto& t : tokens)
        if (t == flag || t.rfind(flag + "=", 0) == 0) return true;
    return false;
}

std::vector<std::string> apply_config(std::vector<std::string> tokens) {
    std::string config_path;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] == "--config") {
            if (i + 1 >= tokens.size()) throw ValidationError("--config needs a file path");
            config_path = tokens[i + 1];
            tokens.erase(tokens.begin() + static_cast<long>(i), tokens.begin() + static_cast<long>(i) + 2);
            break;
        }
        if (tokens[i].rfind("--config=", 0) == 0) {
            config_path = tokens[i].substr(9);
            tokens.erase(tokens.begin() + static_cast<long>(i));
            break;
        }
    }
    if (config_path.empty()) return tokens;

    json cfg;
    try {
        cfg = json::parse(read_text_file(config_path));
    } catch (const json::parse_error& e) {
        throw ValidationError(config_path + ": " + e.what());
    }
    if (!cfg.is_object()) throw ValidationError(config_path + ": config must be a JSON object");

    auto value_token = [](const json& v) -> std::string {
        return v.is_string() ? v.get<std::string>() : v.dump();
    };
    for (const auto& [key, value] : cfg.items()) {
        std::string flag = "--" + key;
        if (has_flag(tokens, flag)) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) tokens.push_back(flag);
        } else if (value.is_array()) {
            for (const auto& v : value) {
                tokens.push_back(flag);
                tokens.push_back(value_token(v));
            }
        } else {
            tokens.push_back(flag);
            tokens.push_back(value_token(value));
        }
    }
    return tokens;
}

// ---- shared helpers ---------------------------------------------------------

Dataset filter_label(const Dataset& data, int label) {
    std::vector<LabeledPattern> items;
    for (const auto& item : data.items)
        if (item.label && *item.label == label) items.push_back(item);
    if (items.empty())
        throw ValidationError("no items with label " + std::to_string(label));
    return make_dataset(std::move(items));
}

FitConfig make_fit_config(const std::string& family, int categorical_max, bool add_one,
                          std::optional<double> ridge, double unit) {
    FitConfig cfg;
    cfg.cardinality_family =
        family == "categorical" ? FitConfig::Family::categorical : FitConfig::Family::poisson;
    cfg.categorical_max = categorical_max;
    cfg.add_one_smoothing = add_one;
    cfg.covariance_ridge = ridge;
    cfg.unit = UnitContext(unit);
    return cfg;
}

struct VerdictRecord {
    std::string id;
    double score = 0.0;
    bool anomaly = false;
};

std::vector<VerdictRecord> read_verdicts(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::vector<VerdictRecord> out;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ValidationError(path + " line " + std::to_string(line_no) + ": " + e.what());
        }
        std::string verdict = obj.value("verdict", "");
        if (verdict != "normal" && verdict != "anomaly")
            throw ValidationError(path + " line " + std::to_string(line_no) +
                                  ": verdict must be 'normal' or 'anomaly'");
        out.push_back({obj.value("id", ""), obj.value("score", 0.0), verdict == "anomaly"});
    }
    if (out.empty()) throw ValidationError(path + ": no verdicts");
    return out;
}

std::map<std::string, int> truth_labels(const Dataset& data, const std::string& path) {
    std::map<std::string, int> labels;
    for (const auto& item : data.items) {
        if (!item.label)
            throw ValidationError(path + ": item '" + item.id + "' has no label");
        if (!labels.emplace(item.id, *item.label).second)
            throw ValidationError(path + ": duplicate id '" + item.id + "'");
    }
    return labels;
}

// Truth convention for detection metrics: label 1 is normal, anything else
// is an anomaly.
std::vector<bool> verdicts_vs_truth(const std::vector<VerdictRecord>& verdicts,
                                    const std::map<std::string, int>& labels,
                                    std::vector<bool>* truth_out) {
    if (verdicts.size() != labels.size())
        throw ValidationError("verdict and truth counts differ (" +
                              std::to_string(verdicts.size()) + " vs " +
                              std::to_string(labels.size()) + ")");
    std::vector<bool> preds, truth;
    for (const auto& v : verdicts) {
        auto it = labels.find(v.id);
        if (it == labels.end())
            throw ValidationError("verdict id '" + v.id + "' not present in truth");
        preds.push_back(v.anomaly);
        truth.push_back(it->second != 1);
    }
    *truth_out = std::move(truth);
    return preds;
}

bool all_labeled(const Dataset& data) {
    return std::all_of(data.items.begin(), data.items.end(),
                       [](const LabeledPattern& i) { return i.label.has_value(); });
}

std::string format_json_line(const json& j) { return j.dump() + "\n"; }

// ---- command implementations ------------------------------------------------

struct SimulateArgs {
    std::string scenario, out_train, out_test, out_meta;
    std::uint64_t seed = 0;
    long c3_train = 300, c3_test = 500;
    long n1_train = 500, n1_normal = 200, n1_low = 100, n1_high = 100, n1_feature = 100;
};

int run_simulate(const SimulateArgs& a) {
    ScenarioSpec spec = ScenarioSpec::make(a.scenario, a.seed);
    spec.classification3.train_per_class = a.c3_train;
    spec.classification3.test_per_class = a.c3_test;
    spec.novelty1.train_count = a.n1_train;
    spec.novelty1.test_normal = a.n1_normal;
    spec.novelty1.test_low = a.n1_low;
    spec.novelty1.test_high = a.n1_high;
    spec.novelty1.test_feature = a.n1_feature;

    ScenarioData data = generate_scenario(spec);
    write_dataset_jsonl(data.train, a.out_train);
    write_dataset_jsonl(data.test, a.out_test);
    std::string meta = a.out_meta.empty() ? a.out_train + ".meta.json" : a.out_meta;
    write_text_file(meta, scenario_metadata(spec).dump(2) + "\n");
    std::cout << "wrote " << a.out_train << " (" << data.train.size() << " bags), " << a.out_test
              << " (" << data.test.size() << " bags), " << meta << "\n";
    return 0;
}

struct FitArgs {
    std::string train, family = "poisson", out_model, out_report;
    std::optional<int> label;
    int categorical_max = 0;
    bool add_one = false;
    std::optional<double> ridge;
    double unit = 1.0;
};

int run_fit(const FitArgs& a) {
    Dataset data = read_dataset_jsonl(a.train);
    if (a.label) data = filter_label(data, *a.label);
    FitConfig cfg = make_fit_config(a.family, a.categorical_max, a.add_one, a.ridge, a.unit);
    FitResult result = fit_iid_cluster(data, cfg);
    write_model_json(result.model, a.out_model);
    if (!a.out_report.empty())
        write_text_file(a.out_report, fit_report_json(result.report).dump(2) + "\n");
    std::cout << "fit " << a.family << " model on " << result.report.bag_count << " bags ("
              << result.report.feature_count << " features); log-likelihood "
              << result.report.log_likelihood << "; wrote " << a.out_model << "\n";
    return 0;
}

struct ClassifyArgs {
    std::vector<std::string> models;
    std::vector<double> priors;
    std::string scorer = "rfs_density", test, out, out_report;
};

int run_classify(const ClassifyArgs& a) {
    std::vector<IidClusterModel> models;
    for (const auto& path : a.models) models.push_back(read_model_json(path));
    BagClassifier classifier(std::move(models), scorer_from_string(a.scorer), a.priors);

    Dataset test = read_dataset_jsonl(a.test);
    std::ostringstream lines;
    std::vector<int> preds, truth;
    bool labeled = all_labeled(test);
    for (const auto& item : test.items) {
        ClassDecision d = classifier.classify(item.pattern);
        preds.push_back(d.label);
        if (labeled) truth.push_back(*item.label);
        json obj = {{"id", item.id}, {"predicted", d.label}, {"log_posterior", d.log_posterior}};
        if (d.all_impossible) obj["all_impossible"] = true;
        lines << format_json_line(obj);
    }
    write_text_file(a.out, lines.str());

    json report = {{"items", test.size()}, {"classes", classifier.class_count()},
                   {"scorer", a.scorer}};
    std::cout << "classified " << test.size() << " bags";
    if (labeled) {
        double acc = accuracy(preds, truth);
        report["accuracy"] = acc;
        std::cout << "; accuracy " << acc;
    }
    std::cout << "; wrote " << a.out << "\n";
    if (!a.out_report.empty()) write_text_file(a.out_report, report.dump(2) + "\n");
    return 0;
}

struct DetectArgs {
    std::string detector, model, train, test, family = "poisson";
    std::string scorer = "ranking", out, out_detector, out_report, out_boxplot;
    int q = 2, Q = 10;
    bool add_one = false;
    std::optional<double> ridge;
    double unit = 1.0;
};

int run_detect(const DetectArgs& a) {
    ThresholdSpec tspec{a.q, a.Q};
    std::optional<NoveltyDetector> detector;
    if (!a.detector.empty()) {
        detector = read_detector_json(a.detector, &tspec);
    } else {
        if (a.train.empty())
            throw ValidationError("detect needs --train (or a prefit --detector)");
        Dataset train = read_dataset_jsonl(a.train);
        IidClusterModel model =
            a.model.empty()
                ? fit_iid_cluster(train, make_fit_config(a.family, 0, a.add_one, a.ridge, a.unit))
                      .model
                : read_model_json(a.model);
        Scorer scorer = scorer_from_string(a.scorer);
        std::vector<double> train_scores;
        train_scores.reserve(train.size());
        for (const auto& item : train.items)
            train_scores.push_back(score_pattern(model, scorer, item.pattern));
        double threshold = fit_threshold(std::move(train_scores), tspec);
        detector.emplace(std::move(model), scorer, threshold);
    }
    if (!a.out_detector.empty()) write_detector_json(*detector, tspec, a.out_detector);

    Dataset test = read_dataset_jsonl(a.test);
    std::ostringstream lines;
    std::vector<VerdictRecord> verdicts;
    for (const auto& item : test.items) {
        NoveltyVerdict v = detector->judge(item.pattern);
        verdicts.push_back({item.id, v.score, v.anomaly});
        lines << format_json_line({{"id", item.id},
                                   {"score", v.score},
                                   {"verdict", v.anomaly ? "anomaly" : "normal"}});
    }
    write_text_file(a.out, lines.str());

    long flagged = std::count_if(verdicts.begin(), verdicts.end(),
                                 [](const VerdictRecord& v) { return v.anomaly; });
    json report = {{"items", test.size()},
                   {"scorer", to_string(detector->scorer())},
                   {"threshold", detector->threshold()},
                   {"threshold_spec", {{"q", tspec.q}, {"Q", tspec.Q}}},
                   {"flagged", flagged}};
    std::cout << "scored " << test.size() << " bags; threshold " << detector->threshold() << " ("
              << tspec.q << "/" << tspec.Q << " quantile); flagged " << flagged;

    if (all_labeled(test)) {
        std::map<std::string, int> labels = truth_labels(test, a.test);
        std::vector<bool> truth;
        std::vector<bool> preds = verdicts_vs_truth(verdicts, labels, &truth);
        F1Result f1 = f1_score(preds, truth);
        report["precision"] = f1.precision;
        report["recall"] = f1.recall;
        report["f1"] = f1.f1;
        std::cout << "; precision " << f1.precision << " recall " << f1.recall << " f1 " << f1.f1;

        if (!a.out_boxplot.empty()) {
            std::map<int, std::vector<double>> by_label;
            for (const auto& v : verdicts) by_label[labels.at(v.id)].push_back(v.score);
            std::vector<std::pair<std::string, FiveNumber>> groups;
            for (auto& [label, scores] : by_label)
                groups.emplace_back("label_" + std::to_string(label),
                                    score_summary(std::move(scores)));
            write_text_file(a.out_boxplot, boxplot_csv(groups, detector->threshold()));
        }
    } else if (!a.out_boxplot.empty()) {
        throw ValidationError("boxplot output needs a labeled test set");
    }
    std::cout << "; wrote " << a.out << "\n";
    if (!a.out_report.empty()) write_text_file(a.out_report, report.dump(2) + "\n");
    return 0;
}

struct PcaArgs {
    std::string input, projection, out, out_projection;
    int target_dim = 0;
};

int run_pca(const PcaArgs& a) {
    Dataset data = read_dataset_jsonl(a.input);
    PcaProjection proj;
    if (!a.projection.empty()) {
        proj = read_pca_json(a.projection);
    } else {
        proj = fit_pca(data, a.target_dim);
        if (!a.out_projection.empty()) write_pca_json(proj, a.out_projection);
    }
    Dataset projected = apply_pca(proj, data);
    write_dataset_jsonl(projected, a.out);
    std::cout << "projected " << data.size() << " bags from " << proj.input_dim() << " to "
              << proj.target_dim() << " dims; retained variance " << proj.retained_variance()
              << "; wrote " << a.out << "\n";
    return 0;
}

struct EvalCommonArgs {
    std::string preds, verdicts, truth, data, out, out_csv;
    int k = 4;
    std::uint64_t seed = 0;
    std::string family = "poisson", scorer = "rfs_density";
    double unit = 1.0;
    std::optional<double> threshold;
};

int run_eval_accuracy(const EvalCommonArgs& a) {
    Dataset truth_data = read_dataset_jsonl(a.truth);
    std::map<std::string, int> labels = truth_labels(truth_data, a.truth);

    std::istringstream in(read_text_file(a.preds));
    std::vector<int> preds, truth;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ValidationError(a.preds + " line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!obj.contains("predicted") || !obj["predicted"].is_number_integer())
            throw ValidationError(a.preds + " line " + std::to_string(line_no) +
                                  ": missing integer 'predicted'");
        auto it = labels.find(obj.value("id", ""));
        if (it == labels.end())
            throw ValidationError(a.preds + " line " + std::to_string(line_no) +
                                  ": id not present in truth");
        preds.push_back(obj["predicted"].get<int>());
        truth.push_back(it->second);
    }
    if (preds.size() != labels.size())
        throw ValidationError("prediction and truth counts differ");

    double acc = accuracy(preds, truth);
    std::cout << "accuracy " << acc << " (" << preds.size() << " items)\n";
    if (!a.out.empty())
        write_text_file(a.out, json{{"accuracy", acc}, {"items", preds.size()}}.dump(2) + "\n");
    return 0;
}

int run_eval_f1(const EvalCommonArgs& a) {
    Dataset truth_data = read_dataset_jsonl(a.truth);
    std::map<std::string, int> labels = truth_labels(truth_data, a.truth);
    std::vector<VerdictRecord> verdicts = read_verdicts(a.verdicts);
    std::vector<bool> truth;
    std::vector<bool> preds = verdicts_vs_truth(verdicts, labels, &truth);
    F1Result r = f1_score(preds, truth);
    std::cout << "precision " << r.precision << " recall " << r.recall << " f1 " << r.f1 << " (tp "
              << r.tp << ", fp " << r.fp << ", fn " << r.fn << ", tn " << r.tn << ")\n";
    if (!a.out.empty())
        write_text_file(a.out, json{{"precision", r.precision},
                                    {"recall", r.recall},
                                    {"f1", r.f1},
                                    {"tp", r.tp},
                                    {"fp", r.fp},
                                    {"fn", r.fn},
                                    {"tn", r.tn}}
                                       .dump(2) +
                                   "\n");
    return 0;
}

int run_eval_kfold(const EvalCommonArgs& a) {
    Dataset data = read_dataset_jsonl(a.data);
    if (!all_labeled(data) || data.class_count < 2)
        throw ValidationError("k-fold evaluation needs labeled data with at least two classes");
    FitConfig cfg = make_fit_config(a.family, 0, false, std::nullopt, a.unit);
    Scorer scorer = scorer_from_string(a.scorer);

    std::vector<double> fold_accuracies;
    for (const FoldSplit& fold : kfold(data, a.k, a.seed)) {
        std::vector<IidClusterModel> models;
        for (int label = 1; label <= data.class_count; ++label) {
            std::vector<LabeledPattern> items;
            for (size_t i : fold.train_indices)
                if (data.items[i].label == label) items.push_back(data.items[i]);
            if (items.empty())
                throw ValidationError("fold leaves class " + std::to_string(label) +
                                      " without training items");
            models.push_back(fit_iid_cluster(make_dataset(std::move(items)), cfg).model);
        }
        BagClassifier classifier(std::move(models), scorer);
        std::vector<int> preds, truth;
        for (size_t i : fold.test_indices) {
            preds.push_back(classifier.classify(data.items[i].pattern).label);
            truth.push_back(*data.items[i].label);
        }
        fold_accuracies.push_back(accuracy(preds, truth));
    }

    TrialStats stats = trial_stats(fold_accuracies);
    std::cout << a.k << "-fold accuracy mean " << stats.mean << " stddev " << stats.stddev << "\n";
    if (!a.out.empty())
        write_text_file(a.out, json{{"k", a.k},
                                    {"scorer", a.scorer},
                                    {"fold_accuracies", fold_accuracies},
                                    {"mean_accuracy", stats.mean},
                                    {"stddev_accuracy", stats.stddev}}
                                       .dump(2) +
                                   "\n");
    if (!a.out_csv.empty()) {
        std::vector<std::vector<double>> rows;
        for (double v : fold_accuracies) rows.push_back({v});
        write_text_file(a.out_csv, trials_csv({"accuracy"}, rows));
    }
    return 0;
}

int run_eval_summary(const EvalCommonArgs& a) {
    Dataset truth_data = read_dataset_jsonl(a.truth);
    std::map<std::string, int> labels = truth_labels(truth_data, a.truth);
    std::vector<VerdictRecord> verdicts = read_verdicts(a.verdicts);

    std::map<int, std::vector<double>> by_label;
    for (const auto& v : verdicts) {
        auto it = labels.find(v.id);
        if (it == labels.end())
            throw ValidationError("verdict id '" + v.id + "' not present in truth");
        by_label[it->second].push_back(v.score);
    }
    std::vector<std::pair<std::string, FiveNumber>> groups;
    for (auto& [label, scores] : by_label)
        groups.emplace_back("label_" + std::to_string(label), score_summary(std::move(scores)));
    write_text_file(a.out, boxplot_csv(groups, a.threshold));
    std::cout << "wrote score summary for " << groups.size() << " groups to " << a.out << "\n";
    return 0;
}

int run(std::vector<std::string> tokens) {
    CLI::App app{"Point-pattern likelihood toolkit: simulation, fitting, classification,"
                 " novelty detection, and evaluation over JSON-Lines bag datasets."};
    app.require_subcommand(1);
    app.fallthrough();

    SimulateArgs sim_args;
    CLI::App* sim = app.add_subcommand("simulate", "Generate a benchmark scenario dataset");
    sim->add_option("--scenario", sim_args.scenario, "Scenario name")
        ->required()
        ->check(CLI::IsMember({"classification3", "novelty1"}));
    sim->add_option("--seed", sim_args.seed, "RNG seed (required: runs are reproducible)")
        ->required();
    sim->add_option("--out-train", sim_args.out_train, "Training dataset path")->required();
    sim->add_option("--out-test", sim_args.out_test, "Test dataset path")->required();
    sim->add_option("--out-meta", sim_args.out_meta,
                    "Metadata sidecar path (default: <out-train>.meta.json)");
    sim->add_option("--train-per-class", sim_args.c3_train, "classification3 train bags per class");
    sim->add_option("--test-per-class", sim_args.c3_test, "classification3 test bags per class");
    sim->add_option("--train-count", sim_args.n1_train, "novelty1 training bags");
    sim->add_option("--test-normal", sim_args.n1_normal, "novelty1 normal test bags");
    sim->add_option("--test-low", sim_args.n1_low, "novelty1 low-cardinality anomalies");
    sim->add_option("--test-high", sim_args.n1_high, "novelty1 high-cardinality anomalies");
    sim->add_option("--test-feature", sim_args.n1_feature, "novelty1 feature anomalies");

    PcaArgs pca_args;
    CLI::App* pca = app.add_subcommand("pca", "Fit or apply a linear feature projection");
    pca->add_option("--input", pca_args.input, "Input dataset")->required();
    pca->add_option("--target-dim", pca_args.target_dim, "Output dimension (fit mode)");
    pca->add_option("--projection", pca_args.projection, "Apply this saved projection instead");
    pca->add_option("--out", pca_args.out, "Projected dataset path")->required();
    pca->add_option("--out-projection", pca_args.out_projection, "Where to save the fitted projection");

    FitArgs fit_args;
    CLI::App* fit = app.add_subcommand("fit", "Fit a point-pattern model by maximum likelihood");
    fit->add_option("--train", fit_args.train, "Training dataset")->required();
    fit->add_option("--label", fit_args.label, "Fit only on items with this label");
    fit->add_option("--family", fit_args.family, "Cardinality family")
        ->check(CLI::IsMember({"poisson", "categorical"}));
    fit->add_option("--categorical-max", fit_args.categorical_max,
                    "Categorical support bound (0 = from data)");
    fit->add_flag("--add-one-smoothing", fit_args.add_one, "Add-one smoothing (categorical)");
    fit->add_option("--ridge", fit_args.ridge, "Covariance diagonal ridge (default: relative 1e-9)");
    fit->add_option("--unit", fit_args.unit, "Hyper-volume of one unit cell of feature space");
    fit->add_option("--out-model", fit_args.out_model, "Model output path")->required();
    fit->add_option("--out-report", fit_args.out_report, "Fit report output path");

    ClassifyArgs cls_args;
    CLI::App* cls = app.add_subcommand("classify", "Classify bags with per-class fitted models");
    cls->add_option("--model", cls_args.models, "Model file (repeat per class, in label order)")
        ->required()
        ->expected(-2);
    cls->add_option("--priors", cls_args.priors, "Class priors (default uniform)");
    cls->add_option("--scorer", cls_args.scorer, "Score used for comparison")
        ->check(CLI::IsMember({"nb", "rfs_density", "ranking"}));
    cls->add_option("--test", cls_args.test, "Dataset to classify")->required();
    cls->add_option("--out", cls_args.out, "Predictions output path")->required();
    cls->add_option("--out-report", cls_args.out_report, "Metrics report output path");

    DetectArgs det_args;
    CLI::App* det = app.add_subcommand("detect", "Flag anomalous bags against normal training data");
    det->add_option("--detector", det_args.detector, "Prefit detector file (skips fitting)");
    det->add_option("--model", det_args.model, "Prefit model file (threshold still fit on --train)");
    det->add_option("--train", det_args.train, "Normal training dataset");
    det->add_option("--test", det_args.test, "Dataset to judge")->required();
    det->add_option("--family", det_args.family, "Cardinality family when fitting")
        ->check(CLI::IsMember({"poisson", "categorical"}));
    det->add_flag("--add-one-smoothing", det_args.add_one, "Add-one smoothing (categorical)");
    det->add_option("--ridge", det_args.ridge, "Covariance diagonal ridge");
    det->add_option("--scorer", det_args.scorer, "Ranking score to threshold")
        ->check(CLI::IsMember({"nb", "rfs_density", "ranking"}));
    det->add_option("--q", det_args.q, "Threshold quantile index (1 <= q < Q)");
    det->add_option("--Q", det_args.Q, "Quantile denominator");
    det->add_option("--unit", det_args.unit, "Hyper-volume unit when fitting");
    det->add_option("--out", det_args.out, "Verdicts output path")->required();
    det->add_option("--out-detector", det_args.out_detector, "Where to save the fitted detector");
    det->add_option("--out-report", det_args.out_report, "Metrics report output path");
    det->add_option("--out-boxplot", det_args.out_boxplot, "Score five-number summary CSV by group");

    EvalCommonArgs eval_args;
    CLI::App* eval = app.add_subcommand("eval", "Metrics over prediction or verdict files");
    eval->require_subcommand(1);
    CLI::App* eacc = eval->add_subcommand("accuracy", "Classification accuracy");
    eacc->add_option("--preds", eval_args.preds, "Predictions file from classify")->required();
    eacc->add_option("--truth", eval_args.truth, "Labeled dataset")->required();
    eacc->add_option("--out", eval_args.out, "JSON report path");
    CLI::App* ef1 = eval->add_subcommand("f1", "Detection precision/recall/F1");
    ef1->add_option("--verdicts", eval_args.verdicts, "Verdicts file from detect")->required();
    ef1->add_option("--truth", eval_args.truth, "Labeled dataset (label 1 = normal)")->required();
    ef1->add_option("--out", eval_args.out, "JSON report path");
    CLI::App* ekf = eval->add_subcommand("kfold", "Cross-validated classification accuracy");
    ekf->add_option("--data", eval_args.data, "Labeled dataset")->required();
    ekf->add_option("--k", eval_args.k, "Fold count");
    ekf->add_option("--seed", eval_args.seed, "Fold shuffling seed")->required();
    ekf->add_option("--family", eval_args.family, "Cardinality family")
        ->check(CLI::IsMember({"poisson", "categorical"}));
    ekf->add_option("--scorer", eval_args.scorer, "Score used for comparison")
        ->check(CLI::IsMember({"nb", "rfs_density", "ranking"}));
    ekf->add_option("--unit", eval_args.unit, "Hyper-volume unit when fitting");
    ekf->add_option("--out", eval_args.out, "JSON report path");
    ekf->add_option("--out-csv", eval_args.out_csv, "Per-fold CSV path");
    CLI::App* esum = eval->add_subcommand("summary", "Score five-number summaries by truth group");
    esum->add_option("--verdicts", eval_args.verdicts, "Verdicts file from detect")->required();
    esum->add_option("--truth", eval_args.truth, "Labeled dataset")->required();
    esum->add_option("--threshold", eval_args.threshold, "Threshold overlay column");
    esum->add_option("--out", eval_args.out, "Boxplot CSV path")->required();

    std::vector<const char*> argv;
    static const std::string prog = "rfs";
    argv.push_back(prog.c_str());
    for (const auto& t : tokens) argv.push_back(t.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (sim->parsed()) return run_simulate(sim_args);
    if (pca->parsed()) {
        if (pca_args.projection.empty() && pca_args.target_dim < 1)
            throw ValidationError("pca needs --target-dim (fit) or --projection (apply)");
        return run_pca(pca_args);
    }
    if (fit->parsed()) return run_fit(fit_args);
    if (cls->parsed()) return run_classify(cls_args);
    if (det->parsed()) {
        if (det_args.q < 1 || det_args.q >= det_args.Q) {
            std::cerr << "detect: need 1 <= q < Q\n";
            return 2;
        }
        return run_detect(det_args);
    }
    if (eval->parsed()) {
        if (eval->get_subcommand("accuracy")->parsed()) return run_eval_accuracy(eval_args);
        if (eval->get_subcommand("f1")->parsed()) return run_eval_f1(eval_args);
        if (eval->get_subcommand("kfold")->parsed()) return run_eval_kfold(eval_args);
        if (eval->get_subcommand("summary")->parsed()) return run_eval_summary(eval_args);
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> tokens(argv + 1, argv + argc);
    try {
        return run(apply_config(std::move(tokens)));
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 4;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
