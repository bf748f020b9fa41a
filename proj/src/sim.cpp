#include "rfskit/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rfskit/errors.hpp"

namespace rfskit {

namespace {

// Substream ids: train role uses the class/type index directly, test roles
// are offset by 100, so adding test draws never perturbs the train set.
constexpr std::uint64_t kTestStreamOffset = 100;
constexpr std::uint64_t kNoveltyTrainStream = 1;
constexpr std::uint64_t kNoveltyTestNormal = 101;
constexpr std::uint64_t kNoveltyTestLow = 102;
constexpr std::uint64_t kNoveltyTestHigh = 103;
constexpr std::uint64_t kNoveltyTestFeature = 104;

std::string item_id(const char* role, long index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s-%06ld", role, index);
    return buf;
}

PointPattern draw_feature_rows(const FeatureDensity& f, long m, Rng& rng) {
    if (m == 0) return PointPattern::empty(f.dim());
    Eigen::MatrixXd rows(m, f.dim());
    for (long i = 0; i < m; ++i) rows.row(i) = f.sample(rng).transpose();
    return PointPattern(std::move(rows));
}

double poisson_interval_mass(const PoissonCardinality& base, long lo, long hi) {
    // Terms beyond rate + 40*sqrt(rate) + 100 cannot move the total past 1e-12.
    long cap = static_cast<long>(base.rate() + 40.0 * std::sqrt(base.rate()) + 100.0);
    double mass = 0.0;
    for (long k = std::max(lo, 0L); k <= std::min(hi, cap); ++k)
        mass += std::exp(base.log_pmf(static_cast<int>(k)));
    return mass;
}

nlohmann::json vector_json(const Eigen::VectorXd& v) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(row);
    }
    return out;
}

} // namespace

PointPattern sample_pattern(const IidClusterModel& m, Rng& rng) {
    long card = sample_cardinality(m.cardinality(), rng);
    return draw_feature_rows(m.feature(), card, rng);
}

long sample_truncated_cardinality(const PoissonCardinality& base, long lo, long hi, Rng& rng) {
    if (lo > hi) throw ValidationError("truncated sampler: lo > hi");
    if (poisson_interval_mass(base, lo, hi) < 1e-12)
        throw NumericError("truncated sampler: interval mass below 1e-12, rejection would not terminate");
    for (;;) {
        long draw = rng.poisson(base.rate());
        if (draw >= lo && draw <= hi) return draw;
    }
}

Classification3Params Classification3Params::defaults() {
    Classification3Params p;
    auto set = [](ClassParams& c, double rate, double m0, double m1, double v0, double v1) {
        c.rate = rate;
        c.mean = Eigen::Vector2d(m0, m1);
        c.cov = Eigen::Vector2d(v0, v1).asDiagonal();
    };
    set(p.classes[0], 6.0, 1.0, 2.0, 20.0, 40.0);
    set(p.classes[1], 15.0, 2.0, 3.0, 60.0, 20.0);
    set(p.classes[2], 30.0, 2.0, 2.0, 30.0, 30.0);
    return p;
}

Novelty1Params Novelty1Params::defaults() {
    Novelty1Params p;
    p.normal_mean = Eigen::Vector2d(0.0, 0.0);
    p.feature_cov = Eigen::MatrixXd(2, 2);
    p.feature_cov << 0.06, 0.01, 0.01, 0.04;
    p.anomaly_mean = Eigen::Vector2d(1.0, 1.0);
    return p;
}

ScenarioSpec ScenarioSpec::make(const std::string& name, std::uint64_t seed) {
    if (name != "classification3" && name != "novelty1")
        throw ValidationError("unknown scenario '" + name +
                              "' (expected classification3 or novelty1)");
    ScenarioSpec spec;
    spec.scenario = name;
    spec.seed = seed;
    return spec;
}

ScenarioData generate_classification3(const ScenarioSpec& spec) {
    const auto& p = spec.classification3;
    if (p.train_per_class < 0 || p.test_per_class < 0)
        throw ValidationError("scenario counts must be nonnegative");

    std::vector<IidClusterModel> models;
    for (const auto& c : p.classes) {
        if (c.rate <= 0.0) throw ValidationError("scenario class rate must be positive");
        models.emplace_back(PoissonCardinality(c.rate),
                            std::make_shared<GaussianDensity>(c.mean, c.cov), UnitContext{});
    }

    auto draw_split = [&](long per_class, std::uint64_t stream_base, const char* role) {
        std::vector<LabeledPattern> items;
        items.reserve(static_cast<size_t>(per_class) * 3);
        for (int c = 0; c < 3; ++c) {
            Rng rng = Rng::stream(spec.seed, stream_base + static_cast<std::uint64_t>(c) + 1);
            for (long i = 0; i < per_class; ++i)
                items.push_back({sample_pattern(models[static_cast<size_t>(c)], rng), c + 1, ""});
        }
        for (size_t i = 0; i < items.size(); ++i) items[i].id = item_id(role, static_cast<long>(i));
        return make_dataset(std::move(items));
    };

    return {draw_split(p.train_per_class, 0, "train"),
            draw_split(p.test_per_class, kTestStreamOffset, "test")};
}

ScenarioData generate_novelty1(const ScenarioSpec& spec) {
    const auto& p = spec.novelty1;
    if (p.train_count < 0 || p.test_normal < 0 || p.test_low < 0 || p.test_high < 0 ||
        p.test_feature < 0)
        throw ValidationError("scenario counts must be nonnegative");
    if (p.rate <= 0.0) throw ValidationError("scenario rate must be positive");

    PoissonCardinality base(p.rate);
    GaussianDensity normal_f(p.normal_mean, p.feature_cov);
    GaussianDensity shifted_f(p.anomaly_mean, p.feature_cov);

    auto draw_normal_like = [&](const GaussianDensity& f, long count, std::uint64_t stream_id) {
        Rng rng = Rng::stream(spec.seed, stream_id);
        std::vector<LabeledPattern> items;
        items.reserve(static_cast<size_t>(count));
        for (long i = 0; i < count; ++i) {
            long m = sample_truncated_cardinality(base, p.normal_lo, p.normal_hi, rng);
            items.push_back({draw_feature_rows(f, m, rng), std::nullopt, ""});
        }
        return items;
    };
    auto draw_uniform_card = [&](long lo, long hi, long count, std::uint64_t stream_id) {
        Rng rng = Rng::stream(spec.seed, stream_id);
        std::vector<LabeledPattern> items;
        items.reserve(static_cast<size_t>(count));
        for (long i = 0; i < count; ++i) {
            long m = rng.uniform_int(lo, hi);
            items.push_back({draw_feature_rows(normal_f, m, rng), std::nullopt, ""});
        }
        return items;
    };

    std::vector<LabeledPattern> train = draw_normal_like(normal_f, p.train_count, kNoveltyTrainStream);
    for (size_t i = 0; i < train.size(); ++i) train[i].id = item_id("train", static_cast<long>(i));

    std::vector<LabeledPattern> test = draw_normal_like(normal_f, p.test_normal, kNoveltyTestNormal);
    for (auto& item : test) item.label = 1;
    auto append = [&](std::vector<LabeledPattern> block, int label) {
        for (auto& item : block) item.label = label;
        std::move(block.begin(), block.end(), std::back_inserter(test));
    };
    append(draw_uniform_card(p.low_lo, p.low_hi, p.test_low, kNoveltyTestLow), 2);
    append(draw_uniform_card(p.high_lo, p.high_hi, p.test_high, kNoveltyTestHigh), 3);
    append(draw_normal_like(shifted_f, p.test_feature, kNoveltyTestFeature), 4);
    for (size_t i = 0; i < test.size(); ++i) test[i].id = item_id("test", static_cast<long>(i));

    return {make_dataset(std::move(train)), make_dataset(std::move(test))};
}

ScenarioData generate_scenario(const ScenarioSpec& spec) {
    if (spec.scenario == "classification3") return generate_classification3(spec);
    if (spec.scenario == "novelty1") return generate_novelty1(spec);
    throw ValidationError("unknown scenario '" + spec.scenario + "'");
}

nlohmann::json scenario_metadata(const ScenarioSpec& spec) {
    nlohmann::json meta;
    meta["scenario"] = spec.scenario;
    meta["seed"] = spec.seed;
    meta["generator"] = {
        {"name", "rfskit-sim"},
        {"version", 1},
        {"rng",
         {{"engine", "mt19937_64"},
          {"substream_seed", "splitmix64(seed ^ splitmix64(stream_id))"},
          {"uniform01", "(x >> 11) * 2^-53"},
          {"normal", "box-muller"},
          {"poisson", "cdf-inversion-sequential"},
          {"bounded_int", "rejection-unbiased"}}},
    };
    if (spec.scenario == "classification3") {
        const auto& p = spec.classification3;
        meta["labels"] = {{"1", "cluster1"}, {"2", "cluster2"}, {"3", "cluster3"}};
        nlohmann::json classes = nlohmann::json::array();
        for (int c = 0; c < 3; ++c)
            classes.push_back({{"rate", p.classes[static_cast<size_t>(c)].rate},
                               {"mean", vector_json(p.classes[static_cast<size_t>(c)].mean)},
                               {"cov", matrix_json(p.classes[static_cast<size_t>(c)].cov)},
                               {"train_stream", c + 1},
                               {"test_stream", static_cast<long>(kTestStreamOffset) + c + 1}});
        meta["parameters"] = {{"classes", classes},
                              {"train_per_class", p.train_per_class},
                              {"test_per_class", p.test_per_class}};
    } else if (spec.scenario == "novelty1") {
        const auto& p = spec.novelty1;
        meta["labels"] = {{"1", "normal"},
                          {"2", "low_cardinality_anomaly"},
                          {"3", "high_cardinality_anomaly"},
                          {"4", "feature_anomaly"}};
        meta["parameters"] = {
            {"rate", p.rate},
            {"normal_cardinality_range", {p.normal_lo, p.normal_hi}},
            {"normal_cardinality_law", "poisson-rejection"},
            {"normal_mean", vector_json(p.normal_mean)},
            {"feature_cov", matrix_json(p.feature_cov)},
            {"anomaly_mean", vector_json(p.anomaly_mean)},
            {"low_cardinality_range", {p.low_lo, p.low_hi}},
            {"high_cardinality_range", {p.high_lo, p.high_hi}},
            {"anomaly_cardinality_law", "uniform-integer"},
            {"train_count", p.train_count},
            {"test_counts",
             {{"normal", p.test_normal},
              {"low", p.test_low},
              {"high", p.test_high},
              {"feature", p.test_feature}}},
            {"streams",
             {{"train", kNoveltyTrainStream},
              {"test_normal", kNoveltyTestNormal},
              {"test_low", kNoveltyTestLow},
              {"test_high", kNoveltyTestHigh},
              {"test_feature", kNoveltyTestFeature}}}};
    }
    return meta;
}

} // namespace rfskit
