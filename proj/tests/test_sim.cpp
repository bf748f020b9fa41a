#include <doctest.h>

#include <cmath>
#include <map>

#include "rfskit/learn.hpp"
#include "rfskit/sim.hpp"

using namespace rfskit;

namespace {

std::shared_ptr<GaussianDensity> gauss2(double mx, double my, double vx, double vy) {
    Eigen::VectorXd mu(2);
    mu << mx, my;
    Eigen::MatrixXd cov = Eigen::Vector2d(vx, vy).asDiagonal();
    return std::make_shared<GaussianDensity>(mu, cov);
}

} // namespace

TEST_CASE("degenerate cardinality always samples the empty pattern") {
    IidClusterModel model(CategoricalCardinality({1.0}), gauss2(0, 0, 1, 1));
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        PointPattern p = sample_pattern(model, rng);
        CHECK(p.cardinality() == 0);
        CHECK(p.dim() == 2);
    }
}

TEST_CASE("sampled patterns match the model moments") {
    IidClusterModel model(PoissonCardinality(6.0), gauss2(1.0, 2.0, 20.0, 40.0));
    Rng rng(2);
    const int n = 10000;
    double card_sum = 0.0;
    double fx = 0.0, fy = 0.0;
    long m_total = 0;
    for (int i = 0; i < n; ++i) {
        PointPattern p = sample_pattern(model, rng);
        card_sum += static_cast<double>(p.cardinality());
        m_total += p.cardinality();
        for (long k = 0; k < p.cardinality(); ++k) {
            fx += p.points()(k, 0);
            fy += p.points()(k, 1);
        }
    }
    CHECK(std::abs(card_sum / n - 6.0) < 4.0 * std::sqrt(6.0 / n));
    double se_x = std::sqrt(20.0 / static_cast<double>(m_total));
    double se_y = std::sqrt(40.0 / static_cast<double>(m_total));
    CHECK(std::abs(fx / static_cast<double>(m_total) - 1.0) < 4.0 * se_x);
    CHECK(std::abs(fy / static_cast<double>(m_total) - 2.0) < 4.0 * se_y);
}

TEST_CASE("truncated sampler stays inside the interval") {
    PoissonCardinality base(48.0);
    Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
        long m = sample_truncated_cardinality(base, 40, 60, rng);
        REQUIRE(m >= 40);
        REQUIRE(m <= 60);
    }
    CHECK(sample_truncated_cardinality(base, 48, 48, rng) == 48);
    CHECK_THROWS_AS(sample_truncated_cardinality(base, 60, 40, rng), ValidationError);
    // Poisson(48) mass on [0,5] is ~3e-15, below the 1e-12 termination gate.
    CHECK_THROWS_AS(sample_truncated_cardinality(base, 0, 5, rng), NumericError);
}

TEST_CASE("truncated sampler reproduces the renormalized distribution") {
    PoissonCardinality base(48.0);
    Rng rng(4);
    const int n = 100000;
    std::map<long, long> counts;
    for (int i = 0; i < n; ++i) ++counts[sample_truncated_cardinality(base, 40, 60, rng)];

    double mass = 0.0;
    for (int k = 40; k <= 60; ++k) mass += std::exp(base.log_pmf(k));
    double chi2 = 0.0;
    for (int k = 40; k <= 60; ++k) {
        double expected = n * std::exp(base.log_pmf(k)) / mass;
        double observed = static_cast<double>(counts[k]);
        chi2 += (observed - expected) * (observed - expected) / expected;
    }
    // 21 cells -> 20 degrees of freedom; 0.001 critical value.
    CHECK(chi2 < 45.31474661812586);
}

TEST_CASE("three-cluster scenario has the documented shape") {
    ScenarioSpec spec = ScenarioSpec::make("classification3", 7);
    ScenarioData data = generate_classification3(spec);
    CHECK(data.train.size() == 900);
    CHECK(data.test.size() == 1500);
    CHECK(data.train.dim == 2);
    CHECK(data.train.class_count == 3);
    CHECK(data.test.class_count == 3);

    std::map<int, long> train_counts, test_counts;
    for (const auto& item : data.train.items) ++train_counts[item.label.value()];
    for (const auto& item : data.test.items) ++test_counts[item.label.value()];
    for (int label = 1; label <= 3; ++label) {
        CHECK(train_counts[label] == 300);
        CHECK(test_counts[label] == 500);
    }

    // ids are unique within each split
    std::map<std::string, int> seen;
    for (const auto& item : data.train.items) ++seen[item.id];
    CHECK(seen.size() == data.train.size());
}

TEST_CASE("per-class mean cardinalities track the generator rates") {
    ScenarioSpec spec = ScenarioSpec::make("classification3", 8);
    ScenarioData data = generate_classification3(spec);
    const double rates[3] = {6.0, 15.0, 30.0};
    double sums[3] = {0, 0, 0};
    for (const auto& item : data.train.items)
        sums[item.label.value() - 1] += static_cast<double>(item.pattern.cardinality());
    for (int c = 0; c < 3; ++c)
        CHECK(std::abs(sums[c] / 300.0 - rates[c]) < 4.0 * std::sqrt(rates[c] / 300.0));
}

TEST_CASE("identical seeds reproduce identical scenario datasets") {
    ScenarioSpec spec = ScenarioSpec::make("classification3", 42);
    ScenarioData a = generate_classification3(spec);
    ScenarioData b = generate_classification3(spec);
    REQUIRE(a.train.size() == b.train.size());
    for (size_t i = 0; i < a.train.size(); ++i) {
        CHECK(a.train.items[i].pattern == b.train.items[i].pattern);
        CHECK(a.train.items[i].label == b.train.items[i].label);
        CHECK(a.train.items[i].id == b.train.items[i].id);
    }
    // Different seeds diverge.
    ScenarioData c = generate_classification3(ScenarioSpec::make("classification3", 43));
    bool any_diff = false;
    for (size_t i = 0; i < a.train.size() && !any_diff; ++i)
        any_diff = !(a.train.items[i].pattern == c.train.items[i].pattern);
    CHECK(any_diff);
}

TEST_CASE("novelty scenario has the documented shape and cardinality ranges") {
    ScenarioSpec spec = ScenarioSpec::make("novelty1", 9);
    ScenarioData data = generate_novelty1(spec);
    CHECK(data.train.size() == 500);
    CHECK(data.test.size() == 500);
    CHECK(data.train.class_count == 0); // unlabeled training data

    std::map<int, long> counts;
    for (const auto& item : data.test.items) {
        REQUIRE(item.label.has_value());
        int label = *item.label;
        ++counts[label];
        long m = item.pattern.cardinality();
        if (label == 1) {
            CHECK(m >= 40);
            CHECK(m <= 60);
        } else if (label == 2) {
            CHECK(m <= 10);
        } else if (label == 3) {
            CHECK(m >= 80);
            CHECK(m <= 120);
        } else if (label == 4) {
            CHECK(m >= 40);
            CHECK(m <= 60);
        }
    }
    CHECK(counts[1] == 200);
    CHECK(counts[2] == 100);
    CHECK(counts[3] == 100);
    CHECK(counts[4] == 100);

    for (const auto& item : data.train.items) {
        CHECK(item.pattern.cardinality() >= 40);
        CHECK(item.pattern.cardinality() <= 60);
        CHECK_FALSE(item.label.has_value());
    }
}

TEST_CASE("feature anomalies actually sit at the shifted mean") {
    ScenarioSpec spec = ScenarioSpec::make("novelty1", 10);
    ScenarioData data = generate_novelty1(spec);
    double fx = 0.0, fy = 0.0;
    long m_total = 0;
    for (const auto& item : data.test.items) {
        if (item.label != 4) continue;
        for (long k = 0; k < item.pattern.cardinality(); ++k) {
            fx += item.pattern.points()(k, 0);
            fy += item.pattern.points()(k, 1);
            ++m_total;
        }
    }
    REQUIRE(m_total > 3000);
    CHECK(std::abs(fx / static_cast<double>(m_total) - 1.0) <
          4.0 * std::sqrt(0.06 / static_cast<double>(m_total)));
    CHECK(std::abs(fy / static_cast<double>(m_total) - 1.0) <
          4.0 * std::sqrt(0.04 / static_cast<double>(m_total)));
}

TEST_CASE("scenario validation rejects unknown names and bad counts") {
    CHECK_THROWS_AS(ScenarioSpec::make("bogus", 1), ValidationError);
    ScenarioSpec spec = ScenarioSpec::make("novelty1", 1);
    spec.novelty1.train_count = -1;
    CHECK_THROWS_AS(generate_novelty1(spec), ValidationError);
    ScenarioSpec c3 = ScenarioSpec::make("classification3", 1);
    c3.classification3.classes[0].rate = 0.0;
    CHECK_THROWS_AS(generate_classification3(c3), ValidationError);
}

TEST_CASE("metadata names the scenario, seed, and algorithms") {
    ScenarioSpec spec = ScenarioSpec::make("novelty1", 123);
    nlohmann::json meta = scenario_metadata(spec);
    CHECK(meta["scenario"] == "novelty1");
    CHECK(meta["seed"] == 123);
    CHECK(meta["generator"]["rng"]["engine"] == "mt19937_64");
    CHECK(meta["labels"]["4"] == "feature_anomaly");
    CHECK(meta["parameters"]["anomaly_cardinality_law"] == "uniform-integer");

    nlohmann::json c3 = scenario_metadata(ScenarioSpec::make("classification3", 5));
    CHECK(c3["parameters"]["classes"].size() == 3);
    CHECK(c3["parameters"]["classes"][2]["rate"] == 30.0);
}

TEST_CASE("test-count changes leave the training set untouched") {
    ScenarioSpec a = ScenarioSpec::make("novelty1", 55);
    ScenarioSpec b = a;
    b.novelty1.test_normal = 10;
    b.novelty1.test_low = 5;
    Dataset train_a = generate_novelty1(a).train;
    Dataset train_b = generate_novelty1(b).train;
    REQUIRE(train_a.size() == train_b.size());
    for (size_t i = 0; i < train_a.size(); ++i)
        CHECK(train_a.items[i].pattern == train_b.items[i].pattern);
}
