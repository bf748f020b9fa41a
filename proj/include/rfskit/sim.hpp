#pragma once

#include <array>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "rfskit/models.hpp"
#include "rfskit/rng.hpp"

namespace rfskit {

/// Two-stage draw: cardinality first, then that many independent features.
PointPattern sample_pattern(const IidClusterModel& m, Rng& rng);

/// Rejection-sample the base Poisson until the draw lands in [lo, hi].
/// Refuses intervals whose Poisson mass is below 1e-12 (the loop would
/// effectively never exit).
long sample_truncated_cardinality(const PoissonCardinality& base, long lo, long hi, Rng& rng);

struct ClassParams {
    double rate = 1.0;
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
};

/// Three overlapping planar clusters told apart mostly by how many points
/// they emit (rates 6, 15, 30), not by where the points fall.
struct Classification3Params {
    std::array<ClassParams, 3> classes;
    long train_per_class = 300;
    long test_per_class = 500;

    static Classification3Params defaults();
};

/// One normal population plus three anomaly types: too few points, too
/// many points, and points in the wrong place.
struct Novelty1Params {
    double rate = 48.0;
    long normal_lo = 40;
    long normal_hi = 60;
    Eigen::VectorXd normal_mean;  // [0, 0]
    Eigen::MatrixXd feature_cov;  // [[0.06, 0.01], [0.01, 0.04]]
    Eigen::VectorXd anomaly_mean; // [1, 1]
    long low_lo = 0, low_hi = 10;     // uniform integer draw
    long high_lo = 80, high_hi = 120; // uniform integer draw
    long train_count = 500;
    long test_normal = 200;
    long test_low = 100;
    long test_high = 100;
    long test_feature = 100;

    static Novelty1Params defaults();
};

struct ScenarioSpec {
    std::string scenario; // classification3 | novelty1
    std::uint64_t seed = 0;
    Classification3Params classification3 = Classification3Params::defaults();
    Novelty1Params novelty1 = Novelty1Params::defaults();

    /// Validates the scenario name.
    static ScenarioSpec make(const std::string& name, std::uint64_t seed);
};

struct ScenarioData {
    Dataset train;
    Dataset test;
};

/// Train labels 1..3; test labels 1..3. Each (role, class) pair draws from
/// its own derived substream, so the train set does not change when test
/// counts do.
ScenarioData generate_classification3(const ScenarioSpec& spec);

/// Train unlabeled; test labels: 1 normal, 2 low-cardinality anomaly,
/// 3 high-cardinality anomaly, 4 feature anomaly.
ScenarioData generate_novelty1(const ScenarioSpec& spec);

ScenarioData generate_scenario(const ScenarioSpec& spec);

/// Sidecar content describing exactly how a dataset was produced: scenario
/// parameters, seed, substream layout, and the RNG algorithms by name so
/// the byte stream is reproducible from the description alone.
nlohmann::json scenario_metadata(const ScenarioSpec& spec);

} // namespace rfskit
