#pragma once

#include <string>

#include <json.hpp>

#include "rfskit/infer.hpp"
#include "rfskit/learn.hpp"

namespace rfskit {

/// {"type":"iid_cluster","unit":U,
///  "cardinality":{"type":"poisson","rate":r} | {"type":"categorical","probs":[...]},
///  "feature":{"type":"gaussian","mean":[...],"cov":[[...],...]}}
/// Numbers survive a round trip exactly (shortest-round-trip decimal output).
nlohmann::json model_to_json(const IidClusterModel& m);
IidClusterModel model_from_json(const nlohmann::json& j);

IidClusterModel read_model_json(const std::string& path);
void write_model_json(const IidClusterModel& m, const std::string& path);

/// Detector = inline model + scorer name + fitted threshold + the quantile
/// rule the threshold came from.
nlohmann::json detector_to_json(const NoveltyDetector& d, const ThresholdSpec& spec);
NoveltyDetector detector_from_json(const nlohmann::json& j, ThresholdSpec* spec_out = nullptr);

NoveltyDetector read_detector_json(const std::string& path, ThresholdSpec* spec_out = nullptr);
void write_detector_json(const NoveltyDetector& d, const ThresholdSpec& spec,
                         const std::string& path);

nlohmann::json fit_report_json(const FitReport& r);

} // namespace rfskit
