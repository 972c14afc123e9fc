#pragma once

#include <map>
#include <string>

#include "ssmseg/mfcc.hpp"
#include "ssmseg/refine.hpp"

namespace ssmseg {

/// Every tunable of the pipeline. Serializes to/from key=value text;
/// unknown keys are rejected.
struct PipelineConfig {
    int sample_rate = 16000;
    MfccConfig mfcc;
    double segment_len_s = 5.0;
    int kernel_half_width = 2;
    double peak_k = 2.0;
    double penalty_lambda = 0.0;
    double eps_rel = 1e-6;
    RefineConfig refine;
    double tau = 0.0;

    void set(const std::string& key, const std::string& value);
    std::map<std::string, std::string> to_map() const;
};

PipelineConfig load_config(const std::string& path);
PipelineConfig parse_config_text(const std::string& text);

}  // namespace ssmseg
