#pragma once

#include <vector>

#include "ssmseg/config.hpp"
#include "ssmseg/labeling.hpp"
#include "ssmseg/ssm.hpp"

namespace ssmseg {

struct PipelineResult {
    double duration_s = 0.0;
    std::vector<ChangePoint> coarse_points;
    std::vector<ChangePoint> change_points;  // refined
    std::vector<Segment> segments;
    SimilarityMatrix ssm;
    NoveltyCurve novelty;
};

// load -> mfcc -> build_ssm -> novelty -> coarse -> refine_all -> cut -> label
PipelineResult run_pipeline(const AudioBuffer& audio, const PipelineConfig& cfg);

}  // namespace ssmseg
