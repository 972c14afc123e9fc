#pragma once

#include <vector>

#include "ssmseg/ssm.hpp"

namespace ssmseg {

struct RefineConfig {
    double context_s = 20.0;
    double win_s = 2.0;
    double step_s = 0.1;
    double min_gap_s = 2.0;
    double eps_rel = 1e-6;
};

struct RefinePoint {
    double time_s;
    double bic;
};

// Slides a 2*win_s BIC comparison over [coarse - context/2, coarse + context/2]
// in step_s steps (grid anchored at coarse.time_s) and returns the highest
// peak. Candidates whose full windows do not fit in the audio are skipped.
ChangePoint refine_change_point(const FeatureMatrix& features,
                                const ChangePoint& coarse,
                                const RefineConfig& cfg,
                                std::vector<RefinePoint>* curve = nullptr);

// Refines each coarse point, then merges refined points closer than
// min_gap_s keeping the higher peak. Output sorted, strictly increasing.
std::vector<ChangePoint> refine_all(const FeatureMatrix& features,
                                    const std::vector<ChangePoint>& coarse_list,
                                    const RefineConfig& cfg);

}  // namespace ssmseg
