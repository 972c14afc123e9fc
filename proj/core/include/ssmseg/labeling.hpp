#pragma once

#include <vector>

#include "ssmseg/refine.hpp"

namespace ssmseg {

struct Segment {
    enum class Label { newsreader, other };
    double start_s = 0.0;
    double end_s = 0.0;
    Label label = Label::other;
    double anchor_bic = 0.0;  // 0 for the anchor itself
};

const char* to_string(Segment::Label label);

// K change points -> K+1 segments tiling [0, duration]. Points must be
// sorted and strictly inside (0, duration).
std::vector<Segment> cut_segments(const std::vector<ChangePoint>& change_points,
                                  double duration_s);

// Longest segment (tie -> earlier) becomes the newsreader anchor; every
// other segment joins it iff its BIC against the anchor is <= tau.
std::vector<Segment> label_newsreader(std::vector<Segment> segments,
                                      const FeatureMatrix& features,
                                      double tau = 0.0, double eps_rel = 1e-6);

}  // namespace ssmseg
