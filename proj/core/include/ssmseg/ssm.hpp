#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ssmseg/gaussian.hpp"
#include "ssmseg/mfcc.hpp"

namespace ssmseg {

/// Symmetric matrix of pairwise BIC values over first-pass segments.
struct SimilarityMatrix {
    Eigen::MatrixXd values;  // S x S, symmetric, zero diagonal
    double segment_len_s = 5.0;
    std::vector<double> segment_times;  // start time of each segment

    Eigen::Index size() const { return values.rows(); }
};

struct NoveltyCurve {
    Eigen::VectorXd scores;  // >= 0, zero on the undefined border
    int kernel_half_width = 2;
};

struct ChangePoint {
    enum class Stage { coarse, refined };
    double time_s = 0.0;
    Stage stage = Stage::coarse;
    double score = 0.0;
};

// Non-overlapping consecutive segments of floor(segment_len_s / hop_s)
// frames; ragged tail discarded. Throws AudioTooShort when S < 2.
SimilarityMatrix build_ssm(const FeatureMatrix& features, double segment_len_s,
                           double eps_rel = 1e-6, double penalty_lambda = 0.0);

// Checkerboard-kernel novelty along the diagonal: cross-quadrant mean sum
// minus same-side mean sum, floored at 0.
NoveltyCurve novelty_curve(const SimilarityMatrix& ssm, int kernel_half_width);

// Local maxima above mean + k*stddev, separated by >= 2*kernel_half_width
// segments (higher peak wins, tie toward the earlier index).
std::vector<ChangePoint> pick_coarse_changes(const NoveltyCurve& nov,
                                             const SimilarityMatrix& ssm,
                                             double peak_k = 2.0);

}  // namespace ssmseg
