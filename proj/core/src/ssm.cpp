#include <cmath>
#include <vector>

#include "ssmseg/errors.hpp"
#include "ssmseg/parallel.hpp"
#include "ssmseg/ssm.hpp"

namespace ssmseg {

SimilarityMatrix build_ssm(const FeatureMatrix& features, double segment_len_s,
                           double eps_rel, double penalty_lambda) {
    const auto seg_frames =
        static_cast<Eigen::Index>(std::floor(segment_len_s / features.hop_s));
    if (seg_frames < 2) throw ConfigError("segment_len_s too small for hop");
    const Eigen::Index n_segments = features.frames() / seg_frames;
    if (n_segments < 2)
        throw AudioTooShort("need at least 2 full segments, got " +
                            std::to_string(n_segments));

    std::vector<GaussianStats> stats;
    stats.reserve(n_segments);
    for (Eigen::Index s = 0; s < n_segments; ++s)
        stats.push_back(accumulate_stats(features, s * seg_frames, (s + 1) * seg_frames));

    SimilarityMatrix ssm;
    ssm.segment_len_s = segment_len_s;
    ssm.segment_times.resize(n_segments);
    for (Eigen::Index s = 0; s < n_segments; ++s)
        ssm.segment_times[s] = static_cast<double>(s * seg_frames) * features.hop_s;

    ssm.values = Eigen::MatrixXd::Zero(n_segments, n_segments);
    // upper triangle only; each row writes disjoint cells
    parallel_for(static_cast<std::size_t>(n_segments), [&](std::size_t i) {
        for (Eigen::Index j = static_cast<Eigen::Index>(i) + 1; j < n_segments; ++j)
            ssm.values(i, j) =
                bic_similarity(stats[i], stats[j], eps_rel, penalty_lambda);
    });
    for (Eigen::Index i = 0; i < n_segments; ++i)
        for (Eigen::Index j = i + 1; j < n_segments; ++j)
            ssm.values(j, i) = ssm.values(i, j);
    return ssm;
}

NoveltyCurve novelty_curve(const SimilarityMatrix& ssm, int kernel_half_width) {
    const Eigen::Index s = ssm.size();
    const Eigen::Index w = kernel_half_width;
    if (w < 1 || 2 * w > s)
        throw KernelTooLarge("kernel_half_width " + std::to_string(kernel_half_width) +
                             " too large for " + std::to_string(s) + " segments");

    NoveltyCurve nov;
    nov.kernel_half_width = kernel_half_width;
    nov.scores = Eigen::VectorXd::Zero(s);
    const double quad = static_cast<double>(w * w);
    for (Eigen::Index i = w; i < s - w; ++i) {
        const double same = ssm.values.block(i - w, i - w, w, w).sum() +
                            ssm.values.block(i, i, w, w).sum();
        const double cross = ssm.values.block(i - w, i, w, w).sum() +
                             ssm.values.block(i, i - w, w, w).sum();
        // boundary: within-block BIC low, cross-block BIC high
        nov.scores[i] = std::max(0.0, (cross - same) / quad);
    }
    return nov;
}

std::vector<ChangePoint> pick_coarse_changes(const NoveltyCurve& nov,
                                             const SimilarityMatrix& ssm,
                                             double peak_k) {
    const Eigen::Index s = nov.scores.size();
    const double mean = nov.scores.mean();
    const double stddev =
        std::sqrt((nov.scores.array() - mean).square().sum() / static_cast<double>(s));
    const double threshold = mean + peak_k * stddev;

    struct Peak {
        Eigen::Index index;
        double score;
    };
    std::vector<Peak> peaks;
    for (Eigen::Index i = 1; i + 1 < s; ++i) {
        if (nov.scores[i] <= threshold) continue;
        if (nov.scores[i] > nov.scores[i - 1] && nov.scores[i] >= nov.scores[i + 1])
            peaks.push_back({i, nov.scores[i]});
    }

    // enforce minimum separation, higher peak wins (tie -> earlier index)
    const Eigen::Index min_sep = 2 * nov.kernel_half_width;
    std::vector<Peak> kept;
    for (const auto& p : peaks) {
        bool drop = false;
        while (!kept.empty() && p.index - kept.back().index < min_sep) {
            if (p.score > kept.back().score) kept.pop_back();
            else {
                drop = true;
                break;
            }
        }
        if (!drop) kept.push_back(p);
    }

    std::vector<ChangePoint> out;
    out.reserve(kept.size());
    for (const auto& p : kept)
        out.push_back({ssm.segment_times[p.index], ChangePoint::Stage::coarse, p.score});
    return out;
}

}  // namespace ssmseg
