#include <algorithm>
#include <cmath>

#include "ssmseg/errors.hpp"
#include "ssmseg/refine.hpp"

namespace ssmseg {

ChangePoint refine_change_point(const FeatureMatrix& features,
                                const ChangePoint& coarse,
                                const RefineConfig& cfg,
                                std::vector<RefinePoint>* curve) {
    const auto win_frames =
        static_cast<Eigen::Index>(std::lround(cfg.win_s / features.hop_s));
    const Eigen::Index total = features.frames();
    if (total < 2 * win_frames)
        throw ContextOutOfAudio("audio shorter than two comparison windows");

    const auto steps_half =
        static_cast<long>(std::floor(cfg.context_s / 2.0 / cfg.step_s));

    bool found = false;
    double best_bic = 0.0, best_time = 0.0, best_dist = 0.0;
    if (curve) curve->clear();

    // grid anchored at the coarse point, widening by step_s each side
    for (long k = -steps_half; k <= steps_half; ++k) {
        const double t = coarse.time_s + k * cfg.step_s;
        const auto boundary =
            static_cast<Eigen::Index>(std::lround((t - features.t0_s) / features.hop_s));
        // skip candidates whose full windows do not fit; never shrink them
        if (boundary - win_frames < 0 || boundary + win_frames > total) continue;

        GaussianStats left = accumulate_stats(features, boundary - win_frames, boundary);
        GaussianStats right = accumulate_stats(features, boundary, boundary + win_frames);
        const double bic = bic_similarity(left, right, cfg.eps_rel);
        if (curve) curve->push_back({t, bic});

        const double dist = std::abs(t - coarse.time_s);
        const bool better =
            !found || bic > best_bic ||
            (bic == best_bic && (dist < best_dist || (dist == best_dist && t < best_time)));
        if (better) {
            found = true;
            best_bic = bic;
            best_time = t;
            best_dist = dist;
        }
    }
    if (!found)
        throw ContextOutOfAudio("no candidate boundary fits inside the audio");
    return {best_time, ChangePoint::Stage::refined, best_bic};
}

std::vector<ChangePoint> refine_all(const FeatureMatrix& features,
                                    const std::vector<ChangePoint>& coarse_list,
                                    const RefineConfig& cfg) {
    std::vector<ChangePoint> refined;
    refined.reserve(coarse_list.size());
    for (const auto& c : coarse_list)
        refined.push_back(refine_change_point(features, c, cfg));

    std::stable_sort(refined.begin(), refined.end(),
                     [](const ChangePoint& a, const ChangePoint& b) {
                         return a.time_s < b.time_s;
                     });

    // merge points closer than min_gap_s, higher peak wins (tie -> earlier)
    std::vector<ChangePoint> merged;
    for (const auto& p : refined) {
        if (!merged.empty() && p.time_s - merged.back().time_s < cfg.min_gap_s) {
            if (p.score > merged.back().score) merged.back() = p;
        } else {
            merged.push_back(p);
        }
    }
    return merged;
}

}  // namespace ssmseg
