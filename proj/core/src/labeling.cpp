#include <algorithm>
#include <cmath>

#include "ssmseg/errors.hpp"
#include "ssmseg/labeling.hpp"

namespace ssmseg {

const char* to_string(Segment::Label label) {
    return label == Segment::Label::newsreader ? "newsreader" : "other";
}

std::vector<Segment> cut_segments(const std::vector<ChangePoint>& change_points,
                                  double duration_s) {
    double prev = 0.0;
    for (const auto& p : change_points) {
        if (p.time_s <= 0.0 || p.time_s >= duration_s || p.time_s <= prev)
            throw PointOutOfRange("change point at " + std::to_string(p.time_s) +
                                  " not strictly inside (0, " +
                                  std::to_string(duration_s) + ") or unsorted");
        prev = p.time_s;
    }

    std::vector<Segment> segments;
    segments.reserve(change_points.size() + 1);
    double start = 0.0;
    for (const auto& p : change_points) {
        segments.push_back({start, p.time_s, Segment::Label::other, 0.0});
        start = p.time_s;
    }
    segments.push_back({start, duration_s, Segment::Label::other, 0.0});
    return segments;
}

namespace {

GaussianStats segment_stats(const FeatureMatrix& features, const Segment& s) {
    // frames whose centers fall inside [start, end)
    auto begin = static_cast<Eigen::Index>(
        std::ceil((s.start_s - features.t0_s) / features.hop_s));
    auto end = static_cast<Eigen::Index>(
        std::ceil((s.end_s - features.t0_s) / features.hop_s));
    begin = std::clamp<Eigen::Index>(begin, 0, features.frames());
    end = std::clamp<Eigen::Index>(end, 0, features.frames());
    if (end - begin < 2)
        throw EmptyRange("segment [" + std::to_string(s.start_s) + ", " +
                         std::to_string(s.end_s) + ") covers fewer than 2 frames");
    return accumulate_stats(features, begin, end);
}

}  // namespace

std::vector<Segment> label_newsreader(std::vector<Segment> segments,
                                      const FeatureMatrix& features,
                                      double tau, double eps_rel) {
    if (segments.empty()) return segments;

    // anchor = longest segment, tie toward the earlier one
    std::size_t anchor = 0;
    for (std::size_t i = 1; i < segments.size(); ++i) {
        const double len = segments[i].end_s - segments[i].start_s;
        const double best = segments[anchor].end_s - segments[anchor].start_s;
        if (len > best) anchor = i;
    }

    const GaussianStats anchor_stats = segment_stats(features, segments[anchor]);
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i == anchor) {
            segments[i].anchor_bic = 0.0;
            segments[i].label = Segment::Label::newsreader;
            continue;
        }
        // merge cost: the likelihood-ratio part of the BIC is nonnegative by
        // construction, so the complexity penalty (lambda = 1) is what lets
        // same-source segments score <= 0 against the anchor
        const double bic = bic_similarity(
            anchor_stats, segment_stats(features, segments[i]), eps_rel, 1.0);
        segments[i].anchor_bic = bic;
        segments[i].label =
            bic <= tau ? Segment::Label::newsreader : Segment::Label::other;
    }
    return segments;
}

}  // namespace ssmseg
