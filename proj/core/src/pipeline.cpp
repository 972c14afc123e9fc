#include "ssmseg/pipeline.hpp"

namespace ssmseg {

PipelineResult run_pipeline(const AudioBuffer& audio, const PipelineConfig& cfg) {
    PipelineResult result;
    result.duration_s = audio.duration_seconds();

    const FeatureMatrix features = compute_mfcc(audio, cfg.mfcc);
    result.ssm =
        build_ssm(features, cfg.segment_len_s, cfg.eps_rel, cfg.penalty_lambda);
    result.novelty = novelty_curve(result.ssm, cfg.kernel_half_width);
    result.coarse_points = pick_coarse_changes(result.novelty, result.ssm, cfg.peak_k);

    RefineConfig refine_cfg = cfg.refine;
    refine_cfg.eps_rel = cfg.eps_rel;
    result.change_points = refine_all(features, result.coarse_points, refine_cfg);

    // refinement can push a point onto the audio edge; cut_segments rejects
    // points outside (0, duration)
    std::erase_if(result.change_points, [&](const ChangePoint& p) {
        return p.time_s <= 0.0 || p.time_s >= result.duration_s;
    });

    result.segments = label_newsreader(
        cut_segments(result.change_points, result.duration_s), features, cfg.tau,
        cfg.eps_rel);
    return result;
}

}  // namespace ssmseg
