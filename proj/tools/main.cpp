#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssmseg/errors.hpp"
#include "ssmseg/io.hpp"
#include "ssmseg/pipeline.hpp"
#include "ssmseg/synth.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

std::string file_id(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

struct ConfigOptions {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;
};

// precedence: defaults < config file < command-line flags
ssmseg::PipelineConfig resolve_config(const ConfigOptions& opts) {
    ssmseg::PipelineConfig cfg;
    if (!opts.config_path.empty()) cfg = ssmseg::load_config(opts.config_path);
    for (const auto& [key, value] : opts.overrides) cfg.set(key, value);
    return cfg;
}

void add_config_flags(CLI::App* cmd, ConfigOptions& opts) {
    cmd->add_option("--config", opts.config_path, "key=value config file");
    static const char* keys[] = {
        "sample_rate", "frame_len_s", "hop_s", "n_fft", "n_mels", "n_coeffs",
        "preemph", "mel_fmin", "mel_fmax", "log_floor", "segment_len_s",
        "kernel_half_width", "peak_k", "penalty_lambda", "eps_rel",
        "context_s", "win_s", "step_s", "min_gap_s", "tau"};
    for (const char* key : keys) {
        std::string flag = "--" + std::string(key);
        std::replace(flag.begin(), flag.end(), '_', '-');
        cmd->add_option_function<std::string>(
            flag,
            [&opts, key = std::string(key)](const std::string& v) {
                opts.overrides.emplace_back(key, v);
            },
            "override config key " + std::string(key));
    }
}

json result_to_json(const std::string& audio_path, const ssmseg::PipelineResult& r,
                    const ssmseg::PipelineConfig& cfg) {
    json out;
    out["audio"] = audio_path;
    out["duration_s"] = round3(r.duration_s);
    out["change_points"] = json::array();
    for (const auto& p : r.change_points) {
        out["change_points"].push_back(
            {{"time_s", round3(p.time_s)},
             {"stage", p.stage == ssmseg::ChangePoint::Stage::coarse ? "coarse"
                                                                     : "refined"},
             {"score", p.score}});
    }
    out["segments"] = json::array();
    for (const auto& s : r.segments) {
        out["segments"].push_back({{"start_s", round3(s.start_s)},
                                   {"end_s", round3(s.end_s)},
                                   {"label", ssmseg::to_string(s.label)},
                                   {"anchor_bic", s.anchor_bic}});
    }
    out["config"] = cfg.to_map();
    return out;
}

int cmd_segment(const std::string& audio_path, const ConfigOptions& opts,
                const std::string& out_json, const std::string& out_rttm) {
    const auto cfg = resolve_config(opts);
    const auto audio = ssmseg::load_wav(audio_path, cfg.sample_rate);
    const auto result = ssmseg::run_pipeline(audio, cfg);

    ssmseg::write_file_atomic(out_json,
                              result_to_json(audio_path, result, cfg).dump(2) + "\n");
    if (!out_rttm.empty())
        ssmseg::write_file_atomic(
            out_rttm, ssmseg::segments_to_rttm(result.segments, file_id(audio_path)));

    std::cout << result.change_points.size() << " change point(s), "
              << result.segments.size() << " segment(s) -> " << out_json << "\n";
    return kExitOk;
}

int cmd_ssm_image(const std::string& audio_path, const ConfigOptions& opts,
                  const std::string& out_pgm) {
    const auto cfg = resolve_config(opts);
    const auto audio = ssmseg::load_wav(audio_path, cfg.sample_rate);
    const auto features = ssmseg::compute_mfcc(audio, cfg.mfcc);
    const auto ssm = ssmseg::build_ssm(features, cfg.segment_len_s, cfg.eps_rel,
                                       cfg.penalty_lambda);
    ssmseg::write_file_atomic(out_pgm, ssmseg::ssm_to_pgm(ssm));
    std::cout << ssm.size() << "x" << ssm.size() << " PGM -> " << out_pgm << "\n";
    return kExitOk;
}

int cmd_eval(const std::string& hyp_json, const std::string& ref_path,
             double tolerance_s, const std::string& out_report) {
    json hyp;
    {
        std::ifstream in(hyp_json);
        if (!in) {
            std::cerr << "error: cannot open " << hyp_json << "\n";
            return kExitConfig;
        }
        try {
            in >> hyp;
        } catch (const std::exception& e) {
            std::cerr << "error: " << hyp_json << ": " << e.what() << "\n";
            return kExitConfig;
        }
    }

    ssmseg::ReferenceAnnotation ref;
    try {
        ref = ssmseg::load_reference(ref_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    std::vector<double> hyp_times;
    for (const auto& p : hyp.at("change_points"))
        hyp_times.push_back(p.at("time_s").get<double>());
    const int hyp_segments = static_cast<int>(hyp.at("segments").size());

    const auto prf = ssmseg::boundary_prf(hyp_times, ref.change_times_s, tolerance_s);
    const int delta = hyp_segments - ref.n_segments();

    json report;
    report["hyp_segments"] = hyp_segments;
    report["ref_segments"] = ref.n_segments();
    report["delta"] = delta;
    report["boundary"] = {{"precision", prf.precision}, {"recall", prf.recall},
                          {"f1", prf.f1},               {"matched", prf.matched},
                          {"tolerance_s", prf.tolerance_s}};
    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!out_report.empty()) ssmseg::write_file_atomic(out_report, text);
    return kExitOk;
}

int cmd_synth(const std::string& script_path, const std::string& out_wav,
              const std::string& out_ref) {
    const auto script = ssmseg::parse_script(script_path);
    auto [audio, ref] = ssmseg::render(script);
    ssmseg::save_wav(out_wav, audio);
    if (!out_ref.empty()) ssmseg::save_reference(out_ref, ref);
    std::cout << audio.duration_seconds() << " s, "
              << ref.change_times_s.size() << " change point(s) -> " << out_wav
              << "\n";
    return kExitOk;
}

int cmd_mfcc_dump(const std::string& audio_path, const ConfigOptions& opts,
                  const std::string& out_csv) {
    const auto cfg = resolve_config(opts);
    const auto audio = ssmseg::load_wav(audio_path, cfg.sample_rate);
    const auto features = ssmseg::compute_mfcc(audio, cfg.mfcc);
    ssmseg::write_file_atomic(out_csv, ssmseg::features_to_csv(features));
    std::cout << features.frames() << " frame(s) -> " << out_csv << "\n";
    return kExitOk;
}

int cmd_novelty_dump(const std::string& audio_path, const ConfigOptions& opts,
                     const std::string& out_csv) {
    const auto cfg = resolve_config(opts);
    const auto audio = ssmseg::load_wav(audio_path, cfg.sample_rate);
    const auto features = ssmseg::compute_mfcc(audio, cfg.mfcc);
    const auto ssm = ssmseg::build_ssm(features, cfg.segment_len_s, cfg.eps_rel,
                                       cfg.penalty_lambda);
    const auto nov = ssmseg::novelty_curve(ssm, cfg.kernel_half_width);
    ssmseg::write_file_atomic(out_csv, ssmseg::novelty_to_csv(nov, ssm));
    std::cout << nov.scores.size() << " score(s) -> " << out_csv << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-pass BIC/SSM speaker change detection for broadcast news"};
    app.require_subcommand(1);

    std::string audio_path, out_json, out_rttm, out_pgm, out_csv;
    std::string hyp_json, ref_path, script_path, out_wav, out_ref, out_report;
    double tolerance_s = 0.5;
    ConfigOptions seg_opts, ssm_opts, mfcc_opts, nov_opts;

    auto* segment = app.add_subcommand("segment", "run the full pipeline");
    segment->add_option("audio", audio_path, "input WAV")->required();
    segment->add_option("--out-json", out_json, "result JSON path")->required();
    segment->add_option("--out-rttm", out_rttm, "optional RTTM path");
    add_config_flags(segment, seg_opts);

    auto* ssm_image = app.add_subcommand("ssm-image", "write the SSM as a PGM image");
    ssm_image->add_option("audio", audio_path, "input WAV")->required();
    ssm_image->add_option("--out-pgm", out_pgm, "output PGM path")->required();
    add_config_flags(ssm_image, ssm_opts);

    auto* eval = app.add_subcommand("eval", "score a hypothesis against a reference");
    eval->add_option("hyp", hyp_json, "hypothesis JSON from segment")->required();
    eval->add_option("ref", ref_path, "reference annotation file")->required();
    eval->add_option("--tolerance-s", tolerance_s, "boundary match tolerance");
    eval->add_option("--out-report", out_report, "optional JSON report path");

    auto* synth = app.add_subcommand("synth", "render a scripted synthetic stream");
    synth->add_option("script", script_path, "synth script file")->required();
    synth->add_option("--out-wav", out_wav, "output WAV path")->required();
    synth->add_option("--out-ref", out_ref, "optional reference annotation path");

    auto* mfcc_dump = app.add_subcommand("mfcc-dump", "dump MFCC features as CSV");
    mfcc_dump->add_option("audio", audio_path, "input WAV")->required();
    mfcc_dump->add_option("--out-csv", out_csv, "output CSV path")->required();
    add_config_flags(mfcc_dump, mfcc_opts);

    auto* novelty_dump =
        app.add_subcommand("novelty-dump", "dump the novelty curve as CSV");
    novelty_dump->add_option("audio", audio_path, "input WAV")->required();
    novelty_dump->add_option("--out-csv", out_csv, "output CSV path")->required();
    add_config_flags(novelty_dump, nov_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (segment->parsed())
            return cmd_segment(audio_path, seg_opts, out_json, out_rttm);
        if (ssm_image->parsed()) return cmd_ssm_image(audio_path, ssm_opts, out_pgm);
        if (eval->parsed()) return cmd_eval(hyp_json, ref_path, tolerance_s, out_report);
        if (synth->parsed()) return cmd_synth(script_path, out_wav, out_ref);
        if (mfcc_dump->parsed()) return cmd_mfcc_dump(audio_path, mfcc_opts, out_csv);
        if (novelty_dump->parsed())
            return cmd_novelty_dump(audio_path, nov_opts, out_csv);
    } catch (const ssmseg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitConfig;
}
