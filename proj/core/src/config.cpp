#include <filesystem>
#include <fstream>
#include <sstream>

#include "ssmseg/config.hpp"
#include "ssmseg/errors.hpp"

namespace ssmseg {

namespace {

std::string fmt(double v) {
    std::ostringstream ss;
    ss << v;
    return ss.str();
}

}  // namespace

void PipelineConfig::set(const std::string& key, const std::string& value) {
    try {
        if (key == "sample_rate") sample_rate = std::stoi(value);
        else if (key == "frame_len_s") mfcc.frame_len_s = std::stod(value);
        else if (key == "hop_s") mfcc.hop_s = std::stod(value);
        else if (key == "n_fft") mfcc.n_fft = std::stoi(value);
        else if (key == "n_mels") mfcc.n_mels = std::stoi(value);
        else if (key == "n_coeffs") mfcc.n_coeffs = std::stoi(value);
        else if (key == "preemph") mfcc.preemph = std::stod(value);
        else if (key == "mel_fmin") mfcc.mel_fmin = std::stod(value);
        else if (key == "mel_fmax") mfcc.mel_fmax = std::stod(value);
        else if (key == "log_floor") mfcc.log_floor = std::stod(value);
        else if (key == "segment_len_s") segment_len_s = std::stod(value);
        else if (key == "kernel_half_width") kernel_half_width = std::stoi(value);
        else if (key == "peak_k") peak_k = std::stod(value);
        else if (key == "penalty_lambda") penalty_lambda = std::stod(value);
        else if (key == "eps_rel") eps_rel = std::stod(value);
        else if (key == "context_s") refine.context_s = std::stod(value);
        else if (key == "win_s") refine.win_s = std::stod(value);
        else if (key == "step_s") refine.step_s = std::stod(value);
        else if (key == "min_gap_s") refine.min_gap_s = std::stod(value);
        else if (key == "tau") tau = std::stod(value);
        else throw ConfigError("unknown config key: " + key);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("bad value for " + key + ": " + value);
    }
}

std::map<std::string, std::string> PipelineConfig::to_map() const {
    return {
        {"sample_rate", std::to_string(sample_rate)},
        {"frame_len_s", fmt(mfcc.frame_len_s)},
        {"hop_s", fmt(mfcc.hop_s)},
        {"n_fft", std::to_string(mfcc.n_fft)},
        {"n_mels", std::to_string(mfcc.n_mels)},
        {"n_coeffs", std::to_string(mfcc.n_coeffs)},
        {"preemph", fmt(mfcc.preemph)},
        {"mel_fmin", fmt(mfcc.mel_fmin)},
        {"mel_fmax", fmt(mfcc.mel_fmax)},
        {"log_floor", fmt(mfcc.log_floor)},
        {"segment_len_s", fmt(segment_len_s)},
        {"kernel_half_width", std::to_string(kernel_half_width)},
        {"peak_k", fmt(peak_k)},
        {"penalty_lambda", fmt(penalty_lambda)},
        {"eps_rel", fmt(eps_rel)},
        {"context_s", fmt(refine.context_s)},
        {"win_s", fmt(refine.win_s)},
        {"step_s", fmt(refine.step_s)},
        {"min_gap_s", fmt(refine.min_gap_s)},
        {"tau", fmt(tau)},
    };
}

PipelineConfig parse_config_text(const std::string& text) {
    PipelineConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

PipelineConfig load_config(const std::string& path) {
    if (!std::filesystem::exists(path)) throw FileNotFound(path);
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config_text(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace ssmseg
