#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ssmseg/errors.hpp"
#include "ssmseg/synth.hpp"

namespace ssmseg {

namespace {

// fixed-parameter LCG so output is identical across platforms
struct Lcg {
    std::uint64_t state;
    explicit Lcg(std::uint64_t seed) : state(seed) {}
    double uniform() {  // [0, 1)
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) * (1.0 / 9007199254740992.0);
    }
    double noise() { return 2.0 * uniform() - 1.0; }
};

// two-pole resonator: poles at r * exp(+-j*2*pi*f0/fs)
struct Resonator {
    double b0, a1, a2;
    double y1 = 0.0, y2 = 0.0;

    Resonator(const Resonance& res, int fs) {
        const double r = std::exp(-std::numbers::pi * res.bandwidth_hz / fs);
        const double theta = 2.0 * std::numbers::pi * res.center_hz / fs;
        a1 = 2.0 * r * std::cos(theta);
        a2 = -r * r;
        b0 = res.gain * (1.0 - r);
    }

    double process(double x) {
        const double y = b0 * x + a1 * y1 + a2 * y2;
        y2 = y1;
        y1 = y;
        return y;
    }
};

std::vector<double> render_source(const SourceSpec& src, int fs,
                                  std::size_t n_samples, Lcg& rng) {
    std::vector<Resonator> bank;
    bank.reserve(src.resonances.size());
    for (const auto& res : src.resonances) bank.emplace_back(res, fs);

    std::vector<double> out(n_samples);
    for (std::size_t n = 0; n < n_samples; ++n) {
        const double x = rng.noise();
        double y = bank.empty() ? x : 0.0;
        for (auto& f : bank) y += f.process(x);
        if (src.am_rate_hz > 0.0) {
            const double t = static_cast<double>(n) / fs;
            y *= 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * src.am_rate_hz * t);
        }
        out[n] = y;
    }
    return out;
}

}  // namespace

std::vector<double> SynthScript::change_times() const {
    std::vector<double> times;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < schedule.size(); ++i) {
        acc += schedule[i].second;
        times.push_back(acc);
    }
    return times;
}

double SynthScript::total_duration() const {
    double acc = 0.0;
    for (const auto& [src, dur] : schedule) acc += dur;
    return acc;
}

std::pair<AudioBuffer, ReferenceAnnotation> render(const SynthScript& script) {
    if (script.schedule.empty()) throw InvalidScript("empty schedule");
    if (script.sample_rate <= 0) throw InvalidScript("bad sample rate");
    for (const auto& [src, dur] : script.schedule) {
        if (src < 0 || src >= static_cast<int>(script.sources.size()))
            throw InvalidScript("schedule references unknown source");
        if (dur <= 0.0) throw InvalidScript("non-positive segment duration");
    }

    const int fs = script.sample_rate;
    const auto fade = static_cast<std::size_t>(fs / 100);  // 10 ms

    // slot boundaries in samples; total length = sum of durations
    std::vector<std::size_t> starts{0};
    double acc = 0.0;
    for (const auto& [src, dur] : script.schedule) {
        acc += dur;
        starts.push_back(static_cast<std::size_t>(std::llround(acc * fs)));
    }
    const std::size_t total = starts.back();

    AudioBuffer audio;
    audio.sample_rate = fs;
    audio.samples.assign(total, 0.0);

    Lcg rng(script.seed ^ 0x9E3779B97F4A7C15ULL);
    std::vector<double> prev_tail;  // fade-length overhang of the previous entry
    for (std::size_t e = 0; e < script.schedule.size(); ++e) {
        const std::size_t begin = starts[e], end = starts[e + 1];
        const bool last = e + 1 == script.schedule.size();
        const std::size_t extra = last ? 0 : fade;
        auto rendered = render_source(script.sources[script.schedule[e].first], fs,
                                      end - begin + extra, rng);

        for (std::size_t i = 0; i < end - begin; ++i) {
            double s = rendered[i];
            if (i < prev_tail.size()) {
                const double alpha =
                    static_cast<double>(i + 1) / static_cast<double>(fade + 1);
                s = alpha * s + (1.0 - alpha) * prev_tail[i];
            }
            audio.samples[begin + i] = s;
        }
        prev_tail.assign(rendered.begin() + (end - begin), rendered.end());
    }

    // deterministic peak normalization keeps the |x| <= 1 invariant
    double peak = 0.0;
    for (double s : audio.samples) peak = std::max(peak, std::abs(s));
    if (peak > 0.0) {
        const double g = 0.9 / peak;
        for (double& s : audio.samples) s *= g;
    }

    ReferenceAnnotation ref;
    ref.change_times_s = script.change_times();
    return {std::move(audio), std::move(ref)};
}

SynthScript parse_script_text(const std::string& text) {
    SynthScript script;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int current = -1;

    auto find_source = [&](const std::string& name) {
        for (std::size_t i = 0; i < script.sources.size(); ++i)
            if (script.sources[i].name == name) return static_cast<int>(i);
        return -1;
    };

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidScript("line " + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        try {
            if (key == "sample_rate") {
                script.sample_rate = std::stoi(value);
            } else if (key == "seed") {
                script.seed = std::stoull(value);
            } else if (key == "source") {
                if (find_source(value) >= 0)
                    throw InvalidScript("duplicate source " + value);
                script.sources.push_back({value, {}, 0.0});
                current = static_cast<int>(script.sources.size()) - 1;
            } else if (key == "resonance") {
                if (current < 0) throw InvalidScript("resonance before any source");
                std::istringstream v(value);
                Resonance r;
                char c1, c2;
                if (!(v >> r.center_hz >> c1 >> r.bandwidth_hz >> c2 >> r.gain) ||
                    c1 != ',' || c2 != ',')
                    throw InvalidScript("bad resonance: " + value);
                script.sources[current].resonances.push_back(r);
            } else if (key == "am_rate") {
                if (current < 0) throw InvalidScript("am_rate before any source");
                script.sources[current].am_rate_hz = std::stod(value);
            } else if (key == "segment") {
                const auto comma = value.find(',');
                if (comma == std::string::npos)
                    throw InvalidScript("bad segment: " + value);
                const std::string name = trim(value.substr(0, comma));
                const int idx = find_source(name);
                if (idx < 0) throw InvalidScript("unknown source " + name);
                const double dur = std::stod(value.substr(comma + 1));
                if (dur <= 0.0) throw InvalidScript("non-positive duration: " + value);
                script.schedule.emplace_back(idx, dur);
            } else {
                throw InvalidScript("unknown key " + key);
            }
        } catch (const InvalidScript&) {
            throw;
        } catch (const std::exception&) {
            throw InvalidScript("line " + std::to_string(lineno) + ": bad value " + value);
        }
    }
    if (script.schedule.empty()) throw InvalidScript("script has no schedule");
    return script;
}

SynthScript parse_script(const std::string& path) {
    if (!std::filesystem::exists(path)) throw FileNotFound(path);
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_script_text(ss.str());
    } catch (const InvalidScript& e) {
        throw InvalidScript(path + ": " + e.what());
    }
}

}  // namespace ssmseg
