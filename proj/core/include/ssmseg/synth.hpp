#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ssmseg/audio.hpp"
#include "ssmseg/eval.hpp"

namespace ssmseg {

struct Resonance {
    double center_hz = 0.0;
    double bandwidth_hz = 0.0;
    double gain = 1.0;
};

struct SourceSpec {
    std::string name;
    std::vector<Resonance> resonances;
    double am_rate_hz = 0.0;  // 0 = no amplitude modulation
};

/// Scripted multi-source noise stream with known change points.
struct SynthScript {
    std::vector<SourceSpec> sources;
    std::vector<std::pair<int, double>> schedule;  // (source index, duration_s)
    int sample_rate = 16000;
    std::uint64_t seed = 0;

    std::vector<double> change_times() const;
    double total_duration() const;
};

// Script file: key=value lines. "source=<name>" opens a source section;
// "resonance=<center_hz>,<bandwidth_hz>,<gain>" and "am_rate=<hz>" apply
// to it. "segment=<name>,<duration_s>" appends a schedule entry.
SynthScript parse_script(const std::string& path);
SynthScript parse_script_text(const std::string& text);

// Deterministic given the seed: resonator-filtered white noise per source,
// concatenated with 10 ms linear crossfades.
std::pair<AudioBuffer, ReferenceAnnotation> render(const SynthScript& script);

}  // namespace ssmseg
