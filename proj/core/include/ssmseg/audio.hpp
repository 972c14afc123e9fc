#pragma once

#include <string>
#include <vector>

namespace ssmseg {

/// Mono PCM audio. Immutable after construction; amplitudes in [-1, 1].
struct AudioBuffer {
    std::vector<double> samples;
    int sample_rate = 0;
    std::string source_path;

    double duration_seconds() const {
        return static_cast<double>(samples.size()) / sample_rate;
    }
};

// WAV decode: PCM 8/16/24/32-bit int or 32-bit float, 1-2 channels.
// Stereo is downmixed by per-sample mean, then resampled to target_rate.
AudioBuffer load_wav(const std::string& path, int target_rate);

// 16-bit PCM mono writer.
void save_wav(const std::string& path, const AudioBuffer& buffer);

// Band-limited resampling (windowed-sinc, Hann window). Identity when
// rates are already equal.
AudioBuffer resample(const AudioBuffer& buffer, int target_rate);

}  // namespace ssmseg
