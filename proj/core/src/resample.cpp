#include <cmath>
#include <numbers>

#include "ssmseg/audio.hpp"
#include "ssmseg/errors.hpp"

namespace ssmseg {

namespace {

// 16 zero crossings each side of center = 32 taps per output phase when
// not downsampling; support widens by 1/ratio when downsampling.
constexpr int kZeroCrossings = 16;
constexpr double kRolloff = 0.9;

double hann(double x, double half_width) {
    // x in [-half_width, half_width]
    double c = std::cos(std::numbers::pi * x / (2.0 * half_width));
    return c * c;
}

double sinc(double x) {
    if (std::abs(x) < 1e-12) return 1.0;
    double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

}  // namespace

AudioBuffer resample(const AudioBuffer& buffer, int target_rate) {
    if (target_rate <= 0) throw Error("target_rate must be positive");
    if (buffer.sample_rate == target_rate) return buffer;

    const double ratio = static_cast<double>(target_rate) / buffer.sample_rate;
    // cutoff relative to the input rate, below the tighter Nyquist
    const double cutoff = kRolloff * std::min(1.0, ratio);
    const double half_width = kZeroCrossings / cutoff;

    const auto in_len = static_cast<std::ptrdiff_t>(buffer.samples.size());
    const auto out_len =
        static_cast<std::ptrdiff_t>(std::ceil(in_len * ratio));

    AudioBuffer out;
    out.sample_rate = target_rate;
    out.source_path = buffer.source_path;
    out.samples.resize(out_len);

    for (std::ptrdiff_t m = 0; m < out_len; ++m) {
        const double center = m / ratio;  // position in input samples
        const auto lo = static_cast<std::ptrdiff_t>(
            std::ceil(center - half_width));
        const auto hi = static_cast<std::ptrdiff_t>(
            std::floor(center + half_width));
        double acc = 0.0, norm = 0.0;
        for (std::ptrdiff_t n = std::max<std::ptrdiff_t>(lo, 0);
             n <= std::min(hi, in_len - 1); ++n) {
            const double t = n - center;
            const double w = cutoff * sinc(cutoff * t) * hann(t, half_width);
            acc += w * buffer.samples[n];
            norm += w;
        }
        // normalizing the kernel sum keeps DC exact and fixes edge taper
        out.samples[m] = norm != 0.0 ? acc / norm : 0.0;
    }
    return out;
}

}  // namespace ssmseg
