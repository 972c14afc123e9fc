#pragma once

#include <Eigen/Dense>

#include "ssmseg/audio.hpp"

namespace ssmseg {

struct MfccConfig {
    double frame_len_s = 0.025;
    double hop_s = 0.010;
    int n_fft = 512;
    int n_mels = 26;
    int n_coeffs = 13;
    double preemph = 0.97;
    double mel_fmin = 0.0;
    double mel_fmax = 0.0;  // 0 = sample_rate / 2
    double log_floor = 1e-10;
};

/// Time-ordered MFCC vectors, one row per frame. Frame k is centered at
/// t0_s + k * hop_s.
struct FeatureMatrix {
    Eigen::MatrixXd vectors;  // T x d
    double hop_s = 0.010;
    double frame_len_s = 0.025;
    double t0_s = 0.0125;

    Eigen::Index frames() const { return vectors.rows(); }
    Eigen::Index dim() const { return vectors.cols(); }
    double frame_time(Eigen::Index k) const { return t0_s + k * hop_s; }
};

// mel(f) = 2595 * log10(1 + f/700)
double hz_to_mel(double hz);
double mel_to_hz(double mel);

FeatureMatrix compute_mfcc(const AudioBuffer& buffer, const MfccConfig& cfg);

// Filterbank center frequencies in Hz, as spaced by compute_mfcc.
std::vector<double> mel_filter_centers_hz(const MfccConfig& cfg, int sample_rate);

}  // namespace ssmseg
