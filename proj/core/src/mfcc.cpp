#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ssmseg/errors.hpp"
#include "ssmseg/mfcc.hpp"

namespace ssmseg {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

namespace {

// radix-2 in-place FFT; n must be a power of two
void fft(std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                auto u = x[i + k];
                auto v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// mel points for n_mels triangular filters: n_mels + 2 equally spaced
// points between fmin and fmax on the mel scale
std::vector<double> mel_points(const MfccConfig& cfg, int sample_rate) {
    const double fmax = cfg.mel_fmax > 0 ? cfg.mel_fmax : sample_rate / 2.0;
    const double mlo = hz_to_mel(cfg.mel_fmin);
    const double mhi = hz_to_mel(fmax);
    std::vector<double> pts(cfg.n_mels + 2);
    for (int i = 0; i < cfg.n_mels + 2; ++i)
        pts[i] = mel_to_hz(mlo + (mhi - mlo) * i / (cfg.n_mels + 1));
    return pts;
}

}  // namespace

std::vector<double> mel_filter_centers_hz(const MfccConfig& cfg, int sample_rate) {
    auto pts = mel_points(cfg, sample_rate);
    return {pts.begin() + 1, pts.end() - 1};
}

FeatureMatrix compute_mfcc(const AudioBuffer& buffer, const MfccConfig& cfg) {
    const int fs = buffer.sample_rate;
    const auto frame_len = static_cast<Eigen::Index>(std::lround(cfg.frame_len_s * fs));
    const auto hop = static_cast<Eigen::Index>(std::lround(cfg.hop_s * fs));
    const auto n_samples = static_cast<Eigen::Index>(buffer.samples.size());
    if (n_samples < frame_len)
        throw AudioTooShort("audio shorter than one frame");
    if (frame_len > cfg.n_fft) throw ConfigError("frame longer than n_fft");
    if (hop > frame_len) throw ConfigError("hop longer than frame");

    const Eigen::Index n_frames = (n_samples - frame_len) / hop + 1;
    const int n_bins = cfg.n_fft / 2 + 1;

    // Hamming window
    std::vector<double> window(frame_len);
    for (Eigen::Index n = 0; n < frame_len; ++n)
        window[n] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * n / (frame_len - 1));

    // triangular filterbank as (bin, weight) rows
    const auto pts = mel_points(cfg, fs);
    Eigen::MatrixXd filterbank = Eigen::MatrixXd::Zero(cfg.n_mels, n_bins);
    for (int m = 0; m < cfg.n_mels; ++m) {
        const double lo = pts[m], mid = pts[m + 1], hi = pts[m + 2];
        for (int b = 0; b < n_bins; ++b) {
            const double f = static_cast<double>(b) * fs / cfg.n_fft;
            double w = 0.0;
            if (f > lo && f < mid) w = (f - lo) / (mid - lo);
            else if (f >= mid && f < hi) w = (hi - f) / (hi - mid);
            filterbank(m, b) = w;
        }
    }

    // orthonormal DCT-II
    Eigen::MatrixXd dct(cfg.n_coeffs, cfg.n_mels);
    for (int k = 0; k < cfg.n_coeffs; ++k) {
        const double scale = k == 0 ? std::sqrt(1.0 / cfg.n_mels)
                                    : std::sqrt(2.0 / cfg.n_mels);
        for (int m = 0; m < cfg.n_mels; ++m)
            dct(k, m) = scale * std::cos(std::numbers::pi * k * (m + 0.5) / cfg.n_mels);
    }

    FeatureMatrix out;
    out.hop_s = cfg.hop_s;
    out.frame_len_s = cfg.frame_len_s;
    out.t0_s = cfg.frame_len_s / 2.0;
    out.vectors.resize(n_frames, cfg.n_coeffs);

    std::vector<std::complex<double>> buf(cfg.n_fft);
    Eigen::VectorXd power(n_bins);
    for (Eigen::Index t = 0; t < n_frames; ++t) {
        const double* x = buffer.samples.data() + t * hop;
        // pre-emphasis is frame-local: x[-1] taken as 0
        for (Eigen::Index n = 0; n < frame_len; ++n) {
            const double prev = n > 0 ? x[n - 1] : 0.0;
            buf[n] = (x[n] - cfg.preemph * prev) * window[n];
        }
        std::fill(buf.begin() + frame_len, buf.end(), std::complex<double>(0.0));
        fft(buf);
        for (int b = 0; b < n_bins; ++b) power[b] = std::norm(buf[b]);

        Eigen::VectorXd logmel =
            ((filterbank * power).array() + cfg.log_floor).log();
        out.vectors.row(t) = (dct * logmel).transpose();
    }
    return out;
}

}  // namespace ssmseg
