#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "ssmseg/audio.hpp"
#include "ssmseg/errors.hpp"

using namespace ssmseg;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("ssmseg_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void put_u32(std::vector<std::uint8_t>& v, std::uint32_t x) {
    v.push_back(x & 0xFF);
    v.push_back((x >> 8) & 0xFF);
    v.push_back((x >> 16) & 0xFF);
    v.push_back((x >> 24) & 0xFF);
}
void put_u16(std::vector<std::uint8_t>& v, std::uint16_t x) {
    v.push_back(x & 0xFF);
    v.push_back((x >> 8) & 0xFF);
}
void put_tag(std::vector<std::uint8_t>& v, const char* t) {
    v.insert(v.end(), t, t + 4);
}

// hand-rolled writer so the reader is tested against independent bytes
void write_wav(const std::string& path, const std::vector<double>& samples,
               int rate, int channels, int bits, std::uint16_t format = 1,
               bool junk_chunk = false) {
    const int bytes_per = bits / 8;
    const std::uint32_t data_len =
        static_cast<std::uint32_t>(samples.size() * bytes_per);
    std::vector<std::uint8_t> v;
    put_tag(v, "RIFF");
    put_u32(v, 36 + data_len + (junk_chunk ? 12 : 0));
    put_tag(v, "WAVE");
    if (junk_chunk) {
        put_tag(v, "JUNK");
        put_u32(v, 4);
        put_u32(v, 0xDEADBEEF);
    }
    put_tag(v, "fmt ");
    put_u32(v, 16);
    put_u16(v, format);
    put_u16(v, static_cast<std::uint16_t>(channels));
    put_u32(v, static_cast<std::uint32_t>(rate));
    put_u32(v, static_cast<std::uint32_t>(rate * bytes_per * channels));
    put_u16(v, static_cast<std::uint16_t>(bytes_per * channels));
    put_u16(v, static_cast<std::uint16_t>(bits));
    put_tag(v, "data");
    put_u32(v, data_len);
    for (double s : samples) {
        if (format == 3) {
            float f = static_cast<float>(s);
            std::uint32_t u;
            std::memcpy(&u, &f, 4);
            put_u32(v, u);
        } else if (bits == 8) {
            v.push_back(static_cast<std::uint8_t>(std::lround(s * 127.0) + 128));
        } else if (bits == 16) {
            put_u16(v, static_cast<std::uint16_t>(
                           static_cast<std::int16_t>(std::lround(s * 32767.0))));
        } else if (bits == 24) {
            auto x = static_cast<std::int32_t>(std::lround(s * 8388607.0));
            v.push_back(x & 0xFF);
            v.push_back((x >> 8) & 0xFF);
            v.push_back((x >> 16) & 0xFF);
        } else {
            auto x = static_cast<std::int32_t>(std::llround(s * 2147483647.0));
            put_u32(v, static_cast<std::uint32_t>(x));
        }
    }
    std::ofstream f(path, std::ios::binary);
    f.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size()));
}

std::vector<double> sine(double freq, int rate, double dur, double amp = 0.5) {
    std::vector<double> out(static_cast<std::size_t>(rate * dur));
    for (std::size_t n = 0; n < out.size(); ++n)
        out[n] = amp * std::sin(2.0 * std::numbers::pi * freq * n / rate);
    return out;
}

}  // namespace

TEST_CASE("silence round-trips at the source rate") {
    TempDir tmp;
    const auto path = tmp.file("silence.wav");
    write_wav(path, std::vector<double>(16000, 0.0), 16000, 1, 16);
    auto buf = load_wav(path, 16000);
    CHECK(buf.sample_rate == 16000);
    REQUIRE(buf.samples.size() == 16000);
    for (double s : buf.samples) CHECK(s == 0.0);
    CHECK(buf.duration_seconds() == doctest::Approx(1.0));
}

TEST_CASE("stereo downmix averages channels") {
    TempDir tmp;
    const auto path = tmp.file("stereo.wav");
    std::vector<double> interleaved;
    for (int i = 0; i < 1000; ++i) {
        interleaved.push_back(0.5);
        interleaved.push_back(-0.5);
    }
    write_wav(path, interleaved, 16000, 2, 16);
    auto buf = load_wav(path, 16000);
    REQUIRE(buf.samples.size() == 1000);
    for (double s : buf.samples) CHECK(std::abs(s) < 1e-4);
}

TEST_CASE("downmix commutes with gain") {
    TempDir tmp;
    std::vector<double> left = sine(300, 16000, 0.1, 0.4);
    std::vector<double> right = sine(700, 16000, 0.1, 0.3);
    std::vector<double> mix, mix_scaled;
    const double g = 0.5;
    for (std::size_t i = 0; i < left.size(); ++i) {
        mix.push_back(left[i]);
        mix.push_back(right[i]);
        mix_scaled.push_back(g * left[i]);
        mix_scaled.push_back(g * right[i]);
    }
    write_wav(tmp.file("a.wav"), mix, 16000, 2, 32, 3);
    write_wav(tmp.file("b.wav"), mix_scaled, 16000, 2, 32, 3);
    auto a = load_wav(tmp.file("a.wav"), 16000);
    auto b = load_wav(tmp.file("b.wav"), 16000);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        CHECK(std::abs(b.samples[i] - g * a.samples[i]) < 1e-6);
}

TEST_CASE("440 Hz sine survives 44100 -> 16000 resampling") {
    TempDir tmp;
    const auto path = tmp.file("sine.wav");
    write_wav(path, sine(440, 44100, 1.0), 44100, 1, 16);
    auto buf = load_wav(path, 16000);
    const auto expected_len =
        static_cast<std::size_t>(std::ceil(44100.0 * 16000.0 / 44100.0));
    CHECK(buf.samples.size() == expected_len);
    // peak bin of the 16000-point DFT should be 440 Hz +- 1 bin
    const auto peak = oracle::dft_peak_bin(buf.samples);
    CHECK(std::abs(static_cast<double>(peak) - 440.0) <= 1.0);
}

TEST_CASE("unknown chunks are skipped") {
    TempDir tmp;
    const auto path = tmp.file("junk.wav");
    write_wav(path, sine(440, 16000, 0.1), 16000, 1, 16, 1, true);
    auto buf = load_wav(path, 16000);
    CHECK(buf.samples.size() == 1600);
}

TEST_CASE("24-bit and 8-bit PCM decode") {
    TempDir tmp;
    auto ref = sine(440, 16000, 0.05);
    for (int bits : {8, 24, 32}) {
        const auto path = tmp.file("depth.wav");
        write_wav(path, ref, 16000, 1, bits);
        auto buf = load_wav(path, 16000);
        REQUIRE(buf.samples.size() == ref.size());
        const double tol = bits == 8 ? 1e-2 : 1e-4;
        for (std::size_t i = 0; i < ref.size(); ++i)
            CHECK(std::abs(buf.samples[i] - ref[i]) < tol);
    }
}

TEST_CASE("error paths") {
    TempDir tmp;
    CHECK_THROWS_AS(load_wav(tmp.file("missing.wav"), 16000), FileNotFound);

    const auto bad = tmp.file("bad.wav");
    std::ofstream(bad) << "this is not a wav file at all............";
    CHECK_THROWS_AS(load_wav(bad, 16000), CorruptHeader);

    const auto compressed = tmp.file("compressed.wav");
    write_wav(compressed, sine(440, 16000, 0.05), 16000, 1, 16, 85);  // MP3 tag
    CHECK_THROWS_AS(load_wav(compressed, 16000), UnsupportedEncoding);
}

TEST_CASE("resample identity at equal rates") {
    AudioBuffer buf;
    buf.sample_rate = 16000;
    buf.samples = sine(1000, 16000, 0.2);
    auto out = resample(buf, 16000);
    CHECK(out.samples == buf.samples);
}

TEST_CASE("resample preserves DC") {
    AudioBuffer buf;
    buf.sample_rate = 8000;
    buf.samples.assign(8000, 0.25);
    auto out = resample(buf, 16000);
    REQUIRE(out.samples.size() == 16000);
    for (std::size_t i = 100; i + 100 < out.samples.size(); ++i)
        CHECK(std::abs(out.samples[i] - 0.25) < 1e-3);
}

TEST_CASE("1 kHz sine upsampled 8k -> 16k keeps its peak, sidelobes < -40 dB") {
    AudioBuffer buf;
    buf.sample_rate = 8000;
    buf.samples = sine(1000, 8000, 1.0);
    auto out = resample(buf, 16000);
    // drop edges before the spectral check
    std::vector<double> mid(out.samples.begin() + 1000, out.samples.end() - 1000);
    auto mag = oracle::dft_magnitude(mid);
    const double bin_hz = 16000.0 / static_cast<double>(mid.size());
    std::size_t peak = 0;
    for (std::size_t k = 1; k < mag.size(); ++k)
        if (mag[k] > mag[peak]) peak = k;
    CHECK(std::abs(peak * bin_hz - 1000.0) < 2.0 * bin_hz);

    double peak_energy = 0.0, rest_energy = 0.0;
    for (std::size_t k = 1; k < mag.size(); ++k) {
        const double e = mag[k] * mag[k];
        if (std::abs(static_cast<double>(k) - static_cast<double>(peak)) <= 3)
            peak_energy += e;
        else
            rest_energy += e;
    }
    CHECK(10.0 * std::log10(rest_energy / peak_energy) < -40.0);
}

TEST_CASE("round-trip r -> 2r -> r is near-lossless for band-limited input") {
    oracle::Rng rng(11);
    const int rate = 8000;
    for (int trial = 0; trial < 5; ++trial) {
        AudioBuffer buf;
        buf.sample_rate = rate;
        buf.samples.assign(rate, 0.0);
        // random band-limited mix below 0.4 * rate
        for (int c = 0; c < 4; ++c) {
            const double f = 100.0 + rng.uniform() * (0.4 * rate - 100.0);
            const double amp = 0.1 + 0.1 * rng.uniform();
            const double phase = rng.uniform() * 2.0 * std::numbers::pi;
            for (std::size_t n = 0; n < buf.samples.size(); ++n)
                buf.samples[n] +=
                    amp * std::sin(2.0 * std::numbers::pi * f * n / rate + phase);
        }
        auto back = resample(resample(buf, 2 * rate), rate);
        REQUIRE(back.samples.size() >= buf.samples.size());
        double err = 0.0;
        std::size_t count = 0;
        // edges excluded: the kernel has no support past the signal ends
        for (std::size_t n = 200; n + 200 < buf.samples.size(); ++n, ++count) {
            const double d = back.samples[n] - buf.samples[n];
            err += d * d;
        }
        CHECK(std::sqrt(err / static_cast<double>(count)) < 1e-3);
    }
}
