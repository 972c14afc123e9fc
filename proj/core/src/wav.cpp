#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

#include "ssmseg/audio.hpp"
#include "ssmseg/errors.hpp"

namespace ssmseg {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t read_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (p[1] << 8) | (p[2] << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

double decode_sample(const std::uint8_t* p, int bits, std::uint16_t format) {
    if (format == kFormatFloat) {
        float f;
        std::memcpy(&f, p, 4);
        return std::clamp(static_cast<double>(f), -1.0, 1.0);
    }
    switch (bits) {
        case 8:
            // 8-bit WAV is unsigned
            return (static_cast<int>(p[0]) - 128) / 128.0;
        case 16: {
            auto v = static_cast<std::int16_t>(p[0] | (p[1] << 8));
            return v / 32768.0;
        }
        case 24: {
            std::int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
            if (v & 0x800000) v |= ~0xFFFFFF;
            return v / 8388608.0;
        }
        case 32: {
            std::int32_t v;
            std::memcpy(&v, p, 4);
            return v / 2147483648.0;
        }
        default:
            throw UnsupportedEncoding("unsupported bit depth: " + std::to_string(bits));
    }
}

}  // namespace

AudioBuffer load_wav(const std::string& path, int target_rate) {
    if (!std::filesystem::exists(path)) throw FileNotFound(path);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFound(path);

    std::vector<std::uint8_t> raw((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
    if (raw.size() < 12 || std::memcmp(raw.data(), "RIFF", 4) != 0 ||
        std::memcmp(raw.data() + 8, "WAVE", 4) != 0)
        throw CorruptHeader("not a RIFF/WAVE file: " + path);

    std::uint16_t format = 0, channels = 0, bits = 0;
    std::uint32_t rate = 0;
    bool have_fmt = false;
    const std::uint8_t* data = nullptr;
    std::size_t data_len = 0;

    std::size_t pos = 12;
    while (pos + 8 <= raw.size()) {
        const char* id = reinterpret_cast<const char*>(raw.data() + pos);
        std::uint32_t len = read_u32(raw.data() + pos + 4);
        std::size_t body = pos + 8;
        if (body + len > raw.size()) {
            // tolerate a truncated final data chunk length field only for data
            if (std::memcmp(id, "data", 4) == 0) len = static_cast<std::uint32_t>(raw.size() - body);
            else throw CorruptHeader("chunk overruns file: " + path);
        }
        if (std::memcmp(id, "fmt ", 4) == 0) {
            if (len < 16) throw CorruptHeader("fmt chunk too small: " + path);
            format = read_u16(raw.data() + body);
            channels = read_u16(raw.data() + body + 2);
            rate = read_u32(raw.data() + body + 4);
            bits = read_u16(raw.data() + body + 14);
            if (format == kFormatExtensible && len >= 40)
                format = read_u16(raw.data() + body + 24);
            have_fmt = true;
        } else if (std::memcmp(id, "data", 4) == 0) {
            data = raw.data() + body;
            data_len = len;
        }
        pos = body + len + (len & 1);  // chunks are word-aligned
    }

    if (!have_fmt || data == nullptr)
        throw CorruptHeader("missing fmt or data chunk: " + path);
    if (format != kFormatPcm && format != kFormatFloat)
        throw UnsupportedEncoding("compressed WAV not supported (format tag " +
                                  std::to_string(format) + "): " + path);
    if (format == kFormatFloat && bits != 32)
        throw UnsupportedEncoding("only 32-bit float WAV supported: " + path);
    if (channels < 1 || channels > 2)
        throw UnsupportedEncoding("only mono/stereo supported, got " +
                                  std::to_string(channels) + " channels: " + path);
    if (rate == 0) throw CorruptHeader("zero sample rate: " + path);

    const std::size_t bytes_per = bits / 8;
    if (bytes_per == 0) throw CorruptHeader("zero bit depth: " + path);
    const std::size_t frame_bytes = bytes_per * channels;
    const std::size_t frames = data_len / frame_bytes;
    if (frames == 0) throw CorruptHeader("empty data chunk: " + path);

    AudioBuffer out;
    out.sample_rate = static_cast<int>(rate);
    out.source_path = path;
    out.samples.resize(frames);
    for (std::size_t i = 0; i < frames; ++i) {
        const std::uint8_t* p = data + i * frame_bytes;
        double s = decode_sample(p, bits, format);
        if (channels == 2) s = 0.5 * (s + decode_sample(p + bytes_per, bits, format));
        out.samples[i] = s;
    }

    return resample(out, target_rate);
}

void save_wav(const std::string& path, const AudioBuffer& buffer) {
    const std::uint32_t n = static_cast<std::uint32_t>(buffer.samples.size());
    const std::uint32_t rate = static_cast<std::uint32_t>(buffer.sample_rate);
    const std::uint32_t data_len = n * 2;

    std::vector<std::uint8_t> out;
    out.reserve(44 + data_len);
    auto put_u32 = [&](std::uint32_t v) {
        out.push_back(v & 0xFF);
        out.push_back((v >> 8) & 0xFF);
        out.push_back((v >> 16) & 0xFF);
        out.push_back((v >> 24) & 0xFF);
    };
    auto put_u16 = [&](std::uint16_t v) {
        out.push_back(v & 0xFF);
        out.push_back((v >> 8) & 0xFF);
    };
    auto put_tag = [&](const char* t) { out.insert(out.end(), t, t + 4); };

    put_tag("RIFF");
    put_u32(36 + data_len);
    put_tag("WAVE");
    put_tag("fmt ");
    put_u32(16);
    put_u16(kFormatPcm);
    put_u16(1);
    put_u32(rate);
    put_u32(rate * 2);
    put_u16(2);
    put_u16(16);
    put_tag("data");
    put_u32(data_len);
    for (double s : buffer.samples) {
        double c = std::clamp(s, -1.0, 1.0);
        auto v = static_cast<std::int16_t>(std::lround(c * 32767.0));
        put_u16(static_cast<std::uint16_t>(v));
    }

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write: " + path);
    f.write(reinterpret_cast<const char*>(out.data()),
            static_cast<std::streamsize>(out.size()));
}

}  // namespace ssmseg
