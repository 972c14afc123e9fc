#pragma once

#include <stdexcept>
#include <string>

namespace ssmseg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FileNotFound : Error {
    explicit FileNotFound(const std::string& path)
        : Error("file not found: " + path) {}
};

struct CorruptHeader : Error {
    using Error::Error;
};

struct UnsupportedEncoding : Error {
    using Error::Error;
};

struct AudioTooShort : Error {
    using Error::Error;
};

struct EmptyRange : Error {
    using Error::Error;
};

struct DegenerateModel : Error {
    using Error::Error;
};

struct KernelTooLarge : Error {
    using Error::Error;
};

struct ContextOutOfAudio : Error {
    using Error::Error;
};

struct PointOutOfRange : Error {
    using Error::Error;
};

struct InvalidScript : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace ssmseg
