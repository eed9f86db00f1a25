#pragma once

#include <stdexcept>
#include <string>

namespace bpbe {

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct NonSquareBlock : std::runtime_error {
    explicit NonSquareBlock(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeMismatch : std::runtime_error {
    explicit ShapeMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct SizeMismatch : std::runtime_error {
    explicit SizeMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct CountMismatch : std::runtime_error {
    explicit CountMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct CorruptStream : std::runtime_error {
    explicit CorruptStream(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bpbe
