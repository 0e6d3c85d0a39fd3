#pragma once

#include <stdexcept>
#include <string>

namespace patchlens {

// Base class for everything the toolkit throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Dimension/shape contract violations in the numeric kernels and model.
class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& msg) : Error(msg) {}
};

// Malformed input files (vocab, TSV, dataset, result files).
class FormatError : public Error {
public:
    explicit FormatError(const std::string& msg) : Error(msg) {}
};

// Weights archive problems; the message names the offending tensor.
class LoadError : public Error {
public:
    explicit LoadError(const std::string& msg) : Error(msg) {}
};

// Patch spec not resolvable against the source cache or the running input.
class PatchError : public Error {
public:
    explicit PatchError(const std::string& msg) : Error(msg) {}
};

// Non-finite values where finite ones are required.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

// |score_perturbed - score_baseline| below impact_epsilon; the triple is
// skipped by the caller rather than emitting an unstable ratio.
class DegenerateTripleError : public Error {
public:
    explicit DegenerateTripleError(const std::string& msg) : Error(msg) {}
};

// Filesystem failures.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace patchlens
