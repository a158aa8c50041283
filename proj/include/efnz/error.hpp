#ifndef EFNZ_ERROR_HPP
#define EFNZ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace efnz {

// Invalid parameters, malformed experiment configs, invalid edits.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Tensor shape mismatches and invalid shapes.
class ShapeError : public std::runtime_error {
public:
    explicit ShapeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Decomposition failures, non-finite values, division by zero sigma.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unknown condition label or missing unconditional member.
class ConditionError : public std::runtime_error {
public:
    explicit ConditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad magic/version or truncated latent-code files.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Latent code used with a schedule it was not extracted under.
class IncompatibleLatentError : public std::runtime_error {
public:
    explicit IncompatibleLatentError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace efnz

#endif  // EFNZ_ERROR_HPP
