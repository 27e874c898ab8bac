#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace saito {

// Malformed polynomial text.
class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& msg, std::size_t position)
        : std::invalid_argument(msg + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// A mathematical hypothesis of an operation does not hold for the input
// (non-quasihomogeneous f, non-isolated singularity, non-semisimple point, ...).
class PreconditionError : public std::runtime_error {
public:
    PreconditionError(std::string kind, const std::string& detail)
        : std::runtime_error(kind + (detail.empty() ? "" : ": " + detail)), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

// An s-truncated computation dropped nonzero terms where a complete answer was required.
class TruncationExhausted : public std::runtime_error {
public:
    explicit TruncationExhausted(const std::string& detail)
        : std::runtime_error("truncation exhausted: " + detail) {}
};

}  // namespace saito
