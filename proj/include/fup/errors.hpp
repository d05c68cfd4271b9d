#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace fup {

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input (maps to CLI exit code 2).
struct usage_error : error {
    using error::error;
};

struct invalid_modulus_error : usage_error {
    using usage_error::usage_error;
};

struct not_irreducible_error : usage_error {
    using usage_error::usage_error;
};

struct horizontal_direction_error : usage_error {
    using usage_error::usage_error;
};

struct unsupported_case_error : usage_error {
    using usage_error::usage_error;
};

struct unsupported_lattice_error : usage_error {
    using usage_error::usage_error;
};

// A dense object would exceed the configured entry cap (CLI exit code 3).
struct resource_error : error {
    resource_error(const std::string& what, std::int64_t requested, std::int64_t cap)
        : error(what), requested(requested), cap(cap) {}
    std::int64_t requested;
    std::int64_t cap;
};

// An internal invariant or a guaranteed construction failed (CLI exit code 4).
struct theorem_violation_error : error {
    using error::error;
};

// A verified-support construction failed; carries the offending grid point if known.
struct construction_failed_error : error {
    explicit construction_failed_error(const std::string& what,
                                       std::optional<std::pair<std::int64_t, std::int64_t>> point = {})
        : error(what), offending_point(std::move(point)) {}
    std::optional<std::pair<std::int64_t, std::int64_t>> offending_point;
};

}  // namespace fup
