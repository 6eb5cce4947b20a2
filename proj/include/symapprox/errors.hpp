// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace symapprox {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: size mismatches, out-of-range parameters.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Inputs outside the domain on which an operation is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input larger than the hard limit of an exponential-time routine.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

/// A table or enumeration would exceed its configured capacity.
class CapacityError : public Error {
public:
    CapacityError(const std::string& what, std::uint64_t required)
        : Error(what), required_(required) {}

    /// Capacity that would have been needed; 0 when it overflows 64 bits.
    std::uint64_t required() const noexcept { return required_; }

private:
    std::uint64_t required_;
};

/// Invalid experiment configuration or unknown names.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Tabulation could not be completed.
class BuildError : public Error {
public:
    using Error::Error;
};

/// A vector of power sums is not the image of a real multiset.
class InversionError : public Error {
public:
    using Error::Error;
};

/// A target function produced a non-finite value.
class EvaluationError : public Error {
public:
    using Error::Error;
};

} // namespace symapprox
