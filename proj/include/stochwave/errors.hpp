// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace stochwave {

//! Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

//! An argument violates its documented precondition (e.g. lambda <= 0).
class ParameterError : public Error {
public:
    using Error::Error;
};

//! Array lengths or grids do not agree.
class ShapeError : public Error {
public:
    using Error::Error;
};

//! Non-finite values, blow-up, or a root finder that failed to converge.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what,
                          std::optional<std::size_t> step = std::nullopt)
        : Error(step ? what + " (step " + std::to_string(*step) + ")" : what),
          step_(step)
    {
    }

    //! Time step at which a path simulation aborted, when known.
    std::optional<std::size_t> step() const noexcept { return step_; }

private:
    std::optional<std::size_t> step_;
};

//! Malformed or unknown configuration entry.
class ConfigError : public Error {
public:
    ConfigError(const std::string& key, const std::string& what)
        : Error(key.empty() ? what : key + ": " + what), key_(key)
    {
    }

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class IoError : public Error {
public:
    using Error::Error;
};

//! An operation was called on data that lacks what it needs.
class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace stochwave
