/*
 * Copyright (c) 2026 The sdapsim authors
 *
 * SPDX-License-Identifier: GPL-2.0-only
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sdap
{

enum class ErrorCode
{
    InsufficientBytes,
    MalformedHeader,
    UnsupportedProtocol,
    EmptyPacket,
    MalformedStack,
    LengthUnderflow,
    MalformedMapping,
    QfiOutOfRange,
    ConfigError,
    ParseError,
};

constexpr std::string_view
ToString(ErrorCode code)
{
    switch (code)
    {
    case ErrorCode::InsufficientBytes:
        return "InsufficientBytes";
    case ErrorCode::MalformedHeader:
        return "MalformedHeader";
    case ErrorCode::UnsupportedProtocol:
        return "UnsupportedProtocol";
    case ErrorCode::EmptyPacket:
        return "EmptyPacket";
    case ErrorCode::MalformedStack:
        return "MalformedStack";
    case ErrorCode::LengthUnderflow:
        return "LengthUnderflow";
    case ErrorCode::MalformedMapping:
        return "MalformedMapping";
    case ErrorCode::QfiOutOfRange:
        return "QfiOutOfRange";
    case ErrorCode::ConfigError:
        return "ConfigError";
    case ErrorCode::ParseError:
        return "ParseError";
    }
    return "Unknown";
}

/// Base exception for every failure raised by the library. The code is
/// stable and is what tests and the CLI dispatch on.
class Error : public std::runtime_error
{
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(ToString(code)) + ": " + what),
          code_(code)
    {
    }

    ErrorCode code() const noexcept
    {
        return code_;
    }

  private:
    ErrorCode code_;
};

/// Mapping-string parse failure; position is the byte offset into the
/// configuration string where the offending token starts.
class MalformedMappingError : public Error
{
  public:
    MalformedMappingError(std::size_t position, std::string reason)
        : Error(ErrorCode::MalformedMapping,
                "at offset " + std::to_string(position) + ": " + reason),
          position_(position),
          reason_(std::move(reason))
    {
    }

    std::size_t position() const noexcept
    {
        return position_;
    }

    const std::string& reason() const noexcept
    {
        return reason_;
    }

  private:
    std::size_t position_;
    std::string reason_;
};

} // namespace sdap
