// Copyright 2026 The qleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qleak {

/// Error categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
    Syntax = 1,
    UnsupportedGate,
    Index,
    Dimension,
    Capacity,
    TooFewSamples,
    ProbeUnavailable,
    EmptyCorpus,
    InsufficientNeighbors,
    EmptyDistribution,
    MissingReference,
    UncoveredLabel,
    Io,
    InvalidArgument,
};

const char *error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

template <ErrorCode C>
class TypedError : public Error {
public:
    explicit TypedError(const std::string &message) : Error(C, message) {}
};

// Parse errors carry the 1-based source line.
class SyntaxError : public Error {
public:
    SyntaxError(int line, const std::string &message)
        : Error(ErrorCode::Syntax, "line " + std::to_string(line) + ": " + message), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

using UnsupportedGate = TypedError<ErrorCode::UnsupportedGate>;
using IndexError = TypedError<ErrorCode::Index>;
using DimensionError = TypedError<ErrorCode::Dimension>;
using CapacityError = TypedError<ErrorCode::Capacity>;
using TooFewSamples = TypedError<ErrorCode::TooFewSamples>;
using ProbeUnavailable = TypedError<ErrorCode::ProbeUnavailable>;
using EmptyCorpus = TypedError<ErrorCode::EmptyCorpus>;
using InsufficientNeighbors = TypedError<ErrorCode::InsufficientNeighbors>;
using EmptyDistribution = TypedError<ErrorCode::EmptyDistribution>;
using MissingReference = TypedError<ErrorCode::MissingReference>;
using UncoveredLabel = TypedError<ErrorCode::UncoveredLabel>;
using IoError = TypedError<ErrorCode::Io>;
using InvalidArgument = TypedError<ErrorCode::InvalidArgument>;

}  // namespace qleak
