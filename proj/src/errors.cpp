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

#include "qleak/errors.hpp"

namespace qleak {

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Syntax: return "SyntaxError";
        case ErrorCode::UnsupportedGate: return "UnsupportedGate";
        case ErrorCode::Index: return "IndexError";
        case ErrorCode::Dimension: return "DimensionError";
        case ErrorCode::Capacity: return "CapacityError";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::ProbeUnavailable: return "ProbeUnavailable";
        case ErrorCode::EmptyCorpus: return "EmptyCorpus";
        case ErrorCode::InsufficientNeighbors: return "InsufficientNeighbors";
        case ErrorCode::EmptyDistribution: return "EmptyDistribution";
        case ErrorCode::MissingReference: return "MissingReference";
        case ErrorCode::UncoveredLabel: return "UncoveredLabel";
        case ErrorCode::Io: return "IoError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

}  // namespace qleak
