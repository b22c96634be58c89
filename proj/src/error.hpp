// Copyright 2026 The gapstab Authors
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

namespace gapstab {

enum class ErrorKind {
    InvalidArgument,
    InvalidPvm,
    InvalidRepresentation,
    InvalidField,
    NonGenerating,
    RankDeficient,
    Resource,
    SamplingFailure,
    PreconditionViolation,
    Degenerate,
    Input,
    BoundViolation,
    Internal,
};

const char *error_kind_name(ErrorKind kind);

/// Every failure raised by the library. The kind selects the C API status and
/// the CLI exit code; the message carries the measured residual when relevant.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message) : std::runtime_error(message), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &message) { throw Error(kind, message); }

inline void require(bool condition, ErrorKind kind, const std::string &message) {
    if (!condition) fail(kind, message);
}

/// Sampling failure that remembers the best value reached before giving up.
class SamplingError : public Error {
   public:
    SamplingError(const std::string &message, double best)
        : Error(ErrorKind::SamplingFailure, message), best_(best) {}
    double best() const noexcept { return best_; }

   private:
    double best_;
};

}  // namespace gapstab
