// Copyright 2026 The nosig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nosig {

enum class ErrorKind {
    DimensionMismatch,
    NotHermitian,
    NotUnitary,
    InvalidState,
    InvalidChannel,
    InvalidArgument,
    BudgetExceeded,
    UnsupportedFieldClass,
    UnsupportedStatistics,
    InternalInconsistency,
    ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::InvalidChannel: return "InvalidChannel";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::UnsupportedFieldClass: return "UnsupportedFieldClass";
    case ErrorKind::UnsupportedStatistics: return "UnsupportedStatistics";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library. `kind()` is the contract; the message
/// is for humans.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message),
          kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

#define NOSIG_REQUIRE(cond, kind, msg)                                         \
    do {                                                                       \
        if (!(cond)) {                                                         \
            throw ::nosig::Error((kind), (msg));                               \
        }                                                                      \
    } while (false)

} // namespace nosig
