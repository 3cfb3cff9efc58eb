// Copyright 2026 The qconvert Authors
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

#ifndef QCONVERT_ERROR_HPP
#define QCONVERT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qconvert {

enum class ErrorCode {
    InvalidArgument = 1,
    OutOfRange,
    NotHermitian,
    NotUnitary,
    NotSeparable,
    NotProductDiagonal,
    NotTracePreserving,
    BadWeights,
    NotEntangled,
    Infeasible,
    SamplingExhausted,
    Internal,
};

const char *error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above, so the
/// C layer can translate exceptions without string matching.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

}  // namespace qconvert

#endif
