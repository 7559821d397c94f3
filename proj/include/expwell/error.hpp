// Copyright 2026 The expwell Authors
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

namespace expwell {

// Every failure raised by the library derives from Error. The C layer maps
// each concrete type onto one status code, see expwell.h.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define EXPWELL_DEFINE_ERROR(Name)                 \
  class Name : public Error {                      \
   public:                                         \
    explicit Name(const std::string& what_arg)     \
        : Error(#Name ": " + what_arg) {}          \
  }

EXPWELL_DEFINE_ERROR(InvalidArgument);
EXPWELL_DEFINE_ERROR(PoleError);
EXPWELL_DEFINE_ERROR(ConvergenceError);
EXPWELL_DEFINE_ERROR(NearIntegerOrderError);
EXPWELL_DEFINE_ERROR(InterlacingViolation);
EXPWELL_DEFINE_ERROR(NoGroundState);
EXPWELL_DEFINE_ERROR(QuadratureNotConverged);
EXPWELL_DEFINE_ERROR(DegenerateWronskian);
EXPWELL_DEFINE_ERROR(PoleMismatch);
EXPWELL_DEFINE_ERROR(NodeSingularity);
EXPWELL_DEFINE_ERROR(UndefinedAtOrigin);
EXPWELL_DEFINE_ERROR(InsufficientStates);
EXPWELL_DEFINE_ERROR(BracketError);
EXPWELL_DEFINE_ERROR(StepSizeUnderflow);

#undef EXPWELL_DEFINE_ERROR

}  // namespace expwell
