// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace hcs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HCS_DEFINE_ERROR(name)                 \
  class name : public Error {                  \
   public:                                     \
    explicit name(const std::string& what)     \
        : Error(#name ": " + what) {}          \
  };

HCS_DEFINE_ERROR(InvalidArgument)
HCS_DEFINE_ERROR(InvalidCell)
HCS_DEFINE_ERROR(InvalidProfile)
HCS_DEFINE_ERROR(InvalidDefect)
HCS_DEFINE_ERROR(OutOfDomain)
HCS_DEFINE_ERROR(DegenerateLambda)
HCS_DEFINE_ERROR(ScanBudgetExceeded)
HCS_DEFINE_ERROR(InsufficientRange)
HCS_DEFINE_ERROR(WindowTooWide)
HCS_DEFINE_ERROR(NotAnEigenvalue)
HCS_DEFINE_ERROR(MeshTooLarge)
HCS_DEFINE_ERROR(NoConvergence)
HCS_DEFINE_ERROR(DegenerateSpace)
HCS_DEFINE_ERROR(InsufficientSamples)

#undef HCS_DEFINE_ERROR

}  // namespace hcs
