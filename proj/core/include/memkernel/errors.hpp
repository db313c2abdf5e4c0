// Copyright 2026 The memkernel Authors
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

namespace memkernel {

enum class ErrorCode {
  InvalidKernel,
  NotPointwiseEvaluable,
  InvalidStep,
  HistoryUnavailable,
  InvalidWaveform,
  InvalidLadder,
  DegenerateSpectrum,
  ComplexPole,
  SingularResolvent,
  InvalidFraction,
  NotSteady,
  ZeroField,
  GapTooSmall,
  InvalidProblem,
  OpenCycle,
  MultipleTurningPoints,
  NotCyclic,
  NonHermitianPorts,
  NonpositiveEta,
  ConfigError,
  IoError,
};

const char* error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace memkernel
