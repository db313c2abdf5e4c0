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

#include "memkernel/errors.hpp"

namespace memkernel {

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidKernel: return "InvalidKernel";
    case ErrorCode::NotPointwiseEvaluable: return "NotPointwiseEvaluable";
    case ErrorCode::InvalidStep: return "InvalidStep";
    case ErrorCode::HistoryUnavailable: return "HistoryUnavailable";
    case ErrorCode::InvalidWaveform: return "InvalidWaveform";
    case ErrorCode::InvalidLadder: return "InvalidLadder";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::ComplexPole: return "ComplexPole";
    case ErrorCode::SingularResolvent: return "SingularResolvent";
    case ErrorCode::InvalidFraction: return "InvalidFraction";
    case ErrorCode::NotSteady: return "NotSteady";
    case ErrorCode::ZeroField: return "ZeroField";
    case ErrorCode::GapTooSmall: return "GapTooSmall";
    case ErrorCode::InvalidProblem: return "InvalidProblem";
    case ErrorCode::OpenCycle: return "OpenCycle";
    case ErrorCode::MultipleTurningPoints: return "MultipleTurningPoints";
    case ErrorCode::NotCyclic: return "NotCyclic";
    case ErrorCode::NonHermitianPorts: return "NonHermitianPorts";
    case ErrorCode::NonpositiveEta: return "NonpositiveEta";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Error";
}

}  // namespace memkernel
