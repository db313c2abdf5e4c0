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

// numfmt.hpp: round-trip decimal formatting for CSV output

#pragma once

#include <string>

namespace memkernel {

// Shortest decimal string that parses back to the same double.
std::string shortest(double x);
// 17 significant digits.
std::string sig17(double x);

}  // namespace memkernel
