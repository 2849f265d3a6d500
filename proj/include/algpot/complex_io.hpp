// Copyright 2026 The algpot Authors
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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "algpot/expr.hpp"
#include "algpot/numeric.hpp"

namespace algpot {

/// Accepts "1.5", "-2i", "i", "3-4i", "1e-3+2.5e1i", "(1,2)".
Complex parse_complex(std::string_view text);

/// Shortest round-trip decimal form: "1", "-0.5i", "3-4i".
std::string format_complex(Complex z);

/// One complex vector per non-empty line, components separated by blanks
/// or commas; `#` starts a comment.
std::vector<CVector> parse_vectors(std::string_view text);

/// Initial data for `simulate`: lines "q ...", "p ...", optional "w ...".
struct StateInput {
  CVector q;
  CVector p;
  std::optional<CVector> w;
};

StateInput parse_state(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace algpot
