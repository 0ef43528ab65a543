// Copyright 2026 The RNN-EM Tagger Authors.
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

#ifndef RNNEM_TEXT_UTIL_H_
#define RNNEM_TEXT_UTIL_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rnnem {

// Shortest decimal form that parses back to the identical double.
std::string FormatDouble(double value);

// Whole-string parses; throw std::invalid_argument naming `what` on failure.
double ParseDouble(std::string_view text, std::string_view what = "number");
std::uint64_t ParseUint(std::string_view text, std::string_view what = "integer");

std::vector<std::string> SplitString(std::string_view text, char sep);
std::string_view Trim(std::string_view text);

}  // namespace rnnem

#endif  // RNNEM_TEXT_UTIL_H_
