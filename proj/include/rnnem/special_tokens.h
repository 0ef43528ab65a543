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

#ifndef RNNEM_SPECIAL_TOKENS_H_
#define RNNEM_SPECIAL_TOKENS_H_

#include <string_view>

namespace rnnem {

// Every word vocabulary starts with these two entries.
inline constexpr int kPadIndex = 0;
inline constexpr int kUnkIndex = 1;
inline constexpr std::string_view kPadToken = "<pad>";
inline constexpr std::string_view kUnkToken = "<unk>";

}  // namespace rnnem

#endif  // RNNEM_SPECIAL_TOKENS_H_
