// Copyright 2026 The lexnorm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEXNORM_ALIGN_H_
#define LEXNORM_ALIGN_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lexnorm {

enum class EditKind { kMatch, kSubstitute, kDelete, kInsert, kTranspose };

const char* edit_kind_name(EditKind kind);

// One step of a script that rewrites a normalized form into its raw form.
//
//   kMatch       norm_char kept (raw_char == norm_char)
//   kSubstitute  norm_char replaced by raw_char
//   kDelete      norm_char dropped (raw_char == 0)
//   kInsert      raw_char inserted before norm position (norm_char == 0)
//   kTranspose   norm[position], norm[position + 1] swapped; norm_char is
//                norm[position] and raw_char is norm[position + 1]
//
// A zero character stands for "absent".
struct EditOp {
  EditKind kind;
  char32_t raw_char = 0;
  char32_t norm_char = 0;
  std::size_t position = 0;

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

struct EditScript {
  std::vector<EditOp> ops;
  std::size_t cost = 0;

  friend bool operator==(const EditScript&, const EditScript&) = default;
};

// Minimal unit-cost alignment with adjacent transpositions (optimal string
// alignment distance: no substring is edited twice). Ties in the backtrace
// prefer match, then transpose, substitute, delete, insert. Operates on
// scalar values; both inputs are UTF-8.
EditScript char_align(std::string_view raw, std::string_view norm);
EditScript char_align(std::u32string_view raw, std::u32string_view norm);

// Distance only; O(|raw| * |norm|) time, O(|norm|) extra memory.
std::size_t osa_distance(std::u32string_view raw, std::u32string_view norm);

// Replays `script` on `norm`. Throws DataError if the script does not fit.
std::u32string apply_script(const EditScript& script, std::u32string_view norm);

}  // namespace lexnorm

#endif  // LEXNORM_ALIGN_H_
