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

#include "lexnorm/align.h"

#include <algorithm>

#include "lexnorm/error.h"
#include "lexnorm/unicode.h"

namespace lexnorm {

const char* edit_kind_name(EditKind kind) {
  switch (kind) {
    case EditKind::kMatch: return "match";
    case EditKind::kSubstitute: return "substitute";
    case EditKind::kDelete: return "delete";
    case EditKind::kInsert: return "insert";
    case EditKind::kTranspose: return "transpose";
  }
  return "?";
}

EditScript char_align(std::string_view raw, std::string_view norm) {
  return char_align(unicode::decode(raw), unicode::decode(norm));
}

EditScript char_align(std::u32string_view raw, std::u32string_view norm) {
  const std::size_t n = raw.size();
  const std::size_t m = norm.size();
  const std::size_t w = m + 1;
  std::vector<std::uint32_t> d((n + 1) * w);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& {
    return d[i * w + j];
  };
  auto transposable = [&](std::size_t i, std::size_t j) {
    return i >= 2 && j >= 2 && raw[i - 1] == norm[j - 2] &&
           raw[i - 2] == norm[j - 1];
  };

  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = static_cast<std::uint32_t>(i);
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      std::uint32_t best = at(i - 1, j - 1) + (raw[i - 1] != norm[j - 1]);
      best = std::min({best, at(i, j - 1) + 1, at(i - 1, j) + 1});
      if (transposable(i, j)) best = std::min(best, at(i - 2, j - 2) + 1);
      at(i, j) = best;
    }
  }

  EditScript script;
  script.cost = at(n, m);
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const std::uint32_t here = at(i, j);
    if (i > 0 && j > 0 && raw[i - 1] == norm[j - 1] &&
        here == at(i - 1, j - 1)) {
      script.ops.push_back({EditKind::kMatch, raw[i - 1], norm[j - 1], j - 1});
      --i, --j;
    } else if (transposable(i, j) && here == at(i - 2, j - 2) + 1) {
      script.ops.push_back(
          {EditKind::kTranspose, norm[j - 1], norm[j - 2], j - 2});
      i -= 2, j -= 2;
    } else if (i > 0 && j > 0 && here == at(i - 1, j - 1) + 1) {
      script.ops.push_back(
          {EditKind::kSubstitute, raw[i - 1], norm[j - 1], j - 1});
      --i, --j;
    } else if (j > 0 && here == at(i, j - 1) + 1) {
      script.ops.push_back({EditKind::kDelete, 0, norm[j - 1], j - 1});
      --j;
    } else {
      script.ops.push_back({EditKind::kInsert, raw[i - 1], 0, j});
      --i;
    }
  }
  std::reverse(script.ops.begin(), script.ops.end());
  return script;
}

std::size_t osa_distance(std::u32string_view raw, std::u32string_view norm) {
  const std::size_t m = norm.size();
  std::vector<std::size_t> prev2(m + 1), prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= raw.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t best = prev[j - 1] + (raw[i - 1] != norm[j - 1]);
      best = std::min({best, cur[j - 1] + 1, prev[j] + 1});
      if (i >= 2 && j >= 2 && raw[i - 1] == norm[j - 2] &&
          raw[i - 2] == norm[j - 1]) {
        best = std::min(best, prev2[j - 2] + 1);
      }
      cur[j] = best;
    }
    std::swap(prev2, prev);
    std::swap(prev, cur);
  }
  return prev[m];
}

std::u32string apply_script(const EditScript& script,
                            std::u32string_view norm) {
  std::u32string raw;
  std::size_t j = 0;
  auto expect = [&](const EditOp& op, std::size_t pos, std::size_t width) {
    if (op.position != pos || pos + width > norm.size()) {
      throw DataError("edit script does not fit the normalized form");
    }
  };
  for (const EditOp& op : script.ops) {
    switch (op.kind) {
      case EditKind::kMatch:
      case EditKind::kSubstitute:
        expect(op, j, 1);
        if (norm[j] != op.norm_char) {
          throw DataError("edit script does not fit the normalized form");
        }
        raw.push_back(op.raw_char);
        ++j;
        break;
      case EditKind::kDelete:
        expect(op, j, 1);
        ++j;
        break;
      case EditKind::kInsert:
        expect(op, j, 0);
        raw.push_back(op.raw_char);
        break;
      case EditKind::kTranspose:
        expect(op, j, 2);
        raw.push_back(norm[j + 1]);
        raw.push_back(norm[j]);
        j += 2;
        break;
    }
  }
  if (j != norm.size()) {
    throw DataError("edit script does not cover the normalized form");
  }
  return raw;
}

}  // namespace lexnorm
