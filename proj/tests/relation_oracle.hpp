/*
 * Copyright (C) 2026 The lfk Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Trail relations on a flat list encoding, kept apart from the library
// implementation. A trail {a => {b => * => c} => d} is [(a, d), (b, c)].

#ifndef LFK_TESTS_RELATION_ORACLE_HPP
#define LFK_TESTS_RELATION_ORACLE_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lfk/syntax.hpp"

namespace oracle {

using Step = std::pair<int, int>;
using List = std::vector<Step>;
using View = std::span<const Step>;

inline int code(const lfk::SourceType &t) {
  if (!t.is_base()) throw std::invalid_argument("oracle handles base types only");
  return static_cast<int>(t.base);
}

inline List to_list(const lfk::TrailType &mu) {
  List out;
  for (const lfk::TrailType *p = &mu; !p->is_empty(); p = p->next.get())
    out.emplace_back(code(*p->in), code(*p->out));
  return out;
}

inline bool id_cont_type(int t, View mu, int t2) {
  if (mu.empty()) return t == t2;
  return mu.size() == 1 && mu[0] == Step{t, t2};
}

inline bool compatible(View mu1, View mu2, View mu3) {
  if (mu1.empty()) return std::equal(mu2.begin(), mu2.end(), mu3.begin(), mu3.end());
  if (mu2.empty()) return std::equal(mu1.begin(), mu1.end(), mu3.begin(), mu3.end());
  if (mu3.empty()) return false;
  return mu1[0] == mu3[0] && compatible(mu2, mu3.subspan(1), mu1.subspan(1));
}

/// Indexed list encodings of a trail domain.
class Domain {
 public:
  explicit Domain(const std::vector<lfk::TrailPtr> &trails) {
    for (std::size_t i = 0; i < trails.size(); ++i) {
      lists_.push_back(to_list(*trails[i]));
      index_[lists_.back()] = i;
    }
  }
  View list(std::size_t i) const { return lists_[i]; }
  std::size_t index(const lfk::TrailType &mu) const { return index_.at(to_list(mu)); }
  std::size_t size() const { return lists_.size(); }

 private:
  std::vector<List> lists_;
  std::map<List, std::size_t> index_;
};

}  // namespace oracle

#endif  // LFK_TESTS_RELATION_ORACLE_HPP
