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

#include "lfk/relations.hpp"

#include <algorithm>

namespace lfk {

bool id_cont_type(const SourceType &t, const TrailType &mu, const SourceType &t2) {
  if (mu.is_empty()) {
    return t == t2;
  }
  return t == *mu.in && t2 == *mu.out && mu.next->is_empty();
}

bool compatible(const TrailType &mu1, const TrailType &mu2, const TrailType &mu3) {
  if (mu1.is_empty()) {
    return mu2 == mu3;
  }
  if (mu2.is_empty()) {
    return mu1 == mu3;
  }
  if (mu3.is_empty()) {
    return false;
  }
  return *mu1.in == *mu3.in && *mu1.out == *mu3.out && compatible(mu2, *mu3.next, *mu1.next);
}

namespace {

using Trails = std::vector<TrailPtr>;

void add_unique(Trails &out, const TrailPtr &t) {
  for (const auto &u : out) {
    if (*u == *t) {
      return;
    }
  }
  out.push_back(t);
}

bool fits(const TrailPtr &t, std::size_t depth) { return trail_depth(*t) <= depth; }

Trails third(const TrailPtr &mu1, const TrailPtr &mu2, std::size_t depth);
Trails second(const TrailPtr &mu1, const TrailPtr &mu3, std::size_t depth);
Trails first(const TrailPtr &mu2, const TrailPtr &mu3, std::size_t depth);

Trails third(const TrailPtr &mu1, const TrailPtr &mu2, std::size_t depth) {
  Trails out;
  if (mu1->is_empty()) {
    if (fits(mu2, depth)) {
      out.push_back(mu2);
    }
    return out;
  }
  if (mu2->is_empty()) {
    if (fits(mu1, depth)) {
      out.push_back(mu1);
    }
    return out;
  }
  if (depth == 0) {
    return out;
  }
  // mu3 = {in1 => n3 => out1} with compatible(mu2, n3, next1).
  for (const auto &n3 : second(mu2, mu1->next, depth - 1)) {
    add_unique(out, step_trail(mu1->in, n3, mu1->out));
  }
  return out;
}

Trails second(const TrailPtr &mu1, const TrailPtr &mu3, std::size_t depth) {
  Trails out;
  if (mu1->is_empty()) {
    if (fits(mu3, depth)) {
      out.push_back(mu3);
    }
    return out;
  }
  if (*mu1 == *mu3) {
    out.push_back(empty_trail());
  }
  if (mu3->is_empty() || !(*mu1->in == *mu3->in) || !(*mu1->out == *mu3->out)) {
    return out;
  }
  // mu2 non-empty: compatible(mu2, next3, next1).
  for (const auto &m2 : first(mu3->next, mu1->next, depth)) {
    if (!m2->is_empty()) {
      add_unique(out, m2);
    }
  }
  return out;
}

Trails first(const TrailPtr &mu2, const TrailPtr &mu3, std::size_t depth) {
  Trails out;
  if (*mu2 == *mu3) {
    out.push_back(empty_trail());
  }
  if (mu2->is_empty()) {
    if (fits(mu3, depth)) {
      add_unique(out, mu3);
    }
    return out;
  }
  if (mu3->is_empty() || depth == 0) {
    return out;
  }
  // mu1 = {in3 => n1 => out3} with compatible(mu2, next3, n1).
  for (const auto &n1 : third(mu2, mu3->next, depth - 1)) {
    add_unique(out, step_trail(mu3->in, n1, mu3->out));
  }
  return out;
}

void sort_by_size(Trails &ts) {
  std::stable_sort(ts.begin(), ts.end(), [](const TrailPtr &a, const TrailPtr &b) {
    return trail_size(*a) < trail_size(*b);
  });
}

}  // namespace

std::vector<TrailPtr> solve_compatible_third(const TrailPtr &mu1, const TrailPtr &mu2,
                                             TrailSolverBudget budget) {
  Trails out = third(mu1, mu2, budget.max_depth);
  sort_by_size(out);
  return out;
}

std::vector<TrailPtr> solve_compatible_second(const TrailPtr &mu1, const TrailPtr &mu3,
                                              TrailSolverBudget budget) {
  Trails out = second(mu1, mu3, budget.max_depth);
  sort_by_size(out);
  return out;
}

std::vector<TrailPtr> solve_compatible_first(const TrailPtr &mu2, const TrailPtr &mu3,
                                             TrailSolverBudget budget) {
  Trails out = first(mu2, mu3, budget.max_depth);
  sort_by_size(out);
  return out;
}

std::vector<TrailPtr> enumerate_trails(std::size_t max_depth,
                                       const std::vector<TypePtr> &bases) {
  std::vector<TrailPtr> out{empty_trail()};
  std::vector<TrailPtr> previous{empty_trail()};
  for (std::size_t d = 1; d <= max_depth; ++d) {
    std::vector<TrailPtr> layer;
    for (const auto &in : bases) {
      for (const auto &next : previous) {
        for (const auto &outer : bases) {
          layer.push_back(step_trail(in, next, outer));
        }
      }
    }
    out.insert(out.end(), layer.begin(), layer.end());
    previous = std::move(layer);
  }
  return out;
}

}  // namespace lfk
