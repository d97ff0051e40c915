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

#ifndef LFK_RELATIONS_HPP
#define LFK_RELATIONS_HPP

#include <cstddef>
#include <vector>

#include "lfk/syntax.hpp"

namespace lfk {

struct TrailSolverBudget {
  std::size_t max_depth = 4;
};

/// Holds when the identity continuation k_id can be given the type
/// t -> mu -> t2.
bool id_cont_type(const SourceType &t, const TrailType &mu, const SourceType &t2);

/// Holds when composing a trail of type mu1 with one of type mu2 yields a
/// trail of type mu3.
bool compatible(const TrailType &mu1, const TrailType &mu2, const TrailType &mu3);

/// All mu3 with trail_depth(mu3) <= budget.max_depth such that
/// compatible(mu1, mu2, mu3). Ordered by size, smallest first.
std::vector<TrailPtr> solve_compatible_third(const TrailPtr &mu1, const TrailPtr &mu2,
                                             TrailSolverBudget budget = {});

/// All mu2 with bounded depth such that compatible(mu1, mu2, mu3).
std::vector<TrailPtr> solve_compatible_second(const TrailPtr &mu1, const TrailPtr &mu3,
                                              TrailSolverBudget budget = {});

/// All mu1 with bounded depth such that compatible(mu1, mu2, mu3).
std::vector<TrailPtr> solve_compatible_first(const TrailPtr &mu2, const TrailPtr &mu3,
                                             TrailSolverBudget budget = {});

/// Every trail type of depth <= max_depth whose components are drawn from
/// `bases`.
std::vector<TrailPtr> enumerate_trails(std::size_t max_depth,
                                       const std::vector<TypePtr> &bases);

}  // namespace lfk

#endif  // LFK_RELATIONS_HPP
