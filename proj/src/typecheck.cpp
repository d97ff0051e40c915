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

#include "lfk/typecheck.hpp"

#include "engine.hpp"
#include "json.hpp"

namespace lfk {

bool operator==(const Judgment &a, const Judgment &b) {
  return same_type(a.ty, b.ty) && same_trail(a.mu_alpha, b.mu_alpha) &&
         same_type(a.alpha, b.alpha) && same_trail(a.mu_beta, b.mu_beta) &&
         same_type(a.beta, b.beta);
}

std::string to_string(const Judgment &j) {
  return to_string(*j.ty) + ", " + to_string(*j.mu_alpha) + ", " + to_string(*j.alpha) + ", " +
         to_string(*j.mu_beta) + ", " + to_string(*j.beta);
}

TypeEnv TypeEnv::extended(std::string name, TypePtr ty) const {
  TypeEnv out = *this;
  out.bindings_.emplace_back(std::move(name), std::move(ty));
  return out;
}

const TypePtr *TypeEnv::lookup(const std::string &name) const {
  for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it)
    if (it->first == name) return &it->second;
  return nullptr;
}

std::string to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnboundVariable:
      return "UnboundVariable";
    case ErrorKind::Mismatch:
      return "Mismatch";
    case ErrorKind::IdContTypeFails:
      return "IdContTypeFails";
    case ErrorKind::CompatibleFails:
      return "CompatibleFails";
    case ErrorKind::NeedsAnnotation:
      return "NeedsAnnotation";
    case ErrorKind::PureArrowInOriginalSystem:
      return "PureArrowInOriginalSystem";
    case ErrorKind::PurityMismatch:
      return "PurityMismatch";
  }
  return "?";
}

TypeError::TypeError(ErrorKind kind, Loc loc, std::string details)
    : std::runtime_error(to_string(kind) + " at " + to_string(loc) + ": " + details),
      kind_(kind),
      loc_(loc),
      details_(std::move(details)) {}

std::string TypeError::to_json() const {
  nlohmann::json j;
  j["kind"] = to_string(kind_);
  j["location"] = to_string(loc_);
  j["details"] = details_;
  return j.dump();
}

Judgment verify(const TypeEnv &env, const ExprPtr &e, const std::optional<Judgment> &requested,
                const CheckOptions &opts) {
  detail::EngineOptions eo;
  eo.system = detail::System::Original;
  eo.check = opts;
  eo.require_control_annotations = true;
  eo.requested = requested;
  return detail::run_engine(env, e, eo).elaboration.derivation.judgment;
}

InferResult infer(const TypeEnv &env, const ExprPtr &e, const CheckOptions &opts) {
  detail::EngineOptions eo;
  eo.system = detail::System::Original;
  eo.check = opts;
  auto r = detail::run_engine(env, e, eo);
  Judgment j = r.elaboration.derivation.judgment;
  return {j, std::move(r.elaboration)};
}

}  // namespace lfk
