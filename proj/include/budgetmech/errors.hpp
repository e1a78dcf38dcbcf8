// Copyright 2026 The Authors.
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

#include <stdexcept>
#include <string>
#include <utility>

namespace budgetmech {

/// An exhaustive enumeration would exceed its configured size limit.
class GuardExceeded : public std::runtime_error {
 public:
  GuardExceeded(std::string guard, const std::string& what)
      : std::runtime_error(what), guard_(std::move(guard)) {}
  const std::string& guard() const { return guard_; }

 private:
  std::string guard_;
};

/// A valuation oracle does not belong to the class an algorithm requires.
class IncompatibleValuation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A verification routine's precondition property does not hold.
class PreconditionFailed : public std::runtime_error {
 public:
  PreconditionFailed(std::string property, const std::string& what)
      : std::runtime_error(what), property_(std::move(property)) {}
  const std::string& property() const { return property_; }

 private:
  std::string property_;
};

}  // namespace budgetmech
