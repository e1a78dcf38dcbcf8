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

// Core value types: exact money on a finite cost grid, agent sets, outcomes.
//
// All money is an integer number of ticks. The budget B of an instance is
// exactly K ticks, where K is the grid resolution, so every cost, payment and
// budget comparison is exact integer arithmetic. Values of agent sets are
// exact rationals (GMP mpq).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace budgetmech {

using Rational = mpq_class;
using Valuation = Rational;

/// Upper bound on the number of agents any set representation supports.
inline constexpr std::size_t kMaxAgents = 31;

class Money {
 public:
  constexpr Money() = default;
  constexpr explicit Money(std::int64_t ticks) : ticks_(ticks) {
    if (ticks < 0) throw std::invalid_argument("money must be non-negative");
  }

  constexpr std::int64_t ticks() const { return ticks_; }

  constexpr auto operator<=>(const Money&) const = default;

  constexpr Money operator+(Money other) const { return Money(ticks_ + other.ticks_); }
  // Throws when the result would be negative.
  constexpr Money operator-(Money other) const { return Money(ticks_ - other.ticks_); }
  constexpr Money& operator+=(Money other) {
    ticks_ += other.ticks_;
    return *this;
  }

 private:
  std::int64_t ticks_ = 0;
};

using CostProfile = std::vector<Money>;

/// Discretization of [0, B]: admissible costs are 0, 1, ..., K ticks and
/// B = K ticks.
class CostGrid {
 public:
  explicit CostGrid(std::int64_t resolution);

  std::int64_t resolution() const { return resolution_; }
  Money budget() const { return Money(resolution_); }
  std::int64_t points() const { return resolution_ + 1; }
  bool admits(Money m) const { return m.ticks() <= resolution_; }

  /// (K+1)^n; throws std::overflow_error beyond 2^62.
  std::uint64_t profile_count(std::size_t n) const;

  bool operator==(const CostGrid&) const = default;

 private:
  std::int64_t resolution_;
};

/// Subset of agents {0, ..., n-1}, stored as a bitmask.
class AgentSet {
 public:
  constexpr AgentSet() = default;
  constexpr explicit AgentSet(std::uint32_t bits) : bits_(bits) {}

  static AgentSet of(std::initializer_list<std::size_t> agents);
  static AgentSet of(std::span<const std::size_t> agents);
  static constexpr AgentSet all(std::size_t n) {
    return AgentSet(n == 0 ? 0u : (0xFFFFFFFFu >> (32 - n)));
  }
  static constexpr AgentSet single(std::size_t agent) { return AgentSet(1u << agent); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(std::size_t agent) const { return (bits_ >> agent) & 1u; }
  constexpr AgentSet with(std::size_t agent) const { return AgentSet(bits_ | (1u << agent)); }
  constexpr AgentSet without(std::size_t agent) const { return AgentSet(bits_ & ~(1u << agent)); }
  constexpr bool subset_of(AgentSet other) const { return (bits_ & ~other.bits_) == 0; }
  std::size_t size() const;
  std::vector<std::size_t> members() const;

  constexpr AgentSet operator|(AgentSet o) const { return AgentSet(bits_ | o.bits_); }
  constexpr AgentSet operator&(AgentSet o) const { return AgentSet(bits_ & o.bits_); }
  constexpr AgentSet operator^(AgentSet o) const { return AgentSet(bits_ ^ o.bits_); }
  constexpr auto operator<=>(const AgentSet&) const = default;

 private:
  std::uint32_t bits_ = 0;
};

/// The strict total order used to break ties between equally valuable sets:
/// larger sets first, then the set whose sorted member list is
/// lexicographically smaller.
bool canonically_before(AgentSet a, AgentSet b);

/// Renders a set as sorted, comma-joined, 1-based indices ("" for the empty set).
std::string format_agent_set(AgentSet s);
/// Inverse of format_agent_set; throws std::invalid_argument on bad input.
AgentSet parse_agent_set(std::string_view text, std::size_t n);

struct Outcome {
  std::vector<bool> allocation;
  std::vector<Money> payments;
  /// Which rule of the mechanism produced the outcome, e.g. "golden_ticket".
  std::string branch;

  static Outcome empty(std::size_t n, std::string branch = {});

  std::size_t n() const { return allocation.size(); }
  AgentSet selected() const;
  Money total_payment() const;

  void select(std::size_t agent, Money payment) {
    allocation[agent] = true;
    payments[agent] = payment;
  }

  bool operator==(const Outcome& o) const {
    return allocation == o.allocation && payments == o.payments;
  }
};

/// Quasi-linear utility p_i - t_i x_i.
Rational utility(Money true_cost, const Outcome& outcome, std::size_t agent);

/// All (K+1)^n cost profiles in lexicographic tick order (agent 0 is the most
/// significant digit). Profiles are decoded on demand.
class ProfileRange {
 public:
  ProfileRange(CostGrid grid, std::size_t n);

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = CostProfile;
    using difference_type = std::ptrdiff_t;
    using pointer = const CostProfile*;
    using reference = const CostProfile&;

    iterator() = default;
    iterator(std::int64_t points, std::size_t n, std::uint64_t index, std::uint64_t end);

    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      iterator copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const iterator& o) const { return index_ == o.index_; }

   private:
    std::int64_t points_ = 1;
    std::uint64_t index_ = 0;
    std::uint64_t end_ = 0;
    CostProfile current_;
  };

  iterator begin() const;
  iterator end() const;
  std::uint64_t size() const { return count_; }

 private:
  CostGrid grid_;
  std::size_t n_;
  std::uint64_t count_;
};

ProfileRange enumerate_profiles(CostGrid grid, std::size_t n);

/// Position of `profile` in enumerate_profiles order.
std::uint64_t profile_index(const CostGrid& grid, std::span<const Money> profile);
CostProfile profile_at(const CostGrid& grid, std::size_t n, std::uint64_t index);

/// Exact comparison of num/den against the golden ratio (1 + sqrt 5) / 2.
/// Throws std::invalid_argument when den == 0 or either argument is negative.
std::strong_ordering compare_ratio_to_phi(const Rational& num, const Rational& den);

/// "p/q" with an explicit denominator, e.g. "2/1".
std::string format_rational(const Rational& r);
/// Decimal rendering with the given number of fractional digits.
std::string format_decimal(const Rational& r, int digits = 6);
/// Accepts "p/q", "p", or a decimal integer. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

}  // namespace budgetmech
