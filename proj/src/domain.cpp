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

#include "budgetmech/domain.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>

namespace budgetmech {

CostGrid::CostGrid(std::int64_t resolution) : resolution_(resolution) {
  if (resolution < 1) throw std::invalid_argument("grid resolution K must be >= 1");
}

std::uint64_t CostGrid::profile_count(std::size_t n) const {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  std::uint64_t count = 1;
  const auto base = static_cast<std::uint64_t>(points());
  for (std::size_t i = 0; i < n; ++i) {
    if (count > kLimit / base) throw std::overflow_error("profile count overflows");
    count *= base;
  }
  return count;
}

AgentSet AgentSet::of(std::initializer_list<std::size_t> agents) {
  return of(std::span<const std::size_t>(agents.begin(), agents.size()));
}

AgentSet AgentSet::of(std::span<const std::size_t> agents) {
  AgentSet s;
  for (std::size_t a : agents) {
    if (a >= kMaxAgents) throw std::out_of_range("agent index out of range");
    s = s.with(a);
  }
  return s;
}

std::size_t AgentSet::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<std::size_t> AgentSet::members() const {
  std::vector<std::size_t> out;
  for (std::uint32_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  }
  return out;
}

bool canonically_before(AgentSet a, AgentSet b) {
  if (a == b) return false;
  if (a.size() != b.size()) return a.size() > b.size();
  // Equal size: the first position where the sorted lists differ holds the
  // smaller index of the symmetric difference.
  const std::uint32_t diff = a.bits() ^ b.bits();
  return a.contains(static_cast<std::size_t>(std::countr_zero(diff)));
}

std::string format_agent_set(AgentSet s) {
  std::string out;
  for (std::size_t a : s.members()) {
    if (!out.empty()) out += ',';
    out += std::to_string(a + 1);
  }
  return out;
}

AgentSet parse_agent_set(std::string_view text, std::size_t n) {
  AgentSet s;
  if (text.empty()) return s;
  std::size_t pos = 0;
  std::size_t previous = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view token = text.substr(pos, comma - pos);
    std::size_t index = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), index);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
      throw std::invalid_argument("bad agent set \"" + std::string(text) + "\"");
    }
    if (index < 1 || index > n) {
      throw std::invalid_argument("agent index " + std::string(token) + " outside 1.." +
                                  std::to_string(n));
    }
    if (index <= previous) {
      throw std::invalid_argument("agent set \"" + std::string(text) +
                                  "\" must list strictly increasing indices");
    }
    previous = index;
    s = s.with(index - 1);
    pos = comma + 1;
  }
  return s;
}

Outcome Outcome::empty(std::size_t n, std::string branch) {
  Outcome o;
  o.allocation.assign(n, false);
  o.payments.assign(n, Money(0));
  o.branch = std::move(branch);
  return o;
}

AgentSet Outcome::selected() const {
  AgentSet s;
  for (std::size_t i = 0; i < allocation.size(); ++i) {
    if (allocation[i]) s = s.with(i);
  }
  return s;
}

Money Outcome::total_payment() const {
  Money total;
  for (Money p : payments) total += p;
  return total;
}

Rational utility(Money true_cost, const Outcome& outcome, std::size_t agent) {
  if (agent >= outcome.n() || agent >= outcome.payments.size()) {
    throw std::out_of_range("agent index out of range");
  }
  std::int64_t u = outcome.payments[agent].ticks();
  if (outcome.allocation[agent]) u -= true_cost.ticks();
  return Rational(static_cast<long>(u));
}

ProfileRange::ProfileRange(CostGrid grid, std::size_t n)
    : grid_(grid), n_(n), count_(grid.profile_count(n)) {
  if (n < 1) throw std::invalid_argument("profiles need at least one agent");
}

ProfileRange::iterator::iterator(std::int64_t points, std::size_t n, std::uint64_t index,
                                 std::uint64_t end)
    : points_(points), index_(index), end_(end), current_(n, Money(0)) {}

ProfileRange::iterator& ProfileRange::iterator::operator++() {
  ++index_;
  if (index_ >= end_) return *this;
  // Odometer increment from the least significant (last) agent.
  for (std::size_t k = current_.size(); k-- > 0;) {
    if (current_[k].ticks() + 1 < points_) {
      current_[k] = Money(current_[k].ticks() + 1);
      break;
    }
    current_[k] = Money(0);
  }
  return *this;
}

ProfileRange::iterator ProfileRange::begin() const {
  return iterator(grid_.points(), n_, 0, count_);
}

ProfileRange::iterator ProfileRange::end() const {
  return iterator(grid_.points(), n_, count_, count_);
}

ProfileRange enumerate_profiles(CostGrid grid, std::size_t n) { return ProfileRange(grid, n); }

std::uint64_t profile_index(const CostGrid& grid, std::span<const Money> profile) {
  std::uint64_t index = 0;
  const auto base = static_cast<std::uint64_t>(grid.points());
  for (Money m : profile) {
    if (!grid.admits(m)) throw std::out_of_range("cost outside the grid");
    index = index * base + static_cast<std::uint64_t>(m.ticks());
  }
  return index;
}

CostProfile profile_at(const CostGrid& grid, std::size_t n, std::uint64_t index) {
  CostProfile out(n);
  const auto base = static_cast<std::uint64_t>(grid.points());
  for (std::size_t k = n; k-- > 0;) {
    out[k] = Money(static_cast<std::int64_t>(index % base));
    index /= base;
  }
  if (index != 0) throw std::out_of_range("profile index out of range");
  return out;
}

std::strong_ordering compare_ratio_to_phi(const Rational& num, const Rational& den) {
  if (sgn(den) == 0) throw std::invalid_argument("ratio with zero denominator");
  if (sgn(num) < 0 || sgn(den) < 0) throw std::invalid_argument("ratio must be non-negative");
  // num/den = a/b with a = num_n * den_d and b = num_d * den_n (b > 0).
  // phi is the positive root of x^2 = x + 1, so a/b < phi iff
  // 2a - b < 0 or (2a - b)^2 < 5 b^2.
  const mpz_class a = num.get_num() * den.get_den();
  const mpz_class b = num.get_den() * den.get_num();
  const mpz_class d = 2 * a - b;
  if (sgn(d) < 0) return std::strong_ordering::less;
  const mpz_class lhs = d * d;
  const mpz_class rhs = 5 * b * b;
  const int c = cmp(lhs, rhs);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string format_rational(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string format_decimal(const Rational& r, int digits) {
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const bool negative = sgn(r) < 0;
  Rational c = r;
  c.canonicalize();
  mpz_class num = abs(c.get_num()) * scale;
  // Round half up.
  mpz_class q = (2 * num + c.get_den()) / (2 * c.get_den());
  mpz_class whole = q / scale;
  mpz_class frac = q % scale;
  std::string f = frac.get_str();
  if (static_cast<int>(f.size()) < digits) f.insert(0, static_cast<std::size_t>(digits) - f.size(), '0');
  std::string out = (negative && sgn(q) != 0 ? "-" : "") + whole.get_str();
  if (digits > 0) out += "." + f;
  return out;
}

Rational parse_rational(std::string_view text) {
  const auto is_integer = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  const std::size_t slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den)) {
    throw std::invalid_argument("bad rational \"" + std::string(text) + "\"");
  }
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num));
  mpz_class d(std::string(den[0] == '+' ? den.substr(1) : den));
  if (sgn(d) == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace budgetmech
