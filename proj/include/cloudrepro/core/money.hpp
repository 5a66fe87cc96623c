// Copyright 2026 The cloudrepro Authors
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

#include <compare>
#include <cstdint>
#include <string>

#include "cloudrepro/core/time.hpp"

namespace cloudrepro {

/// Price of keeping one resource alive for one hour, in nanodollars.
struct HourlyPrice {
  std::int64_t nanodollars_per_hour = 0;
  friend constexpr auto operator<=>(const HourlyPrice&, const HourlyPrice&) = default;
};

/// Price of a single metered request, in nanodollars.
struct RequestPrice {
  std::int64_t nanodollars = 0;
  friend constexpr auto operator<=>(const RequestPrice&, const RequestPrice&) = default;
};

/// Exact monetary amount.
///
/// One tick is 1/3600 of a nanodollar, so an hourly price multiplied by a
/// whole number of seconds is always an integral number of ticks and
/// per-second proration never rounds.
class Money {
 public:
  static constexpr std::int64_t kTicksPerNanodollar = 3600;
  static constexpr std::int64_t kNanodollarsPerDollar = 1'000'000'000;

  constexpr Money() = default;

  static constexpr Money from_ticks(std::int64_t ticks) { return Money{ticks}; }
  static constexpr Money from_nanodollars(std::int64_t nd) { return Money{nd * kTicksPerNanodollar}; }
  static Money from_dollars(double dollars);

  static constexpr Money for_usage(HourlyPrice price, Seconds elapsed) {
    return Money{price.nanodollars_per_hour * elapsed.count()};
  }
  static constexpr Money for_requests(RequestPrice price, std::int64_t count) {
    return from_nanodollars(price.nanodollars * count);
  }

  constexpr std::int64_t ticks() const { return ticks_; }
  double dollars() const;

  /// Amount multiplied by `fraction`, rounded to the nearest tick.
  Money scaled(double fraction) const;

  std::string to_string() const;  // "$12.345678"

  constexpr Money& operator+=(Money o) { ticks_ += o.ticks_; return *this; }
  constexpr Money& operator-=(Money o) { ticks_ -= o.ticks_; return *this; }
  friend constexpr Money operator+(Money a, Money b) { return a += b; }
  friend constexpr Money operator-(Money a, Money b) { return a -= b; }
  friend constexpr auto operator<=>(const Money&, const Money&) = default;

 private:
  constexpr explicit Money(std::int64_t ticks) : ticks_(ticks) {}
  std::int64_t ticks_ = 0;
};

}  // namespace cloudrepro
