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

#include "cloudrepro/core/money.hpp"

#include <cmath>
#include <cstdio>

namespace cloudrepro {

Money Money::from_dollars(double dollars) {
  const long double ticks = static_cast<long double>(dollars) * kNanodollarsPerDollar * kTicksPerNanodollar;
  return Money{static_cast<std::int64_t>(std::llround(ticks))};
}

double Money::dollars() const {
  return static_cast<double>(static_cast<long double>(ticks_) / (kNanodollarsPerDollar * kTicksPerNanodollar));
}

Money Money::scaled(double fraction) const {
  return Money{static_cast<std::int64_t>(std::llround(static_cast<long double>(ticks_) * fraction))};
}

std::string Money::to_string() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "$%.6f", dollars());
  return buf;
}

}  // namespace cloudrepro
