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

#include "cloudrepro/metrics/stats.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "cloudrepro/core/error.hpp"

namespace cloudrepro::metrics {

namespace {

// Continued fraction of I_x(a, b) by the modified Lentz method; converges
// quickly for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  constexpr int max_iterations = 10000;

  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double f = d;
  for (int m = 1; m <= max_iterations; ++m) {
    const double m2 = 2.0 * m;
    // even step
    double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
    d = 1.0 + num * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    f *= d * c;
    // odd step
    num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
    d = 1.0 + num * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    f *= delta;
    if (std::fabs(delta - 1.0) < eps) break;
  }
  return f;
}

double mean(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

double sum_squared_deviation(std::span<const double> v, double m) {
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x, double one_minus_x) {
  if (!(a > 0 && b > 0) || x < 0 || x > 1) throw Error(ErrorCode::InvalidArgument, "incomplete beta domain");
  if (x == 0) return 0;
  if (one_minus_x == 0) return 1;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log(one_minus_x);
  if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
  return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, one_minus_x) / b;
}

double regularized_incomplete_beta(double a, double b, double x) {
  return regularized_incomplete_beta(a, b, x, 1.0 - x);
}

double student_t_upper_tail(double t, double df) {
  if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
  const double t2 = t * t;
  // P(|T| > |t|) = I_{df/(df+t^2)}(df/2, 1/2)
  const double both = regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t2), t2 / (df + t2));
  return t > 0 ? both / 2.0 : 1.0 - both / 2.0;
}

TTest pooled_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw Error(ErrorCode::InsufficientSamples, "each sample needs at least two observations");
  TTest r;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  r.mean_a = mean(a);
  r.mean_b = mean(b);
  r.degrees_of_freedom = na + nb - 2.0;
  r.pooled_variance = (sum_squared_deviation(a, r.mean_a) + sum_squared_deviation(b, r.mean_b)) / r.degrees_of_freedom;
  const double diff = r.mean_a - r.mean_b;
  if (diff == 0) {
    r.t = 0;
  } else if (r.pooled_variance == 0) {
    r.t = diff > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  } else {
    r.t = diff / std::sqrt(r.pooled_variance * (1.0 / na + 1.0 / nb));
  }
  if (r.t == 0) {
    r.p_two_sided = 1.0;
    r.p_a_greater = r.p_a_less = 0.5;
    return r;
  }
  const double t2 = r.t * r.t;
  r.p_two_sided = std::isinf(r.t) ? 0.0
                                  : regularized_incomplete_beta(r.degrees_of_freedom / 2.0, 0.5,
                                                                r.degrees_of_freedom / (r.degrees_of_freedom + t2),
                                                                t2 / (r.degrees_of_freedom + t2));
  r.p_a_greater = r.t > 0 ? r.p_two_sided / 2.0 : 1.0 - r.p_two_sided / 2.0;
  r.p_a_less = r.t < 0 ? r.p_two_sided / 2.0 : 1.0 - r.p_two_sided / 2.0;
  return r;
}

}  // namespace cloudrepro::metrics
