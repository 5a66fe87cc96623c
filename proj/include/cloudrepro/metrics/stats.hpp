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

#include <span>

namespace cloudrepro::metrics {

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
/// `one_minus_x` is passed separately so callers can avoid cancellation.
double regularized_incomplete_beta(double a, double b, double x, double one_minus_x);
double regularized_incomplete_beta(double a, double b, double x);

/// Two-sample t-test with pooled (equal) variance.
struct TTest {
  double mean_a = 0;
  double mean_b = 0;
  double pooled_variance = 0;
  double t = 0;
  double degrees_of_freedom = 0;
  double p_two_sided = 1;
  double p_a_greater = 0.5;  // H1: mean_a > mean_b
  double p_a_less = 0.5;     // H1: mean_a < mean_b
};

/// Throws Error(InsufficientSamples) unless both samples hold at least two
/// values. Equal means give t = 0 and p = 1, including zero variance;
/// different means with zero variance give an infinite t and p = 0.
TTest pooled_t_test(std::span<const double> a, std::span<const double> b);

/// Upper tail P(T > t) of Student's t with `df` degrees of freedom.
double student_t_upper_tail(double t, double df);

}  // namespace cloudrepro::metrics
