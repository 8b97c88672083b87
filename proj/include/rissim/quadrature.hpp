// SPDX-License-Identifier: Apache-2.0
//
// rissim - link-level simulator for RIS-assisted MIMO transmission

#pragma once

#include <utility>
#include <vector>

namespace rissim {

// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
const std::vector<std::pair<double, double>>& gauss_legendre(int order);

// Integrates f over (a, b) with an n-point Gauss-Legendre rule.
template <typename F>
double integrate_gl(F&& f, double a, double b, int order) {
    const auto& rule = gauss_legendre(order);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double acc = 0.0;
    for (const auto& [x, w] : rule) acc += w * f(mid + half * x);
    return half * acc;
}

}  // namespace rissim
