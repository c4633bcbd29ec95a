#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "floqlab/errors.hpp"

namespace floqlab::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;  // accumulated estimate
};

namespace detail {

template <class F>
Result simpson_recurse(const F& f, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || h <= 1e-14 * (std::abs(a) + std::abs(b) + 1.0))
        return {left + right + delta / 15.0, std::abs(delta) / 15.0};
    if (depth <= 0) throw QuadratureFailure("adaptive Simpson: depth exhausted");
    Result l = simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1);
    Result r = simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    return {l.value + r.value, l.error + r.error};
}

}  // namespace detail

/// Adaptive composite Simpson on [a, b] to absolute tolerance tol.
template <class F>
Result adaptive_simpson(const F& f, double a, double b, double tol, int max_depth = 30) {
    if (a == b) return {0.0, 0.0};
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// Nodes and weights of n-point Gauss-Legendre on [-1, 1].
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n);

/// Nodes and weights of n-point Gauss-Hermite for weight exp(-x^2) on R.
std::pair<std::vector<double>, std::vector<double>> gauss_hermite(int n);

/// Fixed-order Gauss-Legendre integral of f over [a, b].
template <class F>
double gauss(const F& f, double a, double b, int order = 16) {
    const auto& [nodes, weights] = gauss_legendre(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(mid + half * nodes[i]);
    return half * sum;
}

}  // namespace floqlab::quad
