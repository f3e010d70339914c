#pragma once

#include <cmath>
#include <utility>

namespace satpass::detail {

/// Golden-section minimization of a unimodal f over [lo, hi]; returns
/// (argmin, min). Bracket shrinks until its width drops below x_tol.
template <typename Fn>
std::pair<double, double> golden_minimize(Fn&& f, double lo, double hi, double x_tol) {
    constexpr double inv_phi = 0.6180339887498949;  // 1/phi
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > x_tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

/// Golden-section maximization; returns (argmax, max).
template <typename Fn>
std::pair<double, double> golden_maximize(Fn&& f, double lo, double hi, double x_tol) {
    auto neg = [&f](double x) { return -f(x); };
    auto [x, fneg] = golden_minimize(neg, lo, hi, x_tol);
    return {x, -fneg};
}

}  // namespace satpass::detail
