#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace testutil {

inline double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

// Composite Simpson rule with n subintervals (rounded up to even).
template <typename F>
double simpson(F f, double a, double b, int n) {
    if (n % 2 != 0) ++n;
    double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

inline std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = a + (b - a) * (n == 1 ? 0.0 : double(i) / (n - 1));
    return v;
}

// Geometric grid from a to b inclusive; exact log-spacing.
inline std::vector<double> logspace(double a, double b, int n) {
    std::vector<double> v(n);
    double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < n; ++i)
        v[i] = std::exp(la + (lb - la) * (n == 1 ? 0.0 : double(i) / (n - 1)));
    return v;
}

}  // namespace testutil
