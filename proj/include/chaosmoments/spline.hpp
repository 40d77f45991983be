#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "chaosmoments/errors.hpp"

namespace chaosmoments {

// Natural cubic spline on a strictly increasing grid. Construction solves the
// standard tridiagonal system for the second derivatives; evaluation is a
// binary search plus the cubic form, safe to call concurrently on a const object.
class CubicSpline {
  public:
    CubicSpline() = default;

    CubicSpline(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 3 || y_.size() != n)
            fail(ErrorCode::InsufficientGrid, "spline needs at least 3 nodes");
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (!(x_[i] < x_[i + 1]))
                fail(ErrorCode::InsufficientGrid, "spline grid must be strictly increasing");

        m_.assign(n, 0.0);
        std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
        diag[0] = 1.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double h0 = x_[i] - x_[i - 1];
            double h1 = x_[i + 1] - x_[i];
            diag[i] = 2.0 * (h0 + h1);
            upper[i] = h1;
            rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
        }
        diag[n - 1] = 1.0;
        // Thomas algorithm; lower diagonal mirrors upper (h0 terms)
        std::vector<double> c(n, 0.0);
        c[0] = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double h0 = x_[i] - x_[i - 1];
            double denom = diag[i] - h0 * c[i - 1];
            c[i] = upper[i] / denom;
            rhs[i] = (rhs[i] - h0 * rhs[i - 1]) / denom;
        }
        for (std::size_t i = n - 1; i-- > 1;)
            m_[i] = rhs[i] - c[i] * m_[i + 1];
    }

    bool empty() const { return x_.empty(); }
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

    double operator()(double x) const {
        if (x <= x_.front()) x = x_.front();
        if (x >= x_.back()) x = x_.back();
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t i = (it == x_.begin()) ? 0 : std::size_t(it - x_.begin()) - 1;
        if (i + 1 >= x_.size()) i = x_.size() - 2;
        double h = x_[i + 1] - x_[i];
        double a = (x_[i + 1] - x) / h;
        double b = (x - x_[i]) / h;
        return a * y_[i] + b * y_[i + 1] +
               ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
    }

  private:
    std::vector<double> x_, y_, m_;
};

}  // namespace chaosmoments
