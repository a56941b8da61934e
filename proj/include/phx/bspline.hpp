#pragma once

#include <cassert>
#include <cmath>
#include <vector>

#include "phx/math2d.hpp"

namespace phx {

/// Interpolation stencil for one evaluation point on an n x n periodic grid:
/// base cell indices plus cubic B-spline weights along each axis. Computing it
/// once lets several grids sharing the same geometry be evaluated cheaply.
struct BicubicStencil {
    int ix = 0, iy = 0;      // base cell, in [0, n)
    double wx[4], wy[4];

    /// r lives on the unit torus [-1/2, 1/2)^2 (any real input is wrapped).
    BicubicStencil(Vec2 r, int n) {
        const double ux = to_grid(r.x, n);
        const double uy = to_grid(r.y, n);
        ix = static_cast<int>(ux);
        iy = static_cast<int>(uy);
        weights(ux - ix, wx);
        weights(uy - iy, wy);
    }

private:
    static double to_grid(double x, int n) {
        double u = (x + 0.5) * n;
        u -= n * std::floor(u / n);
        if (u >= n) u = 0.0;  // guard against rounding at the seam
        return u;
    }

    // Uniform cubic B-spline basis for offsets {-1, 0, +1, +2}.
    static void weights(double t, double w[4]) {
        const double t2 = t * t, t3 = t2 * t;
        w[0] = (1.0 - 3.0 * t + 3.0 * t2 - t3) / 6.0;
        w[1] = (4.0 - 6.0 * t2 + 3.0 * t3) / 6.0;
        w[2] = (1.0 + 3.0 * t + 3.0 * t2 - 3.0 * t3) / 6.0;
        w[3] = t3 / 6.0;
    }
};

/// Periodic uniform cubic B-spline surface on the unit torus. Stores the
/// coefficient grid padded by one column/row of wrap-around on the low side
/// and two on the high side, so evaluation needs no index wrapping.
class BsplineGrid {
public:
    BsplineGrid() = default;

    int size() const { return n_; }
    bool empty() const { return n_ == 0; }

    /// Reset to an n x n coefficient grid; returns the writable interior view
    /// accessor. Fill coefficients via set(), then call finish_padding().
    void reset(int n) {
        n_ = n;
        stride_ = n + 3;
        data_.assign(static_cast<std::size_t>(stride_) * stride_, 0.0);
    }

    void set(int i, int j, double value) {
        data_[static_cast<std::size_t>(j + 1) * stride_ + (i + 1)] = value;
    }

    /// Copy periodic wrap rows/columns into the padding. Must be called after
    /// the interior is filled and before eval().
    void finish_padding() {
        const int n = n_, s = stride_;
        auto at = [&](int i, int j) -> double& {
            return data_[static_cast<std::size_t>(j) * s + i];
        };
        for (int j = 1; j <= n; ++j) {
            at(0, j) = at(n, j);
            at(n + 1, j) = at(1, j);
            at(n + 2, j) = at(2, j);
        }
        for (int i = 0; i < s; ++i) {
            at(i, 0) = at(i, n);
            at(i, n + 1) = at(i, 1);
            at(i, n + 2) = at(i, 2);
        }
    }

    double eval(const BicubicStencil& st) const {
        const double* base =
            data_.data() + static_cast<std::size_t>(st.iy) * stride_ + st.ix;
        double acc = 0.0;
        for (int m = 0; m < 4; ++m) {
            const double* row = base + static_cast<std::size_t>(m) * stride_;
            acc += st.wy[m] * (st.wx[0] * row[0] + st.wx[1] * row[1] +
                               st.wx[2] * row[2] + st.wx[3] * row[3]);
        }
        return acc;
    }

    double eval(Vec2 r) const { return eval(BicubicStencil(r, n_)); }

private:
    int n_ = 0;
    int stride_ = 0;
    std::vector<double> data_;
};

}  // namespace phx
