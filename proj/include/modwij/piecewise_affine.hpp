#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "modwij/bigint.hpp"

namespace modwij {

/// Piecewise-affine function with exact integer knot abscissas and exact
/// rational knot ordinates. First knot is (0, 0); beyond the last knot the
/// last segment's slope extends affinely.
class PiecewiseAffine {
public:
    PiecewiseAffine(std::vector<BigInt> xs, std::vector<BigRat> ys)
        : x_(std::move(xs)), y_(std::move(ys)) {
        if (x_.size() != y_.size() || x_.size() < 2)
            throw std::invalid_argument("PiecewiseAffine: need matching knot lists, >= 2 knots");
        if (x_.front() != 0 || y_.front() != BigRat(0))
            throw std::invalid_argument("PiecewiseAffine: first knot must be (0, 0)");
        for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
            if (!(x_[i] < x_[i + 1]))
                throw std::invalid_argument("PiecewiseAffine: knot abscissas must increase");
            if (!(y_[i] < y_[i + 1]))
                throw std::invalid_argument("PiecewiseAffine: knot ordinates must increase");
        }
        xd_.reserve(x_.size());
        yd_.reserve(y_.size());
        for (const auto& v : x_) xd_.push_back(v.convert_to<double>());
        for (const auto& v : y_) yd_.push_back(v.to_double());
    }

    std::size_t knot_count() const { return x_.size(); }
    const std::vector<BigInt>& knots_x() const { return x_; }
    const std::vector<BigRat>& knots_y() const { return y_; }

    BigRat eval_exact(const BigInt& t) const {
        if (t < 0) throw std::domain_error("PiecewiseAffine: negative argument");
        std::size_t seg = segment_exact(t);
        const BigInt dx = x_[seg + 1] - x_[seg];
        const BigRat dy = y_[seg + 1] - y_[seg];
        return y_[seg] + dy * BigRat(t - x_[seg], dx);
    }

    double operator()(double t) const {
        if (!(t >= 0)) throw std::domain_error("PiecewiseAffine: negative argument");
        // Locate the segment via the cached double abscissas. The left
        // endpoint of the segment containing a finite t is always finite.
        auto it = std::upper_bound(xd_.begin(), xd_.end(), t);
        std::size_t seg = it == xd_.end() ? xd_.size() - 1
                                          : static_cast<std::size_t>(it - xd_.begin());
        if (seg == 0) seg = 1;
        const double x0 = xd_[seg - 1], x1 = xd_[seg];
        const double y0 = yd_[seg - 1], y1 = yd_[seg];
        const double slope = (x1 - x0) > 0 ? (y1 - y0) / (x1 - x0) : 0.0;
        return y0 + slope * (t - x0);
    }

    /// Slope of segment i as an exact rational, i in [0, knot_count()-2].
    BigRat slope(std::size_t i) const {
        return (y_[i + 1] - y_[i]) / BigRat(x_[i + 1] - x_[i]);
    }

    bool slopes_strictly_decreasing() const {
        for (std::size_t i = 0; i + 2 < x_.size(); ++i)
            if (!(slope(i) > slope(i + 1))) return false;
        return true;
    }

    /// Index i of the first segment pair with slope(i) < slope(i+1), if any.
    std::optional<std::size_t> first_slope_increase() const {
        for (std::size_t i = 0; i + 2 < x_.size(); ++i)
            if (slope(i) < slope(i + 1)) return i;
        return std::nullopt;
    }

private:
    std::size_t segment_exact(const BigInt& t) const {
        auto it = std::upper_bound(x_.begin(), x_.end(), t);
        if (it == x_.end()) return x_.size() - 2;  // affine extension
        std::size_t idx = static_cast<std::size_t>(it - x_.begin());
        return idx == 0 ? 0 : idx - 1;
    }

    std::vector<BigInt> x_;
    std::vector<BigRat> y_;
    std::vector<double> xd_, yd_;
};

}  // namespace modwij
