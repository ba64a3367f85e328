#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "seminfo/errors.hpp"

namespace seminfo {

// Evenly spaced discretization of a real interval. Domain grids (built with
// make_grid) have at least two points; index grids over action alphabets may
// be singletons.
class Grid {
public:
    static Grid regular(double lower, double upper, double step) {
        if (!(step > 0.0))
            throw invalid_argument_error("grid step must be positive");
        if (!(upper > lower))
            throw invalid_argument_error("grid upper bound must exceed lower bound");
        std::vector<double> pts;
        const auto count = static_cast<std::size_t>(
            std::floor((upper - lower) / step + 1e-9)) + 1;
        pts.reserve(count);
        for (std::size_t i = 0; i < count; ++i) pts.push_back(lower + static_cast<double>(i) * step);
        if (pts.size() < 2)
            throw invalid_argument_error("grid must contain at least two points");
        return Grid(lower, step, std::move(pts));
    }

    // Integer alphabet 0..count-1, used for action marginals. A single-action
    // alphabet is allowed here, unlike domain grids.
    static Grid indices(std::size_t count) {
        if (count == 0)
            throw invalid_argument_error("index grid needs at least one point");
        std::vector<double> pts(count);
        for (std::size_t i = 0; i < count; ++i) pts[i] = static_cast<double>(i);
        return Grid(0.0, 1.0, std::move(pts));
    }

    std::size_t size() const { return points_.size(); }
    double point(std::size_t i) const { return points_[i]; }
    const std::vector<double>& points() const { return points_; }
    double lower() const { return lower_; }
    double upper() const { return points_.back(); }
    double step() const { return step_; }

    bool same_as(const Grid& other) const {
        return size() == other.size() &&
               std::abs(lower_ - other.lower_) <= 1e-9 &&
               std::abs(step_ - other.step_) <= 1e-12;
    }

    // Index of the grid point closest to x; x must lie within half a step of
    // the covered interval.
    std::size_t nearest_index(double x) const {
        const double rel = (x - lower_) / step_;
        const double r = std::round(rel);
        if (r < -0.5 || r > static_cast<double>(size() - 1) + 0.5)
            throw invalid_argument_error("point lies outside the grid");
        const auto i = static_cast<std::size_t>(r < 0.0 ? 0.0 : r);
        return i >= size() ? size() - 1 : i;
    }

private:
    Grid(double lower, double step, std::vector<double> pts)
        : lower_(lower), step_(step), points_(std::move(pts)) {}

    double lower_;
    double step_;
    std::vector<double> points_;
};

inline Grid make_grid(double lower, double upper, double step) {
    return Grid::regular(lower, upper, step);
}

}  // namespace seminfo
