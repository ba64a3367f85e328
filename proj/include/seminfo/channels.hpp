#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "seminfo/errors.hpp"
#include "seminfo/families.hpp"
#include "seminfo/grid.hpp"

namespace seminfo {

// Row-stochastic transition matrix P(y_j | x_i), stored row-major.
class ShannonChannel {
public:
    ShannonChannel(std::size_t n_x, std::size_t n_y, std::vector<double> data)
        : n_x_(n_x), n_y_(n_y), p_(std::move(data)) {
        if (p_.size() != n_x_ * n_y_ || n_x_ == 0 || n_y_ == 0)
            throw invalid_argument_error("channel dimensions do not match data");
        for (std::size_t i = 0; i < n_x_; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n_y_; ++j) {
                const double v = p_[i * n_y_ + j];
                if (!(v >= 0.0))
                    throw invalid_argument_error("channel entries must be non-negative");
                row += v;
            }
            if (std::abs(row - 1.0) > 1e-9)
                throw invalid_argument_error("channel rows must sum to one");
        }
    }

    static ShannonChannel from_rows(const std::vector<std::vector<double>>& rows) {
        if (rows.empty() || rows.front().empty())
            throw invalid_argument_error("channel needs at least one row and column");
        std::vector<double> data;
        data.reserve(rows.size() * rows.front().size());
        for (const auto& r : rows) {
            if (r.size() != rows.front().size())
                throw invalid_argument_error("channel rows must have equal length");
            data.insert(data.end(), r.begin(), r.end());
        }
        return ShannonChannel(rows.size(), rows.front().size(), std::move(data));
    }

    std::size_t n_x() const { return n_x_; }
    std::size_t n_y() const { return n_y_; }
    double operator()(std::size_t i, std::size_t j) const { return p_[i * n_y_ + j]; }
    std::span<const double> row(std::size_t i) const {
        return {p_.data() + i * n_y_, n_y_};
    }
    std::vector<double> column(std::size_t j) const {
        std::vector<double> col(n_x_);
        for (std::size_t i = 0; i < n_x_; ++i) col[i] = p_[i * n_y_ + j];
        return col;
    }

private:
    std::size_t n_x_, n_y_;
    std::vector<double> p_;
};

// Matrix of truth values T(theta_j | x_i); columns are membership functions.
// Every column must be satisfiable somewhere on the grid.
class SemanticChannel {
public:
    SemanticChannel(std::size_t n_x, std::size_t n_y, std::vector<double> data)
        : n_x_(n_x), n_y_(n_y), t_(std::move(data)) {
        if (t_.size() != n_x_ * n_y_ || n_x_ == 0 || n_y_ == 0)
            throw invalid_argument_error("semantic channel dimensions do not match data");
        for (double v : t_)
            if (!(v >= 0.0 && v <= 1.0))
                throw invalid_argument_error("truth values must lie in [0, 1]");
        for (std::size_t j = 0; j < n_y_; ++j) {
            bool any = false;
            for (std::size_t i = 0; i < n_x_ && !any; ++i) any = t_[i * n_y_ + j] > 0.0;
            if (!any)
                throw invalid_argument_error("semantic channel column is identically zero");
        }
    }

    static SemanticChannel from_columns(const std::vector<std::vector<double>>& cols) {
        if (cols.empty() || cols.front().empty())
            throw invalid_argument_error("semantic channel needs at least one column");
        const std::size_t n_x = cols.front().size();
        std::vector<double> data(n_x * cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != n_x)
                throw invalid_argument_error("semantic channel columns must have equal length");
            for (std::size_t i = 0; i < n_x; ++i) data[i * cols.size() + j] = cols[j][i];
        }
        return SemanticChannel(n_x, cols.size(), std::move(data));
    }

    std::size_t n_x() const { return n_x_; }
    std::size_t n_y() const { return n_y_; }
    double operator()(std::size_t i, std::size_t j) const { return t_[i * n_y_ + j]; }
    std::vector<double> column(std::size_t j) const {
        std::vector<double> col(n_x_);
        for (std::size_t i = 0; i < n_x_; ++i) col[i] = t_[i * n_y_ + j];
        return col;
    }

private:
    std::size_t n_x_, n_y_;
    std::vector<double> t_;
};

inline SemanticChannel semantic_channel_from_goals(const std::vector<TruthSpec>& goals,
                                                   const Grid& grid) {
    if (goals.empty())
        throw invalid_argument_error("at least one goal is required");
    std::vector<std::vector<double>> cols;
    cols.reserve(goals.size());
    for (const auto& g : goals) cols.push_back(truth_from_spec(g, grid));
    return SemanticChannel::from_columns(cols);
}

}  // namespace seminfo
