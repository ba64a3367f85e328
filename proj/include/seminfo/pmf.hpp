#pragma once

#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "seminfo/errors.hpp"
#include "seminfo/grid.hpp"

namespace seminfo {

namespace detail {

inline constexpr double kLn2 = 0.693147180559945309417232121458176568;

inline double to_bits(double nats) { return nats / kLn2; }

// log(sum(exp(a_i))) with max-shift; -inf entries are ignored.
inline double log_sum_exp(std::span<const double> a) {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : a)
        if (v > m) m = v;
    if (!std::isfinite(m)) return m;
    double acc = 0.0;
    for (double v : a) acc += std::exp(v - m);
    return m + std::log(acc);
}

}  // namespace detail

// Probability mass function over a grid. Weights are non-negative and sum to
// one within 1e-9; both are checked at construction.
class Pmf {
public:
    Pmf(Grid grid, std::vector<double> weights)
        : grid_(std::move(grid)), w_(std::move(weights)) {
        if (w_.size() != grid_.size())
            throw invalid_argument_error("pmf weight count must match grid size");
        double total = 0.0;
        for (double v : w_) {
            if (!(v >= 0.0))
                throw invalid_argument_error("pmf weights must be non-negative");
            total += v;
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw invalid_argument_error("pmf weights must sum to one");
    }

    // Scales raw non-negative weights to total one.
    static Pmf normalized(Grid grid, std::vector<double> raw) {
        double total = std::accumulate(raw.begin(), raw.end(), 0.0);
        if (!(total > 0.0))
            throw invalid_argument_error("cannot normalize weights with zero total mass");
        for (double& v : raw) v /= total;
        return Pmf(std::move(grid), std::move(raw));
    }

    static Pmf uniform(Grid grid) {
        std::vector<double> w(grid.size(), 1.0 / static_cast<double>(grid.size()));
        return Pmf(std::move(grid), std::move(w));
    }

    static Pmf point_mass(Grid grid, std::size_t index) {
        std::vector<double> w(grid.size(), 0.0);
        w.at(index) = 1.0;
        return Pmf(std::move(grid), std::move(w));
    }

    std::size_t size() const { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }
    const std::vector<double>& weights() const { return w_; }
    const Grid& grid() const { return grid_; }

    double mean() const {
        double m = 0.0;
        for (std::size_t i = 0; i < w_.size(); ++i) m += w_[i] * grid_.point(i);
        return m;
    }

    // Population second central moment.
    double variance() const {
        const double m = mean();
        double v = 0.0;
        for (std::size_t i = 0; i < w_.size(); ++i) {
            const double d = grid_.point(i) - m;
            v += w_[i] * d * d;
        }
        return v;
    }

private:
    Grid grid_;
    std::vector<double> w_;
};

enum class DivergencePolicy {
    ReturnInfinity,  // q=0 under p>0 yields +infinity
    Throw,           // ... or an invalid_argument_error
};

// KL(p || q) in bits. Zero p-terms are skipped; q-zeros under positive p are
// handled per policy.
inline double kl_divergence(const Pmf& p, const Pmf& q,
                            DivergencePolicy policy = DivergencePolicy::ReturnInfinity) {
    if (!p.grid().same_as(q.grid()))
        throw invalid_argument_error("kl_divergence requires matching grids");
    double nats = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        if (q[i] <= 0.0) {
            if (policy == DivergencePolicy::Throw)
                throw invalid_argument_error("kl_divergence is infinite: q vanishes under p");
            return std::numeric_limits<double>::infinity();
        }
        nats += p[i] * std::log(p[i] / q[i]);
    }
    return detail::to_bits(nats);
}

}  // namespace seminfo
