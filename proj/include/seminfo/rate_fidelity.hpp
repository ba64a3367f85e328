#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "seminfo/channels.hpp"
#include "seminfo/errors.hpp"
#include "seminfo/pmf.hpp"
#include "seminfo/semantics.hpp"

namespace seminfo {

struct FixedIterations {
    int count = 3;
};

struct ConvergeTol {
    double tol = 1e-10;  // L1 change of the action marginal
    int max_iter = 1000;
};

struct SolverOptions {
    std::variant<FixedIterations, ConvergeTol> mode = FixedIterations{3};
    double truth_floor = 1e-12;
    // Sweeps chain the converged marginal into the next s by default; cold
    // starts solve every s independently (and may run them concurrently).
    bool warm_start = true;
};

// Log-space tilt table log m_ij = log T(theta_j|x_i) - log T(theta_j), with
// truth values clamped at the floor before the log. Immutable once built and
// shareable across solves.
class TiltWorkspace {
public:
    TiltWorkspace(const Pmf& prior, const SemanticChannel& sem, double truth_floor) {
        if (sem.n_x() != prior.size())
            throw invalid_argument_error("semantic channel must match the prior grid");
        if (!(truth_floor > 0.0))
            throw invalid_argument_error("truth floor must be positive");
        n_x_ = sem.n_x();
        n_y_ = sem.n_y();
        log_m_.resize(n_x_ * n_y_);
        log_t_theta_.resize(n_y_);
        for (std::size_t j = 0; j < n_y_; ++j) {
            bool reachable = false;
            double t_theta = 0.0;
            for (std::size_t i = 0; i < n_x_; ++i) {
                const double t = sem(i, j);
                reachable = reachable || t >= truth_floor;
                t_theta += prior[i] * t;
            }
            if (!reachable || !(t_theta > 0.0))
                throw unreachable_goal_error("semantic channel column lies below the truth floor");
            log_t_theta_[j] = std::log(t_theta);
            for (std::size_t i = 0; i < n_x_; ++i)
                log_m_[i * n_y_ + j] =
                    std::log(std::max(sem(i, j), truth_floor)) - log_t_theta_[j];
        }
    }

    std::size_t n_x() const { return n_x_; }
    std::size_t n_y() const { return n_y_; }
    double log_m(std::size_t i, std::size_t j) const { return log_m_[i * n_y_ + j]; }
    double log_logical_probability(std::size_t j) const { return log_t_theta_[j]; }

private:
    std::size_t n_x_ = 0, n_y_ = 0;
    std::vector<double> log_m_;
    std::vector<double> log_t_theta_;
};

inline TiltWorkspace build_tilt(const Pmf& prior, const SemanticChannel& sem,
                                double truth_floor = 1e-12) {
    return TiltWorkspace(prior, sem, truth_floor);
}

struct ChannelUpdate {
    ShannonChannel channel;
    std::vector<double> log_lambda;  // per-x normalizers, log form
};

// One tilted channel update: row i proportional to P(y_j) m_ij^s, normalized
// in log space so the rows stay exact even at s in the hundreds.
inline ChannelUpdate channel_update(const TiltWorkspace& ws, const Pmf& py, double s) {
    if (py.size() != ws.n_y())
        throw invalid_argument_error("marginal length must match goal count");
    const std::size_t n_x = ws.n_x(), n_y = ws.n_y();
    std::vector<double> log_py(n_y);
    for (std::size_t j = 0; j < n_y; ++j)
        log_py[j] = py[j] > 0.0 ? std::log(py[j]) : -std::numeric_limits<double>::infinity();
    std::vector<double> rows(n_x * n_y);
    std::vector<double> log_lambda(n_x);
    std::vector<double> a(n_y);
    for (std::size_t i = 0; i < n_x; ++i) {
        for (std::size_t j = 0; j < n_y; ++j) a[j] = log_py[j] + s * ws.log_m(i, j);
        const double lse = detail::log_sum_exp(a);
        log_lambda[i] = lse;
        double total = 0.0;
        for (std::size_t j = 0; j < n_y; ++j) {
            rows[i * n_y + j] = std::exp(a[j] - lse);
            total += rows[i * n_y + j];
        }
        for (std::size_t j = 0; j < n_y; ++j) rows[i * n_y + j] /= total;
    }
    return ChannelUpdate{ShannonChannel(n_x, n_y, std::move(rows)), std::move(log_lambda)};
}

// P(y_j) = sum_i P(x_i) P(y_j|x_i).
inline Pmf marginal_update(const Pmf& prior, const ShannonChannel& channel) {
    if (channel.n_x() != prior.size())
        throw invalid_argument_error("channel row count must match prior grid");
    std::vector<double> py(channel.n_y(), 0.0);
    for (std::size_t i = 0; i < channel.n_x(); ++i) {
        if (prior[i] <= 0.0) continue;
        for (std::size_t j = 0; j < channel.n_y(); ++j) py[j] += prior[i] * channel(i, j);
    }
    return Pmf::normalized(Grid::indices(channel.n_y()), std::move(py));
}

// Per-goal tilted posterior P(x|theta_j, s) and its information values.
// The posterior is proportional to P(x) m_ij^s; g is its expected pointwise
// information and r its divergence from the prior, both in bits. r equals
// s*g - log Z_j exactly, so g <= r with equality only at s = 1.
struct GoalTilt {
    Pmf posterior;
    double g_bits = 0.0;
    double r_bits = 0.0;
};

inline GoalTilt goal_tilt(const TiltWorkspace& ws, const Pmf& prior, std::size_t j, double s) {
    if (j >= ws.n_y())
        throw invalid_argument_error("goal index out of range");
    if (prior.size() != ws.n_x())
        throw invalid_argument_error("prior grid must match the workspace");
    const std::size_t n = ws.n_x();
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = prior[i] > 0.0 ? std::log(prior[i]) + s * ws.log_m(i, j)
                              : -std::numeric_limits<double>::infinity();
    }
    const double lse = detail::log_sum_exp(a);
    std::vector<double> t(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = std::isfinite(a[i]) ? std::exp(a[i] - lse) : 0.0;
        total += t[i];
    }
    for (double& v : t) v /= total;
    double g_nats = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (t[i] > 0.0) g_nats += t[i] * ws.log_m(i, j);
    const double r_nats = s * g_nats - lse;  // KL(posterior || prior)
    GoalTilt out{Pmf(prior.grid(), std::move(t)), detail::to_bits(g_nats),
                 detail::to_bits(r_nats)};
    return out;
}

struct RGPoint {
    double s = 0.0;
    double g_bits = 0.0;  // purposive information of the tilted posteriors
    double r_bits = 0.0;  // their average divergence from the prior
    Pmf py;
    ShannonChannel channel;
    int iterations_used = 0;
    bool converged = false;
};

// Channel-level values of the parametric solution: g is the semantic mutual
// information of the joint P(x) P(y|x), and r = s*g - E_P[log lambda] is the
// cross rate, which coincides with the Shannon mutual information of the
// channel exactly when py is its own marginal.
struct ParametricPoint {
    double g_bits = 0.0;
    double r_bits = 0.0;
};

inline ParametricPoint parametric_point(const TiltWorkspace& ws, const Pmf& prior,
                                        const Pmf& py, double s) {
    const ChannelUpdate step = channel_update(ws, py, s);
    double g_nats = 0.0, mean_log_lambda = 0.0;
    for (std::size_t i = 0; i < ws.n_x(); ++i) {
        if (prior[i] <= 0.0) continue;
        mean_log_lambda += prior[i] * step.log_lambda[i];
        for (std::size_t j = 0; j < ws.n_y(); ++j)
            g_nats += prior[i] * step.channel(i, j) * ws.log_m(i, j);
    }
    return ParametricPoint{detail::to_bits(g_nats),
                           detail::to_bits(s * g_nats - mean_log_lambda)};
}

namespace detail {

struct IterationOutcome {
    Pmf py;
    ShannonChannel channel;
    int iterations = 0;
    bool converged = false;
};

// Alternates tilted channel updates with marginal updates. The returned
// marginal is the exact marginal of the returned channel.
inline IterationOutcome iterate_marginal(const TiltWorkspace& ws, const Pmf& prior,
                                         Pmf py, double s, const SolverOptions& opts) {
    int max_iter;
    double tol;
    if (const auto* fixed = std::get_if<FixedIterations>(&opts.mode)) {
        if (fixed->count < 1)
            throw invalid_argument_error("iteration count must be at least one");
        max_iter = fixed->count;
        tol = -1.0;  // never stop early
    } else {
        const auto& conv = std::get<ConvergeTol>(opts.mode);
        if (!(conv.tol > 0.0) || conv.max_iter < 1)
            throw invalid_argument_error("convergence options must be positive");
        max_iter = conv.max_iter;
        tol = conv.tol;
    }
    // Each iteration builds the channel from the current marginal and then
    // replaces the marginal with the channel's exact marginal, so on exit py
    // is precisely the marginal of the returned channel.
    ChannelUpdate step = channel_update(ws, py, s);
    int used = 0;
    bool converged = false;
    for (int k = 0; k < max_iter; ++k) {
        if (k > 0) step = channel_update(ws, py, s);
        Pmf next = marginal_update(prior, step.channel);
        double delta = 0.0;
        for (std::size_t j = 0; j < py.size(); ++j) delta += std::abs(next[j] - py[j]);
        py = std::move(next);
        ++used;
        if (tol > 0.0 && delta < tol) {
            converged = true;
            break;
        }
    }
    if (tol <= 0.0) {
        // Fixed-iteration mode: report whether the marginal has effectively
        // settled anyway.
        const Pmf probe = marginal_update(prior, channel_update(ws, py, s).channel);
        double delta = 0.0;
        for (std::size_t j = 0; j < py.size(); ++j) delta += std::abs(probe[j] - py[j]);
        converged = delta < 1e-10;
    }
    return IterationOutcome{std::move(py), std::move(step.channel), used, converged};
}

inline RGPoint mixture_point(const TiltWorkspace& ws, const Pmf& prior,
                             IterationOutcome outcome, double s) {
    double g = 0.0, r = 0.0;
    for (std::size_t j = 0; j < ws.n_y(); ++j) {
        if (outcome.py[j] <= 0.0) continue;
        const GoalTilt gt = goal_tilt(ws, prior, j, s);
        g += outcome.py[j] * gt.g_bits;
        r += outcome.py[j] * gt.r_bits;
    }
    return RGPoint{s, g, r, std::move(outcome.py), std::move(outcome.channel),
                   outcome.iterations, outcome.converged};
}

}  // namespace detail

// Solves one point of the rate-fidelity tradeoff at parameter s: iterates the
// tilted channel against its marginal, then reports the purposive information
// g and rate r of the per-goal tilted posteriors weighted by the marginal.
inline RGPoint solve_point(const Pmf& prior, const SemanticChannel& sem, double s,
                           const Pmf& init_py, const SolverOptions& opts = {}) {
    const TiltWorkspace ws = build_tilt(prior, sem, opts.truth_floor);
    if (init_py.size() != ws.n_y())
        throw invalid_argument_error("initial marginal length must match goal count");
    for (std::size_t j = 0; j < init_py.size(); ++j)
        if (!(init_py[j] > 0.0))
            throw invalid_argument_error("initial marginal must be strictly positive");
    return detail::mixture_point(ws, prior,
                                 detail::iterate_marginal(ws, prior, init_py, s, opts), s);
}

struct SingleMessagePoint {
    double g_bits = 0.0;
    double r_bits = 0.0;
    Pmf posterior;
};

// Single-message variant: no marginal to iterate, just the tilted posterior
// of the one goal.
inline SingleMessagePoint single_message_point(const Pmf& prior, std::span<const double> truth,
                                               double s, double truth_floor = 1e-12) {
    const SemanticChannel sem = SemanticChannel::from_columns(
        {std::vector<double>(truth.begin(), truth.end())});
    const TiltWorkspace ws = build_tilt(prior, sem, truth_floor);
    GoalTilt gt = goal_tilt(ws, prior, 0, s);
    return SingleMessagePoint{gt.g_bits, gt.r_bits, std::move(gt.posterior)};
}

// Information efficiency g/r. Undefined at the rate-free origin (r = 0).
inline std::optional<double> efficiency(const RGPoint& point) {
    if (std::abs(point.r_bits) <= 1e-12) return std::nullopt;
    return point.g_bits / point.r_bits;
}

struct SecantSegment {
    double s_lo = 0.0;
    double s_hi = 0.0;
    double slope = 0.0;  // delta r / delta g between consecutive curve points
};

struct RGCurve {
    std::vector<RGPoint> points;  // sorted by g

    std::vector<SecantSegment> secant_slopes() const {
        std::vector<SecantSegment> segs;
        for (std::size_t k = 0; k + 1 < points.size(); ++k) {
            const double dg = points[k + 1].g_bits - points[k].g_bits;
            const double dr = points[k + 1].r_bits - points[k].r_bits;
            segs.push_back(SecantSegment{points[k].s, points[k + 1].s,
                                         dg != 0.0 ? dr / dg : std::numeric_limits<double>::quiet_NaN()});
        }
        return segs;
    }
};

// Sweeps s over a list. Warm starts chain each converged marginal into the
// next solve; cold starts are independent and solved concurrently.
inline RGCurve sweep(const Pmf& prior, const SemanticChannel& sem,
                     const std::vector<double>& s_list, const Pmf& init_py,
                     const SolverOptions& opts = {}) {
    if (s_list.empty())
        throw invalid_argument_error("sweep needs at least one s value");
    RGCurve curve;
    curve.points.reserve(s_list.size());
    if (opts.warm_start) {
        Pmf py = init_py;
        for (double s : s_list) {
            curve.points.push_back(solve_point(prior, sem, s, py, opts));
            py = curve.points.back().py;
        }
    } else {
        std::vector<std::future<RGPoint>> futures;
        futures.reserve(s_list.size());
        for (double s : s_list)
            futures.push_back(std::async(std::launch::async, [&, s] {
                return solve_point(prior, sem, s, init_py, opts);
            }));
        for (auto& f : futures) curve.points.push_back(f.get());
    }
    std::stable_sort(curve.points.begin(), curve.points.end(),
                     [](const RGPoint& a, const RGPoint& b) { return a.g_bits < b.g_bits; });
    return curve;
}

}  // namespace seminfo
