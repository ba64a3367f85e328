#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "seminfo/channels.hpp"
#include "seminfo/errors.hpp"
#include "seminfo/pmf.hpp"
#include "seminfo/rate_fidelity.hpp"
#include "seminfo/semantics.hpp"

namespace seminfo {

// Purposive information of a control result against a goal: the same average
// as avg_semantic_info, with the achieved distribution P(x|a_j) as the sample.
inline double purposive_info(const Pmf& result, std::span<const double> truth,
                             const Pmf& prior) {
    return avg_semantic_info(result, truth, prior);
}

// Multi-goal purposive information: action-weighted average of the per-goal
// values, in bits.
inline double multi_goal_purposive(const std::vector<Pmf>& posteriors, const Pmf& pa,
                                   const SemanticChannel& sem, const Pmf& prior) {
    if (posteriors.size() != sem.n_y() || pa.size() != sem.n_y())
        throw invalid_argument_error("one posterior and one weight per goal required");
    double acc = 0.0;
    for (std::size_t j = 0; j < posteriors.size(); ++j) {
        if (pa[j] <= 0.0) continue;
        acc += pa[j] * purposive_info(posteriors[j], sem.column(j), prior);
    }
    return acc;
}

// Information max-min objective f = I(X;A) - s * I(X;A/theta), in bits, where
// I(X;A) is the action-weighted divergence of the results from the prior.
// Minimizing f trades rate spent against purposive information gained.
inline double imm_objective(const Pmf& prior, const Pmf& pa,
                            const std::vector<Pmf>& posteriors, const SemanticChannel& sem,
                            double s) {
    if (posteriors.size() != sem.n_y() || pa.size() != sem.n_y())
        throw invalid_argument_error("one posterior and one weight per goal required");
    double rate = 0.0;
    for (std::size_t j = 0; j < posteriors.size(); ++j) {
        if (pa[j] <= 0.0) continue;
        rate += pa[j] * kl_divergence(posteriors[j], prior);
    }
    return rate - s * multi_goal_purposive(posteriors, pa, sem, prior);
}

struct GaussianSurrogate {
    double mu = 0.0;
    double sigma = 0.0;
    Pmf pmf;
};

// Moment-matched normal stand-in for a realizable control outcome: same mean
// and population variance as the source, sampled on the source grid and
// renormalized.
inline GaussianSurrogate gaussian_surrogate(const Pmf& source) {
    const double mu = source.mean();
    const double var = source.variance();
    if (!(var > 0.0))
        throw degenerate_surrogate_error("source distribution has zero variance");
    const double sigma = std::sqrt(var);
    const Grid& grid = source.grid();
    std::vector<double> w(grid.size());
    double total = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double z = (grid.point(i) - mu) / sigma;
        w[i] = std::exp(-0.5 * z * z);
        total += w[i];
    }
    if (!(total > 0.0))
        throw degenerate_surrogate_error("surrogate has no mass on the grid");
    for (double& v : w) v /= total;
    return GaussianSurrogate{mu, sigma, Pmf(grid, std::move(w))};
}

struct SurrogatePlan {
    std::vector<std::pair<double, double>> betas;  // (mu_j, sigma_j) per goal
    std::vector<Pmf> surrogate_posteriors;
    double g1_bits = 0.0;
    double r1_bits = 0.0;
    std::optional<double> efficiency1;
};

// Replaces each control result with its Gaussian surrogate and re-evaluates
// the information values against the fixed prior.
inline SurrogatePlan surrogate_rg(const Pmf& prior, const SemanticChannel& sem,
                                  const Pmf& pa, const std::vector<Pmf>& source_posteriors) {
    if (source_posteriors.size() != sem.n_y() || pa.size() != sem.n_y())
        throw invalid_argument_error("one posterior and one weight per goal required");
    SurrogatePlan plan;
    plan.betas.reserve(source_posteriors.size());
    plan.surrogate_posteriors.reserve(source_posteriors.size());
    for (const Pmf& source : source_posteriors) {
        GaussianSurrogate s = gaussian_surrogate(source);
        plan.betas.emplace_back(s.mu, s.sigma);
        plan.surrogate_posteriors.push_back(std::move(s.pmf));
    }
    plan.g1_bits = multi_goal_purposive(plan.surrogate_posteriors, pa, sem, prior);
    double rate = 0.0;
    for (std::size_t j = 0; j < plan.surrogate_posteriors.size(); ++j) {
        if (pa[j] <= 0.0) continue;
        rate += pa[j] * kl_divergence(plan.surrogate_posteriors[j], prior);
    }
    plan.r1_bits = rate;
    if (std::abs(rate) > 1e-12) plan.efficiency1 = plan.g1_bits / rate;
    return plan;
}

struct PointMassPlan {
    std::size_t index = 0;
    double g_bits = 0.0;
    double r_bits = 0.0;
    double efficiency = 0.0;
};

// Deterministic control to a single grid point: maximal purposiveness is
// bounded by the pointwise information there, while the rate is the full
// log 1/P(x) cost of pinning the outcome.
inline PointMassPlan point_mass_plan(const Pmf& prior, std::span<const double> truth,
                                     double x_target) {
    const std::size_t i = prior.grid().nearest_index(x_target);
    PointMassPlan plan;
    plan.index = i;
    plan.g_bits = pointwise_info(truth, prior, i);
    if (prior[i] <= 0.0) {
        plan.r_bits = std::numeric_limits<double>::infinity();
        plan.efficiency = 0.0;
        return plan;
    }
    plan.r_bits = -detail::to_bits(std::log(prior[i]));
    plan.efficiency = plan.g_bits / plan.r_bits;
    return plan;
}

struct ControlPlan {
    double s = 0.0;
    Pmf pa;
    std::vector<Pmf> posteriors;  // P(x|a_j), the tilted per-goal results
    double g_bits = 0.0;
    double r_bits = 0.0;
    std::optional<double> efficiency;
    int iterations_used = 0;
    bool converged = false;
};

namespace detail {

// Action-assignment table used to split the prior population across goals:
// log of the raw truth values (floored). The per-goal result distributions
// are invariant to any per-column scaling of the truth, but the competition
// between actions is not; assigning in proportion to the truth itself keeps
// investment away from goals that are nearly false everywhere.
inline std::vector<double> assignment_log_truth(const SemanticChannel& sem,
                                                double truth_floor) {
    std::vector<double> log_t(sem.n_x() * sem.n_y());
    for (std::size_t j = 0; j < sem.n_y(); ++j) {
        bool reachable = false;
        for (std::size_t i = 0; i < sem.n_x(); ++i) {
            const double t = sem(i, j);
            reachable = reachable || t >= truth_floor;
            log_t[i * sem.n_y() + j] = std::log(std::max(t, truth_floor));
        }
        if (!reachable)
            throw unreachable_goal_error("semantic channel column lies below the truth floor");
    }
    return log_t;
}

struct AssignmentResult {
    Pmf pa;
    int iterations = 0;
    bool settled = false;
};

inline AssignmentResult assignment_marginal(const Pmf& prior, const std::vector<double>& log_t,
                                            std::size_t n_y, double s, Pmf pa, int max_iter,
                                            double tol) {
    const std::size_t n_x = prior.size();
    std::vector<double> a(n_y);
    std::vector<double> next(n_y);
    auto one_pass = [&](const Pmf& current) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < n_x; ++i) {
            if (prior[i] <= 0.0) continue;
            for (std::size_t j = 0; j < n_y; ++j) {
                a[j] = (current[j] > 0.0 ? std::log(current[j])
                                         : -std::numeric_limits<double>::infinity()) +
                       s * log_t[i * n_y + j];
            }
            const double lse = log_sum_exp(a);
            for (std::size_t j = 0; j < n_y; ++j)
                next[j] += prior[i] * std::exp(a[j] - lse);
        }
        return Pmf::normalized(Grid::indices(n_y), next);
    };
    AssignmentResult out{std::move(pa), 0, false};
    for (int k = 0; k < max_iter; ++k) {
        Pmf updated = one_pass(out.pa);
        double delta = 0.0;
        for (std::size_t j = 0; j < n_y; ++j) delta += std::abs(updated[j] - out.pa[j]);
        out.pa = std::move(updated);
        ++out.iterations;
        if (tol > 0.0 && delta < tol) {
            out.settled = true;
            return out;
        }
    }
    const Pmf probe = one_pass(out.pa);
    double delta = 0.0;
    for (std::size_t j = 0; j < n_y; ++j) delta += std::abs(probe[j] - out.pa[j]);
    out.settled = delta < 1e-10;
    return out;
}

}  // namespace detail

// Plans multi-goal range control at tradeoff parameter s: the action split
// P(a) comes from iterating truth-proportional assignment of the prior
// population (uniform start), and each action's result is the tilted
// posterior P(x|theta_j, s), which at s = 1 is exactly the semantic Bayes
// posterior of its goal.
inline ControlPlan optimize_control(const Pmf& prior, const SemanticChannel& sem, double s,
                                    const SolverOptions& opts = {}) {
    if (sem.n_x() != prior.size())
        throw invalid_argument_error("semantic channel must match the prior grid");
    const TiltWorkspace ws = build_tilt(prior, sem, opts.truth_floor);
    const std::vector<double> log_t = detail::assignment_log_truth(sem, opts.truth_floor);

    int max_iter;
    double tol;
    if (const auto* fixed = std::get_if<FixedIterations>(&opts.mode)) {
        if (fixed->count < 1)
            throw invalid_argument_error("iteration count must be at least one");
        max_iter = fixed->count;
        tol = -1.0;
    } else {
        const auto& conv = std::get<ConvergeTol>(opts.mode);
        if (!(conv.tol > 0.0) || conv.max_iter < 1)
            throw invalid_argument_error("convergence options must be positive");
        max_iter = conv.max_iter;
        tol = conv.tol;
    }

    detail::AssignmentResult assigned = detail::assignment_marginal(
        prior, log_t, sem.n_y(), s, Pmf::uniform(Grid::indices(sem.n_y())), max_iter, tol);

    std::vector<Pmf> posteriors;
    posteriors.reserve(sem.n_y());
    double g = 0.0, r = 0.0;
    for (std::size_t j = 0; j < sem.n_y(); ++j) {
        GoalTilt gt = goal_tilt(ws, prior, j, s);
        g += assigned.pa[j] * gt.g_bits;
        r += assigned.pa[j] * gt.r_bits;
        posteriors.push_back(std::move(gt.posterior));
    }
    std::optional<double> eff;
    if (std::abs(r) > 1e-12) eff = g / r;
    return ControlPlan{s,       std::move(assigned.pa), std::move(posteriors), g, r,
                       eff,     assigned.iterations,    assigned.settled};
}

}  // namespace seminfo
