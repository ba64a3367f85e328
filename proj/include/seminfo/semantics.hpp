#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "seminfo/channels.hpp"
#include "seminfo/errors.hpp"
#include "seminfo/families.hpp"
#include "seminfo/pmf.hpp"

namespace seminfo {

// Logical probability of a goal: the prior-weighted average of its truth
// function. Unlike statistical probabilities these need not sum to one
// across goals.
inline double logical_probability(std::span<const double> truth, const Pmf& prior) {
    if (truth.size() != prior.size())
        throw invalid_argument_error("truth column length must match prior grid");
    double t = 0.0;
    for (std::size_t i = 0; i < prior.size(); ++i) t += prior[i] * truth[i];
    return t;
}

// Likelihood induced by a truth function: P(x | theta) = T(theta|x) P(x) / T(theta).
inline Pmf semantic_bayes(std::span<const double> truth, const Pmf& prior) {
    const double t_theta = logical_probability(truth, prior);
    if (!(t_theta > 0.0))
        throw unsatisfiable_goal_error("goal has zero logical probability under the prior");
    std::vector<double> w(prior.size());
    for (std::size_t i = 0; i < prior.size(); ++i) w[i] = truth[i] * prior[i] / t_theta;
    return Pmf(prior.grid(), std::move(w));
}

struct TruthRecovery {
    std::vector<double> truth;
    double logical_prob = 0.0;
};

// Inverse of semantic_bayes: recovers the truth function from a likelihood,
// normalized so its maximum over the grid is exactly one. The logical
// probability is 1 / max(P(x|theta)/P(x)).
inline TruthRecovery truth_from_likelihood(const Pmf& likelihood, const Pmf& prior) {
    if (!likelihood.grid().same_as(prior.grid()))
        throw invalid_argument_error("likelihood and prior must share a grid");
    double max_ratio = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < prior.size(); ++i) {
        if (likelihood[i] > 0.0 && prior[i] <= 0.0)
            throw undefined_ratio_error("likelihood puts mass where the prior has none");
        if (prior[i] > 0.0) {
            const double r = likelihood[i] / prior[i];
            if (r > max_ratio) {
                max_ratio = r;
                arg = i;
            }
        }
    }
    if (!(max_ratio > 0.0))
        throw invalid_argument_error("likelihood is identically zero");
    TruthRecovery out;
    out.logical_prob = 1.0 / max_ratio;
    out.truth.resize(prior.size(), 0.0);
    for (std::size_t i = 0; i < prior.size(); ++i)
        if (prior[i] > 0.0)
            out.truth[i] = std::min(1.0, out.logical_prob * likelihood[i] / prior[i]);
    out.truth[arg] = 1.0;  // exact at the maximizing point
    return out;
}

// Information the goal conveys about a single grid point, in bits:
// log T(theta|x_i) / T(theta). Negative for points that deviate from the
// goal; -infinity where the truth value vanishes.
inline double pointwise_info(std::span<const double> truth, const Pmf& prior, std::size_t i) {
    if (i >= truth.size())
        throw invalid_argument_error("pointwise_info index out of range");
    const double t_theta = logical_probability(truth, prior);
    if (!(t_theta > 0.0))
        throw unsatisfiable_goal_error("goal has zero logical probability under the prior");
    if (truth[i] <= 0.0) return -std::numeric_limits<double>::infinity();
    return detail::to_bits(std::log(truth[i] / t_theta));
}

// Sample-averaged semantic information, in bits. Returns -infinity when the
// sample puts mass where the truth function vanishes.
inline double avg_semantic_info(const Pmf& sample, std::span<const double> truth,
                                const Pmf& prior) {
    if (!sample.grid().same_as(prior.grid()))
        throw invalid_argument_error("sample and prior must share a grid");
    const double t_theta = logical_probability(truth, prior);
    if (!(t_theta > 0.0))
        throw unsatisfiable_goal_error("goal has zero logical probability under the prior");
    double nats = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (sample[i] <= 0.0) continue;
        if (truth[i] <= 0.0) return -std::numeric_limits<double>::infinity();
        nats += sample[i] * std::log(truth[i] / t_theta);
    }
    return detail::to_bits(nats);
}

// Optimized truth function for one channel column: the column scaled so its
// maximum is one.
inline std::vector<double> truth_from_channel(const ShannonChannel& channel, std::size_t j) {
    std::vector<double> col = channel.column(j);
    const double m = *std::max_element(col.begin(), col.end());
    if (!(m > 0.0))
        throw unreachable_label_error("channel column is identically zero");
    for (double& v : col) v /= m;
    return col;
}

// Shannon mutual information of the joint P(x) P(y|x), in bits.
inline double shannon_mi(const Pmf& prior, const ShannonChannel& channel) {
    if (channel.n_x() != prior.size())
        throw invalid_argument_error("channel row count must match prior grid");
    std::vector<double> py(channel.n_y(), 0.0);
    for (std::size_t i = 0; i < channel.n_x(); ++i)
        for (std::size_t j = 0; j < channel.n_y(); ++j) py[j] += prior[i] * channel(i, j);
    double nats = 0.0;
    for (std::size_t i = 0; i < channel.n_x(); ++i) {
        if (prior[i] <= 0.0) continue;
        for (std::size_t j = 0; j < channel.n_y(); ++j) {
            const double c = channel(i, j);
            if (c <= 0.0 || py[j] <= 0.0) continue;
            nats += prior[i] * c * std::log(c / py[j]);
        }
    }
    return detail::to_bits(nats);
}

// Semantic mutual information of a Shannon channel judged against a semantic
// channel, in bits. Never exceeds shannon_mi; equals it when the semantic
// channel matches the Shannon channel column by column.
inline double semantic_mi(const Pmf& prior, const ShannonChannel& channel,
                          const SemanticChannel& sem) {
    if (channel.n_x() != prior.size() || sem.n_x() != prior.size() ||
        channel.n_y() != sem.n_y())
        throw invalid_argument_error("semantic_mi requires conformable shapes");
    std::vector<double> t_theta(sem.n_y());
    for (std::size_t j = 0; j < sem.n_y(); ++j) {
        t_theta[j] = logical_probability(sem.column(j), prior);
        if (!(t_theta[j] > 0.0))
            throw unsatisfiable_goal_error("goal has zero logical probability under the prior");
    }
    double nats = 0.0;
    for (std::size_t i = 0; i < channel.n_x(); ++i) {
        if (prior[i] <= 0.0) continue;
        for (std::size_t j = 0; j < channel.n_y(); ++j) {
            const double mass = prior[i] * channel(i, j);
            if (mass <= 0.0) continue;
            if (sem(i, j) <= 0.0) return -std::numeric_limits<double>::infinity();
            nats += mass * std::log(sem(i, j) / t_theta[j]);
        }
    }
    return detail::to_bits(nats);
}

// Truth value and distortion are a log/exp pair: d = log 1/t (nats).
inline double truth_to_distortion(double t) {
    if (t < 0.0 || t > 1.0)
        throw invalid_argument_error("truth value must lie in [0, 1]");
    if (t == 0.0) return std::numeric_limits<double>::infinity();
    return -std::log(t);
}

inline double distortion_to_truth(double d) {
    if (!(d >= 0.0))
        throw invalid_argument_error("distortion must be non-negative");
    return std::exp(-d);
}

// Semantic mutual information split into a fuzzy-entropy term and an average
// distortion: I = H(Y_theta) - dbar, with dbar the joint expectation of
// log 1/T. The identity holds for every semantic channel, not only bell-shaped
// ones. All fields in bits.
struct InfoDecomposition {
    double fuzzy_entropy_bits = 0.0;   // -sum_j P(y_j) log T(theta_j)
    double avg_distortion_bits = 0.0;  // E_{P(x,y)} log 1/T(theta_j|x)
    double semantic_mi_bits = 0.0;
};

inline InfoDecomposition decompose_info(const Pmf& prior, const ShannonChannel& channel,
                                        const SemanticChannel& sem) {
    if (channel.n_x() != prior.size() || sem.n_x() != prior.size() ||
        channel.n_y() != sem.n_y())
        throw invalid_argument_error("decompose_info requires conformable shapes");
    std::vector<double> py(channel.n_y(), 0.0);
    for (std::size_t i = 0; i < channel.n_x(); ++i)
        for (std::size_t j = 0; j < channel.n_y(); ++j) py[j] += prior[i] * channel(i, j);
    InfoDecomposition out;
    double fuzzy = 0.0;
    for (std::size_t j = 0; j < sem.n_y(); ++j) {
        const double t_theta = logical_probability(sem.column(j), prior);
        if (!(t_theta > 0.0))
            throw unsatisfiable_goal_error("goal has zero logical probability under the prior");
        if (py[j] > 0.0) fuzzy -= py[j] * std::log(t_theta);
    }
    double dbar = 0.0;
    for (std::size_t i = 0; i < channel.n_x(); ++i) {
        if (prior[i] <= 0.0) continue;
        for (std::size_t j = 0; j < channel.n_y(); ++j) {
            const double mass = prior[i] * channel(i, j);
            if (mass <= 0.0) continue;
            if (sem(i, j) <= 0.0) {
                dbar = std::numeric_limits<double>::infinity();
                break;
            }
            dbar -= mass * std::log(sem(i, j));
        }
        if (!std::isfinite(dbar)) break;
    }
    out.fuzzy_entropy_bits = detail::to_bits(fuzzy);
    out.avg_distortion_bits = detail::to_bits(dbar);
    out.semantic_mi_bits = semantic_mi(prior, channel, sem);
    return out;
}

// ---- parametric truth fitting ----------------------------------------------

struct ParamRange {
    double lo = 0.0;
    double hi = 1.0;
};

// Axis-aligned box searched coarse-to-fine: three refinement levels with 32
// points per axis per level.
struct SearchBox {
    std::vector<ParamRange> ranges;
};

enum class TruthFamily { Logistic, BellPower, GaussianBell };

struct FitResult {
    TruthSpec spec;
    double objective_bits = 0.0;
};

namespace detail {

inline TruthSpec make_spec(TruthFamily family, double a, double b, int bell_power) {
    switch (family) {
        case TruthFamily::Logistic: return LogisticTruth{a, b};
        case TruthFamily::BellPower: return BellPowerTruth{a, b, bell_power};
        case TruthFamily::GaussianBell: return GaussianBellTruth{a, b};
    }
    throw invalid_argument_error("unknown truth family");
}

inline double fit_objective_nats(const TruthSpec& spec, const Pmf& sample, const Pmf& prior) {
    double t_theta = 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < prior.size(); ++i) {
        const double t = eval_truth(spec, prior.grid().point(i));
        t_theta += prior[i] * t;
        if (sample[i] > 0.0) {
            if (t <= 0.0) return -std::numeric_limits<double>::infinity();
            acc += sample[i] * std::log(t);
        }
    }
    if (!(t_theta > 0.0)) return -std::numeric_limits<double>::infinity();
    return acc - std::log(t_theta);
}

}  // namespace detail

// Fits truth-function parameters to a sample by maximizing the average
// semantic information of the induced goal, via a deterministic
// coarse-to-fine grid search over the box. Ties break toward the lower
// parameter values. For the bell family the integer power stays fixed.
inline FitResult fit_truth(const Pmf& sample, const Pmf& prior, TruthFamily family,
                           const SearchBox& box, int bell_power = 3) {
    if (!sample.grid().same_as(prior.grid()))
        throw invalid_argument_error("sample and prior must share a grid");
    if (box.ranges.size() != 2)
        throw invalid_argument_error("search box must give ranges for two parameters");
    for (const auto& r : box.ranges)
        if (!(r.hi >= r.lo))
            throw invalid_argument_error("search range is empty");

    constexpr int kLevels = 3;
    constexpr int kPointsPerAxis = 32;

    ParamRange ra = box.ranges[0];
    ParamRange rb = box.ranges[1];
    double best_a = ra.lo, best_b = rb.lo;
    double best = -std::numeric_limits<double>::infinity();

    for (int level = 0; level < kLevels; ++level) {
        const double step_a = (ra.hi - ra.lo) / (kPointsPerAxis - 1);
        const double step_b = (rb.hi - rb.lo) / (kPointsPerAxis - 1);
        for (int ia = 0; ia < kPointsPerAxis; ++ia) {
            const double a = ra.lo + ia * step_a;
            for (int ib = 0; ib < kPointsPerAxis; ++ib) {
                const double b = rb.lo + ib * step_b;
                double obj;
                try {
                    obj = detail::fit_objective_nats(detail::make_spec(family, a, b, bell_power),
                                                     sample, prior);
                } catch (const invalid_argument_error&) {
                    continue;  // parameter combination outside the family's domain
                }
                if (obj > best) {
                    best = obj;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        // Shrink the box around the incumbent, clamped to the original bounds.
        ra = {std::max(box.ranges[0].lo, best_a - step_a),
              std::min(box.ranges[0].hi, best_a + step_a)};
        rb = {std::max(box.ranges[1].lo, best_b - step_b),
              std::min(box.ranges[1].hi, best_b + step_b)};
    }
    if (!std::isfinite(best))
        throw no_feasible_fit_error("objective is -infinity everywhere in the search box");
    return FitResult{detail::make_spec(family, best_a, best_b, bell_power),
                     detail::to_bits(best)};
}

}  // namespace seminfo
