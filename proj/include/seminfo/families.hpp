#pragma once

#include <cmath>
#include <variant>
#include <vector>

#include "seminfo/errors.hpp"
#include "seminfo/grid.hpp"
#include "seminfo/pmf.hpp"

namespace seminfo {

// ---- prior families --------------------------------------------------------

// Normal density sampled at the grid points, truncated to the grid and
// renormalized.
struct NormalPrior {
    double mu = 0.0;
    double sigma = 1.0;
};

struct TabulatedPrior {
    std::vector<double> weights;
};

using PriorSpec = std::variant<NormalPrior, TabulatedPrior>;

inline Pmf pmf_from_spec(const PriorSpec& spec, const Grid& grid) {
    if (const auto* n = std::get_if<NormalPrior>(&spec)) {
        if (!(n->sigma > 0.0))
            throw invalid_argument_error("normal prior needs sigma > 0");
        std::vector<double> w(grid.size());
        double total = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double z = (grid.point(i) - n->mu) / n->sigma;
            w[i] = std::exp(-0.5 * z * z);
            total += w[i];
        }
        if (!(total > 0.0))
            throw degenerate_prior_error("prior has no mass on the grid");
        for (double& v : w) v /= total;
        return Pmf(grid, std::move(w));
    }
    const auto& t = std::get<TabulatedPrior>(spec);
    if (t.weights.size() != grid.size())
        throw invalid_argument_error("tabulated prior length must match grid");
    for (double v : t.weights)
        if (!(v >= 0.0))
            throw invalid_argument_error("tabulated prior weights must be non-negative");
    double total = 0.0;
    for (double v : t.weights) total += v;
    if (!(total > 0.0))
        throw degenerate_prior_error("prior has no mass on the grid");
    std::vector<double> w = t.weights;
    for (double& v : w) v /= total;
    return Pmf(grid, std::move(w));
}

// ---- truth-function families ----------------------------------------------

// Rising sigmoid 1 / (1 + exp(-k (x - c))).
struct LogisticTruth {
    double c = 0.0;
    double k = 1.0;
};

// 1 - [1 - exp(-(x - c)^2 / w)]^p, a bell with polynomially fattened flanks.
struct BellPowerTruth {
    double c = 0.0;
    double w = 1.0;
    int p = 1;
};

// exp(-(x - c)^2 / (2 sigma^2)), the truth function of a quadratic distortion.
struct GaussianBellTruth {
    double c = 0.0;
    double sigma = 1.0;
};

struct TabulatedTruth {
    std::vector<double> values;
};

using TruthSpec = std::variant<LogisticTruth, BellPowerTruth, GaussianBellTruth, TabulatedTruth>;

inline double eval_truth(const TruthSpec& spec, double x) {
    if (const auto* l = std::get_if<LogisticTruth>(&spec)) {
        if (!(l->k > 0.0)) throw invalid_argument_error("logistic truth needs k > 0");
        return 1.0 / (1.0 + std::exp(-l->k * (x - l->c)));
    }
    if (const auto* b = std::get_if<BellPowerTruth>(&spec)) {
        if (!(b->w > 0.0)) throw invalid_argument_error("bell truth needs w > 0");
        if (b->p < 1) throw invalid_argument_error("bell truth needs p >= 1");
        const double d = x - b->c;
        const double g = std::exp(-d * d / b->w);
        // 1 - (1-g)^p without cancellation in the far tails.
        return -std::expm1(static_cast<double>(b->p) * std::log1p(-g));
    }
    if (const auto* g = std::get_if<GaussianBellTruth>(&spec)) {
        if (!(g->sigma > 0.0)) throw invalid_argument_error("gaussian bell needs sigma > 0");
        const double z = (x - g->c) / g->sigma;
        return std::exp(-0.5 * z * z);
    }
    throw invalid_argument_error("tabulated truth cannot be evaluated pointwise");
}

// Evaluates a truth-function spec on the grid; the result is one semantic
// channel column with every value in [0, 1].
inline std::vector<double> truth_from_spec(const TruthSpec& spec, const Grid& grid) {
    if (const auto* t = std::get_if<TabulatedTruth>(&spec)) {
        if (t->values.size() != grid.size())
            throw invalid_argument_error("tabulated truth length must match grid");
        for (double v : t->values)
            if (!(v >= 0.0 && v <= 1.0))
                throw invalid_argument_error("truth values must lie in [0, 1]");
        return t->values;
    }
    std::vector<double> col(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) col[i] = eval_truth(spec, grid.point(i));
    return col;
}

}  // namespace seminfo
