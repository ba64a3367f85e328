#pragma once

#include <stdexcept>
#include <string>

namespace seminfo {

// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Bad arguments: malformed grids, mismatched lengths, out-of-range parameters.
class invalid_argument_error : public error {
public:
    using error::error;
};

// A prior spec left no mass on the grid after truncation.
class degenerate_prior_error : public error {
public:
    using error::error;
};

// A goal whose logical probability is zero cannot be conditioned on.
class unsatisfiable_goal_error : public error {
public:
    using error::error;
};

// Likelihood puts mass where the prior has none; the ratio is undefined.
class undefined_ratio_error : public error {
public:
    using error::error;
};

// A channel column with no positive entry has no matching truth function.
class unreachable_label_error : public error {
public:
    using error::error;
};

// A semantic-channel column entirely below the truth floor cannot be tilted.
class unreachable_goal_error : public error {
public:
    using error::error;
};

// Truth-function fitting found no parameter point with a finite objective.
class no_feasible_fit_error : public error {
public:
    using error::error;
};

// A zero-variance source has no Gaussian surrogate.
class degenerate_surrogate_error : public error {
public:
    using error::error;
};

// Scenario configuration problems: unknown keys, bad values, unwritable paths.
class config_error : public error {
public:
    using error::error;
};

}  // namespace seminfo
