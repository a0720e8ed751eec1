#pragma once

#include <stdexcept>

namespace fockladder {

// Ladder operation applied to a state it maps to zero (e.g. annihilating the
// vacuum), or normalization requested for a vector with norm below 1e-14.
class ZeroNormState : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive truncation would exceed the hard cap, or a weight blew up past
// double range: the request is numerically infeasible at this precision.
class TruncationOverflow : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Post-selection branch has identically zero weight: the conditioned outcome
// can never be observed.
class ZeroSuccessProbability : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bisection bracket does not straddle a sign change.
class NoSignChange : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace fockladder
