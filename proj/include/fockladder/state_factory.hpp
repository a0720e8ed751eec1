#pragma once

#include "fockladder/field_state.hpp"

namespace fockladder {

struct ThermalSpec {
    double nbar = 0.0; // mean photon number, >= 0
};

struct CoherentSpec {
    Complex alpha{0.0, 0.0};
};

/// Geometric number distribution p_n = nbar^n / (1+nbar)^(n+1), truncated so
/// the dropped tail cannot shift the first two moments by more than tail_tol.
FieldState make_thermal(const ThermalSpec& spec, double tail_tol = kDefaultTailTol);

/// Coherent state amplitudes c_n = e^{-|a|^2/2} a^n / sqrt(n!), built by the
/// multiplicative recurrence c_n = c_{n-1} a / sqrt(n).
FieldState make_coherent(const CoherentSpec& spec, double tail_tol = kDefaultTailTol);

/// Number state |n>.
FieldState make_number(std::size_t n);

} // namespace fockladder
