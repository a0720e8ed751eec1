#pragma once

#include "fockladder/field_state.hpp"

#include <optional>

namespace fockladder {

struct MomentSummary {
    double mean = 0.0;
    double second_moment = 0.0;
    double variance = 0.0;
    // Undefined for zero-mean (vacuum) states rather than NaN.
    std::optional<double> mandel_q;
};

/// Photon-number mean, second moment, variance and Mandel Q of a normalized
/// state.
MomentSummary moments(const FieldState& state);

struct ThermalMoments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Closed-form mean and variance of the k-fold AC image of a thermal state,
/// via negative-order polylogarithm ratios at z = nbar/(1+nbar).
ThermalMoments thermal_ack_moments(double nbar, unsigned k);

/// Same for the k-fold CA image. Its mean is exactly one below the AC mean
/// and its variance coincides with the AC variance; both identities fall out
/// of the independent polylogarithm expressions evaluated here.
ThermalMoments thermal_cak_moments(double nbar, unsigned k);

/// Uhlmann fidelity, using the commuting-case reductions: |<a|b>|^2 for two
/// pure states, (sum_n sqrt(p_n q_n))^2 for two diagonal states and <psi|rho|psi>
/// for a mixed pair. Dimensions are aligned by zero-padding.
double fidelity(const FieldState& a, const FieldState& b);

/// Wigner function with the convention W(alpha) = (2/pi) Tr[rho D(a) Pi D+(a)],
/// so that the vacuum takes the value 2/pi at the origin and the phase-space
/// integral over x = Re(alpha), y = Im(alpha) is one.
double wigner_at(const FieldState& state, Complex alpha);

struct WignerGridSpec {
    double x_min = -3.0;
    double x_max = 3.0;
    double y_min = -3.0;
    double y_max = 3.0;
    int resolution = 121; // lattice points per axis, endpoints included
};

struct WignerGrid {
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
    int resolution = 0;
    std::vector<double> values; // row-major: values[iy * resolution + ix]
    double min_value = 0.0;
    double min_x = 0.0, min_y = 0.0;

    double x_at(int ix) const;
    double y_at(int iy) const;
    double value_at(int ix, int iy) const;
    /// Riemann quadrature sum W dx dy over the window.
    double quadrature() const;
};

WignerGrid wigner_grid(const FieldState& state, const WignerGridSpec& spec);

} // namespace fockladder
