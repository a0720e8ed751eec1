#pragma once

#include <cstddef>
#include <vector>

namespace fockladder {

// Largest supported polylogarithm order Li_{-m}; covers 2k+2 for k <= 25.
inline constexpr unsigned kMaxPolylogOrder = 52;

/// Li_{-m}(z) = P_m(z) / (1-z)^{m+1} with an exact integer numerator
/// polynomial built once per order via the recurrence Li_{-m-1} = z d/dz Li_{-m}
/// applied to the coefficient array. The coefficients of P_m (excluding the
/// common factor z) are the Eulerian numbers of order m.
class NegPolylogTable {
public:
    explicit NegPolylogTable(unsigned order);

    unsigned order() const { return order_; }

    /// Coefficients of P_m(z) = sum_j coeffs[j] z^(j+1). Exact integers; the
    /// double image is exact up to order 18 and correctly rounded beyond.
    const std::vector<double>& numerator_coeffs() const { return coeffs_; }

    /// Extended-precision evaluation for |z| < 1; used by the closed-form
    /// moment formulas where two large ratios must cancel to ~1e-12.
    long double eval(long double z) const;

private:
    unsigned order_;
    std::vector<double> coeffs_;
    std::vector<long double> coeffs_ext_;
};

/// Li_{-m}(z) for 0 <= m <= 52, |z| < 1. Negative arguments are admitted for
/// the phase-space origin cross-checks. Throws InvalidParameter for |z| >= 1
/// and TruncationOverflow for unsupported orders.
double polylog_neg(unsigned m, double z);

/// Shared immutable table for a given order.
const NegPolylogTable& polylog_table(unsigned m);

/// Laguerre polynomial L_n(x) by the standard three-term recurrence.
double laguerre(unsigned n, double x);

/// Associated Laguerre polynomial L_n^{(k)}(x).
double assoc_laguerre(unsigned n, unsigned k, double x);

/// L_0^{(k)}(x) .. L_{count-1}^{(k)}(x) in one recurrence pass, with the seed
/// scaled by `seed_scale` (the whole sequence is linear in the seed; passing
/// e.g. exp(-x/2) keeps products representable where the plain polynomial
/// would overflow).
std::vector<double> assoc_laguerre_sequence(unsigned k, double x, std::size_t count,
                                            double seed_scale = 1.0);

} // namespace fockladder
