#include "fockladder/special_functions.hpp"

#include "fockladder/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>

namespace fockladder {
namespace {

using BigInt = boost::multiprecision::cpp_int;

// Coefficient arrays of P_m(z) = sum_j a_j z^(j+1) for m = 0..kMaxPolylogOrder,
// built exactly. z d/dz maps P_m/(1-z)^{m+1} onto P_{m+1}/(1-z)^{m+2} with
// b_j = (j+1) a_j + (m+1-j) a_{j-1} on the shifted arrays, which is the
// additive Eulerian recurrence; every term is nonnegative.
std::vector<std::vector<BigInt>> build_exact_tables()
{
    std::vector<std::vector<BigInt>> tables(kMaxPolylogOrder + 1);
    tables[0] = {BigInt(1)}; // P_0 = z
    for (unsigned m = 0; m < kMaxPolylogOrder; ++m) {
        const auto& a = tables[m];
        std::vector<BigInt> b(a.size() + 1, BigInt(0));
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (j < a.size()) {
                b[j] += BigInt(j + 1) * a[j];
            }
            if (j >= 1) {
                b[j] += BigInt(m + 1 - j) * a[j - 1];
            }
        }
        while (b.size() > 1 && b.back() == 0) {
            b.pop_back();
        }
        tables[m + 1] = std::move(b);
    }
    return tables;
}

const std::vector<std::vector<BigInt>>& exact_tables()
{
    static const std::vector<std::vector<BigInt>> tables = build_exact_tables();
    return tables;
}

} // namespace

NegPolylogTable::NegPolylogTable(unsigned order) : order_(order)
{
    if (order > kMaxPolylogOrder) {
        throw TruncationOverflow("polylogarithm order beyond " +
                                 std::to_string(kMaxPolylogOrder) + " is not supported");
    }
    const auto& exact = exact_tables()[order];
    coeffs_.reserve(exact.size());
    coeffs_ext_.reserve(exact.size());
    for (const auto& c : exact) {
        coeffs_.push_back(static_cast<double>(c));
        coeffs_ext_.push_back(static_cast<long double>(c));
    }
}

long double NegPolylogTable::eval(long double z) const
{
    if (!(std::fabs(static_cast<double>(z)) < 1.0)) {
        throw InvalidParameter("polylog_neg requires |z| < 1");
    }
    // Horner on P_m(z)/z, then restore the common z factor.
    long double p = 0.0L;
    for (std::size_t j = coeffs_ext_.size(); j-- > 0;) {
        p = p * z + coeffs_ext_[j];
    }
    p *= z;
    const long double om = 1.0L - z;
    return p / std::pow(om, static_cast<long double>(order_ + 1));
}

const NegPolylogTable& polylog_table(unsigned m)
{
    static const std::vector<NegPolylogTable> tables = [] {
        std::vector<NegPolylogTable> t;
        t.reserve(kMaxPolylogOrder + 1);
        for (unsigned order = 0; order <= kMaxPolylogOrder; ++order) {
            t.emplace_back(order);
        }
        return t;
    }();
    if (m > kMaxPolylogOrder) {
        throw TruncationOverflow("polylogarithm order beyond " +
                                 std::to_string(kMaxPolylogOrder) + " is not supported");
    }
    return tables[m];
}

double polylog_neg(unsigned m, double z)
{
    return static_cast<double>(polylog_table(m).eval(static_cast<long double>(z)));
}

double laguerre(unsigned n, double x)
{
    return assoc_laguerre(n, 0, x);
}

double assoc_laguerre(unsigned n, unsigned k, double x)
{
    double prev = 1.0;
    if (n == 0) {
        return prev;
    }
    double cur = 1.0 + static_cast<double>(k) - x;
    for (unsigned i = 1; i < n; ++i) {
        const double di = static_cast<double>(i);
        const double dk = static_cast<double>(k);
        const double next = ((2.0 * di + 1.0 + dk - x) * cur - (di + dk) * prev) / (di + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<double> assoc_laguerre_sequence(unsigned k, double x, std::size_t count,
                                            double seed_scale)
{
    std::vector<double> out(count);
    if (count == 0) {
        return out;
    }
    out[0] = seed_scale;
    if (count == 1) {
        return out;
    }
    out[1] = seed_scale * (1.0 + static_cast<double>(k) - x);
    for (std::size_t i = 1; i + 1 < count; ++i) {
        const double di = static_cast<double>(i);
        const double dk = static_cast<double>(k);
        out[i + 1] = ((2.0 * di + 1.0 + dk - x) * out[i] - (di + dk) * out[i - 1]) / (di + 1.0);
    }
    return out;
}

} // namespace fockladder
