#include "fockladder/field_state.hpp"

namespace fockladder {

bool is_diagonal(const FieldState& state)
{
    return std::holds_alternative<DiagonalState>(state);
}

std::size_t state_dim(const FieldState& state)
{
    return std::visit([](const auto& s) { return s.dim(); }, state);
}

double state_tail_tol(const FieldState& state)
{
    return std::visit([](const auto& s) { return s.tail_tol; }, state);
}

std::vector<double> number_weights(const FieldState& state)
{
    if (const auto* d = std::get_if<DiagonalState>(&state)) {
        return d->weights;
    }
    const auto& p = std::get<PureState>(state);
    std::vector<double> w(p.dim());
    for (std::size_t n = 0; n < w.size(); ++n) {
        w[n] = std::norm(p.amplitudes[n]);
    }
    return w;
}

} // namespace fockladder
