#include "hamqm/ham.hpp"

#include <string>

#include "hamqm/errors.hpp"

namespace hamqm {

void HamConfig::validate() const
{
    spec.validate();
    if (c0 == 0) throw ConfigError("convergence-control parameter c0 must be nonzero");
    if (order < 1) throw ConfigError("order must be >= 1");
    if (state_index < 0) throw ConfigError("state index must be >= 0");
    if (state_index > spec.n_s - 4)
        throw ConfigError("state index " + std::to_string(state_index) + " exceeds n_s - 4 = " +
                          std::to_string(spec.n_s - 4));
}

namespace {

const Real& overlap_or_throw(const WaveVector& psi0, int n)
{
    if (n < 0 || static_cast<std::size_t>(n) >= psi0.size()) throw DomainError("state index outside the guess vector");
    const Real& overlap = psi0[static_cast<std::size_t>(n)];
    if (abs(overlap) < active_context().epsilon())
        throw NumericalError(NumericalFailure::degenerate_initial_guess,
                             "initial guess has no overlap with basis state " + std::to_string(n));
    return overlap;
}

void require_terms(const HamState& state, int psi_upto, int e_upto)
{
    if (psi_upto < 0 || static_cast<int>(state.psi_terms.size()) <= psi_upto ||
        static_cast<int>(state.e_terms.size()) <= e_upto)
        throw NumericalError(NumericalFailure::sequencing, "HAM terms requested before they were computed");
}

// H psi^(k) - sum_{j=0}^{upto} E^(j) psi^(k-j), extended mode.
WaveVector convolved_residual(const HamState& state, int k, int upto, const BandedOperator& H)
{
    WaveVector r = apply_hamiltonian(H, state.psi_terms[static_cast<std::size_t>(k)], ApplyMode::extended);
    for (int j = 0; j <= upto; ++j)
        r.add_scaled(-state.e_terms[static_cast<std::size_t>(j)], state.psi_terms[static_cast<std::size_t>(k - j)]);
    return r;
}

}  // namespace

Real initial_energy(const WaveVector& psi0, int n, const BandedOperator& H)
{
    const Real& overlap = overlap_or_throw(psi0, n);
    const WaveVector h = apply_hamiltonian(H, psi0, ApplyMode::extended);
    return h[static_cast<std::size_t>(n)] / overlap;
}

WaveVector residual_term(const HamState& state, int k, const BandedOperator& H)
{
    require_terms(state, k, k);
    return convolved_residual(state, k, k, H);
}

Real projection_delta(const WaveVector& R, int m)
{
    if (m < 0) throw DomainError("projection_delta: negative index");
    if (static_cast<std::size_t>(m) >= R.size()) return Real(0);
    return R[static_cast<std::size_t>(m)];
}

WaveVector offdiagonal_update(const WaveVector& R_prev, int n, const Real& c0, const BasisSpec& spec)
{
    if (c0 == 0) throw ConfigError("convergence-control parameter c0 must be nonzero");
    const int dim = spec.dim();
    WaveVector out(static_cast<std::size_t>(dim));
    // E_m^b - E_n^b = m - n for the oscillator ladder; never zero off the diagonal.
    for (int m = 0; m < dim; ++m) {
        if (m == n) continue;
        const Real delta = projection_delta(R_prev, m);
        if (delta == 0) continue;
        out[static_cast<std::size_t>(m)] = c0 * delta / Real(m - n);
    }
    return out;
}

Real optimal_diagonal_coefficient(const WaveVector& psi_hat_prime, const Real& e_hat, int n, const BandedOperator& H,
                                  ApplyMode mode)
{
    const WaveVector en = WaveVector::unit(H.dim, static_cast<std::size_t>(n));
    const WaveVector b = apply_shifted(H, en, e_hat, mode);
    const Real denom = inner(b, b);
    // e_n is already an eigenvector at e_hat: the residual does not depend on a.
    if (denom <= active_context().epsilon()) return Real(0);
    const WaveVector a = apply_shifted(H, psi_hat_prime, e_hat, mode);
    return -inner(a, b) / denom;
}

Real next_energy_term(const HamState& state, int k, int n, const BandedOperator& H)
{
    require_terms(state, k, k - 1);
    if (state.psi_terms.empty()) throw NumericalError(NumericalFailure::sequencing, "no initial guess recorded");
    const Real& overlap = overlap_or_throw(state.psi_terms.front(), n);
    const WaveVector f = convolved_residual(state, k, k - 1, H);
    return f[static_cast<std::size_t>(n)] / overlap;
}

Real residual_error_square(const WaveVector& psi_hat, const Real& e_hat, const BandedOperator& H, ApplyMode mode)
{
    const WaveVector r = apply_shifted(H, psi_hat, e_hat, mode);
    return inner(r, r);
}

HamState run_ham(const HamConfig& config, const WaveVector& initial_guess)
{
    config.validate();
    return run_ham(config, initial_guess, build_hamiltonian(config.spec));
}

HamState run_ham(const HamConfig& config, const WaveVector& initial_guess, const BandedOperator& H)
{
    config.validate();
    if (initial_guess.size() != H.dim)
        throw DomainError("initial guess length " + std::to_string(initial_guess.size()) + " != basis dimension " +
                          std::to_string(H.dim));

    const int n = config.state_index;
    const auto nn = static_cast<std::size_t>(n);
    const ApplyMode mode = config.residual_mode;

    HamState state;
    state.psi_terms.push_back(initial_guess);
    try {
        state.e_terms.push_back(initial_energy(initial_guess, n, H));
    } catch (const NumericalError& e) {
        throw e.with_order(0);
    }
    state.diag_coeffs.push_back(initial_guess[nn]);
    state.psi_hat = initial_guess;
    state.e_hat = state.e_terms.back();
    state.e_hat_history.push_back(state.e_hat);
    state.residual_history.push_back(residual_error_square(state.psi_hat, state.e_hat, H, mode));

    for (int k = 1; k <= config.order; ++k) {
        try {
            const WaveVector R = residual_term(state, k - 1, H);

            WaveVector tilde = offdiagonal_update(R, n, config.c0, config.spec);
            if (k >= 2) tilde += state.psi_terms.back();

            // psi_hat' = sum_{j<k} psi^(j) + tilde; e_hat still excludes E^(k).
            const WaveVector psi_hat_prime = state.psi_hat + tilde;
            const Real a_nn = optimal_diagonal_coefficient(psi_hat_prime, state.e_hat, n, H, mode);
            tilde[nn] += a_nn;

            state.psi_terms.push_back(std::move(tilde));
            state.diag_coeffs.push_back(a_nn);
            state.e_terms.push_back(next_energy_term(state, k, n, H));

            state.psi_hat += state.psi_terms.back();
            state.e_hat += state.e_terms.back();
            state.e_hat_history.push_back(state.e_hat);
            state.residual_history.push_back(residual_error_square(state.psi_hat, state.e_hat, H, mode));
        } catch (const NumericalError& e) {
            throw e.with_order(k);
        }
    }
    return state;
}

}  // namespace hamqm
