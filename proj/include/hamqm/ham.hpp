#pragma once

// Homotopy-analysis recursion for one eigenpair (psi_n, E_n) of
//
//     H psi_n = E_n psi_n,   H = H0 + beta xi^4,
//
// built on the deformation (1 - q)(H0 - E_n^b)[Psi - psi^(0)] = c0 q (H - E(q)) Psi.
// Each order k produces a wavefunction term psi^(k) and an energy term E^(k):
//
//   R_{k-1}     = H psi^(k-1) - sum_{j<=k-1} E^(j) psi^(k-1-j)
//   psi^(k)     = [psi^(k-1) if k >= 2] + c0 sum_{m != n} <R_{k-1}, e_m> / (E_m^b - E_n^b) e_m
//                 + a_nn^(k) e_n
//   E^(k)       = <H psi^(k) - sum_{j<k} E^(j) psi^(k-j), e_n> / <psi^(0), e_n>
//
// where a_nn^(k) minimizes || (H - E_hat) psi_hat ||^2 at that order.

#include <vector>

#include "hamqm/basis.hpp"

namespace hamqm {

struct HamConfig {
    int state_index = 0;
    Real c0 = Real(-1);
    int order = 10;
    BasisSpec spec;
    ApplyMode residual_mode = ApplyMode::truncated;

    /// Throws ConfigError on c0 == 0, order < 1, n > n_s - 4 or a bad spec.
    void validate() const;
};

/// Every vector indexed by order k = 0..M.
struct HamState {
    std::vector<WaveVector> psi_terms;    // psi^(k)
    std::vector<Real> e_terms;            // E^(k)
    std::vector<Real> diag_coeffs;        // a_nn^(k); [0] is the e_n component of the guess
    std::vector<Real> e_hat_history;      // sum_{j<=k} E^(j)
    std::vector<Real> residual_history;   // residual error square of the order-k partial sums
    WaveVector psi_hat;                   // sum of psi_terms
    Real e_hat = 0;                       // sum of e_terms

    int order() const noexcept { return static_cast<int>(e_terms.size()) - 1; }
};

/// E^(0) = <H psi0, e_n> / <psi0, e_n>. Throws NumericalError
/// (degenerate_initial_guess) on a vanishing overlap.
Real initial_energy(const WaveVector& psi0, int n, const BandedOperator& H);

/// R_{n,k} = H psi^(k) - sum_{j<=k} E^(j) psi^(k-j), extended mode.
/// Throws NumericalError (sequencing) if terms 0..k are not all present.
WaveVector residual_term(const HamState& state, int k, const BandedOperator& H);

/// Delta^{n,m} = <R, e_m>; zero when m is beyond R.
Real projection_delta(const WaveVector& R, int m);

/// c0 <R, e_m> / (E_m^b - E_n^b) for m != n on 0..n_s; component n is zero.
WaveVector offdiagonal_update(const WaveVector& R_prev, int n, const Real& c0, const BasisSpec& spec);

/// Minimizer over a of || (H - e_hat)(psi_hat_prime + a e_n) ||^2; zero when
/// (H - e_hat) e_n vanishes and every a is a minimizer.
Real optimal_diagonal_coefficient(const WaveVector& psi_hat_prime, const Real& e_hat, int n, const BandedOperator& H,
                                  ApplyMode mode = ApplyMode::truncated);

/// E^(k) from the solvability condition <R_k, e_n> = 0.
Real next_energy_term(const HamState& state, int k, int n, const BandedOperator& H);

/// || (H - e_hat) psi_hat ||^2 in the given mode.
Real residual_error_square(const WaveVector& psi_hat, const Real& e_hat, const BandedOperator& H, ApplyMode mode);

/// Runs orders 1..config.order from `initial_guess`. Sub-operation failures
/// are rethrown as NumericalError carrying the order index.
HamState run_ham(const HamConfig& config, const WaveVector& initial_guess);

/// Same, reusing a prebuilt Hamiltonian for config.spec.
HamState run_ham(const HamConfig& config, const WaveVector& initial_guess, const BandedOperator& H);

}  // namespace hamqm
