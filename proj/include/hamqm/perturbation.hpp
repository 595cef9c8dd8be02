#pragma once

// Rayleigh-Schrodinger perturbation series for H = H0 + beta xi^4 in the
// oscillator basis, in the intermediate normalization <psi^(0), psi^(m)> = 0.
// Serves as the divergent baseline for the HAM results.

#include <cstdint>
#include <vector>

#include "hamqm/basis.hpp"

namespace hamqm {

struct PerturbState {
    int state_index = 0;
    std::vector<Real> e_terms;                  // E^(m), m = 0..M
    std::vector<std::vector<Real>> coeff_table; // coeff_table[m][l] = a_{n,l}^(m)
    std::vector<Real> e_partial;                // sum_{k<=m} E^(k)

    int order() const noexcept { return static_cast<int>(e_terms.size()) - 1; }
    /// sum_{k<=m} psi^(k) as a basis vector.
    WaveVector psi_partial(int m) const;
};

/// Throws ConfigError on n > n_s - 4 or order < 1.
PerturbState perturb_solve(int n, const Real& beta, int order, int n_s);

/// Residual error square of the order-m partial sums under H(beta).
Real perturbative_residual(const PerturbState& state, int m, const BasisSpec& spec, ApplyMode mode);

struct Rational {
    std::int64_t num;
    std::int64_t den;

    Real value() const { return Real(num) / Real(den); }
    bool operator==(const Rational&) const = default;
};

/// Exact ground-state coefficients c_0..c_order of E_0 = sum_k c_k beta^k,
/// tabulated through order 6. Throws DomainError beyond that.
std::vector<Rational> e0_series_coefficients(int order);

/// c_k recovered from two perturbative runs as the divided difference
/// (E^(k)(beta2) - E^(k)(beta1)) / (beta2^k - beta1^k).
Real recover_series_coefficient(const PerturbState& at_beta1, const Real& beta1, const PerturbState& at_beta2,
                                const Real& beta2, int k);

}  // namespace hamqm
