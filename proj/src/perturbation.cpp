#include "hamqm/perturbation.hpp"

#include <string>

#include "hamqm/errors.hpp"
#include "hamqm/ham.hpp"

namespace hamqm {

WaveVector PerturbState::psi_partial(int m) const
{
    if (m < 0 || m > order()) throw DomainError("psi_partial: order out of range");
    WaveVector v(coeff_table.front().size());
    for (int k = 0; k <= m; ++k) v += WaveVector(coeff_table[static_cast<std::size_t>(k)]);
    return v;
}

PerturbState perturb_solve(int n, const Real& beta, int order, int n_s)
{
    BasisSpec spec{n_s, beta};
    spec.validate();
    if (order < 1) throw ConfigError("order must be >= 1");
    if (n < 0 || n > n_s - 4)
        throw ConfigError("state index " + std::to_string(n) + " outside 0..n_s-4");

    const BandedOperator perturbation = build_quartic_perturbation(spec);
    const auto dim = static_cast<std::size_t>(spec.dim());
    const auto nn = static_cast<std::size_t>(n);

    PerturbState st;
    st.state_index = n;
    st.coeff_table.emplace_back(dim, Real(0));
    st.coeff_table[0][nn] = 1;
    st.e_terms.push_back(base_energy(n));
    st.e_partial.push_back(st.e_terms.back());

    for (int m = 1; m <= order; ++m) {
        // Delta~^(m-1)_{l,n} = <psi_l, H' psi^(m-1)> for every l at once.
        const WaveVector prev(st.coeff_table.back());
        const WaveVector delta = apply_hamiltonian(perturbation, prev, ApplyMode::truncated);

        // a_{n,n}^(j) = 0 for j >= 1, so the correction sum in E^(m) drops out.
        Real e_m = delta[nn];
        for (int k = 1; k <= m - 1; ++k)
            e_m -= st.e_terms[static_cast<std::size_t>(k)] * st.coeff_table[static_cast<std::size_t>(m - k)][nn];
        st.e_terms.push_back(e_m);

        std::vector<Real> next(dim, Real(0));
        for (std::size_t l = 0; l < dim; ++l) {
            if (l == nn) continue;
            Real num = delta[l];
            for (int k = 1; k <= m; ++k)
                num -= st.e_terms[static_cast<std::size_t>(k)] * st.coeff_table[static_cast<std::size_t>(m - k)][l];
            const Real gap = base_energy(n) - base_energy(static_cast<int>(l));
            if (gap == 0)
                throw NumericalError(NumericalFailure::degenerate_spectrum,
                                     "unperturbed levels " + std::to_string(n) + " and " + std::to_string(l) + " coincide",
                                     m);
            next[l] = num / gap;
        }
        st.coeff_table.push_back(std::move(next));
        st.e_partial.push_back(st.e_partial.back() + e_m);
    }
    return st;
}

Real perturbative_residual(const PerturbState& state, int m, const BasisSpec& spec, ApplyMode mode)
{
    const BandedOperator H = build_hamiltonian(spec);
    return residual_error_square(state.psi_partial(m), state.e_partial.at(static_cast<std::size_t>(m)), H, mode);
}

std::vector<Rational> e0_series_coefficients(int order)
{
    static const std::vector<Rational> table = {
        {1, 2}, {3, 4}, {-21, 8}, {333, 16}, {-30885, 128}, {916731, 256}, {-65518401, 1024},
    };
    if (order < 0) throw DomainError("order must be nonnegative");
    if (order >= static_cast<int>(table.size()))
        throw DomainError("E0 series coefficients are tabulated only through order 6");
    return {table.begin(), table.begin() + order + 1};
}

Real recover_series_coefficient(const PerturbState& at_beta1, const Real& beta1, const PerturbState& at_beta2,
                                const Real& beta2, int k)
{
    if (k < 0 || k > at_beta1.order() || k > at_beta2.order()) throw DomainError("coefficient order out of range");
    if (k == 0) return at_beta1.e_terms[0];
    const Real span = pow(beta2, k) - pow(beta1, k);
    if (span == 0) throw DomainError("recover_series_coefficient needs two distinct couplings");
    return (at_beta2.e_terms[static_cast<std::size_t>(k)] - at_beta1.e_terms[static_cast<std::size_t>(k)]) / span;
}

}  // namespace hamqm
