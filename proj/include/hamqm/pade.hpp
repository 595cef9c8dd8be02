#pragma once

#include <span>
#include <vector>

#include "hamqm/scalar.hpp"

namespace hamqm {

struct PadeResult {
    int m = 0;
    Real value = 0;
    /// Set when the [m,m] entry could not be formed; value then carries the
    /// nearest lower non-degenerate diagonal.
    bool degenerate = false;
};

/// [m,m] Pade approximant of sum_k terms[k] q^k at q = 1.
///
/// Computed with Wynn's epsilon algorithm on the partial sums S_0..S_2m:
/// eps_{-1} = 0, eps_0^(j) = S_j, eps_{k+1}^(j) = eps_{k-1}^(j+1) + 1 / (eps_k^(j+1) - eps_k^(j)),
/// and eps_{2m}^(0) is the [m,m] value. Differences smaller than the context
/// epsilon make an entry unavailable. Throws DomainError with fewer than
/// 2m + 1 terms.
PadeResult homotopy_pade(std::span<const Real> terms, int m);

/// Diagonal values for m = 1..max_m from one epsilon table.
std::vector<PadeResult> homotopy_pade_table(std::span<const Real> terms, int max_m);

}  // namespace hamqm
