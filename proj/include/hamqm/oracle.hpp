#pragma once

#include <vector>

#include "hamqm/basis.hpp"

namespace hamqm {

/// Number of eigenvalues of the banded operator strictly below x, from the
/// signs of the pivots of an LDL^T factorization of (H - x I).
int count_eigenvalues_below(const BandedOperator& op, const Real& x);

/// Lowest `how_many` eigenvalues of the (n_s+1)x(n_s+1) Hamiltonian matrix,
/// ascending, by bisection on eigenvalue counts. Independent of the HAM path.
/// Throws DomainError if how_many exceeds the dimension.
std::vector<Real> diagonalize_oracle(const BasisSpec& spec, int how_many);

}  // namespace hamqm
