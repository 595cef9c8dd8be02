// Gauss-Hermite quadrature at working precision. Used only as an independent
// check on the closed-form matrix elements; nothing in the solvers calls it.

#include <algorithm>
#include <cmath>
#include <vector>

#include "hamqm/basis.hpp"
#include "hamqm/errors.hpp"

namespace hamqm {

namespace {

// Number of eigenvalues below x of the Jacobi matrix of the Hermite weight
// (zero diagonal, off-diagonal sqrt(k/2)).
int sturm_count(int count, double x)
{
    int below = 0;
    double q = -x;
    if (q < 0) ++below;
    for (int k = 1; k < count; ++k) {
        const double b2 = 0.5 * k;
        if (q == 0) q = 1e-300;
        q = -x - b2 / q;
        if (q < 0) ++below;
    }
    return below;
}

std::vector<double> seed_nodes(int count)
{
    const double bound = 2.0 * std::sqrt(0.5 * count) + 1.0;
    std::vector<double> roots;
    roots.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        double lo = -bound, hi = bound;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (sturm_count(count, mid) > j)
                hi = mid;
            else
                lo = mid;
        }
        roots.push_back(0.5 * (lo + hi));
    }
    return roots;
}

}  // namespace

GaussHermiteRule gauss_hermite(int count)
{
    if (count < 1) throw DomainError("gauss_hermite: need at least one node");
    const Real tol = active_context().epsilon() * Real("1e-3");
    const Real kk = count;

    GaussHermiteRule rule;
    for (double seed : seed_nodes(count)) {
        Real x = seed;
        for (int it = 0; it < 40; ++it) {
            const auto psi = hermite_functions(count + 1, x);
            const Real deriv = sqrt(2 * kk) * psi[count - 1] - x * psi[count];
            const Real dx = psi[count] / deriv;
            x -= dx;
            if (abs(dx) <= tol * (1 + abs(x))) break;
        }
        const auto psi = hermite_functions(count, x);
        rule.nodes.push_back(x);
        rule.weights.push_back(exp(-x * x) / (kk * psi[count - 1] * psi[count - 1]));
    }
    return rule;
}

Real quadrature_element_oracle(int m, int n, int power)
{
    if (m < 0 || n < 0) throw DomainError("quadrature_element_oracle: negative index");
    if (power != 0 && power != 2 && power != 4) throw DomainError("quadrature_element_oracle: power must be 0, 2 or 4");

    const int count = (m + n + power) / 2 + 8;
    const auto rule = gauss_hermite(count);
    const Real kk = count;

    // lambda_i p_m p_n with p_k = psi_k exp(xi^2/2); the Gaussian factors cancel.
    Real sum = 0;
    for (const Real& x : rule.nodes) {
        const auto psi = hermite_functions(std::max({m, n, count - 1}) + 1, x);
        Real term = psi[m] * psi[n] / (kk * psi[count - 1] * psi[count - 1]);
        for (int p = 0; p < power; ++p) term *= x;
        sum += term;
    }
    return sum;
}

}  // namespace hamqm
