#include "hamqm/oracle.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "hamqm/errors.hpp"

namespace hamqm {

namespace {

constexpr std::size_t kHalfBand = 4;

// Lower band of a symmetric pentadiagonal-in-steps-of-two matrix:
// band[i][d] = entry(i, i - d) for d = 0..4.
std::vector<std::array<Real, kHalfBand + 1>> lower_band(const BandedOperator& op)
{
    std::vector<std::array<Real, kHalfBand + 1>> band(op.dim);
    for (std::size_t i = 0; i < op.dim; ++i) {
        for (auto& b : band[i]) b = 0;
        band[i][0] = op.diag0[i];
        if (i >= 2) band[i][2] = op.diag2[i - 2];
        if (i >= 4) band[i][4] = op.diag4[i - 4];
    }
    return band;
}

}  // namespace

int count_eigenvalues_below(const BandedOperator& op, const Real& x)
{
    const std::size_t n = op.dim;
    const auto a = lower_band(op);
    const Real tiny = active_context().epsilon() * active_context().epsilon();

    // l[i][d] = L(i, i - d), d = 1..4; pivots d_i.
    std::vector<std::array<Real, kHalfBand + 1>> l(n);
    std::vector<Real> pivot(n);
    int negatives = 0;
    for (std::size_t i = 0; i < n; ++i) {
        // Columns left to right, so L(i, k) for k < j is ready when L(i, j) is formed.
        for (std::size_t d = std::min(kHalfBand, i); d >= 1; --d) {
            const std::size_t j = i - d;
            Real s = a[i][d];
            for (std::size_t e = d + 1; e <= kHalfBand && e <= i; ++e) {
                const std::size_t k = i - e;  // k < j, both rows i and j reach column k
                if (j - k > kHalfBand) continue;
                s -= l[i][e] * l[j][j - k] * pivot[k];
            }
            l[i][d] = s / pivot[j];
        }
        Real p = a[i][0] - x;
        for (std::size_t d = 1; d <= kHalfBand && d <= i; ++d) p -= l[i][d] * l[i][d] * pivot[i - d];
        if (abs(p) < tiny) p = -tiny;
        if (p < 0) ++negatives;
        pivot[i] = p;
    }
    return negatives;
}

std::vector<Real> diagonalize_oracle(const BasisSpec& spec, int how_many)
{
    spec.validate();
    if (how_many < 0 || how_many > spec.dim())
        throw DomainError("diagonalize_oracle: how_many must be in 0.." + std::to_string(spec.dim()));

    const BandedOperator H = build_hamiltonian(spec);

    // Gershgorin enclosure of the whole spectrum.
    Real lo = H.diag0[0], hi = H.diag0[0];
    for (std::size_t i = 0; i < H.dim; ++i) {
        Real radius = 0;
        for (std::size_t j = (i >= 4 ? i - 4 : 0); j < std::min(H.dim, i + 5); ++j)
            if (j != i) radius += abs(H.entry(i, j));
        lo = std::min<Real>(lo, H.diag0[i] - radius);
        hi = std::max<Real>(hi, H.diag0[i] + radius);
    }
    lo -= 1;
    hi += 1;

    // Bisect until the bracket cannot shrink at the working precision.
    const int max_steps = static_cast<int>(Real::default_precision()) * 4 + 200;
    const Real step_back = active_context().epsilon();

    std::vector<Real> values;
    for (int k = 0; k < how_many; ++k) {
        Real a = k == 0 ? lo : values.back() - step_back * (1 + abs(values.back()));
        Real b = hi;
        for (int it = 0; it < max_steps; ++it) {
            const Real mid = (a + b) / 2;
            if (mid <= a || mid >= b) break;
            if (count_eigenvalues_below(H, mid) > k)
                b = mid;
            else
                a = mid;
        }
        values.push_back((a + b) / 2);
    }
    return values;
}

}  // namespace hamqm
