#include "hamqm/pade.hpp"

#include <optional>
#include <string>

#include "hamqm/errors.hpp"

namespace hamqm {

namespace {

using Entry = std::optional<Real>;

// Returns eps_{2i}^(0) for i = 0..max_m (nullopt where unavailable).
std::vector<Entry> epsilon_diagonal(std::span<const Real> terms, int max_m)
{
    const int len = 2 * max_m + 1;
    const Real& tiny = active_context().epsilon();

    std::vector<Entry> older(static_cast<std::size_t>(len + 1), Real(0));   // eps_{-1}
    std::vector<Entry> column;                                             // eps_0
    column.reserve(static_cast<std::size_t>(len));
    Real partial = 0;
    for (int j = 0; j < len; ++j) {
        partial += terms[static_cast<std::size_t>(j)];
        column.emplace_back(partial);
    }

    std::vector<Entry> diagonal{column.front()};
    for (int k = 1; k <= 2 * max_m; ++k) {
        std::vector<Entry> next(column.size() - 1);
        for (std::size_t j = 0; j + 1 < column.size(); ++j) {
            if (!column[j] || !column[j + 1] || !older[j + 1]) continue;
            const Real diff = *column[j + 1] - *column[j];
            if (abs(diff) < tiny) continue;
            next[j] = *older[j + 1] + 1 / diff;
        }
        older = std::move(column);
        column = std::move(next);
        if (k % 2 == 0) diagonal.push_back(column.front());
    }
    return diagonal;
}

PadeResult resolve(const std::vector<Entry>& diagonal, int m)
{
    PadeResult r;
    r.m = m;
    if (diagonal[static_cast<std::size_t>(m)]) {
        r.value = *diagonal[static_cast<std::size_t>(m)];
        return r;
    }
    r.degenerate = true;
    for (int i = m - 1; i >= 0; --i) {
        if (diagonal[static_cast<std::size_t>(i)]) {
            r.value = *diagonal[static_cast<std::size_t>(i)];
            break;
        }
    }
    return r;
}

void require_terms(std::span<const Real> terms, int m)
{
    if (m < 0) throw DomainError("Pade half-order must be nonnegative");
    if (terms.size() < static_cast<std::size_t>(2 * m + 1))
        throw DomainError("[" + std::to_string(m) + "," + std::to_string(m) + "] Pade needs " + std::to_string(2 * m + 1) +
                          " series terms, got " + std::to_string(terms.size()));
}

}  // namespace

PadeResult homotopy_pade(std::span<const Real> terms, int m)
{
    require_terms(terms, m);
    return resolve(epsilon_diagonal(terms, m), m);
}

std::vector<PadeResult> homotopy_pade_table(std::span<const Real> terms, int max_m)
{
    require_terms(terms, max_m);
    const auto diagonal = epsilon_diagonal(terms, max_m);
    std::vector<PadeResult> out;
    for (int m = 1; m <= max_m; ++m) out.push_back(resolve(diagonal, m));
    return out;
}

}  // namespace hamqm
