#pragma once

// Extended-precision real arithmetic shared by every solver in the library.
//
// All scalars are boost::multiprecision::mpfr_float. The working precision is
// a process-wide setting owned by PrecisionContext; install a context with a
// PrecisionScope before constructing any Real that should carry it.

#include <string>
#include <string_view>

#include <boost/multiprecision/mpfr.hpp>

namespace hamqm {

using Real = boost::multiprecision::mpfr_float;

inline constexpr int kMinDigits = 30;
inline constexpr int kDefaultDigits = 50;

/// Immutable arithmetic setting: significant decimal digits and the derived
/// "numerically zero" threshold epsilon = 10^-(digits-5).
class PrecisionContext {
public:
    int digits() const noexcept { return digits_; }
    const Real& epsilon() const noexcept { return epsilon_; }

private:
    friend PrecisionContext make_context(int digits);
    PrecisionContext(int digits, Real epsilon) : digits_(digits), epsilon_(std::move(epsilon)) {}

    int digits_;
    Real epsilon_;
};

/// Throws ConfigError when digits < 30.
PrecisionContext make_context(int digits = kDefaultDigits);

/// RAII activation of a context. Sets the MPFR default precision and makes
/// the context visible through active_context(); restores the previous one on
/// destruction. Scopes nest. Install them from one thread; solves running
/// concurrently under the same active scope are fine.
class PrecisionScope {
public:
    explicit PrecisionScope(const PrecisionContext& ctx);
    ~PrecisionScope();

    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    const PrecisionContext* previous_;
    unsigned previous_digits_;
};

/// Innermost installed context, or a process default of 50 digits.
const PrecisionContext& active_context();

/// Correctly rounded decimal parse. Accepts plain decimals ("0.01",
/// "-1.5e-3") and exact fractions ("-1/3").
Real parse_scalar(std::string_view text);

/// Decimal string with exactly `sig_digits` significant digits, rounded to
/// nearest (ties to even). Fixed notation when the decimal exponent lies in
/// [-5, sig_digits), scientific otherwise. Trailing zeros are kept.
std::string format_scalar(const Real& x, int sig_digits);

/// Shorthand for format_scalar(x, active_context().digits()).
std::string format_full(const Real& x);

}  // namespace hamqm
