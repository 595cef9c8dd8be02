#include "hamqm/scalar.hpp"

#include <cctype>
#include <cstdlib>
#include <memory>
#include <string>

#include <mpfr.h>

#include "hamqm/errors.hpp"

namespace hamqm {

const char* to_string(NumericalFailure kind) noexcept
{
    switch (kind) {
    case NumericalFailure::degenerate_initial_guess: return "degenerate initial guess";
    case NumericalFailure::degenerate_spectrum: return "degenerate spectrum";
    case NumericalFailure::sequencing: return "sequencing error";
    case NumericalFailure::lost_state: return "lost state";
    case NumericalFailure::stage_failure: return "stage failure";
    }
    return "numerical failure";
}

NumericalError::NumericalError(NumericalFailure kind, const std::string& what, std::optional<int> order)
    : std::runtime_error(what), kind_(kind), order_(order)
{
}

NumericalError NumericalError::with_order(int order) const
{
    if (order_) return *this;
    return NumericalError(kind_, std::string(what()) + " (at order " + std::to_string(order) + ")", order);
}

namespace {

const PrecisionContext* g_active = nullptr;

Real make_epsilon(int digits)
{
    const unsigned saved = Real::default_precision();
    Real::default_precision(static_cast<unsigned>(digits));
    Real eps = boost::multiprecision::pow(Real(10), -(digits - 5));
    Real::default_precision(saved);
    return eps;
}

}  // namespace

PrecisionContext make_context(int digits)
{
    if (digits < kMinDigits)
        throw ConfigError("digits must be >= " + std::to_string(kMinDigits) + ", got " + std::to_string(digits));
    return PrecisionContext(digits, make_epsilon(digits));
}

PrecisionScope::PrecisionScope(const PrecisionContext& ctx)
    : previous_(g_active), previous_digits_(Real::default_precision())
{
    Real::default_precision(static_cast<unsigned>(ctx.digits()));
    g_active = &ctx;
}

PrecisionScope::~PrecisionScope()
{
    g_active = previous_;
    Real::default_precision(previous_digits_);
}

const PrecisionContext& active_context()
{
    if (g_active) return *g_active;
    static const PrecisionContext fallback = make_context(kDefaultDigits);
    return fallback;
}

Real parse_scalar(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    if (s.empty()) throw ConfigError("empty numeric value");

    try {
        if (auto slash = s.find('/'); slash != std::string::npos) {
            Real num(s.substr(0, slash));
            Real den(s.substr(slash + 1));
            if (den == 0) throw ConfigError("zero denominator in '" + s + "'");
            return num / den;
        }
        return Real(s);
    } catch (const std::runtime_error&) {
        throw ConfigError("not a number: '" + s + "'");
    }
}

std::string format_scalar(const Real& x, int sig_digits)
{
    if (sig_digits < 1) throw DomainError("format_scalar: sig_digits must be positive");

    if (boost::multiprecision::isnan(x)) return "nan";
    if (boost::multiprecision::isinf(x)) return x < 0 ? "-inf" : "inf";

    mpfr_exp_t exp10 = 0;
    std::unique_ptr<char, decltype(&mpfr_free_str)> raw(
        mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(sig_digits), x.backend().data(), MPFR_RNDN),
        &mpfr_free_str);
    std::string digits(raw.get());

    std::string sign;
    if (!digits.empty() && digits.front() == '-') {
        sign = "-";
        digits.erase(digits.begin());
    }
    if (x == 0) exp10 = 1;

    // value = 0.DIGITS * 10^exp10 = D.IGITS * 10^point
    const long point = static_cast<long>(exp10) - 1;
    const long n = static_cast<long>(digits.size());
    std::string out = sign;

    if (point >= -5 && point < n) {
        if (point >= 0) {
            out += digits.substr(0, static_cast<std::size_t>(point + 1));
            if (point + 1 < n) out += "." + digits.substr(static_cast<std::size_t>(point + 1));
        } else {
            out += "0." + std::string(static_cast<std::size_t>(-point - 1), '0') + digits;
        }
        return out;
    }

    out += digits.substr(0, 1);
    if (n > 1) out += "." + digits.substr(1);
    out += point < 0 ? "e-" : "e+";
    const long mag = point < 0 ? -point : point;
    if (mag < 10) out += "0";
    out += std::to_string(mag);
    return out;
}

std::string format_full(const Real& x)
{
    return format_scalar(x, active_context().digits());
}

}  // namespace hamqm
