#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace hamqm {

/// Invalid user-supplied configuration (bad flag, bad plan, c0 == 0, ...).
/// The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its mathematical domain
/// (negative index, dimension mismatch, too few series terms).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class NumericalFailure {
    degenerate_initial_guess,  // zero overlap of the guess with the target basis state
    degenerate_spectrum,       // two unperturbed levels coincide
    sequencing,                // terms requested before they were computed
    lost_state,                // restart overlap underflowed
    stage_failure,             // continuation stage missed its residual target
};

const char* to_string(NumericalFailure kind) noexcept;

/// Failure of the numerics themselves. The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
    NumericalError(NumericalFailure kind, const std::string& what, std::optional<int> order = std::nullopt);

    NumericalFailure kind() const noexcept { return kind_; }
    /// HAM order at which the failure surfaced, when known.
    std::optional<int> order() const noexcept { return order_; }

    NumericalError with_order(int order) const;

private:
    NumericalFailure kind_;
    std::optional<int> order_;
};

}  // namespace hamqm
