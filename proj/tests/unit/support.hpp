#pragma once

#include "hamqm/scalar.hpp"

namespace hamqm::test {

// Installs a working precision for the lifetime of a test case.
struct Digits {
    explicit Digits(int d = kDefaultDigits) : ctx(make_context(d)), scope(ctx) {}
    PrecisionContext ctx;
    PrecisionScope scope;
};

inline bool close(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol; }

inline Real num(const char* text) { return parse_scalar(text); }

}  // namespace hamqm::test
