#include "doctest.h"

#include "hamqm/errors.hpp"
#include "hamqm/ham.hpp"
#include "hamqm/oracle.hpp"
#include "support.hpp"

using namespace hamqm;
using hamqm::test::Digits;
using hamqm::test::num;

namespace {

HamConfig config(const char* beta, const char* c0, int order, int n = 0, int n_s = 40)
{
    HamConfig c;
    c.state_index = n;
    c.c0 = num(c0);
    c.order = order;
    c.spec = BasisSpec{n_s, num(beta)};
    return c;
}

HamState solve(const HamConfig& c)
{
    return run_ham(c, WaveVector::unit(static_cast<std::size_t>(c.spec.dim()), static_cast<std::size_t>(c.state_index)));
}

}  // namespace

TEST_CASE("config validation")
{
    Digits d;
    CHECK_NOTHROW(config("0.01", "-0.75", 5).validate());
    CHECK_THROWS_AS(config("0.01", "0", 5).validate(), ConfigError);
    CHECK_THROWS_AS(config("0.01", "-1", 0).validate(), ConfigError);
    CHECK_THROWS_AS(config("0.01", "-1", 5, 37, 40).validate(), ConfigError);
    CHECK_THROWS_AS(config("-0.01", "-1", 5).validate(), ConfigError);
}

TEST_CASE("initial energy is the Rayleigh quotient on e_n")
{
    Digits d;
    const auto H = build_hamiltonian(BasisSpec{40, num("0.01")});
    CHECK(initial_energy(WaveVector::unit(41, 0), 0, H) == num("0.5075"));
    CHECK_THROWS_AS(initial_energy(WaveVector::unit(41, 1), 0, H), NumericalError);
}

TEST_CASE("low orders at beta = 0.01, c0 = -3/4")
{
    Digits d;
    const auto s = solve(config("0.01", "-0.75", 8));
    CHECK(s.order() == 8);
    CHECK(s.e_hat_history.size() == 9);
    CHECK(format_scalar(s.e_hat_history[1], 10) == "0.5073031250");
    CHECK(format_scalar(s.e_hat_history[8], 10) == "0.5072562054");
    CHECK(s.residual_history[8] > num("6.7e-17"));
    CHECK(s.residual_history[8] < num("6.7e-15"));
}

TEST_CASE("40th order at beta = 0.01 reaches 20 digits")
{
    Digits d;
    const auto s = solve(config("0.01", "-0.75", 40));
    CHECK(format_scalar(s.e_hat, 20) == "0.50725620452460284095");
    CHECK(s.residual_history[40] > num("4.9e-29"));
    CHECK(s.residual_history[40] < num("4.9e-27"));
}

TEST_CASE("40th order at beta = 0.03 and 0.05")
{
    Digits d;
    const auto a = solve(config("0.03", "-1/3", 40));
    CHECK(format_scalar(a.e_hat, 8) == "0.52056172");
    CHECK(a.residual_history.back() > num("2.0e-21"));
    CHECK(a.residual_history.back() < num("2.0e-19"));
    const auto b = solve(config("0.05", "-1/4", 40));
    CHECK(format_scalar(b.e_hat, 8) == "0.53264276");
}

TEST_CASE("beta = 0 is exact from order 0")
{
    Digits d;
    const Real eps = active_context().epsilon();
    for (int n = 0; n <= 3; ++n) {
        CAPTURE(n);
        const auto s = solve(config("0", "-0.6", 5, n));
        CHECK(s.e_terms[0] == base_energy(n));
        CHECK(s.e_hat == base_energy(n));
        for (const auto& r : s.residual_history) CHECK(r < eps);
    }
}

TEST_CASE("solvability holds at every order")
{
    Digits d;
    const auto c = config("0.03", "-1/3", 20);
    const auto H = build_hamiltonian(c.spec);
    const auto s = run_ham(c, WaveVector::unit(41, 0), H);
    const Real eps = active_context().epsilon();
    for (int k = 0; k <= s.order(); ++k) {
        CAPTURE(k);
        CHECK(abs(projection_delta(residual_term(s, k, H), 0)) < eps);
    }
}

TEST_CASE("diagonal coefficient is a minimizer")
{
    Digits d;
    const auto c = config("0.05", "-1/4", 12);
    const auto H = build_hamiltonian(c.spec);
    const auto s = run_ham(c, WaveVector::unit(41, 0), H);
    for (int k = 1; k <= s.order(); ++k) {
        CAPTURE(k);
        WaveVector prime;
        for (int j = 0; j <= k; ++j) prime.add_scaled(Real(1), s.psi_terms[static_cast<std::size_t>(j)]);
        const Real a = s.diag_coeffs[static_cast<std::size_t>(k)];
        prime[0] -= a;
        const Real e_hat = s.e_hat_history[static_cast<std::size_t>(k - 1)];
        CHECK(abs(optimal_diagonal_coefficient(prime, e_hat, 0, H) - a) < num("1e-40"));

        const Real delta = num("1e-6") * max(Real(1), abs(a));
        auto at = [&](const Real& coef) {
            WaveVector v = prime;
            v[0] += coef;
            return residual_error_square(v, e_hat, H, ApplyMode::truncated);
        };
        const Real best = at(a);
        CHECK(at(a + delta) >= best);
        CHECK(at(a - delta) >= best);
    }
}

TEST_CASE("residuals decrease over orders 1..5 inside the working window")
{
    Digits d;
    for (const char* c0 : {"-1.2", "-0.75", "-0.3"}) {
        CAPTURE(c0);
        const auto s = solve(config("0.01", c0, 5));
        for (int k = 2; k <= 5; ++k) CHECK(s.residual_history[k] < s.residual_history[k - 1]);
    }
}

TEST_CASE("converged energy does not depend on c0")
{
    Digits d;
    const auto a = solve(config("0.01", "-0.75", 40));
    const auto b = solve(config("0.01", "-0.5", 40));
    CHECK(abs(a.e_hat - b.e_hat) < num("1e-15"));
}

TEST_CASE("first-order off-diagonal part is linear in c0")
{
    Digits d;
    const auto a = solve(config("0.2", "-0.3", 1));
    const auto b = solve(config("0.2", "-0.6", 1));
    const Real tol = num("1e-45");
    for (std::size_t m = 1; m < 41; ++m) {
        CAPTURE(m);
        CHECK(abs(b.psi_terms[1][m] - 2 * a.psi_terms[1][m]) < tol);
    }
}

TEST_CASE("offdiagonal update divides by the level gap")
{
    Digits d;
    const BasisSpec spec{10, 0};
    WaveVector r(11);
    r[0] = 5;
    r[2] = 4;
    r[3] = 6;
    const auto u = offdiagonal_update(r, 1, num("-0.5"), spec);
    CHECK(u[1] == 0);
    CHECK(u[0] == num("2.5"));   // -0.5 * 5 / (0.5 - 1.5)
    CHECK(u[2] == -2);
    CHECK(u[3] == num("-1.5"));
    CHECK(projection_delta(r, 30) == 0);
}

TEST_CASE("excited state converges to the matching level")
{
    Digits d;
    const auto s = solve(config("0.01", "-0.75", 30, 1));
    const auto levels = diagonalize_oracle(BasisSpec{40, num("0.01")}, 2);
    CHECK(abs(s.e_hat - levels[1]) < num("1e-12"));
    CHECK(s.residual_history.back() < num("1e-15"));
}

TEST_CASE("extended mode reports leakage")
{
    Digits d;
    auto c = config("0.01", "-0.75", 10);
    const auto t = solve(c);
    c.residual_mode = ApplyMode::extended;
    const auto e = solve(c);
    CHECK(e.residual_history.back() >= t.residual_history.back() * num("0.1"));
    CHECK(abs(e.e_hat - t.e_hat) < num("1e-12"));
}

TEST_CASE("requesting an uncomputed term is a sequencing error")
{
    Digits d;
    const auto c = config("0.01", "-0.75", 3);
    const auto H = build_hamiltonian(c.spec);
    const auto s = run_ham(c, WaveVector::unit(41, 0), H);
    try {
        residual_term(s, 7, H);
        FAIL("expected a NumericalError");
    } catch (const NumericalError& e) {
        CHECK(e.kind() == NumericalFailure::sequencing);
    }
}

TEST_CASE("a guess orthogonal to e_n fails before order 1")
{
    Digits d;
    const auto c = config("0.01", "-0.75", 3);
    try {
        run_ham(c, WaveVector::unit(41, 2));
        FAIL("expected a NumericalError");
    } catch (const NumericalError& e) {
        CHECK(e.kind() == NumericalFailure::degenerate_initial_guess);
        CHECK(e.order() == 0);
    }
}
