#pragma once

// Harmonic-oscillator basis for the dimensionless quartic oscillator
//
//     H = -1/2 d^2/dxi^2 + 1/2 xi^2 + beta xi^4,   H0 = H(beta = 0),
//
// with normalized Hermite functions psi_m(xi), H0 psi_m = (m + 1/2) psi_m.
// Wavefunctions are coefficient vectors over psi_0..psi_ns; operators are
// symmetric banded matrices with nonzero diagonals at offsets 0, 2 and 4.

#include <cstddef>
#include <span>
#include <vector>

#include "hamqm/scalar.hpp"

namespace hamqm {

struct BasisSpec {
    int n_s = 40;     // highest retained basis index
    Real beta = 0;    // quartic coupling

    int dim() const noexcept { return n_s + 1; }
    /// Throws ConfigError unless n_s >= 8 and beta >= 0.
    void validate() const;
};

/// Unperturbed level E_m^b = m + 1/2.
Real base_energy(int m);

/// Coefficients a_m over the basis functions psi_m. Length is dim() for
/// vectors inside the truncated span, dim() + 4 for extended images of H.
struct WaveVector {
    std::vector<Real> coeffs;

    WaveVector() = default;
    explicit WaveVector(std::size_t len) : coeffs(len, Real(0)) {}
    explicit WaveVector(std::vector<Real> c) : coeffs(std::move(c)) {}

    static WaveVector unit(std::size_t len, std::size_t index);

    std::size_t size() const noexcept { return coeffs.size(); }
    Real& operator[](std::size_t i) { return coeffs[i]; }
    const Real& operator[](std::size_t i) const { return coeffs[i]; }

    /// Zero-extends (never truncates) to `len`.
    WaveVector padded(std::size_t len) const;

    WaveVector& operator+=(const WaveVector& other);
    WaveVector& operator-=(const WaveVector& other);
    WaveVector& operator*=(const Real& s);
    /// this += s * other, zero-extending this if other is longer.
    WaveVector& add_scaled(const Real& s, const WaveVector& other);

    bool operator==(const WaveVector&) const = default;
};

WaveVector operator+(WaveVector a, const WaveVector& b);
WaveVector operator-(WaveVector a, const WaveVector& b);
WaveVector operator*(const Real& s, WaveVector v);

enum class ApplyMode { truncated, extended };

/// Symmetric banded matrix on indices 0..dim-1.
///
/// diag2[i] = entry(i, i+2) and diag4[i] = entry(i, i+4) are stored for every
/// i < dim; the entries whose partner index falls outside the span are the
/// couplings used by extended-mode application only.
struct BandedOperator {
    std::size_t dim = 0;
    std::vector<Real> diag0;
    std::vector<Real> diag2;
    std::vector<Real> diag4;

    /// Matrix entry inside the truncated span (zero off the band).
    Real entry(std::size_t m, std::size_t n) const;
};

/// <psi_m | xi^4 | psi_n> from the exact ladder-operator closed forms.
/// Throws DomainError on a negative index.
Real x4_element(int m, int n);

/// <psi_m | xi^2 | psi_n>.
Real x2_element(int m, int n);

/// H = H0 + beta xi^4 on dimension n_s + 1. beta = 0 yields H0.
BandedOperator build_hamiltonian(const BasisSpec& spec);

/// The perturbation H' = beta xi^4 alone, from the same x4_element band.
BandedOperator build_quartic_perturbation(const BasisSpec& spec);

/// H v. Truncated mode returns indices 0..dim-1; extended mode returns the
/// full image on 0..dim+3. Throws DomainError if v.size() != op.dim.
WaveVector apply_hamiltonian(const BandedOperator& op, const WaveVector& v, ApplyMode mode);

/// (H - shift) v in the given mode.
WaveVector apply_shifted(const BandedOperator& op, const WaveVector& v, const Real& shift, ApplyMode mode);

/// Coefficient-space inner product; the shorter vector is zero-padded.
Real inner(const WaveVector& u, const WaveVector& v);

/// psi_0(xi), ..., psi_count-1(xi) by the normalized three-term recurrence.
std::vector<Real> hermite_functions(int count, const Real& xi);

/// sum_m v[m] psi_m(xi).
Real evaluate_wavefunction(const WaveVector& v, const Real& xi);

struct PhysicalParams {
    Real mass = 1;
    Real omega = 1;
    Real hbar = 1;
    Real quartic = 0;   // raw coefficient lambda of x^4 in the potential
};

/// beta = lambda hbar / (m^2 omega^3), so that lambda x^4 / (hbar omega)
/// becomes beta xi^4 under xi = sqrt(m omega / hbar) x.
/// Throws DomainError for nonpositive m, omega, hbar or negative lambda.
Real to_dimensionless(const PhysicalParams& p);

/// Physical energy hbar omega E of a dimensionless eigenvalue E.
Real energy_to_physical(const PhysicalParams& p, const Real& e);

/// Gauss-Hermite rule for weight exp(-xi^2) with `count` nodes, computed at
/// the active precision.
struct GaussHermiteRule {
    std::vector<Real> nodes;
    std::vector<Real> weights;
};
GaussHermiteRule gauss_hermite(int count);

/// Independent quadrature value of <psi_m | xi^power | psi_n>, power in {0, 2, 4}.
Real quadrature_element_oracle(int m, int n, int power);

}  // namespace hamqm
