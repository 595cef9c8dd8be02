#include "hamqm/basis.hpp"

#include <algorithm>
#include <string>

#include <boost/math/constants/constants.hpp>

#include "hamqm/errors.hpp"

namespace hamqm {

using boost::multiprecision::sqrt;

void BasisSpec::validate() const
{
    if (n_s < 8) throw ConfigError("n_s must be >= 8, got " + std::to_string(n_s));
    if (beta < 0) throw ConfigError("beta must be >= 0");
}

Real base_energy(int m)
{
    return Real(m) + Real(1) / 2;
}

WaveVector WaveVector::unit(std::size_t len, std::size_t index)
{
    if (index >= len) throw DomainError("unit vector index out of range");
    WaveVector v(len);
    v[index] = 1;
    return v;
}

WaveVector WaveVector::padded(std::size_t len) const
{
    WaveVector out = *this;
    if (out.coeffs.size() < len) out.coeffs.resize(len, Real(0));
    return out;
}

WaveVector& WaveVector::operator+=(const WaveVector& other)
{
    return add_scaled(Real(1), other);
}

WaveVector& WaveVector::operator-=(const WaveVector& other)
{
    return add_scaled(Real(-1), other);
}

WaveVector& WaveVector::operator*=(const Real& s)
{
    for (auto& c : coeffs) c *= s;
    return *this;
}

WaveVector& WaveVector::add_scaled(const Real& s, const WaveVector& other)
{
    if (other.size() > size()) coeffs.resize(other.size(), Real(0));
    for (std::size_t i = 0; i < other.size(); ++i) coeffs[i] += s * other[i];
    return *this;
}

WaveVector operator+(WaveVector a, const WaveVector& b) { return a += b; }
WaveVector operator-(WaveVector a, const WaveVector& b) { return a -= b; }
WaveVector operator*(const Real& s, WaveVector v) { return v *= s; }

Real BandedOperator::entry(std::size_t m, std::size_t n) const
{
    if (m >= dim || n >= dim) throw DomainError("operator entry out of range");
    const std::size_t lo = std::min(m, n);
    switch (std::max(m, n) - lo) {
    case 0: return diag0[lo];
    case 2: return diag2[lo];
    case 4: return diag4[lo];
    default: return Real(0);
    }
}

Real x4_element(int m, int n)
{
    if (m < 0 || n < 0) throw DomainError("x4_element: negative index");
    if (m < n) std::swap(m, n);
    const Real k = n;
    switch (m - n) {
    case 0: return Real(3) * (2 * k * k + 2 * k + 1) / 4;
    case 2: return (2 * k + 3) * sqrt((k + 1) * (k + 2)) / 2;
    case 4: return sqrt((k + 1) * (k + 2) * (k + 3) * (k + 4)) / 4;
    default: return Real(0);
    }
}

Real x2_element(int m, int n)
{
    if (m < 0 || n < 0) throw DomainError("x2_element: negative index");
    if (m < n) std::swap(m, n);
    const Real k = n;
    switch (m - n) {
    case 0: return k + Real(1) / 2;
    case 2: return sqrt((k + 1) * (k + 2)) / 2;
    default: return Real(0);
    }
}

namespace {

BandedOperator build_banded(const BasisSpec& spec, bool with_h0)
{
    spec.validate();
    const int dim = spec.dim();
    BandedOperator op;
    op.dim = static_cast<std::size_t>(dim);
    op.diag0.reserve(op.dim);
    op.diag2.reserve(op.dim);
    op.diag4.reserve(op.dim);
    for (int i = 0; i < dim; ++i) {
        Real d = spec.beta * x4_element(i, i);
        if (with_h0) d += base_energy(i);
        op.diag0.push_back(std::move(d));
        op.diag2.push_back(spec.beta * x4_element(i, i + 2));
        op.diag4.push_back(spec.beta * x4_element(i, i + 4));
    }
    return op;
}

}  // namespace

BandedOperator build_hamiltonian(const BasisSpec& spec)
{
    return build_banded(spec, true);
}

BandedOperator build_quartic_perturbation(const BasisSpec& spec)
{
    return build_banded(spec, false);
}

WaveVector apply_hamiltonian(const BandedOperator& op, const WaveVector& v, ApplyMode mode)
{
    if (v.size() != op.dim)
        throw DomainError("apply_hamiltonian: vector length " + std::to_string(v.size()) + " != operator dimension " +
                          std::to_string(op.dim));
    const std::size_t n = op.dim;
    const std::size_t out_len = mode == ApplyMode::extended ? n + 4 : n;
    WaveVector out(out_len);
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] == 0) continue;
        out[i] += op.diag0[i] * v[i];
        if (i + 2 < out_len) out[i + 2] += op.diag2[i] * v[i];
        if (i + 4 < out_len) out[i + 4] += op.diag4[i] * v[i];
        if (i >= 2) out[i - 2] += op.diag2[i - 2] * v[i];
        if (i >= 4) out[i - 4] += op.diag4[i - 4] * v[i];
    }
    return out;
}

WaveVector apply_shifted(const BandedOperator& op, const WaveVector& v, const Real& shift, ApplyMode mode)
{
    WaveVector out = apply_hamiltonian(op, v, mode);
    for (std::size_t i = 0; i < v.size(); ++i) out[i] -= shift * v[i];
    return out;
}

Real inner(const WaveVector& u, const WaveVector& v)
{
    const std::size_t n = std::min(u.size(), v.size());
    Real s = 0;
    for (std::size_t i = 0; i < n; ++i) s += u[i] * v[i];
    return s;
}

std::vector<Real> hermite_functions(int count, const Real& xi)
{
    std::vector<Real> psi;
    if (count <= 0) return psi;
    psi.reserve(static_cast<std::size_t>(count));
    const Real pi = boost::math::constants::pi<Real>();
    psi.push_back(exp(-xi * xi / 2) / sqrt(sqrt(pi)));
    if (count == 1) return psi;
    psi.push_back(sqrt(Real(2)) * xi * psi[0]);
    for (int k = 1; k + 1 < count; ++k) {
        const Real kk = k;
        psi.push_back(xi * sqrt(2 / (kk + 1)) * psi[k] - sqrt(kk / (kk + 1)) * psi[k - 1]);
    }
    return psi;
}

Real evaluate_wavefunction(const WaveVector& v, const Real& xi)
{
    const auto psi = hermite_functions(static_cast<int>(v.size()), xi);
    Real s = 0;
    for (std::size_t m = 0; m < v.size(); ++m) s += v[m] * psi[m];
    return s;
}

Real to_dimensionless(const PhysicalParams& p)
{
    if (p.mass <= 0 || p.omega <= 0 || p.hbar <= 0)
        throw DomainError("mass, omega and hbar must be positive");
    if (p.quartic < 0) throw DomainError("quartic coefficient must be nonnegative");
    return p.quartic * p.hbar / (p.mass * p.mass * p.omega * p.omega * p.omega);
}

Real energy_to_physical(const PhysicalParams& p, const Real& e)
{
    if (p.omega <= 0 || p.hbar <= 0) throw DomainError("omega and hbar must be positive");
    return p.hbar * p.omega * e;
}

}  // namespace hamqm
