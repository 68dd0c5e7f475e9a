#include "raqm/qstate.hpp"

#include <cmath>
#include <stdexcept>

namespace raqm {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

} // namespace

PureQubit::PureQubit(cplx c0, cplx c1) : c0_(c0), c1_(c1) {
    const double norm2 = std::norm(c0) + std::norm(c1);
    if (std::abs(norm2 - 1.0) > 1e-12)
        throw std::invalid_argument("PureQubit: amplitudes not normalized");
}

PureQubit PureQubit::normalized(cplx a0, cplx a1) {
    const double n = std::sqrt(std::norm(a0) + std::norm(a1));
    if (n == 0.0)
        throw std::invalid_argument("PureQubit::normalized: zero vector");
    return PureQubit(a0 / n, a1 / n);
}

double PureQubit::overlap(const PureQubit& other) const {
    return std::norm(std::conj(c0_) * other.c0_ + std::conj(c1_) * other.c1_);
}

DensityMatrix::DensityMatrix(cplx m00, cplx m01, cplx m10, cplx m11) : m_{m00, m01, m10, m11} {
    if (std::abs(m00.imag()) > kHermTol || std::abs(m11.imag()) > kHermTol)
        throw std::invalid_argument("DensityMatrix: diagonal not real");
    if (std::abs(m01 - std::conj(m10)) > kHermTol)
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(m00.real() + m11.real() - 1.0) > kHermTol)
        throw std::invalid_argument("DensityMatrix: trace != 1");
    if (min_eigenvalue() < -kEigenTol)
        throw std::invalid_argument("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(const PureQubit& psi) {
    const cplx a = psi.c0(), b = psi.c1();
    return DensityMatrix(std::norm(a), a * std::conj(b), b * std::conj(a), std::norm(b));
}

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(0.5, 0.0, 0.0, 0.5); }

double DensityMatrix::trace() const { return (m_[0] + m_[3]).real(); }

double DensityMatrix::purity() const {
    return std::norm(m_[0]) + std::norm(m_[3]) + 2.0 * std::norm(m_[1]);
}

double DensityMatrix::min_eigenvalue() const {
    // For a Hermitian 2x2 with trace t: lambda = t/2 -+ sqrt((a-d)^2/4 + |b|^2).
    const double a = m_[0].real(), d = m_[3].real();
    const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m_[1]));
    return 0.5 * (a + d) - half_gap;
}

std::array<PureQubit, 6> complementary_states() {
    const cplx i(0.0, 1.0);
    return {
        PureQubit(1.0, 0.0),                              // |U>
        PureQubit(0.0, 1.0),                              // |D>
        PureQubit(kInvSqrt2, kInvSqrt2),                  // |+>
        PureQubit(kInvSqrt2, -kInvSqrt2),                 // |->
        PureQubit(kInvSqrt2, i * kInvSqrt2),              // |s+>
        PureQubit(kInvSqrt2, -i * kInvSqrt2),             // |s->
    };
}

std::array<std::string_view, 6> complementary_state_names() {
    return {"U", "D", "plus", "minus", "sigma_plus", "sigma_minus"};
}

double fidelity(const PureQubit& psi, const DensityMatrix& rho) {
    const cplx a = psi.c0(), b = psi.c1();
    const cplx f = std::conj(a) * (rho(0, 0) * a + rho(0, 1) * b) +
                   std::conj(b) * (rho(1, 0) * a + rho(1, 1) * b);
    double v = f.real();
    if (v < 0.0) v = 0.0;
    if (v > 1.0) v = 1.0;
    return v;
}

DensityMatrix depolarize(const DensityMatrix& rho, double p) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("depolarize: p outside [0, 1]");
    const double q = 1.0 - p;
    return DensityMatrix(q * rho(0, 0) + 0.5 * p, q * rho(0, 1),
                         q * rho(1, 0), q * rho(1, 1) + 0.5 * p);
}

double BlochVector::norm() const { return std::sqrt(rx * rx + ry * ry + rz * rz); }

BlochVector bloch_from_density(const DensityMatrix& rho) {
    BlochVector r;
    r.rx = 2.0 * rho(0, 1).real();
    r.ry = -2.0 * rho(0, 1).imag();
    r.rz = rho(0, 0).real() - rho(1, 1).real();
    return r;
}

DensityMatrix density_from_bloch(const BlochVector& r) {
    if (r.norm() > 1.0 + kEigenTol)
        throw std::invalid_argument("density_from_bloch: |r| > 1");
    const cplx off(0.5 * r.rx, -0.5 * r.ry);
    return DensityMatrix(0.5 * (1.0 + r.rz), off, std::conj(off), 0.5 * (1.0 - r.rz));
}

} // namespace raqm
