#pragma once

#include <array>
#include <complex>
#include <string_view>

namespace raqm {

using cplx = std::complex<double>;

// Physicality tolerances. Hermiticity and trace are checked tightly; small
// negative eigenvalues from rounding are tolerated up to kEigenTol.
constexpr double kHermTol = 1e-12;
constexpr double kEigenTol = 1e-10;

// Axis convention used throughout the project:
//   |U>, |D>          <-> +/-z   (Z basis)
//   |+>, |->          <-> +/-x   (X basis)
//   |s+>, |s->        <-> +/-y   (Y basis, s+- = (|U> +/- i|D>)/sqrt(2))
// The hardware never fixes these axes; everything downstream (tomography,
// Bloch conversions, measurement bases) uses this convention.

// Single dual-rail qubit: amplitude c0 on rail U, c1 on rail D.
class PureQubit {
public:
    PureQubit(cplx c0, cplx c1);

    // Normalizes (a0, a1); rejects the zero vector.
    static PureQubit normalized(cplx a0, cplx a1);

    cplx c0() const { return c0_; }
    cplx c1() const { return c1_; }

    // |<this|other>|^2
    double overlap(const PureQubit& other) const;

private:
    cplx c0_, c1_;
};

// 2x2 density operator. Construction validates hermiticity, unit trace and
// positivity, so a DensityMatrix value is always physical.
class DensityMatrix {
public:
    DensityMatrix(cplx m00, cplx m01, cplx m10, cplx m11);

    static DensityMatrix pure(const PureQubit& psi);
    static DensityMatrix maximally_mixed();

    cplx operator()(int row, int col) const { return m_[static_cast<std::size_t>(2 * row + col)]; }

    double trace() const;   // 1 by construction, up to rounding
    double purity() const;  // tr(rho^2)

    // Smallest eigenvalue; >= -kEigenTol by construction.
    double min_eigenvalue() const;

private:
    std::array<cplx, 4> m_;
};

struct BlochVector {
    double rx = 0.0;
    double ry = 0.0;
    double rz = 0.0;

    double norm() const;
};

// The six complementary input states, in the fixed order
// |U>, |D>, |+>, |->, |s+>, |s->.
std::array<PureQubit, 6> complementary_states();
std::array<std::string_view, 6> complementary_state_names();

// <psi|rho|psi>, clamped to [0, 1].
double fidelity(const PureQubit& psi, const DensityMatrix& rho);

// (1 - p) rho + p I/2, p in [0, 1].
DensityMatrix depolarize(const DensityMatrix& rho, double p);

BlochVector bloch_from_density(const DensityMatrix& rho);

// Inverse of bloch_from_density; rejects |r| > 1 beyond tolerance.
DensityMatrix density_from_bloch(const BlochVector& r);

} // namespace raqm
