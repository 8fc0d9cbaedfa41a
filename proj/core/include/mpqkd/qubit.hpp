// Single-qubit linear algebra: 2x2 complex matrices, kets, density matrices,
// unitaries, Bloch vectors and the handful of spectral helpers the rest of
// the library needs.  Everything is a small value type; no heap allocation.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace mpqkd {

using cplx = std::complex<double>;

// Tolerance for structural invariants of value types (unitarity, unit trace,
// hermiticity, positivity).  Derived quantities that accumulate a little
// float noise are checked against the looser 1e-10 elsewhere.
inline constexpr double struct_tol = 1e-12;
inline constexpr double derived_tol = 1e-10;

// ---------------------------------------------------------------------------
// Mat2: dense 2x2 complex matrix, row major.
// ---------------------------------------------------------------------------

struct Mat2 {
    cplx m00{}, m01{}, m10{}, m11{};
};

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

inline Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

inline Mat2 operator*(cplx s, const Mat2& a) {
    return {s * a.m00, s * a.m01, s * a.m10, s * a.m11};
}

inline Mat2 operator*(double s, const Mat2& a) { return cplx(s, 0.0) * a; }

inline Mat2 adjoint(const Mat2& a) {
    return {std::conj(a.m00), std::conj(a.m10), std::conj(a.m01), std::conj(a.m11)};
}

inline cplx trace(const Mat2& a) { return a.m00 + a.m11; }

inline cplx det(const Mat2& a) { return a.m00 * a.m11 - a.m01 * a.m10; }

// Largest entry magnitude of a - b; the workhorse for approximate equality.
inline double max_abs_diff(const Mat2& a, const Mat2& b) {
    return std::max(std::max(std::abs(a.m00 - b.m00), std::abs(a.m01 - b.m01)),
                    std::max(std::abs(a.m10 - b.m10), std::abs(a.m11 - b.m11)));
}

inline bool approx_equal(const Mat2& a, const Mat2& b, double tol) {
    return max_abs_diff(a, b) <= tol;
}

// How far a matrix is from being hermitian (largest entry of M - M^dag).
inline double hermiticity_defect(const Mat2& a) {
    return max_abs_diff(a, adjoint(a));
}

// ---------------------------------------------------------------------------
// Kets.
// ---------------------------------------------------------------------------

struct Ket {
    cplx c0{}, c1{};
};

inline Ket operator*(const Mat2& a, const Ket& k) {
    return {a.m00 * k.c0 + a.m01 * k.c1, a.m10 * k.c0 + a.m11 * k.c1};
}

inline cplx inner(const Ket& a, const Ket& b) {
    return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

inline double norm2(const Ket& k) { return std::norm(k.c0) + std::norm(k.c1); }

// |k><k| without normalization.
inline Mat2 outer(const Ket& k) {
    return {k.c0 * std::conj(k.c0), k.c0 * std::conj(k.c1),
            k.c1 * std::conj(k.c0), k.c1 * std::conj(k.c1)};
}

inline Ket ket_zero() { return {1.0, 0.0}; }
inline Ket ket_one() { return {0.0, 1.0}; }
inline Ket ket_plus() { return {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}; }
inline Ket ket_minus() { return {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)}; }

// ---------------------------------------------------------------------------
// Pauli basis.  pauli(0..3) = I, X, Y, Z.
// ---------------------------------------------------------------------------

inline const Mat2 mat_identity{1.0, 0.0, 0.0, 1.0};
inline const Mat2 mat_x{0.0, 1.0, 1.0, 0.0};
inline const Mat2 mat_y{0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0};
inline const Mat2 mat_z{1.0, 0.0, 0.0, -1.0};

const Mat2& pauli(std::size_t i);

// ---------------------------------------------------------------------------
// Bloch vectors.
// ---------------------------------------------------------------------------

struct BlochVector {
    double x{}, y{}, z{};

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// ---------------------------------------------------------------------------
// Validated wrappers.  Construction throws std::invalid_argument when the
// defining property is violated beyond struct_tol.
// ---------------------------------------------------------------------------

class DensityMatrix {
  public:
    // Requires hermitian, unit trace, positive semidefinite.
    explicit DensityMatrix(const Mat2& m);

    // Normalized pure state |k><k| / <k|k>.
    static DensityMatrix pure(const Ket& k);

    const Mat2& matrix() const { return m_; }

  private:
    Mat2 m_;
};

class Unitary2 {
  public:
    // Requires U U^dag = I.
    explicit Unitary2(const Mat2& m);

    const Mat2& matrix() const { return m_; }

  private:
    Mat2 m_;
};

// ---------------------------------------------------------------------------
// Spectral decomposition of a hermitian 2x2 matrix, in closed form.
// proj_low/proj_high are the (possibly rank-deficient when degenerate)
// orthogonal eigenprojectors with proj_low + proj_high = I.
// ---------------------------------------------------------------------------

struct HermitianEig {
    double low{}, high{};
    Mat2 proj_low, proj_high;
};

HermitianEig hermitian_eig(const Mat2& h);

// Sum of singular values == sum |eigenvalue| for hermitian input.
double trace_norm(const Mat2& h);

// ---------------------------------------------------------------------------
// Operations.
// ---------------------------------------------------------------------------

// U rho U^dag.
DensityMatrix conjugate(const Unitary2& u, const DensityMatrix& rho);

// T(rho, sigma) = 1/2 || rho - sigma ||_1.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// rho = (I + r . sigma) / 2; throws invalid-bloch when |r| > 1 + struct_tol.
DensityMatrix density_from_bloch(const BlochVector& r);

// r_i = tr(sigma_i rho); inverse of density_from_bloch.
BlochVector bloch_from_density(const DensityMatrix& rho);

}  // namespace mpqkd
