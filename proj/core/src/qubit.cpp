#include "mpqkd/qubit.hpp"

#include <sstream>
#include <stdexcept>

namespace mpqkd {

const Mat2& pauli(std::size_t i) {
    switch (i) {
        case 0: return mat_identity;
        case 1: return mat_x;
        case 2: return mat_y;
        case 3: return mat_z;
        default: throw std::invalid_argument("pauli index must be in 0..3");
    }
}

DensityMatrix::DensityMatrix(const Mat2& m) : m_(m) {
    const double herm = hermiticity_defect(m);
    if (herm > struct_tol) {
        std::ostringstream os;
        os << "density matrix is not hermitian (defect " << herm << ")";
        throw std::invalid_argument(os.str());
    }
    const double tr_err = std::abs(trace(m) - cplx(1.0, 0.0));
    if (tr_err > struct_tol) {
        std::ostringstream os;
        os << "density matrix trace deviates from 1 by " << tr_err;
        throw std::invalid_argument(os.str());
    }
    const HermitianEig eig = hermitian_eig(m);
    if (eig.low < -struct_tol) {
        std::ostringstream os;
        os << "density matrix has negative eigenvalue " << eig.low;
        throw std::invalid_argument(os.str());
    }
}

DensityMatrix DensityMatrix::pure(const Ket& k) {
    const double n2 = norm2(k);
    if (n2 <= 0.0) {
        throw std::invalid_argument("cannot form a pure state from the zero ket");
    }
    return DensityMatrix((1.0 / n2) * outer(k));
}

Unitary2::Unitary2(const Mat2& m) : m_(m) {
    const double defect = max_abs_diff(m * adjoint(m), mat_identity);
    if (defect > struct_tol) {
        std::ostringstream os;
        os << "matrix is not unitary (U U^dag deviates from I by " << defect << ")";
        throw std::invalid_argument(os.str());
    }
}

HermitianEig hermitian_eig(const Mat2& h) {
    // H = [[a, b], [conj(b), d]] with a, d real up to struct_tol.
    const double a = h.m00.real();
    const double d = h.m11.real();
    const double mean = 0.5 * (a + d);
    const double half_gap = 0.5 * (a - d);
    const double radius = std::sqrt(half_gap * half_gap + std::norm(h.m01));

    HermitianEig out;
    out.low = mean - radius;
    out.high = mean + radius;
    if (radius <= 1e-15 * (1.0 + std::abs(mean))) {
        // Degenerate: any orthogonal split works; pick the computational basis.
        out.proj_low = {1.0, 0.0, 0.0, 0.0};
        out.proj_high = {0.0, 0.0, 0.0, 1.0};
        return out;
    }
    // Rank-1 projector onto the top eigenvector: (H - low I) / (high - low).
    const double inv_gap = 1.0 / (out.high - out.low);
    out.proj_high = inv_gap * (h - out.low * mat_identity);
    out.proj_low = mat_identity - out.proj_high;
    return out;
}

double trace_norm(const Mat2& h) {
    const HermitianEig eig = hermitian_eig(h);
    return std::abs(eig.low) + std::abs(eig.high);
}

DensityMatrix conjugate(const Unitary2& u, const DensityMatrix& rho) {
    return DensityMatrix(u.matrix() * rho.matrix() * adjoint(u.matrix()));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return 0.5 * trace_norm(rho.matrix() - sigma.matrix());
}

DensityMatrix density_from_bloch(const BlochVector& r) {
    const double len = r.norm();
    if (len > 1.0 + struct_tol) {
        std::ostringstream os;
        os << "invalid-bloch: |r| = " << len << " exceeds 1";
        throw std::invalid_argument(os.str());
    }
    const Mat2 m = 0.5 * (mat_identity + r.x * mat_x + r.y * mat_y + r.z * mat_z);
    return DensityMatrix(m);
}

BlochVector bloch_from_density(const DensityMatrix& rho) {
    return {trace(mat_x * rho.matrix()).real(),
            trace(mat_y * rho.matrix()).real(),
            trace(mat_z * rho.matrix()).real()};
}

}  // namespace mpqkd
