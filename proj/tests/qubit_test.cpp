#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "mpqkd/qubit.hpp"
#include "test_support.hpp"

using namespace mpqkd;
using test::random_density;
using test::random_ket;

namespace {

const double pi = 3.14159265358979323846;

}  // namespace

TEST_SUITE("qubit") {

TEST_CASE("pauli matrices satisfy the multiplication table") {
    CHECK_LE(max_abs_diff(mat_x * mat_x, mat_identity), 0.0);
    CHECK_LE(max_abs_diff(mat_x * mat_y, cplx(0.0, 1.0) * mat_z), 0.0);
    CHECK_LE(max_abs_diff(mat_y * mat_z, cplx(0.0, 1.0) * mat_x), 0.0);
    CHECK_LE(max_abs_diff(mat_z * mat_x, cplx(0.0, 1.0) * mat_y), 0.0);
    for (int i = 0; i < 4; ++i) {
        CHECK_LE(hermiticity_defect(pauli(i)), 0.0);
        CHECK(std::abs(trace(pauli(i) * pauli(i)) - cplx(2.0)) < struct_tol);
    }
    CHECK_THROWS_AS(pauli(4), std::invalid_argument);
}

TEST_CASE("conjugating by the identity fixes the state") {
    const DensityMatrix rho = DensityMatrix::pure(ket_zero());
    const DensityMatrix out = conjugate(Unitary2(mat_identity), rho);
    CHECK_LE(max_abs_diff(out.matrix(), rho.matrix()), struct_tol);
}

TEST_CASE("conjugating by iX flips |0> to |1>") {
    const Unitary2 ix(cplx(0.0, 1.0) * mat_x);
    const DensityMatrix out = conjugate(ix, DensityMatrix::pure(ket_zero()));
    CHECK_LE(max_abs_diff(out.matrix(), DensityMatrix::pure(ket_one()).matrix()), struct_tol);
}

TEST_CASE("conjugating |0> by a design rotation permutes the Bloch axis") {
    // The first non-Pauli element of the twirl design sends the z axis to a
    // signed coordinate axis; check that exactly one Bloch component is +-1.
    const Unitary2 u5({0.5 * cplx(1.0, -1.0), 0.5 * cplx(-1.0, -1.0),
                       0.5 * cplx(1.0, -1.0), 0.5 * cplx(1.0, 1.0)});
    const DensityMatrix out = conjugate(u5, DensityMatrix::pure(ket_zero()));
    const BlochVector r = bloch_from_density(out);
    const double coords[3] = {r.x, r.y, r.z};
    int axis_hits = 0;
    int zero_hits = 0;
    for (double c : coords) {
        if (std::abs(std::abs(c) - 1.0) < derived_tol) {
            ++axis_hits;
        }
        if (std::abs(c) < derived_tol) {
            ++zero_hits;
        }
    }
    CHECK_EQ(axis_hits, 1);
    CHECK_EQ(zero_hits, 2);
}

TEST_CASE("conjugation preserves eigenvalues") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        const DensityMatrix rho = random_density(rng);
        // Random unitary: exponential of a Hermitian combination via two
        // reflections; simpler to build from a random ket pair.
        const Ket a = random_ket(rng);
        const Ket b{-std::conj(a.c1), std::conj(a.c0)};
        const Unitary2 u({a.c0, b.c0, a.c1, b.c1});
        const HermitianEig before = hermitian_eig(rho.matrix());
        const HermitianEig after = hermitian_eig(conjugate(u, rho).matrix());
        CHECK_LE(std::abs(before.low - after.low), derived_tol);
        CHECK_LE(std::abs(before.high - after.high), derived_tol);
    }
}

TEST_CASE("trace distance on reference pairs") {
    const DensityMatrix zero = DensityMatrix::pure(ket_zero());
    const DensityMatrix one = DensityMatrix::pure(ket_one());
    const DensityMatrix plus = DensityMatrix::pure(ket_plus());
    CHECK_LE(trace_distance(zero, zero), struct_tol);
    CHECK_LE(std::abs(trace_distance(zero, one) - 1.0), struct_tol);
    CHECK_LE(std::abs(trace_distance(zero, plus) - 1.0 / std::sqrt(2.0)), derived_tol);
}

TEST_CASE("trace distance is symmetric and obeys the triangle inequality") {
    std::mt19937_64 rng(102);
    for (int trial = 0; trial < 300; ++trial) {
        const DensityMatrix a = random_density(rng);
        const DensityMatrix b = random_density(rng);
        const DensityMatrix c = random_density(rng);
        const double ab = trace_distance(a, b);
        const double ba = trace_distance(b, a);
        CHECK_LE(std::abs(ab - ba), derived_tol);
        CHECK_LE(ab, trace_distance(a, c) + trace_distance(c, b) + derived_tol);
        CHECK_GE(ab, -derived_tol);
        CHECK_LE(ab, 1.0 + derived_tol);
    }
}

TEST_CASE("bloch conversion on reference vectors") {
    const DensityMatrix centre = density_from_bloch({0.0, 0.0, 0.0});
    CHECK_LE(max_abs_diff(centre.matrix(), 0.5 * mat_identity), struct_tol);

    const DensityMatrix north = density_from_bloch({0.0, 0.0, 1.0});
    CHECK_LE(max_abs_diff(north.matrix(), DensityMatrix::pure(ket_zero()).matrix()), struct_tol);

    // (1/sqrt2, 0, 1/sqrt2) is the pure state cos(pi/8)|0> + sin(pi/8)|1>.
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const DensityMatrix diag = density_from_bloch({inv_sqrt2, 0.0, inv_sqrt2});
    const Ket expected{std::cos(pi / 8.0), std::sin(pi / 8.0)};
    CHECK_LE(max_abs_diff(diag.matrix(), DensityMatrix::pure(expected).matrix()), derived_tol);
}

TEST_CASE("bloch roundtrip is the identity on random vectors") {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 1000; ++trial) {
        const DensityMatrix rho = random_density(rng);
        const BlochVector r = bloch_from_density(rho);
        const DensityMatrix back = density_from_bloch(r);
        CHECK_LE(max_abs_diff(back.matrix(), rho.matrix()), struct_tol);
        CHECK_LE(r.x * r.x + r.y * r.y + r.z * r.z, 1.0 + struct_tol);
    }
}

TEST_CASE("bloch vectors outside the ball are rejected") {
    CHECK_THROWS_WITH_AS(density_from_bloch({1.0, 1.0, 0.0}),
                         doctest::Contains("invalid-bloch"), std::invalid_argument);
    CHECK_NOTHROW(density_from_bloch({1.0, 0.0, 0.0}));
}

TEST_CASE("density matrix construction enforces its invariants") {
    // Not hermitian.
    CHECK_THROWS_WITH_AS(DensityMatrix({cplx(0.5), cplx(0.3), cplx(0.1), cplx(0.5)}),
                         doctest::Contains("not hermitian"), std::invalid_argument);
    // Trace 2.
    CHECK_THROWS_WITH_AS(DensityMatrix({cplx(1.0), cplx(0.0), cplx(0.0), cplx(1.0)}),
                         doctest::Contains("trace"), std::invalid_argument);
    // Hermitian, unit trace, but indefinite.
    CHECK_THROWS_WITH_AS(DensityMatrix({cplx(1.2), cplx(0.0), cplx(0.0), cplx(-0.2)}),
                         doctest::Contains("negative eigenvalue"), std::invalid_argument);
    CHECK_NOTHROW(DensityMatrix({cplx(0.5), cplx(0.0), cplx(0.0), cplx(0.5)}));
}

TEST_CASE("unitary construction enforces U Udag = I") {
    CHECK_THROWS_WITH_AS(Unitary2({cplx(1.0), cplx(0.0), cplx(0.0), cplx(0.5)}),
                         doctest::Contains("not unitary"), std::invalid_argument);
    CHECK_NOTHROW(Unitary2(cplx(0.0, 1.0) * mat_y));
}

TEST_CASE("pure state construction normalizes and rejects the zero ket") {
    const DensityMatrix rho = DensityMatrix::pure({cplx(2.0), cplx(0.0)});
    CHECK_LE(max_abs_diff(rho.matrix(), DensityMatrix::pure(ket_zero()).matrix()), struct_tol);
    CHECK_THROWS_AS(DensityMatrix::pure({cplx(0.0), cplx(0.0)}), std::invalid_argument);
}

TEST_CASE("closed-form eigendecomposition reconstructs hermitian matrices") {
    const HermitianEig ze = hermitian_eig(mat_z);
    CHECK_LE(std::abs(ze.low - (-1.0)), struct_tol);
    CHECK_LE(std::abs(ze.high - 1.0), struct_tol);
    CHECK_LE(max_abs_diff(ze.proj_high, DensityMatrix::pure(ket_zero()).matrix()), struct_tol);
    CHECK_LE(max_abs_diff(ze.proj_low, DensityMatrix::pure(ket_one()).matrix()), struct_tol);

    // Degenerate case: projectors must still resolve the identity.
    const HermitianEig ide = hermitian_eig(mat_identity);
    CHECK_LE(std::abs(ide.low - 1.0), struct_tol);
    CHECK_LE(std::abs(ide.high - 1.0), struct_tol);
    CHECK_LE(max_abs_diff(ide.proj_low + ide.proj_high, mat_identity), struct_tol);

    std::mt19937_64 rng(104);
    for (int trial = 0; trial < 300; ++trial) {
        const Mat2 m = random_density(rng).matrix();
        const Mat2 h = 3.0 * m + (-1.0) * mat_identity;  // shift away from states
        const HermitianEig eig = hermitian_eig(h);
        const Mat2 rebuilt = eig.low * eig.proj_low + eig.high * eig.proj_high;
        CHECK_LE(max_abs_diff(rebuilt, h), derived_tol);
        CHECK_LE(max_abs_diff(eig.proj_low + eig.proj_high, mat_identity), derived_tol);
        CHECK_LE(max_abs_diff(eig.proj_low * eig.proj_high, Mat2{}), derived_tol);
    }
}

TEST_CASE("trace norm of a pauli matrix is 2") {
    CHECK_LE(std::abs(trace_norm(mat_x) - 2.0), struct_tol);
    CHECK_LE(std::abs(trace_norm(Mat2{}) - 0.0), struct_tol);
}

}  // TEST_SUITE
