// Minimum-error discrimination of state ensembles, with and without
// measurement protection, plus a brute-force grid oracle that optimizes over
// projective measurements independently of the Helstrom construction.
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mpqkd/channels.hpp"
#include "mpqkd/qubit.hpp"

namespace mpqkd {

// ---------------------------------------------------------------------------
// Ensembles and measurements.
// ---------------------------------------------------------------------------

class Ensemble {
  public:
    // Priors must be nonnegative and sum to 1 within struct_tol.
    explicit Ensemble(std::vector<std::pair<double, DensityMatrix>> members);

    const std::vector<std::pair<double, DensityMatrix>>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }

  private:
    std::vector<std::pair<double, DensityMatrix>> members_;
};

class Measurement {
  public:
    // POVM: each element PSD (eigenvalues >= -1e-12), summing to I within 1e-10.
    explicit Measurement(std::vector<Mat2> elements);

    const std::vector<Mat2>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }

  private:
    std::vector<Mat2> elements_;
};

// The ensembles and measurements used throughout: the orthogonal pair
// {|0>,|1|}, the B92-style pair {|0>,|+>}, and the four BB84 states, all
// with uniform priors.
Ensemble ensemble_s2();
Ensemble ensemble_s0plus();
Ensemble ensemble_s4();

// Z-basis projectors {|0><0|, |1><1|}: optimal for S2 without noise.
Measurement z_basis_measurement();

// M_{0+}: projectors onto m0 = cos(pi/8)|0> - sin(pi/8)|1> and
// m+ = cos(3pi/8)|0> + sin(3pi/8)|1>; optimal for S0+ without noise.
Measurement m0plus_measurement();

// The BB84 random-basis POVM {|0><0|/2, |1><1|/2, |+><+|/2, |-><-|/2}
// (the factor 1/2 is Bob's uniform basis choice).
Measurement bb84_measurement();

// ---------------------------------------------------------------------------
// Operations.
// ---------------------------------------------------------------------------

// Success probability sum_i q_i tr[M_i rho_i]; outcome i answers
// hypothesis i.  Throws invalid_argument ("arity-mismatch") when the
// measurement outcome count differs from the ensemble size.
double guess_prob(const Ensemble& e, const Measurement& m);

// Helstrom bound for two hypotheses: p_guess = 1/2 + ||q0 rho0 - q1 rho1||_1/2
// together with the projective measurement onto the positive/negative
// eigenspaces of the discriminator operator.
struct HelstromResult {
    double p_guess{};
    Measurement measurement;
};

HelstromResult helstrom(double q0, const DensityMatrix& rho0,
                        double q1, const DensityMatrix& rho1);

// Ensemble after transmission: every state passes through c, or, when
// protected_, through the twirled channel (the canonical three-element set
// {U_1, U_5, U_9}; for Pauli inputs the twirl is evaluated analytically
// through its transfer matrix).
Ensemble send_through(const Ensemble& e, const Channel& c, bool protected_);

// guess_prob on send_through(e, c, protected_).
double guess_prob_through(const Ensemble& e, const Channel& c, bool protected_,
                          const Measurement& m);

// Brute-force oracle: maximize guess_prob over projective measurements
// {(I + n.sigma)/2, (I - n.sigma)/2} for Bloch directions n on a (theta, phi)
// grid, plus the two trivial always-guess strategies.  Only two-member
// ensembles are supported ("unsupported-ensemble" otherwise); the grid must
// have at least 10^4 points.
struct OracleGrid {
    std::size_t n_theta = 400;
    std::size_t n_phi = 800;
};

double brute_force_optimal(const Ensemble& e, const Channel& c, bool protected_,
                           const OracleGrid& grid = {});

}  // namespace mpqkd
