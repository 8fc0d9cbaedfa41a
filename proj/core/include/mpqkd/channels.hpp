// Qubit channels: Pauli mixtures, general Kraus maps and the depolarizing
// family, plus the Pauli transfer matrix picture used to compare them.
#pragma once

#include <array>
#include <cstddef>
#include <variant>
#include <vector>

#include "mpqkd/qubit.hpp"

namespace mpqkd {

// ---------------------------------------------------------------------------
// Channel types.
// ---------------------------------------------------------------------------

// N[rho] = sum_i p_i sigma_i rho sigma_i, p a distribution over (I, X, Y, Z).
class PauliChannel {
  public:
    explicit PauliChannel(const std::array<double, 4>& p);

    const std::array<double, 4>& probabilities() const { return p_; }
    double p0() const { return p_[0]; }
    double px() const { return p_[1]; }
    double py() const { return p_[2]; }
    double pz() const { return p_[3]; }

  private:
    std::array<double, 4> p_;
};

// N[rho] = sum_k K_k rho K_k^dag with sum_k K_k^dag K_k = I (trace preservation;
// complete positivity is automatic in this representation).
class KrausChannel {
  public:
    explicit KrausChannel(std::vector<Mat2> ops);

    const std::vector<Mat2>& ops() const { return ops_; }

  private:
    std::vector<Mat2> ops_;
};

// D_eta[rho] = (1 - eta) rho + eta I/2 with eta in [0, 4/3].
class DepolarizingChannel {
  public:
    explicit DepolarizingChannel(double eta);

    double eta() const { return eta_; }

  private:
    double eta_;
};

using Channel = std::variant<PauliChannel, KrausChannel, DepolarizingChannel>;

// ---------------------------------------------------------------------------
// Pauli transfer matrix: R_ij = 1/2 tr[sigma_i N(sigma_j)], i,j in 0..3.
// ---------------------------------------------------------------------------

struct PauliTransferMatrix {
    std::array<std::array<double, 4>, 4> r{};
};

// ---------------------------------------------------------------------------
// Constructors for the named families.
// ---------------------------------------------------------------------------

// [1-p, 0, p, 0]: flips Y with probability p.  Domain [0, 1].
PauliChannel y_flip(double p);

// D_eta as the Pauli mixture [1 - 3 eta/4, eta/4, eta/4, eta/4].
PauliChannel depolarizing_as_pauli(double eta);

// Canonical Kraus form (sqrt(p_i) sigma_i for the Pauli case, omitting
// zero-probability terms).
KrausChannel to_kraus(const Channel& c);

// ---------------------------------------------------------------------------
// Channel action.
// ---------------------------------------------------------------------------

// The linear extension of the channel to arbitrary 2x2 operators; this is
// what ptm() and the twirling machinery are built on.
Mat2 act(const PauliChannel& c, const Mat2& m);
Mat2 act(const KrausChannel& c, const Mat2& m);
Mat2 act(const DepolarizingChannel& c, const Mat2& m);
Mat2 act(const Channel& c, const Mat2& m);

DensityMatrix apply(const Channel& c, const DensityMatrix& rho);

// ---------------------------------------------------------------------------
// Transfer matrix round trip.
// ---------------------------------------------------------------------------

PauliTransferMatrix ptm(const Channel& c);

// Inverts R = diag(1, 1-2(p_y+p_z), 1-2(p_x+p_z), 1-2(p_x+p_y)); throws
// invalid_argument ("not-a-pauli-channel") when any off-diagonal entry
// exceeds 1e-10 or a recovered probability is below -1e-10.
PauliChannel pauli_from_ptm(const PauliTransferMatrix& r);

}  // namespace mpqkd
