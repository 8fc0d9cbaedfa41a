// Twirling: averaging a channel over a finite set of unitaries,
// N -> (1/|V|) sum_j V_j^dag N[V_j . V_j^dag] V_j.
//
// The library ships the standard 12-element qubit unitary 2-design (which
// turns every channel into a depolarizing one) and its 64 three-element
// subsets {U, V, W} that already suffice for Pauli channels.
#pragma once

#include <cstddef>
#include <vector>

#include "mpqkd/channels.hpp"
#include "mpqkd/qubit.hpp"

namespace mpqkd {

enum class TwirlKind { full_design, three_element, custom };

class TwirlSet {
  public:
    TwirlSet(std::vector<Unitary2> unitaries, TwirlKind kind);

    const std::vector<Unitary2>& unitaries() const { return us_; }
    std::size_t size() const { return us_.size(); }
    const Unitary2& operator[](std::size_t i) const { return us_[i]; }
    TwirlKind kind() const { return kind_; }

  private:
    std::vector<Unitary2> us_;
    TwirlKind kind_;
};

// The 12-element design; elements 0..3 are I, iX, iY, iZ.
TwirlSet standard_2design();

// One three-element subset {U_a, V_b, W_c} with a in 0..3, b in 4..7,
// c in 8..11 (indices into the design above).
TwirlSet three_element_set(std::size_t a, std::size_t b, std::size_t c);

// All 64 subsets, ordered lexicographically by (a, b, c); the first entry
// is {U_1, U_5, U_9}.
std::vector<TwirlSet> three_element_sets();

// Any user-supplied collection of unitaries.
TwirlSet custom_set(std::vector<Unitary2> unitaries);

// The twirled channel in Kraus form: operators (1/sqrt(|V|)) V_j^dag K_m V_j
// over all pairs (j, m) with K_m the Kraus operators of c.
KrausChannel twirl(const Channel& c, const TwirlSet& set);

// Least-squares match of a channel against the depolarizing family.
// With R the channel's transfer matrix, eta = 1 - (R_11 + R_22 + R_33)/3 and
// max_deviation the largest entry distance between R and the transfer matrix
// of D_eta; the fit is accepted when max_deviation <= tol.
struct DepolarizingFit {
    bool ok{};
    double eta{};
    double max_deviation{};
};

DepolarizingFit depolarizing_fit(const Channel& c, double tol = 1e-9);

}  // namespace mpqkd
