// Entanglement-based security analysis: Bell-diagonal shared states, QBER
// with and without measurement protection, distillability conditions, key
// rates and the threshold table.
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mpqkd/channels.hpp"

namespace mpqkd {

// ---------------------------------------------------------------------------
// Types.
// ---------------------------------------------------------------------------

// Weights on the Bell basis in the order (phi1, phi2, phi3, phi4); for the
// state shared through a Pauli channel these carry (p0, pz, px, py).
class BellDiagonalState {
  public:
    explicit BellDiagonalState(const std::array<double, 4>& lambda);

    const std::array<double, 4>& lambda() const { return lambda_; }

  private:
    std::array<double, 4> lambda_;
};

// The BB84 channel family p0 = 1-2Q+x, px = pz = Q-x, py = x.
struct Bb84Parametrization {
    double qber{};
    double x{};
};

// Error-rate thresholds quoted for the protocols (fractions, not percent).
// "cpp" marks the variants with classical pre-processing, whose rate
// formulas are not part of this library; those constants are stored only.
struct ThresholdTable {
    static constexpr double oneway_bb84 = 0.11;
    static constexpr double oneway_bb84_cpp = 0.124;
    static constexpr double oneway_sixstate = 0.127;
    static constexpr double oneway_sixstate_cpp = 0.141;
    static constexpr double mp_oneway_bb84 = 0.10;
    static constexpr double mp_oneway_bb84_cpp = 0.112;
    static constexpr double twoway_bb84 = 0.20;
    static constexpr double mp_twoway_bb84 = 0.207;
    static constexpr double mp_twoway_depol = 0.276;
    static constexpr double ent_bb84 = 0.25;
    static constexpr double ent_depol = 1.0 / 3.0;
};

// ---------------------------------------------------------------------------
// Channel-to-state dictionary and error rates.
// ---------------------------------------------------------------------------

// Bell-diagonal state (id x c)|phi1><phi1| with weights (p0, pz, px, py).
BellDiagonalState shared_state(const PauliChannel& c);

// QBER of the unprotected protocol: Q = px + py.
double qber(const PauliChannel& c);

// QBER after measurement protection: Q~ = (2/3)(Q + pz).
double mp_qber(const PauliChannel& c);

// True iff protection strictly lowers the QBER (equivalently p0 < 1 - 3pz
// whenever Q > 0).
bool mp_qber_advantage(const PauliChannel& c);

// Channel constructors; throw invalid_argument ("invalid-parametrization")
// when a probability falls outside its range.
PauliChannel bb84_channel(double qber, double x);
PauliChannel bb84_channel(const Bb84Parametrization& params);
PauliChannel six_state_channel(double qber);

// ---------------------------------------------------------------------------
// Key rates, thresholds, entanglement.
// ---------------------------------------------------------------------------

// Binary entropy h(p) in bits, with h(0) = h(1) = 0 by continuity.
double binary_entropy(double p);

// Asymptotic one-way rate 1 - 2 h(Q); negative above the ~11% threshold.
double oneway_key_rate(double q);

// Unprotected QBER Q achieving protected QBER Q~ through the optimal BB84
// parametrization: Q = 1 - sqrt(1 - 3 Q~/2).  Domain [0, 2/3]
// ("out-of-range" otherwise).
double mp_oneway_relation(double mp_qber);

// Two-way distillability condition (p0 - pz)^2 > (p0 + pz)(px + py),
// strict: the boundary itself returns false.
bool twoway_distillable(const PauliChannel& c);

// The depolarizing two-way boundary: p0* = (5 + 3 sqrt 5)/20 and the
// corresponding protected QBER Q~* = 2(1 - p0*)/3, about 27.64%.
struct MpTwowayThreshold {
    double p0_star{};
    double mp_qber_star{};
};

MpTwowayThreshold mp_twoway_threshold();

// Bell-diagonal PPT criterion: entangled iff the largest weight exceeds 1/2
// (strict; separable boundary returns false).
bool is_entangled(const BellDiagonalState& s);

// ---------------------------------------------------------------------------
// Numeric boundary location.
// ---------------------------------------------------------------------------

// Bisection on a monotone predicate: pred(lo) must be true and pred(hi)
// false; returns the transition point to absolute tolerance tol.
double bisect_boundary(const std::function<bool(double)>& pred, double lo, double hi,
                       double tol = 1e-9);

// One threshold-table row: the stored constant and, where the library has
// the formula, the value recomputed from first principles.
struct ThresholdRow {
    std::string name;
    double stored{};
    std::optional<double> recomputed;
};

// All eleven table rows, in the declaration order of ThresholdTable.
std::vector<ThresholdRow> threshold_report();

}  // namespace mpqkd
