#include "mpqkd/security.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mpqkd/twirl.hpp"

namespace mpqkd {

BellDiagonalState::BellDiagonalState(const std::array<double, 4>& lambda) : lambda_(lambda) {
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (lambda[i] < -struct_tol) {
            std::ostringstream os;
            os << "bell-diagonal weight lambda[" << i << "] = " << lambda[i] << " is negative";
            throw std::invalid_argument(os.str());
        }
        sum += lambda[i];
    }
    if (std::abs(sum - 1.0) > struct_tol) {
        std::ostringstream os;
        os << "bell-diagonal weights sum to " << sum << ", expected 1";
        throw std::invalid_argument(os.str());
    }
}

BellDiagonalState shared_state(const PauliChannel& c) {
    // (id x sigma) maps |phi1> to the Bell vector listed below (up to phase):
    // I -> phi1, Z -> phi2, X -> phi3, Y -> phi4.
    return BellDiagonalState({c.p0(), c.pz(), c.px(), c.py()});
}

double qber(const PauliChannel& c) { return c.px() + c.py(); }

double mp_qber(const PauliChannel& c) { return (2.0 / 3.0) * (qber(c) + c.pz()); }

bool mp_qber_advantage(const PauliChannel& c) { return mp_qber(c) < qber(c); }

PauliChannel bb84_channel(double qber_in, double x) {
    if (qber_in < 0.0 || qber_in > 0.5 || x < 0.0 || x > qber_in) {
        std::ostringstream os;
        os << "invalid-parametrization: need 0 <= x <= Q <= 1/2, got Q = " << qber_in
           << ", x = " << x;
        throw std::invalid_argument(os.str());
    }
    const double p0 = 1.0 - 2.0 * qber_in + x;
    const double pxz = qber_in - x;
    if (p0 < 0.0) {
        std::ostringstream os;
        os << "invalid-parametrization: p0 = " << p0 << " is negative";
        throw std::invalid_argument(os.str());
    }
    return PauliChannel({p0, pxz, x, pxz});
}

PauliChannel bb84_channel(const Bb84Parametrization& params) {
    return bb84_channel(params.qber, params.x);
}

PauliChannel six_state_channel(double qber_in) {
    if (qber_in < 0.0 || qber_in > 2.0 / 3.0) {
        std::ostringstream os;
        os << "invalid-parametrization: six-state QBER Q = " << qber_in << " outside [0, 2/3]";
        throw std::invalid_argument(os.str());
    }
    const double half = qber_in / 2.0;
    return PauliChannel({1.0 - 3.0 * half, half, half, half});
}

double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) {
        std::ostringstream os;
        os << "out-of-range: binary entropy argument " << p << " outside [0, 1]";
        throw std::invalid_argument(os.str());
    }
    if (p <= 0.0 || p >= 1.0) {
        return 0.0;
    }
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double oneway_key_rate(double q) {
    if (q < 0.0 || q > 0.5) {
        std::ostringstream os;
        os << "out-of-range: one-way key rate QBER " << q << " outside [0, 1/2]";
        throw std::invalid_argument(os.str());
    }
    return 1.0 - 2.0 * binary_entropy(q);
}

double mp_oneway_relation(double mp_qber_in) {
    if (mp_qber_in < 0.0 || mp_qber_in > 2.0 / 3.0) {
        std::ostringstream os;
        os << "out-of-range: protected QBER " << mp_qber_in << " outside [0, 2/3]";
        throw std::invalid_argument(os.str());
    }
    return 1.0 - std::sqrt(1.0 - 1.5 * mp_qber_in);
}

bool twoway_distillable(const PauliChannel& c) {
    const double lhs = (c.p0() - c.pz()) * (c.p0() - c.pz());
    const double rhs = (c.p0() + c.pz()) * (c.px() + c.py());
    return lhs > rhs;
}

MpTwowayThreshold mp_twoway_threshold() {
    const double p0_star = (5.0 + 3.0 * std::sqrt(5.0)) / 20.0;
    return {p0_star, 2.0 * (1.0 - p0_star) / 3.0};
}

bool is_entangled(const BellDiagonalState& s) {
    double max_weight = s.lambda()[0];
    for (double w : s.lambda()) {
        max_weight = std::max(max_weight, w);
    }
    return max_weight > 0.5;
}

double bisect_boundary(const std::function<bool(double)>& pred, double lo, double hi,
                       double tol) {
    if (!(lo < hi) || tol <= 0.0) {
        throw std::invalid_argument("bisection needs lo < hi and positive tolerance");
    }
    if (!pred(lo) || pred(hi)) {
        throw std::invalid_argument("bisection bracket must go from true to false");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (pred(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// The measurement-protected version of a channel, recovered exactly through
// the transfer matrix of the canonical {U_1, U_5, U_9} twirl.
PauliChannel protected_version(const PauliChannel& c) {
    return pauli_from_ptm(ptm(twirl(Channel(c), three_element_set(0, 4, 8))));
}

}  // namespace

std::vector<ThresholdRow> threshold_report() {
    std::vector<ThresholdRow> rows;
    rows.reserve(11);

    rows.push_back({"oneway_bb84", ThresholdTable::oneway_bb84,
                    bisect_boundary([](double q) { return oneway_key_rate(q) > 0.0; }, 0.0, 0.3)});
    // Classical pre-processing rates are stored constants only.
    rows.push_back({"oneway_bb84_cpp", ThresholdTable::oneway_bb84_cpp, std::nullopt});
    rows.push_back({"oneway_sixstate", ThresholdTable::oneway_sixstate, std::nullopt});
    rows.push_back({"oneway_sixstate_cpp", ThresholdTable::oneway_sixstate_cpp, std::nullopt});
    rows.push_back({"mp_oneway_bb84", ThresholdTable::mp_oneway_bb84,
                    mp_oneway_relation(ThresholdTable::oneway_sixstate)});
    rows.push_back({"mp_oneway_bb84_cpp", ThresholdTable::mp_oneway_bb84_cpp,
                    mp_oneway_relation(ThresholdTable::oneway_sixstate_cpp)});
    rows.push_back({"twoway_bb84", ThresholdTable::twoway_bb84,
                    bisect_boundary(
                        [](double q) { return twoway_distillable(bb84_channel(q, 0.0)); },
                        0.01, 0.49)});
    rows.push_back({"mp_twoway_bb84", ThresholdTable::mp_twoway_bb84,
                    bisect_boundary(
                        [](double q) {
                            return twoway_distillable(protected_version(bb84_channel(q, 0.0)));
                        },
                        0.01, 0.24)});
    rows.push_back({"mp_twoway_depol", ThresholdTable::mp_twoway_depol,
                    bisect_boundary(
                        [](double mp_q) {
                            // A depolarizing channel is its own protected
                            // version, with Q~ = eta/2.
                            return twoway_distillable(depolarizing_as_pauli(2.0 * mp_q));
                        },
                        0.2, 1.0 / 3.0 + 0.05)});
    rows.push_back({"ent_bb84", ThresholdTable::ent_bb84,
                    bisect_boundary(
                        [](double q) { return is_entangled(shared_state(bb84_channel(q, 0.0))); },
                        0.01, 0.49)});
    rows.push_back({"ent_depol", ThresholdTable::ent_depol,
                    bisect_boundary(
                        [](double mp_q) {
                            return is_entangled(
                                shared_state(depolarizing_as_pauli(2.0 * mp_q)));
                        },
                        0.2, 0.45)});
    return rows;
}

}  // namespace mpqkd
