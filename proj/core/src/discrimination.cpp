#include "mpqkd/discrimination.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mpqkd/twirl.hpp"

namespace mpqkd {

Ensemble::Ensemble(std::vector<std::pair<double, DensityMatrix>> members)
    : members_(std::move(members)) {
    if (members_.empty()) {
        throw std::invalid_argument("ensemble needs at least one member");
    }
    double sum = 0.0;
    for (const auto& [prior, state] : members_) {
        if (prior < -struct_tol) {
            std::ostringstream os;
            os << "ensemble prior " << prior << " is negative";
            throw std::invalid_argument(os.str());
        }
        sum += prior;
    }
    if (std::abs(sum - 1.0) > struct_tol) {
        std::ostringstream os;
        os << "ensemble priors sum to " << sum << ", expected 1";
        throw std::invalid_argument(os.str());
    }
}

Measurement::Measurement(std::vector<Mat2> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw std::invalid_argument("measurement needs at least one POVM element");
    }
    Mat2 sum;
    for (const Mat2& el : elements_) {
        const double herm = hermiticity_defect(el);
        if (herm > struct_tol) {
            std::ostringstream os;
            os << "POVM element is not hermitian (defect " << herm << ")";
            throw std::invalid_argument(os.str());
        }
        if (hermitian_eig(el).low < -struct_tol) {
            std::ostringstream os;
            os << "POVM element has negative eigenvalue " << hermitian_eig(el).low;
            throw std::invalid_argument(os.str());
        }
        sum = sum + el;
    }
    const double defect = max_abs_diff(sum, mat_identity);
    if (defect > derived_tol) {
        std::ostringstream os;
        os << "POVM elements sum deviates from identity by " << defect;
        throw std::invalid_argument(os.str());
    }
}

Ensemble ensemble_s2() {
    return Ensemble({{0.5, DensityMatrix::pure(ket_zero())},
                     {0.5, DensityMatrix::pure(ket_one())}});
}

Ensemble ensemble_s0plus() {
    return Ensemble({{0.5, DensityMatrix::pure(ket_zero())},
                     {0.5, DensityMatrix::pure(ket_plus())}});
}

Ensemble ensemble_s4() {
    return Ensemble({{0.25, DensityMatrix::pure(ket_zero())},
                     {0.25, DensityMatrix::pure(ket_one())},
                     {0.25, DensityMatrix::pure(ket_plus())},
                     {0.25, DensityMatrix::pure(ket_minus())}});
}

Measurement z_basis_measurement() {
    return Measurement({outer(ket_zero()), outer(ket_one())});
}

Measurement m0plus_measurement() {
    const double t = std::numbers::pi / 8.0;
    const Ket m0{std::cos(t), -std::sin(t)};
    const Ket mp{std::cos(3.0 * t), std::sin(3.0 * t)};
    return Measurement({outer(m0), outer(mp)});
}

Measurement bb84_measurement() {
    return Measurement({0.5 * outer(ket_zero()), 0.5 * outer(ket_one()),
                        0.5 * outer(ket_plus()), 0.5 * outer(ket_minus())});
}

double guess_prob(const Ensemble& e, const Measurement& m) {
    if (e.size() != m.size()) {
        std::ostringstream os;
        os << "arity-mismatch: ensemble has " << e.size() << " hypotheses but measurement has "
           << m.size() << " outcomes";
        throw std::invalid_argument(os.str());
    }
    double p = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const auto& [prior, state] = e.members()[i];
        p += prior * trace(m.elements()[i] * state.matrix()).real();
    }
    return p;
}

HelstromResult helstrom(double q0, const DensityMatrix& rho0,
                        double q1, const DensityMatrix& rho1) {
    if (std::abs(q0 + q1 - 1.0) > struct_tol || q0 < -struct_tol || q1 < -struct_tol) {
        throw std::invalid_argument("helstrom priors must be nonnegative and sum to 1");
    }
    const Mat2 delta = q0 * rho0.matrix() - q1 * rho1.matrix();
    const HermitianEig eig = hermitian_eig(delta);
    const double t1 = std::abs(eig.low) + std::abs(eig.high);

    if (t1 <= 1e-14) {
        // Degenerate discriminator: every measurement is optimal; return the
        // canonical computational-basis one.
        return {0.5, z_basis_measurement()};
    }
    // Projector onto the positive eigenspace answers hypothesis 0.
    Mat2 m0;
    if (eig.high > 0.0) {
        m0 = m0 + eig.proj_high;
    }
    if (eig.low > 0.0) {
        m0 = m0 + eig.proj_low;
    }
    return {0.5 + 0.5 * t1, Measurement({m0, mat_identity - m0})};
}

namespace {

// The canonical protection set {U_1, U_5, U_9}: the first three-element
// subset in the library's ordering.
const TwirlSet& canonical_protection() {
    static const TwirlSet set = three_element_set(0, 4, 8);
    return set;
}

Channel effective_channel(const Channel& c, bool protected_) {
    if (!protected_) {
        return c;
    }
    const KrausChannel twirled = twirl(c, canonical_protection());
    if (!std::holds_alternative<KrausChannel>(c)) {
        // Pauli (and depolarizing) inputs twirl to Pauli channels; recover
        // the exact mixture from the transfer matrix instead of carrying the
        // 12-operator Kraus form around.
        return pauli_from_ptm(ptm(twirled));
    }
    return twirled;
}

}  // namespace

Ensemble send_through(const Ensemble& e, const Channel& c, bool protected_) {
    const Channel eff = effective_channel(c, protected_);
    std::vector<std::pair<double, DensityMatrix>> out;
    out.reserve(e.size());
    for (const auto& [prior, state] : e.members()) {
        out.emplace_back(prior, apply(eff, state));
    }
    return Ensemble(std::move(out));
}

double guess_prob_through(const Ensemble& e, const Channel& c, bool protected_,
                          const Measurement& m) {
    return guess_prob(send_through(e, c, protected_), m);
}

double brute_force_optimal(const Ensemble& e, const Channel& c, bool protected_,
                           const OracleGrid& grid) {
    if (e.size() != 2) {
        std::ostringstream os;
        os << "unsupported-ensemble: oracle handles exactly 2 hypotheses, got " << e.size();
        throw std::invalid_argument(os.str());
    }
    if (grid.n_theta < 2 || grid.n_theta * grid.n_phi < 10000) {
        throw std::invalid_argument("oracle grid must have at least 10^4 points");
    }
    const Ensemble sent = send_through(e, c, protected_);
    const double q0 = sent.members()[0].first;
    const double q1 = sent.members()[1].first;
    const BlochVector r0 = bloch_from_density(sent.members()[0].second);
    const BlochVector r1 = bloch_from_density(sent.members()[1].second);
    // guess_prob for M0 = (I + n.sigma)/2 collapses to 1/2 + n.d/2 with
    // d = q0 r0 - q1 r1; scan directions and keep the best.
    const double dx = q0 * r0.x - q1 * r1.x;
    const double dy = q0 * r0.y - q1 * r1.y;
    const double dz = q0 * r0.z - q1 * r1.z;

    const double pi = std::numbers::pi;
    double best = 0.0;
    for (std::size_t i = 0; i < grid.n_theta; ++i) {
        const double theta = pi * static_cast<double>(i) / static_cast<double>(grid.n_theta - 1);
        const double st = std::sin(theta);
        const double ct = std::cos(theta);
        for (std::size_t j = 0; j < grid.n_phi; ++j) {
            const double phi = 2.0 * pi * static_cast<double>(j) / static_cast<double>(grid.n_phi);
            const double s = st * std::cos(phi) * dx + st * std::sin(phi) * dy + ct * dz;
            best = std::max(best, s);
        }
    }
    // Degenerate strategies (always answer 0 / always answer 1) are POVMs
    // {I, 0} and {0, I}; they beat every projective pair when priors dominate.
    return std::max(0.5 + 0.5 * best, std::max(q0, q1));
}

}  // namespace mpqkd
