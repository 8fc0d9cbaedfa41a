#include "mpqkd/twirl.hpp"

#include <cmath>
#include <stdexcept>

namespace mpqkd {

namespace {

constexpr cplx i1{0.0, 1.0};

// The 12-element qubit unitary 2-design.  The first four are the Paulis up
// to global phase; the remaining eight are order-3 rotations (120 degrees
// about the body diagonals of the Bloch cube) that cyclically permute the
// X, Y, Z axes.
const std::vector<Mat2>& design_matrices() {
    static const std::vector<Mat2> mats = [] {
        const cplx pp{0.5, 0.5};    // (1+i)/2
        const cplx pm{0.5, -0.5};   // (1-i)/2
        const cplx mp{-0.5, 0.5};   // (-1+i)/2
        const cplx mm{-0.5, -0.5};  // (-1-i)/2
        return std::vector<Mat2>{
            {1.0, 0.0, 0.0, 1.0},  // I
            {0.0, i1, i1, 0.0},    // iX
            {0.0, 1.0, -1.0, 0.0}, // iY
            {i1, 0.0, 0.0, -i1},   // iZ
            {pm, mm, pm, pp},      // U5
            {pp, pm, mm, pm},      // U6
            {pp, mp, pp, pm},      // U7
            {pm, pp, mp, pp},      // U8
            {mm, mm, pm, mp},      // U9
            {mp, pm, mm, mm},      // U10
            {mp, mp, pp, mm},      // U11
            {mm, pp, mp, mp},      // U12
        };
    }();
    return mats;
}

}  // namespace

TwirlSet::TwirlSet(std::vector<Unitary2> unitaries, TwirlKind kind)
    : us_(std::move(unitaries)), kind_(kind) {
    if (us_.empty()) {
        throw std::invalid_argument("twirl set needs at least one unitary");
    }
}

TwirlSet standard_2design() {
    std::vector<Unitary2> us;
    us.reserve(12);
    for (const Mat2& m : design_matrices()) {
        us.emplace_back(m);
    }
    return TwirlSet(std::move(us), TwirlKind::full_design);
}

TwirlSet three_element_set(std::size_t a, std::size_t b, std::size_t c) {
    if (a > 3 || b < 4 || b > 7 || c < 8 || c > 11) {
        throw std::invalid_argument(
            "three-element set indices must satisfy a in 0..3, b in 4..7, c in 8..11");
    }
    const auto& mats = design_matrices();
    std::vector<Unitary2> us{Unitary2(mats[a]), Unitary2(mats[b]), Unitary2(mats[c])};
    return TwirlSet(std::move(us), TwirlKind::three_element);
}

std::vector<TwirlSet> three_element_sets() {
    std::vector<TwirlSet> sets;
    sets.reserve(64);
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 4; b < 8; ++b) {
            for (std::size_t c = 8; c < 12; ++c) {
                sets.push_back(three_element_set(a, b, c));
            }
        }
    }
    return sets;
}

TwirlSet custom_set(std::vector<Unitary2> unitaries) {
    return TwirlSet(std::move(unitaries), TwirlKind::custom);
}

KrausChannel twirl(const Channel& c, const TwirlSet& set) {
    const KrausChannel kraus = to_kraus(c);
    const double scale = 1.0 / std::sqrt(static_cast<double>(set.size()));
    std::vector<Mat2> ops;
    ops.reserve(set.size() * kraus.ops().size());
    for (std::size_t j = 0; j < set.size(); ++j) {
        const Mat2& v = set[j].matrix();
        const Mat2 vdag = adjoint(v);
        for (const Mat2& k : kraus.ops()) {
            ops.push_back(scale * (vdag * k * v));
        }
    }
    return KrausChannel(std::move(ops));
}

DepolarizingFit depolarizing_fit(const Channel& c, double tol) {
    if (tol <= 0.0) {
        throw std::invalid_argument("depolarizing fit tolerance must be positive");
    }
    const PauliTransferMatrix r = ptm(c);
    const double contraction = (r.r[1][1] + r.r[2][2] + r.r[3][3]) / 3.0;

    DepolarizingFit fit;
    fit.eta = 1.0 - contraction;
    fit.max_deviation = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            double target = 0.0;
            if (i == j) {
                target = (i == 0) ? 1.0 : contraction;
            }
            fit.max_deviation = std::max(fit.max_deviation, std::abs(r.r[i][j] - target));
        }
    }
    fit.ok = fit.max_deviation <= tol;
    return fit;
}

}  // namespace mpqkd
