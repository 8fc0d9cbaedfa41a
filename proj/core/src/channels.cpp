#include "mpqkd/channels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mpqkd {

PauliChannel::PauliChannel(const std::array<double, 4>& p) : p_(p) {
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (p[i] < -struct_tol) {
            std::ostringstream os;
            os << "pauli channel probability p[" << i << "] = " << p[i] << " is negative";
            throw std::invalid_argument(os.str());
        }
        sum += p[i];
    }
    if (std::abs(sum - 1.0) > struct_tol) {
        std::ostringstream os;
        os << "pauli channel probabilities sum to " << sum << ", expected 1";
        throw std::invalid_argument(os.str());
    }
}

KrausChannel::KrausChannel(std::vector<Mat2> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) {
        throw std::invalid_argument("cp-violation: kraus channel needs at least one operator");
    }
    Mat2 sum;
    for (const Mat2& k : ops_) {
        sum = sum + adjoint(k) * k;
    }
    const double defect = max_abs_diff(sum, mat_identity);
    if (defect > derived_tol) {
        std::ostringstream os;
        os << "cp-violation: sum K^dag K deviates from identity by " << defect;
        throw std::invalid_argument(os.str());
    }
}

DepolarizingChannel::DepolarizingChannel(double eta) : eta_(eta) {
    if (eta < -struct_tol || eta > 4.0 / 3.0 + struct_tol) {
        std::ostringstream os;
        os << "depolarizing strength eta = " << eta << " outside [0, 4/3]";
        throw std::invalid_argument(os.str());
    }
}

PauliChannel y_flip(double p) {
    if (p < 0.0 || p > 1.0) {
        std::ostringstream os;
        os << "y-flip probability p = " << p << " outside [0, 1]";
        throw std::invalid_argument(os.str());
    }
    return PauliChannel({1.0 - p, 0.0, p, 0.0});
}

PauliChannel depolarizing_as_pauli(double eta) {
    DepolarizingChannel check(eta);  // range validation
    const double q = check.eta() / 4.0;
    return PauliChannel({1.0 - 3.0 * q, q, q, q});
}

KrausChannel to_kraus(const Channel& c) {
    if (const auto* k = std::get_if<KrausChannel>(&c)) {
        return *k;
    }
    const PauliChannel p = std::holds_alternative<PauliChannel>(c)
                               ? std::get<PauliChannel>(c)
                               : depolarizing_as_pauli(std::get<DepolarizingChannel>(c).eta());
    std::vector<Mat2> ops;
    for (std::size_t i = 0; i < 4; ++i) {
        const double w = p.probabilities()[i];
        if (w > 0.0) {
            ops.push_back(std::sqrt(w) * pauli(i));
        }
    }
    return KrausChannel(std::move(ops));
}

Mat2 act(const PauliChannel& c, const Mat2& m) {
    Mat2 out;
    for (std::size_t i = 0; i < 4; ++i) {
        const double w = c.probabilities()[i];
        if (w != 0.0) {
            out = out + w * (pauli(i) * m * pauli(i));
        }
    }
    return out;
}

Mat2 act(const KrausChannel& c, const Mat2& m) {
    Mat2 out;
    for (const Mat2& k : c.ops()) {
        out = out + k * m * adjoint(k);
    }
    return out;
}

Mat2 act(const DepolarizingChannel& c, const Mat2& m) {
    return (1.0 - c.eta()) * m + (0.5 * c.eta() * trace(m)) * mat_identity;
}

Mat2 act(const Channel& c, const Mat2& m) {
    return std::visit([&m](const auto& ch) { return act(ch, m); }, c);
}

DensityMatrix apply(const Channel& c, const DensityMatrix& rho) {
    return DensityMatrix(act(c, rho.matrix()));
}

PauliTransferMatrix ptm(const Channel& c) {
    PauliTransferMatrix out;
    for (std::size_t j = 0; j < 4; ++j) {
        const Mat2 image = act(c, pauli(j));
        for (std::size_t i = 0; i < 4; ++i) {
            out.r[i][j] = 0.5 * trace(pauli(i) * image).real();
        }
    }
    return out;
}

PauliChannel pauli_from_ptm(const PauliTransferMatrix& r) {
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            const double target = (i == j && i == 0) ? 1.0 : 0.0;
            if (i != j || i == 0) {
                if (std::abs(r.r[i][j] - target) > derived_tol) {
                    std::ostringstream os;
                    os << "not-a-pauli-channel: transfer matrix entry (" << i << "," << j
                       << ") = " << r.r[i][j] << " breaks the diagonal form";
                    throw std::invalid_argument(os.str());
                }
            }
        }
    }
    const double a = r.r[1][1];
    const double b = r.r[2][2];
    const double c = r.r[3][3];
    std::array<double, 4> p{(1.0 + a + b + c) / 4.0, (1.0 + a - b - c) / 4.0,
                            (1.0 - a + b - c) / 4.0, (1.0 - a - b + c) / 4.0};
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (p[i] < -derived_tol) {
            std::ostringstream os;
            os << "not-a-pauli-channel: recovered probability p[" << i << "] = " << p[i]
               << " is negative";
            throw std::invalid_argument(os.str());
        }
        p[i] = std::max(p[i], 0.0);
        sum += p[i];
    }
    for (double& v : p) {
        v /= sum;  // absorb float noise so the ctor's 1e-12 checks pass
    }
    return PauliChannel(p);
}

}  // namespace mpqkd
