#include "daqc/hamiltonian.hpp"

#include <cmath>

#include "daqc/error.hpp"

namespace daqc {

std::string_view error_tag(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid_argument";
        case ErrorKind::InvalidSize: return "invalid_size";
        case ErrorKind::IncompatiblePair: return "incompatible_pair";
        case ErrorKind::EmptyProblem: return "empty_problem";
        case ErrorKind::EmptySelection: return "empty_selection";
        case ErrorKind::DimensionMismatch: return "dimension_mismatch";
        case ErrorKind::SizeCapExceeded: return "size_cap_exceeded";
        case ErrorKind::CapExceeded: return "cap_exceeded";
        case ErrorKind::NumericalFailure: return "numerical_failure";
        case ErrorKind::DegenerateHull: return "degenerate_hull";
        case ErrorKind::WrongModel: return "wrong_model";
        case ErrorKind::ParseError: return "parse_error";
    }
    return "unknown";
}

char axis_char(Axis a) {
    switch (a) {
        case Axis::X: return 'x';
        case Axis::Y: return 'y';
        case Axis::Z: return 'z';
    }
    return '?';
}

Axis parse_axis(char c) {
    switch (c) {
        case 'x': case 'X': return Axis::X;
        case 'y': case 'Y': return Axis::Y;
        case 'z': case 'Z': return Axis::Z;
        default: break;
    }
    throw Error(ErrorKind::InvalidArgument, std::string("unknown Pauli axis '") + c + "'");
}

std::string model_name(ModelKind m) { return m == ModelKind::ZZ ? "zz" : "general"; }

ModelKind parse_model(const std::string& s) {
    if (s == "zz" || s == "ZZ") return ModelKind::ZZ;
    if (s == "general" || s == "General") return ModelKind::General;
    throw Error(ErrorKind::InvalidArgument, "unknown model '" + s + "' (expected zz or general)");
}

std::string CouplingKey::str() const {
    return std::to_string(i) + "-" + std::to_string(j) + ":" + axis_char(mu) + axis_char(nu);
}

std::vector<CouplingKey> coupling_index(int n, ModelKind model) {
    if (n < 2) throw Error(ErrorKind::InvalidSize, "need at least 2 qubits, got " + std::to_string(n));
    std::vector<CouplingKey> keys;
    keys.reserve(static_cast<std::size_t>(coupling_count(n, model)));
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            if (model == ModelKind::ZZ) {
                keys.push_back({i, j, Axis::Z, Axis::Z});
                continue;
            }
            for (Axis mu : {Axis::X, Axis::Y, Axis::Z})
                for (Axis nu : {Axis::X, Axis::Y, Axis::Z}) keys.push_back({i, j, mu, nu});
        }
    }
    return keys;
}

int coupling_count(int n, ModelKind model) {
    const int pairs = n * (n - 1) / 2;
    return model == ModelKind::ZZ ? pairs : 9 * pairs;
}

void validate_key(const CouplingKey& key, int n, ModelKind model) {
    if (key.i < 1 || key.j > n || key.i >= key.j) {
        throw Error(ErrorKind::InvalidArgument,
                    "coupling " + key.str() + " violates 1 <= i < j <= " + std::to_string(n));
    }
    if (model == ModelKind::ZZ && (key.mu != Axis::Z || key.nu != Axis::Z)) {
        throw Error(ErrorKind::InvalidArgument, "coupling " + key.str() + " is not zz in a ZZ model");
    }
}

TwoBodyHamiltonian::TwoBodyHamiltonian(int n, ModelKind model) : n_(n), model_(model) {
    if (n < 2) throw Error(ErrorKind::InvalidSize, "need at least 2 qubits, got " + std::to_string(n));
}

double TwoBodyHamiltonian::coefficient(const CouplingKey& key) const {
    auto it = couplings_.find(key);
    return it == couplings_.end() ? 0.0 : it->second;
}

void TwoBodyHamiltonian::set(const CouplingKey& key, double value) {
    validate_key(key, n_, model_);
    if (!std::isfinite(value)) throw Error(ErrorKind::InvalidArgument, "non-finite coefficient on " + key.str());
    couplings_[key] = value;
}

ProblemVector build_problem_vector(const TwoBodyHamiltonian& hP, const TwoBodyHamiltonian& hS,
                                   double T, double zero_threshold) {
    if (hP.n() != hS.n() || hP.model() != hS.model()) {
        throw Error(ErrorKind::DimensionMismatch, "problem and source Hamiltonians differ in size or model");
    }
    if (!(T >= 0.0) || !std::isfinite(T)) throw Error(ErrorKind::InvalidArgument, "T must be a finite value >= 0");

    ProblemVector b;
    b.n = hP.n();
    b.model = hP.model();
    b.T = T;
    std::vector<double> values;
    for (const CouplingKey& key : coupling_index(b.n, b.model)) {
        const double p = hP.coefficient(key);
        const double s = hS.coefficient(key);
        const bool p_zero = std::abs(p) <= zero_threshold;
        const bool s_zero = std::abs(s) <= zero_threshold;
        if (s_zero && p_zero) continue;
        if (s_zero) {
            throw Error(ErrorKind::IncompatiblePair,
                        "source coupling " + key.str() + " is zero but the problem coupling is not");
        }
        b.index.push_back(key);
        values.push_back(T * p / s);
    }
    if (b.index.empty()) throw Error(ErrorKind::EmptyProblem, "all couplings are zero in both Hamiltonians");
    b.values = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    return b;
}

ProblemVector full_problem_vector(int n, ModelKind model, const Eigen::VectorXd& values, double T) {
    ProblemVector b;
    b.n = n;
    b.model = model;
    b.index = coupling_index(n, model);
    b.T = T;
    if (values.size() != static_cast<Eigen::Index>(b.index.size())) {
        throw Error(ErrorKind::DimensionMismatch, "value count does not match the coupling index");
    }
    b.values = values;
    return b;
}

Norms norms(const Eigen::VectorXd& values) {
    if (values.size() == 0) return {};
    return {values.lpNorm<1>(), values.norm(), values.lpNorm<Eigen::Infinity>()};
}

}  // namespace daqc
