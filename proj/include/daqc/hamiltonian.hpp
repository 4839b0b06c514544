#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace daqc {

enum class Axis { X = 0, Y = 1, Z = 2 };

enum class ModelKind { ZZ, General };

char axis_char(Axis a);
Axis parse_axis(char c);
std::string model_name(ModelKind m);
ModelKind parse_model(const std::string& s);

/// Two-body coupling sigma_i^mu sigma_j^nu with 1-based qubits, i < j.
/// The defaulted ordering is the canonical row order: (i, j), then (mu, nu) row-major.
struct CouplingKey {
    int i = 1;
    int j = 2;
    Axis mu = Axis::Z;
    Axis nu = Axis::Z;

    auto operator<=>(const CouplingKey&) const = default;

    /// "1-2:zz"
    std::string str() const;
};

/// Axis-pair order used for general-model rows; written into every output file.
inline constexpr const char* kAxisPairOrder = "xx,xy,xz,yx,yy,yz,zx,zy,zz";

/// Canonical coupling rows for n qubits. ZZ: n(n-1)/2 keys; General: 9 n(n-1)/2 keys.
std::vector<CouplingKey> coupling_index(int n, ModelKind model);

/// Number of couplings in the full canonical index.
int coupling_count(int n, ModelKind model);

class TwoBodyHamiltonian {
public:
    TwoBodyHamiltonian(int n, ModelKind model);

    int n() const { return n_; }
    ModelKind model() const { return model_; }
    const std::map<CouplingKey, double>& couplings() const { return couplings_; }

    /// Absent keys read as zero.
    double coefficient(const CouplingKey& key) const;

    /// Throws InvalidArgument when the key is out of range or not allowed by the model.
    void set(const CouplingKey& key, double value);

    bool operator==(const TwoBodyHamiltonian&) const = default;

private:
    int n_;
    ModelKind model_;
    std::map<CouplingKey, double> couplings_;
};

/// Throws InvalidArgument if the key is not a valid coupling for (n, model).
void validate_key(const CouplingKey& key, int n, ModelKind model);

/// b = T * hP / hS over the retained couplings.
struct ProblemVector {
    int n = 0;
    ModelKind model = ModelKind::ZZ;
    std::vector<CouplingKey> index;
    Eigen::VectorXd values;
    double T = 1.0;

    int dim() const { return static_cast<int>(index.size()); }
};

/// Couplings where both coefficients are zero (|c| <= zero_threshold) are removed;
/// a zero source coefficient paired with a nonzero target raises IncompatiblePair.
ProblemVector build_problem_vector(const TwoBodyHamiltonian& hP, const TwoBodyHamiltonian& hS,
                                   double T, double zero_threshold = 0.0);

/// Problem vector over the full canonical index for the given values.
ProblemVector full_problem_vector(int n, ModelKind model, const Eigen::VectorXd& values,
                                  double T = 1.0);

struct Norms {
    double l1 = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
};

Norms norms(const Eigen::VectorXd& values);
inline Norms norms(const ProblemVector& b) { return norms(b.values); }

}  // namespace daqc
