#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "daqc/hamiltonian.hpp"

namespace daqc {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli parse_pauli(char c);

/// Effective sign picked up by sigma^axis when conjugated by `gate`.
int single_sign(Pauli gate, Axis axis);

/// Single-qubit gates applied around one analog block; qubit 1 first.
struct GateLayer {
    std::vector<Pauli> gates;

    int size() const { return static_cast<int>(gates.size()); }
    std::string str() const;
    static GateLayer parse(const std::string& s);
    static GateLayer identity(int n) { return {std::vector<Pauli>(static_cast<std::size_t>(n), Pauli::I)}; }

    auto operator<=>(const GateLayer&) const = default;
};

int layer_sign(const GateLayer& layer, const CouplingKey& c);

using SignEntries = Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Default column cap: 4^7 layers.
inline constexpr std::size_t kDefaultColumnCap = 16384;

/// Rows are couplings, columns are gate layers, entries are the effective signs.
struct SignMatrix {
    int n = 0;
    ModelKind model = ModelKind::ZZ;
    std::vector<CouplingKey> index;
    std::vector<GateLayer> layers;
    SignEntries entries;

    int rows() const { return static_cast<int>(entries.rows()); }
    int cols() const { return static_cast<int>(entries.cols()); }
    Eigen::MatrixXd to_dense() const { return entries.cast<double>(); }
};

/// ZZ: {I,X}^n with I on qubit 1 (2^(n-1) layers). General: {I,X,Y,Z}^n (4^n layers).
/// Lexicographic, identity first.
std::vector<GateLayer> enumerate_layers(int n, ModelKind model);

/// Number of layers enumerate_layers would return, saturating instead of overflowing.
std::size_t layer_count(int n, ModelKind model);

SignMatrix build_sign_matrix(int n, ModelKind model, std::size_t column_cap = kDefaultColumnCap);

/// New-coupling sign blocks of the last recursion step, one per gate on the new qubit
/// (I, X for ZZ; I, X, Y, Z for General), plus the (n-1)-qubit matrix they extend.
struct RecursionBlocks {
    std::vector<SignEntries> blocks;
    std::vector<CouplingKey> new_couplings;
    SignMatrix base;
};

struct RecursiveBuild {
    SignMatrix matrix;
    RecursionBlocks blocks;
};

/// Builds M(n) from M(2) by repeatedly stacking [L L' ...; M M ...]; rows of the result
/// are permuted back into canonical order.
RecursiveBuild build_sign_matrix_recursive(int n, ModelKind model,
                                           std::size_t column_cap = kDefaultColumnCap);

/// Keeps the given rows (in M's row order) and merges duplicate columns, first occurrence wins.
SignMatrix restrict_rows(const SignMatrix& M, const std::vector<CouplingKey>& kept);

/// True when both matrices hold the same columns with the same multiplicities.
bool same_column_multiset(const SignEntries& a, const SignEntries& b);

}  // namespace daqc
