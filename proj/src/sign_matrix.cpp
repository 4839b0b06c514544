#include "daqc/sign_matrix.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <string>
#include <unordered_set>

#include "daqc/error.hpp"

namespace daqc {

namespace {

std::string column_bytes(const SignEntries& m, Eigen::Index c) {
    return {reinterpret_cast<const char*>(m.col(c).data()), static_cast<std::size_t>(m.rows())};
}

std::vector<Pauli> gate_alphabet(ModelKind model) {
    if (model == ModelKind::ZZ) return {Pauli::I, Pauli::X};
    return {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
}

void check_cap(int n, ModelKind model, std::size_t cap) {
    const std::size_t count = layer_count(n, model);
    if (count > cap) {
        throw Error(ErrorKind::SizeCapExceeded, std::to_string(count) + " layers for n=" + std::to_string(n) +
                                                    " exceed the column cap " + std::to_string(cap));
    }
}

// Per-qubit axis signs (x, y, z) of column k, read back from the coupling rows of M.
// In the ZZ model only the z component is meaningful and qubit 1 carries I.
std::vector<std::array<int, 3>> qubit_signs_from_matrix(const SignMatrix& M,
                                                        const std::map<CouplingKey, int>& row_of,
                                                        Eigen::Index k) {
    std::vector<std::array<int, 3>> out(static_cast<std::size_t>(M.n), {1, 1, 1});
    if (M.model == ModelKind::ZZ) {
        for (int q = 2; q <= M.n; ++q) {
            out[static_cast<std::size_t>(q - 1)][2] = M.entries(row_of.at({1, q, Axis::Z, Axis::Z}), k);
        }
        return out;
    }
    // Rows (1,q,mu,nu) hold u1(mu) * uq(nu). Valid sign triples have an even number of -1,
    // so the product of a recovered triple fixes its overall sign.
    auto entry = [&](int q, Axis mu, Axis nu) { return static_cast<int>(M.entries(row_of.at({1, q, mu, nu}), k)); };
    std::array<int, 3> u1{};
    for (Axis mu : {Axis::X, Axis::Y, Axis::Z}) u1[static_cast<int>(mu)] = entry(2, mu, Axis::X);
    const int s1 = u1[0] * u1[1] * u1[2];
    for (int& v : u1) v *= s1;
    out[0] = u1;
    for (int q = 2; q <= M.n; ++q) {
        std::array<int, 3> uq{};
        for (Axis nu : {Axis::X, Axis::Y, Axis::Z}) uq[static_cast<int>(nu)] = entry(q, Axis::X, nu) * u1[0];
        out[static_cast<std::size_t>(q - 1)] = uq;
    }
    return out;
}

SignMatrix base_matrix(ModelKind model) { return build_sign_matrix(2, model); }

}  // namespace

char pauli_char(Pauli p) {
    constexpr char chars[] = {'I', 'X', 'Y', 'Z'};
    return chars[static_cast<int>(p)];
}

Pauli parse_pauli(char c) {
    switch (c) {
        case 'I': case 'i': return Pauli::I;
        case 'X': case 'x': return Pauli::X;
        case 'Y': case 'y': return Pauli::Y;
        case 'Z': case 'z': return Pauli::Z;
        default: break;
    }
    throw Error(ErrorKind::InvalidArgument, std::string("unknown gate '") + c + "'");
}

int single_sign(Pauli gate, Axis axis) {
    if (gate == Pauli::I) return 1;
    return static_cast<int>(gate) - 1 == static_cast<int>(axis) ? 1 : -1;
}

std::string GateLayer::str() const {
    std::string s;
    s.reserve(gates.size());
    for (Pauli p : gates) s.push_back(pauli_char(p));
    return s;
}

GateLayer GateLayer::parse(const std::string& s) {
    GateLayer layer;
    layer.gates.reserve(s.size());
    for (char c : s) layer.gates.push_back(parse_pauli(c));
    return layer;
}

int layer_sign(const GateLayer& layer, const CouplingKey& c) {
    if (layer.size() < c.j) {
        throw Error(ErrorKind::DimensionMismatch, "layer " + layer.str() + " is shorter than coupling " + c.str());
    }
    return single_sign(layer.gates[static_cast<std::size_t>(c.i - 1)], c.mu) *
           single_sign(layer.gates[static_cast<std::size_t>(c.j - 1)], c.nu);
}

std::size_t layer_count(int n, ModelKind model) {
    const int bits = model == ModelKind::ZZ ? n - 1 : 2 * n;
    if (bits >= std::numeric_limits<std::size_t>::digits) return std::numeric_limits<std::size_t>::max();
    return std::size_t{1} << bits;
}

std::vector<GateLayer> enumerate_layers(int n, ModelKind model) {
    if (n < 2) throw Error(ErrorKind::InvalidSize, "need at least 2 qubits, got " + std::to_string(n));
    const std::vector<Pauli> alphabet = gate_alphabet(model);
    const std::size_t base = alphabet.size();
    const int free_qubits = model == ModelKind::ZZ ? n - 1 : n;
    const std::size_t count = layer_count(n, model);

    std::vector<GateLayer> layers;
    layers.reserve(count);
    for (std::size_t code = 0; code < count; ++code) {
        GateLayer layer = GateLayer::identity(n);
        std::size_t rest = code;
        for (int q = n - 1; q >= n - free_qubits; --q) {
            layer.gates[static_cast<std::size_t>(q)] = alphabet[rest % base];
            rest /= base;
        }
        layers.push_back(std::move(layer));
    }
    return layers;
}

SignMatrix build_sign_matrix(int n, ModelKind model, std::size_t column_cap) {
    if (n < 2) throw Error(ErrorKind::InvalidSize, "need at least 2 qubits, got " + std::to_string(n));
    check_cap(n, model, column_cap);
    SignMatrix M;
    M.n = n;
    M.model = model;
    M.index = coupling_index(n, model);
    M.layers = enumerate_layers(n, model);
    M.entries.resize(static_cast<Eigen::Index>(M.index.size()), static_cast<Eigen::Index>(M.layers.size()));
    for (Eigen::Index k = 0; k < M.entries.cols(); ++k) {
        for (Eigen::Index r = 0; r < M.entries.rows(); ++r) {
            M.entries(r, k) = static_cast<std::int8_t>(layer_sign(M.layers[static_cast<std::size_t>(k)],
                                                                  M.index[static_cast<std::size_t>(r)]));
        }
    }
    return M;
}

RecursiveBuild build_sign_matrix_recursive(int n, ModelKind model, std::size_t column_cap) {
    if (n < 3) throw Error(ErrorKind::InvalidSize, "recursive construction starts at n=3, got " + std::to_string(n));
    check_cap(n, model, column_cap);

    const std::vector<Pauli> alphabet = gate_alphabet(model);
    SignMatrix current = base_matrix(model);
    RecursionBlocks last;

    for (int m = 3; m <= n; ++m) {
        std::map<CouplingKey, int> row_of;
        for (std::size_t r = 0; r < current.index.size(); ++r) row_of[current.index[r]] = static_cast<int>(r);

        // Couplings touching the new qubit m, in canonical order.
        std::vector<CouplingKey> fresh;
        for (const CouplingKey& key : coupling_index(m, model))
            if (key.j == m) fresh.push_back(key);

        const Eigen::Index base_cols = current.entries.cols();
        std::vector<std::vector<std::array<int, 3>>> signs(static_cast<std::size_t>(base_cols));
        for (Eigen::Index k = 0; k < base_cols; ++k) signs[static_cast<std::size_t>(k)] = qubit_signs_from_matrix(current, row_of, k);

        std::vector<SignEntries> blocks;
        for (Pauli g : alphabet) {
            SignEntries L(static_cast<Eigen::Index>(fresh.size()), base_cols);
            for (Eigen::Index k = 0; k < base_cols; ++k) {
                for (std::size_t r = 0; r < fresh.size(); ++r) {
                    const CouplingKey& key = fresh[r];
                    const int old_sign = signs[static_cast<std::size_t>(k)][static_cast<std::size_t>(key.i - 1)]
                                              [static_cast<std::size_t>(key.mu)];
                    L(static_cast<Eigen::Index>(r), k) = static_cast<std::int8_t>(old_sign * single_sign(g, key.nu));
                }
            }
            blocks.push_back(std::move(L));
        }

        // Stack [L_g ...; M M ...] and permute rows back into canonical order.
        SignMatrix next;
        next.n = m;
        next.model = model;
        next.index = coupling_index(m, model);
        const auto fresh_rows = static_cast<Eigen::Index>(fresh.size());
        const Eigen::Index old_rows = current.entries.rows();
        SignEntries stacked(fresh_rows + old_rows, base_cols * static_cast<Eigen::Index>(alphabet.size()));
        for (std::size_t g = 0; g < alphabet.size(); ++g) {
            const Eigen::Index c0 = base_cols * static_cast<Eigen::Index>(g);
            stacked.block(0, c0, fresh_rows, base_cols) = blocks[g];
            stacked.block(fresh_rows, c0, old_rows, base_cols) = current.entries;
            for (const GateLayer& layer : current.layers) {
                GateLayer grown = layer;
                grown.gates.push_back(alphabet[g]);
                next.layers.push_back(std::move(grown));
            }
        }
        std::map<CouplingKey, Eigen::Index> stacked_row;
        for (std::size_t r = 0; r < fresh.size(); ++r) stacked_row[fresh[r]] = static_cast<Eigen::Index>(r);
        for (std::size_t r = 0; r < current.index.size(); ++r)
            stacked_row[current.index[r]] = fresh_rows + static_cast<Eigen::Index>(r);
        next.entries.resize(stacked.rows(), stacked.cols());
        for (std::size_t r = 0; r < next.index.size(); ++r)
            next.entries.row(static_cast<Eigen::Index>(r)) = stacked.row(stacked_row.at(next.index[r]));

        last.blocks = std::move(blocks);
        last.new_couplings = std::move(fresh);
        last.base = std::move(current);
        current = std::move(next);
    }
    return {std::move(current), std::move(last)};
}

SignMatrix restrict_rows(const SignMatrix& M, const std::vector<CouplingKey>& kept) {
    if (kept.empty()) throw Error(ErrorKind::EmptySelection, "no rows selected");
    std::vector<bool> keep(M.index.size(), false);
    for (const CouplingKey& key : kept) {
        auto it = std::lower_bound(M.index.begin(), M.index.end(), key);
        if (it == M.index.end() || *it != key) {
            throw Error(ErrorKind::InvalidArgument, "coupling " + key.str() + " is not a row of the sign matrix");
        }
        keep[static_cast<std::size_t>(it - M.index.begin())] = true;
    }

    SignMatrix out;
    out.n = M.n;
    out.model = M.model;
    std::vector<Eigen::Index> rows;
    for (std::size_t r = 0; r < keep.size(); ++r) {
        if (!keep[r]) continue;
        out.index.push_back(M.index[r]);
        rows.push_back(static_cast<Eigen::Index>(r));
    }
    SignEntries reduced(static_cast<Eigen::Index>(rows.size()), M.entries.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) reduced.row(static_cast<Eigen::Index>(r)) = M.entries.row(rows[r]);

    std::unordered_set<std::string> seen;
    std::vector<Eigen::Index> cols;
    for (Eigen::Index c = 0; c < reduced.cols(); ++c) {
        if (seen.insert(column_bytes(reduced, c)).second) cols.push_back(c);
    }
    out.entries.resize(reduced.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        out.entries.col(static_cast<Eigen::Index>(c)) = reduced.col(cols[c]);
        out.layers.push_back(M.layers[static_cast<std::size_t>(cols[c])]);
    }
    return out;
}

bool same_column_multiset(const SignEntries& a, const SignEntries& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    std::vector<std::string> ca, cb;
    for (Eigen::Index c = 0; c < a.cols(); ++c) ca.push_back(column_bytes(a, c));
    for (Eigen::Index c = 0; c < b.cols(); ++c) cb.push_back(column_bytes(b, c));
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    return ca == cb;
}

}  // namespace daqc
