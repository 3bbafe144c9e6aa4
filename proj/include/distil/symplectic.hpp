#pragma once

#include <random>

#include "distil/circuit.hpp"
#include "distil/graph.hpp"
#include "distil/pauli.hpp"

namespace distil {

// 2n x 2n GF(2) matrix stored by columns; column i is the image of the
// basis vector e_i (X_1..X_n, Z_1..Z_n).
struct SymplecticMatrix {
    int n = 0;
    std::vector<u64> col;

    static SymplecticMatrix identity(int n) {
        SymplecticMatrix m;
        m.n = n;
        m.col.resize(2 * n);
        for (int i = 0; i < 2 * n; ++i) m.col[i] = u64{1} << i;
        return m;
    }

    u64 apply(u64 v) const {
        u64 r = 0;
        while (v) {
            int i = std::countr_zero(v);
            r ^= col[i];
            v &= v - 1;
        }
        return r;
    }
    PauliVector apply(const PauliVector& v) const { return {n, apply(v.bits)}; }

    bool get(int row, int c) const { return (col[c] >> row) & 1; }
    void set(int row, int c, bool b) {
        if (b) col[c] |= u64{1} << row;
        else col[c] &= ~(u64{1} << row);
    }

    SymplecticMatrix mul(const SymplecticMatrix& rhs) const {
        SymplecticMatrix r;
        r.n = n;
        r.col.resize(2 * n);
        for (int i = 0; i < 2 * n; ++i) r.col[i] = apply(rhs.col[i]);
        return r;
    }

    SymplecticMatrix transpose() const {
        SymplecticMatrix r;
        r.n = n;
        r.col.assign(2 * n, 0);
        for (int c = 0; c < 2 * n; ++c)
            for (int row = 0; row < 2 * n; ++row)
                if (get(row, c)) r.col[row] |= u64{1} << c;
        return r;
    }

    bool operator==(const SymplecticMatrix&) const = default;
};

inline u64 omega_swap(u64 v, int n) {
    u64 x = v & bit_mask(n);
    u64 z = (v >> n) & bit_mask(n);
    return (x << n) | z;
}

inline bool is_symplectic(const SymplecticMatrix& m) {
    // M^T Omega M = Omega, i.e. omega(col_i, col_j) = omega(e_i, e_j).
    int n = m.n;
    for (int i = 0; i < 2 * n; ++i) {
        for (int j = i; j < 2 * n; ++j) {
            int want = (j == i + n || i == j + n) ? 1 : 0;
            PauliVector a{n, m.col[i]}, b{n, m.col[j]};
            if (symplectic_form(a, b) != want) return false;
        }
    }
    return true;
}

// For symplectic M the inverse is Omega M^T Omega (over GF(2)).
inline SymplecticMatrix invert(const SymplecticMatrix& m) {
    if (!is_symplectic(m)) throw std::invalid_argument("invert: matrix is not symplectic");
    int n = m.n;
    SymplecticMatrix t = m.transpose();
    SymplecticMatrix r;
    r.n = n;
    r.col.resize(2 * n);
    for (int i = 0; i < 2 * n; ++i) {
        int src = (i + n) % (2 * n);
        r.col[i] = omega_swap(t.col[src], n);
    }
    return r;
}

struct CliffordGate {
    enum Kind { H, S, CNOT, CZ } kind;
    int i = 0;
    int j = -1;
};

// The symplectic matrix of conjugation by a Clifford generator.
inline SymplecticMatrix gate_generator(const CliffordGate& g, int n) {
    auto check = [&](int q) {
        if (q < 0 || q >= n) throw std::invalid_argument("gate_generator: index out of range");
    };
    SymplecticMatrix m = SymplecticMatrix::identity(n);
    switch (g.kind) {
        case CliffordGate::H:
            check(g.i);
            std::swap(m.col[g.i], m.col[g.i + n]);
            break;
        case CliffordGate::S:
            check(g.i);
            m.col[g.i] ^= u64{1} << (g.i + n); // X -> Y, Z fixed
            break;
        case CliffordGate::CNOT:
            check(g.i);
            check(g.j);
            if (g.i == g.j) throw std::invalid_argument("gate_generator: i == j");
            m.col[g.i] ^= u64{1} << g.j;         // X_c -> X_c X_t
            m.col[g.j + n] ^= u64{1} << (g.i + n); // Z_t -> Z_c Z_t
            break;
        case CliffordGate::CZ:
            check(g.i);
            check(g.j);
            if (g.i == g.j) throw std::invalid_argument("gate_generator: i == j");
            m.col[g.i] ^= u64{1} << (g.j + n); // X_i -> X_i Z_j
            m.col[g.j] ^= u64{1} << (g.i + n); // X_j -> X_j Z_i
            break;
    }
    return m;
}

// Ordered product of gate generators; measurements are skipped.
inline SymplecticMatrix circuit_to_symplectic(const Circuit& c) {
    SymplecticMatrix m = SymplecticMatrix::identity(c.n);
    for (const auto& g : c.gates) {
        CliffordGate cg;
        switch (g.type) {
            case GateType::CZ: cg = {CliffordGate::CZ, g.a, g.b}; break;
            case GateType::CNOT: cg = {CliffordGate::CNOT, g.a, g.b}; break;
            case GateType::H: cg = {CliffordGate::H, g.a}; break;
            case GateType::MZ: continue;
        }
        m = gate_generator(cg, c.n).mul(m);
    }
    return m;
}

inline SymplecticMatrix random_symplectic(int n, u64 seed, int length = 0) {
    std::mt19937_64 rng(seed);
    if (length == 0) length = 10 * n + 20;
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<int> qubit(0, n - 1);
    SymplecticMatrix m = SymplecticMatrix::identity(n);
    for (int t = 0; t < length; ++t) {
        CliffordGate g;
        g.kind = (CliffordGate::Kind)kind(rng);
        g.i = qubit(rng);
        if (g.kind == CliffordGate::CNOT || g.kind == CliffordGate::CZ) {
            do { g.j = qubit(rng); } while (g.j == g.i && n > 1);
            if (n == 1) { g.kind = CliffordGate::H; g.j = -1; }
        }
        m = gate_generator(g, n).mul(m);
    }
    return m;
}

// Blocks of the Theorem-1 style matrix [[A, B'], [0, A^T]] obtained from a
// graph and a valid labeling. Qubit i is output vertex labeling[i]; the
// CNOT matrix T comes from the RREF of the codeword matrix, the blocks
// Q, R, S from the output-induced adjacency.
struct GraphBlocks {
    int n = 0, k = 0;
    std::vector<u64> T; // (n-k) x k, rows as bit masks over k columns
    std::vector<u64> Q; // k x k
    std::vector<u64> R; // (n-k) x k
    std::vector<u64> S; // (n-k) x (n-k)
};

inline GraphBlocks graph_blocks(const NKGraph& g, const Labeling& order) {
    if (!labeling_is_valid(g, order))
        throw std::invalid_argument("graph_blocks: invalid labeling");
    int n = g.n_out, k = g.k_in;
    GraphBlocks b;
    b.n = n;
    b.k = k;
    auto rows = codeword_matrix(g, order);
    gf2_rref(rows, n);
    // T_{i,j} = 1 iff RREF row j has a 1 in measured column k+i.
    b.T.assign(n - k, 0);
    for (int i = 0; i < n - k; ++i)
        for (int j = 0; j < k; ++j)
            if ((rows[j] >> (k + i)) & 1) b.T[i] |= u64{1} << j;
    b.Q.assign(k, 0);
    b.R.assign(n - k, 0);
    b.S.assign(n - k, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!g.has_edge(order[i], order[j])) continue;
            if (i < k && j < k) b.Q[i] |= u64{1} << j;
            else if (i >= k && j < k) b.R[i - k] |= u64{1} << j;
            else if (i >= k && j >= k) b.S[i - k] |= u64{1} << (j - k);
        }
    }
    return b;
}

namespace detail {
inline u64 matvec_rows(const std::vector<u64>& rows, u64 v) {
    u64 r = 0;
    for (size_t i = 0; i < rows.size(); ++i)
        r |= u64(popcount64(rows[i] & v) & 1) << i;
    return r;
}
} // namespace detail

// Assembles [[A, B'], [0, A^T]] with A = [[I_k, 0], [T, I_{n-k}]] and
// B' = [[Q, R^T], [R + TQ, S + TR^T]]; with zero_q the Q block is dropped,
// which keeps the distillation statistics (Theorem-1 normal form).
inline SymplecticMatrix assemble_block_matrix(const GraphBlocks& b, bool zero_q) {
    int n = b.n, k = b.k;
    std::vector<u64> Q = b.Q;
    if (zero_q) Q.assign(k, 0);
    SymplecticMatrix m;
    m.n = n;
    m.col.assign(2 * n, 0);
    auto set = [&](int row, int c) { m.col[c] |= u64{1} << row; };
    // A columns (X part), A^T in the Z block.
    for (int j = 0; j < n; ++j) {
        set(j, j);
        set(j + n, j + n);
    }
    for (int i = 0; i < n - k; ++i) {
        for (int j = 0; j < k; ++j) {
            if ((b.T[i] >> j) & 1) {
                set(k + i, j);          // A: T below I_k
                set(j + n, k + i + n);  // A^T: T^T above I_{n-k}
            }
        }
    }
    // B' in the upper-right block: rows are x components, columns n..2n-1.
    for (int j = 0; j < k; ++j) {
        // column j of B' is [Q col j ; (R + TQ) col j]
        u64 qcol = 0;
        for (int r = 0; r < k; ++r) qcol |= u64((Q[r] >> j) & 1) << r;
        for (int i = 0; i < k; ++i)
            if ((Q[i] >> j) & 1) set(i, n + j);
        for (int i = 0; i < n - k; ++i) {
            bool rij = (b.R[i] >> j) & 1;
            bool tq = popcount64(b.T[i] & qcol) & 1;
            if (rij ^ tq) set(k + i, n + j);
        }
    }
    for (int j = 0; j < n - k; ++j) {
        // column k+j of B' is [R^T col j ; (S + TR^T) col j]; col j of R^T is row j of R
        for (int i = 0; i < k; ++i)
            if ((b.R[j] >> i) & 1) set(i, n + k + j);
        for (int i = 0; i < n - k; ++i) {
            bool sij = (b.S[i] >> j) & 1;
            bool trt = popcount64(b.T[i] & b.R[j]) & 1;
            if (sij ^ trt) set(k + i, n + k + j);
        }
    }
    return m;
}

inline SymplecticMatrix build_from_graph(const NKGraph& g, const Labeling& order, bool zero_q = true) {
    return assemble_block_matrix(graph_blocks(g, order), zero_q);
}

} // namespace distil
