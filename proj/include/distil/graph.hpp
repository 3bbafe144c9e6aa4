#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "distil/bits.hpp"

#include <nlohmann/json.hpp>

namespace distil {

// Simple graph on n_out + k_in vertices with a designated set of input
// vertices. Vertices are 0-based; adjacency rows are bit masks.
struct NKGraph {
    int n_out = 0;
    int k_in = 0;
    std::vector<u32> adj;
    u32 input_mask = 0;

    int order() const { return n_out + k_in; }

    static NKGraph empty(int n, int k) {
        NKGraph g;
        g.n_out = n;
        g.k_in = k;
        g.adj.assign(n + k, 0);
        g.input_mask = k > 0 ? (bit_mask(k) << n) : 0; // inputs default to last k vertices
        return g;
    }

    bool is_input(int v) const { return (input_mask >> v) & 1; }
    bool has_edge(int u, int v) const { return (adj[u] >> v) & 1; }

    void toggle_edge(int u, int v) {
        adj[u] ^= u32{1} << v;
        adj[v] ^= u32{1} << u;
    }
    void set_edge(int u, int v) {
        adj[u] |= u32{1} << v;
        adj[v] |= u32{1} << u;
    }

    std::vector<int> inputs() const {
        std::vector<int> r;
        for (int v = 0; v < order(); ++v)
            if (is_input(v)) r.push_back(v);
        return r;
    }
    std::vector<int> outputs() const {
        std::vector<int> r;
        for (int v = 0; v < order(); ++v)
            if (!is_input(v)) r.push_back(v);
        return r;
    }

    void check_vertex(int v) const {
        if (v < 0 || v >= order()) throw std::invalid_argument("vertex out of range");
    }

    bool operator==(const NKGraph&) const = default;
};

// Toggles all edges inside the neighborhood of v.
inline NKGraph local_complement(const NKGraph& g, int v) {
    g.check_vertex(v);
    NKGraph r = g;
    u32 nb = g.adj[v];
    for (int u = 0; u < g.order(); ++u) {
        if (!((nb >> u) & 1)) continue;
        r.adj[u] ^= nb & ~(u32{1} << u);
    }
    return r;
}

// Toggles the edge between two input vertices.
inline NKGraph edge_flip(const NKGraph& g, int u, int v) {
    g.check_vertex(u);
    g.check_vertex(v);
    if (u == v || !g.is_input(u) || !g.is_input(v))
        throw std::invalid_argument("edge_flip: both vertices must be distinct inputs");
    NKGraph r = g;
    r.toggle_edge(u, v);
    return r;
}

// Relabels vertices by perm (new id of vertex v is perm[v]); the input /
// output partition must be preserved.
inline NKGraph apply_nk_permutation(const NKGraph& g, const std::vector<int>& perm) {
    if ((int)perm.size() != g.order()) throw std::invalid_argument("permutation size mismatch");
    for (int v = 0; v < g.order(); ++v)
        if (g.is_input(v) != g.is_input(perm[v]))
            throw std::invalid_argument("permutation crosses the input/output partition");
    NKGraph r = NKGraph::empty(g.n_out, g.k_in);
    r.input_mask = g.input_mask;
    for (int v = 0; v < g.order(); ++v)
        for (int u = v + 1; u < g.order(); ++u)
            if (g.has_edge(u, v)) r.set_edge(perm[u], perm[v]);
    return r;
}

inline bool is_connected(const NKGraph& g) {
    if (g.order() == 0) return true;
    u32 seen = 1;
    u32 frontier = 1;
    while (frontier) {
        u32 next = 0;
        for (int v = 0; v < g.order(); ++v)
            if ((frontier >> v) & 1) next |= g.adj[v];
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == bit_mask(g.order());
}

// Row i = neighborhood of the i'th input vertex restricted to the outputs,
// with output columns in the given order.
inline std::vector<u64> codeword_matrix(const NKGraph& g, const std::vector<int>& output_order) {
    std::vector<u64> rows;
    for (int vin : g.inputs()) {
        u64 row = 0;
        for (int c = 0; c < (int)output_order.size(); ++c)
            if (g.has_edge(vin, output_order[c])) row |= u64{1} << c;
        rows.push_back(row);
    }
    return rows;
}

inline bool is_valid_code(const NKGraph& g) {
    auto rows = codeword_matrix(g, g.outputs());
    return gf2_rank(rows) == g.k_in;
}

// Ordering of the output vertices; the first k_in entries are kept, the
// rest measured. Valid iff the RREF of the codeword matrix under this
// column order has pivots in columns 1..k.
using Labeling = std::vector<int>;

inline bool labeling_is_valid(const NKGraph& g, const Labeling& order) {
    auto rows = codeword_matrix(g, order);
    auto pivots = gf2_rref(rows, g.n_out);
    if ((int)pivots.size() != g.k_in) return false;
    for (int i = 0; i < g.k_in; ++i)
        if (pivots[i] != i) return false;
    return true;
}

// Scans output columns left to right, swapping in the earliest later
// column that provides a pivot.
inline Labeling find_valid_labeling(const NKGraph& g) {
    Labeling order = g.outputs();
    auto rows = codeword_matrix(g, order);
    int k = g.k_in;
    for (int r = 0; r < k; ++r) {
        int col = -1;
        for (int c = r; c < g.n_out && col < 0; ++c) {
            for (int rr = r; rr < k; ++rr) {
                if ((rows[rr] >> c) & 1) { col = c; break; }
            }
        }
        if (col < 0) throw std::invalid_argument("find_valid_labeling: code rank below k");
        if (col != r) {
            // swap columns r and col
            for (auto& row : rows) {
                u64 br = (row >> r) & 1, bc = (row >> col) & 1;
                if (br != bc) row ^= (u64{1} << r) | (u64{1} << col);
            }
            std::swap(order[r], order[col]);
        }
        int piv = -1;
        for (int rr = r; rr < k; ++rr)
            if ((rows[rr] >> r) & 1) { piv = rr; break; }
        std::swap(rows[r], rows[piv]);
        for (int rr = 0; rr < k; ++rr)
            if (rr != r && ((rows[rr] >> r) & 1)) rows[rr] ^= rows[r];
    }
    return order;
}

enum class ExtensionKind { Output, Input };

// Output extension: adjoin an output vertex joined to any nonempty subset
// of the existing vertices. Input extension: adjoin an input vertex joined
// to any nonempty subset of the output vertices.
inline std::vector<NKGraph> extend(const NKGraph& g, ExtensionKind kind) {
    int m = g.order();
    if (m + 1 > 20) throw size_limit_error("extend: too many vertices");
    std::vector<NKGraph> out;
    std::vector<int> targets;
    if (kind == ExtensionKind::Output) {
        for (int v = 0; v < m; ++v) targets.push_back(v);
    } else {
        targets = g.outputs();
    }
    u64 subsets = u64{1} << targets.size();
    for (u64 s = 1; s < subsets; ++s) {
        NKGraph h;
        h.n_out = g.n_out + (kind == ExtensionKind::Output ? 1 : 0);
        h.k_in = g.k_in + (kind == ExtensionKind::Input ? 1 : 0);
        h.adj = g.adj;
        h.adj.push_back(0);
        h.input_mask = g.input_mask;
        int nv = m;
        if (kind == ExtensionKind::Input) h.input_mask |= u32{1} << nv;
        for (size_t t = 0; t < targets.size(); ++t)
            if ((s >> t) & 1) h.set_edge(nv, targets[t]);
        out.push_back(std::move(h));
    }
    return out;
}

// ---- graph6 and the JSON file envelope ----

inline std::string to_graph6(const NKGraph& g) {
    int m = g.order();
    if (m > 62) throw size_limit_error("graph6: order > 62 unsupported");
    std::string s;
    s.push_back((char)(m + 63));
    int bits = 0, acc = 0;
    for (int j = 1; j < m; ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++bits == 6) {
                s.push_back((char)(acc + 63));
                bits = 0;
                acc = 0;
            }
        }
    }
    if (bits > 0) s.push_back((char)((acc << (6 - bits)) + 63));
    return s;
}

// Parses the adjacency; the caller assigns the input set.
inline NKGraph from_graph6(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("graph6: empty string");
    size_t pos = 0;
    if (s[0] == 126) throw std::invalid_argument("graph6: order > 62 unsupported");
    int m = s[pos++] - 63;
    if (m < 0 || m > 62) throw std::invalid_argument("graph6: bad order byte");
    NKGraph g = NKGraph::empty(m, 0);
    int bits = 0, acc = 0;
    for (int j = 1; j < m; ++j) {
        for (int i = 0; i < j; ++i) {
            if (bits == 0) {
                if (pos >= s.size()) throw std::invalid_argument("graph6: truncated");
                acc = s[pos++] - 63;
                if (acc < 0 || acc > 63) throw std::invalid_argument("graph6: bad byte");
                bits = 6;
            }
            if ((acc >> (bits - 1)) & 1) g.set_edge(i, j);
            --bits;
        }
    }
    return g;
}

inline nlohmann::json graph_to_json(const NKGraph& g) {
    nlohmann::json j;
    j["graph6"] = to_graph6(g);
    j["inputs"] = g.inputs();
    return j;
}

inline NKGraph graph_from_json(const nlohmann::json& j) {
    NKGraph g = from_graph6(j.at("graph6").get<std::string>());
    auto ins = j.at("inputs").get<std::vector<int>>();
    int m = g.order();
    g.input_mask = 0;
    for (int v : ins) {
        if (v < 0 || v >= m) throw std::invalid_argument("graph json: input index out of range");
        g.input_mask |= u32{1} << v;
    }
    g.k_in = (int)ins.size();
    g.n_out = m - g.k_in;
    if (popcount64(g.input_mask) != g.k_in)
        throw std::invalid_argument("graph json: duplicate input indices");
    return g;
}

} // namespace distil
