#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "distil/bits.hpp"

#include <nlohmann/json.hpp>

namespace distil {

enum class GateType { CZ, CNOT, H, MZ };

struct Gate {
    GateType type;
    int a = 0; // CZ: lower qubit / CNOT: control / H,MZ: qubit
    int b = -1; // CZ: other qubit / CNOT: target

    bool two_qubit() const { return type == GateType::CZ || type == GateType::CNOT; }
    bool touches(int q) const { return a == q || (two_qubit() && b == q); }
    bool operator==(const Gate&) const = default;
};

inline Gate cz(int i, int j) { return {GateType::CZ, std::min(i, j), std::max(i, j)}; }
inline Gate cnot(int c, int t) { return {GateType::CNOT, c, t}; }
inline Gate hadamard(int q) { return {GateType::H, q}; }
inline Gate measure_z(int q) { return {GateType::MZ, q}; }

// One qubit per pair; the first `keep` qubits survive the protocol.
struct Circuit {
    int n = 0;
    int keep = 0;
    std::vector<Gate> gates;

    std::vector<int> measured_qubits() const {
        std::vector<int> v;
        for (const auto& g : gates)
            if (g.type == GateType::MZ) v.push_back(g.a);
        return v;
    }

    // Each measured qubit is measured exactly once, after all gates touching it.
    void validate() const {
        std::vector<int> mz(n, -1);
        for (int i = 0; i < (int)gates.size(); ++i) {
            const auto& g = gates[i];
            int hi = g.two_qubit() ? std::max(g.a, g.b) : g.a;
            if (g.a < 0 || hi >= n || (g.two_qubit() && g.a == g.b))
                throw std::invalid_argument("circuit: bad qubit index");
            if (g.type == GateType::MZ) {
                if (mz[g.a] >= 0) throw std::invalid_argument("circuit: qubit measured twice");
                mz[g.a] = i;
            } else {
                if (mz[g.a] >= 0 || (g.two_qubit() && mz[g.b] >= 0))
                    throw std::invalid_argument("circuit: gate after measurement");
            }
        }
        for (int q = keep; q < n; ++q)
            if (mz[q] < 0) throw std::invalid_argument("circuit: unmeasured non-keep qubit");
        for (int q = 0; q < keep; ++q)
            if (mz[q] >= 0) throw std::invalid_argument("circuit: keep qubit measured");
    }
};

// Pairwise commutation of gates in the CZ/CNOT/H alphabet.
inline bool gates_commute(const Gate& g, const Gate& h) {
    auto shares = [&](int q) { return h.touches(q); };
    bool shared = shares(g.a) || (g.two_qubit() && shares(g.b));
    if (!shared) return true;
    if (g.type == GateType::H || h.type == GateType::H ||
        g.type == GateType::MZ || h.type == GateType::MZ)
        return false;
    if (g.type == GateType::CZ && h.type == GateType::CZ) return true;
    auto cnot_cz = [](const Gate& cn, const Gate& czg) {
        bool target_in = czg.a == cn.b || czg.b == cn.b;
        bool control_in = czg.a == cn.a || czg.b == cn.a;
        return !target_in || control_in;
    };
    if (g.type == GateType::CNOT && h.type == GateType::CZ) return cnot_cz(g, h);
    if (g.type == GateType::CZ && h.type == GateType::CNOT) return cnot_cz(h, g);
    // CNOT vs CNOT: clash only when one's target is the other's control.
    return g.b != h.a && h.b != g.a;
}

namespace detail {

// Misra & Gries edge coloring of a simple graph; at most max_degree+1 colors.
inline std::vector<int> misra_gries_edge_coloring(int nv, const std::vector<std::pair<int, int>>& edges) {
    int maxdeg = 0;
    std::vector<int> deg(nv, 0);
    for (auto& [u, v] : edges) { ++deg[u]; ++deg[v]; }
    for (int d : deg) maxdeg = std::max(maxdeg, d);
    int ncolors = std::max(1, maxdeg + 1);
    // col[v][c] = edge index colored c at v, or -1
    std::vector<std::vector<int>> col(nv, std::vector<int>(ncolors, -1));
    std::vector<int> ecolor(edges.size(), -1);

    auto free_color = [&](int v) {
        for (int c = 0; c < ncolors; ++c)
            if (col[v][c] < 0) return c;
        throw std::logic_error("misra-gries: no free color");
    };
    auto other_end = [&](int e, int v) {
        return edges[e].first == v ? edges[e].second : edges[e].first;
    };
    auto uncolor = [&](int e) {
        col[edges[e].first][ecolor[e]] = -1;
        col[edges[e].second][ecolor[e]] = -1;
        ecolor[e] = -1;
    };
    auto set_color = [&](int e, int cc) {
        ecolor[e] = cc;
        col[edges[e].first][cc] = e;
        col[edges[e].second][cc] = e;
    };

    for (int e = 0; e < (int)edges.size(); ++e) {
        int u = edges[e].first;
        // Maximal fan of u starting at the uncolored edge e.
        std::vector<int> fan{e};
        std::vector<bool> used(edges.size(), false);
        used[e] = true;
        for (;;) {
            int tail = other_end(fan.back(), u);
            int want = free_color(tail);
            int next = col[u][want];
            if (next < 0 || used[next]) break;
            used[next] = true;
            fan.push_back(next);
        }
        int c = free_color(u);
        int d = free_color(other_end(fan.back(), u));
        if (c != d && col[u][d] >= 0) {
            // Collect the cd-path from u (alternating d, c, d, ...), then flip it.
            std::vector<int> path;
            int v = u, want = d;
            while (col[v][want] >= 0) {
                int pe = col[v][want];
                path.push_back(pe);
                v = other_end(pe, v);
                want = (want == d ? c : d);
            }
            for (int pe : path) uncolor(pe);
            for (size_t i = 0; i < path.size(); ++i)
                set_color(path[i], (i % 2 == 0) ? c : d);
        }
        // First fan vertex with d now free; rotate the prefix onto it.
        size_t w = fan.size();
        for (size_t i = 0; i < fan.size(); ++i) {
            if (col[other_end(fan[i], u)][d] < 0) { w = i; break; }
        }
        if (w == fan.size()) throw std::logic_error("misra-gries: fan invariant broken");
        for (size_t i = 0; i < w; ++i) {
            int cc = ecolor[fan[i + 1]];
            uncolor(fan[i + 1]);
            set_color(fan[i], cc);
        }
        set_color(fan[w], d);
    }
    return ecolor;
}

inline bool coloring_is_proper(int nv, const std::vector<std::pair<int, int>>& edges,
                               const std::vector<int>& ecolor) {
    std::vector<std::vector<int>> seen(nv);
    for (int e = 0; e < (int)edges.size(); ++e) {
        if (ecolor[e] < 0) return false;
        for (int v : {edges[e].first, edges[e].second}) {
            for (int c : seen[v])
                if (c == ecolor[e]) return false;
            seen[v].push_back(ecolor[e]);
        }
    }
    return true;
}

struct DepthProblem {
    std::vector<Gate> gs; // schedulable gates (two-qubit and H)
    std::vector<u32> qmask;
    std::vector<std::vector<int>> preds;

    explicit DepthProblem(const Circuit& c) {
        for (const auto& g : c.gates)
            if (g.type != GateType::MZ) gs.push_back(g);
        qmask.resize(gs.size());
        preds.resize(gs.size());
        for (size_t i = 0; i < gs.size(); ++i) {
            qmask[i] = u32{1} << gs[i].a;
            if (gs[i].two_qubit()) qmask[i] |= u32{1} << gs[i].b;
            for (size_t j = 0; j < i; ++j)
                if ((qmask[i] & qmask[j]) && !gates_commute(gs[j], gs[i]))
                    preds[i].push_back((int)j);
        }
    }

    int lower_bound(int nq) const {
        std::vector<int> load(nq, 0), dist(gs.size(), 1);
        int lb = 0;
        for (size_t i = 0; i < gs.size(); ++i) {
            for (int q = 0; q < nq; ++q)
                if (qmask[i] & (u32{1} << q)) lb = std::max(lb, ++load[q]);
            for (int p : preds[i]) dist[i] = std::max(dist[i], dist[p] + 1);
            lb = std::max(lb, dist[i]);
        }
        return lb;
    }

    // Greedy list schedule in program order; returns the number of layers.
    int greedy(std::vector<int>* out_layer = nullptr) const {
        std::vector<u32> busy;
        std::vector<int> layer(gs.size());
        for (size_t i = 0; i < gs.size(); ++i) {
            int lo = 0;
            for (int p : preds[i]) lo = std::max(lo, layer[p] + 1);
            while (true) {
                if (lo == (int)busy.size()) busy.push_back(0);
                if (!(busy[lo] & qmask[i])) break;
                ++lo;
            }
            busy[lo] |= qmask[i];
            layer[i] = lo;
        }
        if (out_layer) *out_layer = (int)busy.size();
        return (int)busy.size();
    }

    bool dfs(size_t i, int max_layers, std::vector<u32>& busy,
             std::vector<int>& layer, i64& nodes) const {
        if (i == gs.size()) return true;
        if (--nodes < 0) throw size_limit_error("depth search budget exceeded");
        int lo = 0;
        for (int p : preds[i]) lo = std::max(lo, layer[p] + 1);
        for (int L = lo; L < max_layers; ++L) {
            if (busy[L] & qmask[i]) continue;
            busy[L] |= qmask[i];
            layer[i] = L;
            if (dfs(i + 1, max_layers, busy, layer, nodes)) return true;
            busy[L] &= ~qmask[i];
        }
        return false;
    }
};

} // namespace detail

struct Metrics {
    int two_qubit_count = 0;
    int depth = 0;
    bool depth_exact = true;
    int keep_gate_count = 0;
};

// Depth is the minimum number of layers for the two-qubit and Hadamard
// gates, where gates may reorder only when they commute. Exact via
// branch and bound for small circuits; otherwise the greedy schedule
// (which achieves chromatic-index layering on blocks of commuting
// two-qubit gates, bounded by Misra-Gries at Delta+1).
inline Metrics metrics(const Circuit& c, int exact_gate_limit = 20) {
    Metrics m;
    for (const auto& g : c.gates) {
        if (!g.two_qubit()) continue;
        ++m.two_qubit_count;
        if (g.a < c.keep || g.b < c.keep) ++m.keep_gate_count;
    }
    detail::DepthProblem prob(c);
    if (prob.gs.empty()) return m;
    int lb = prob.lower_bound(c.n);
    int ub = prob.greedy();
    if (lb == ub) {
        m.depth = lb;
        return m;
    }
    // Alternative upper bound: split into maximal runs of mutually commuting
    // gates and layer each run by edge coloring (Misra-Gries, <= Delta+1).
    {
        int total = 0;
        size_t i = 0;
        while (i < prob.gs.size()) {
            size_t j = i;
            std::vector<std::pair<int, int>> edges;
            std::vector<bool> qused(c.n, false);
            bool simple = true;
            while (j < prob.gs.size()) {
                const Gate& g = prob.gs[j];
                bool ok = true;
                for (size_t t = i; t < j && ok; ++t)
                    ok = gates_commute(prob.gs[t], prob.gs[j]);
                if (!ok) break;
                if (g.two_qubit()) {
                    for (auto& e : edges)
                        if ((e.first == g.a && e.second == g.b) ||
                            (e.first == g.b && e.second == g.a))
                            simple = false;
                    edges.emplace_back(g.a, g.b);
                } else {
                    if (qused[g.a]) break;
                    qused[g.a] = true;
                }
                ++j;
            }
            int layers = 1;
            if (!edges.empty()) {
                if (simple) {
                    auto col = detail::misra_gries_edge_coloring(c.n, edges);
                    for (int cc : col) layers = std::max(layers, cc + 1);
                } else {
                    layers = (int)edges.size();
                }
                // lone H gates in the run share the coloring layers
            }
            total += layers;
            i = j;
        }
        ub = std::min(ub, total);
        if (lb == ub) {
            m.depth = lb;
            return m;
        }
    }
    int nsched = (int)prob.gs.size() - (int)std::count_if(
        prob.gs.begin(), prob.gs.end(), [](const Gate& g) { return g.type == GateType::H; });
    if (nsched > exact_gate_limit) {
        m.depth = ub;
        m.depth_exact = false;
        return m;
    }
    for (int d = lb; d < ub; ++d) {
        std::vector<u32> busy(d, 0);
        std::vector<int> layer(prob.gs.size(), 0);
        i64 nodes = 40'000'000;
        try {
            if (prob.dfs(0, d, busy, layer, nodes)) {
                m.depth = d;
                return m;
            }
        } catch (const size_limit_error&) {
            m.depth = ub;
            m.depth_exact = false;
            return m;
        }
    }
    m.depth = ub;
    return m;
}

inline nlohmann::json circuit_to_json(const Circuit& c) {
    nlohmann::json j;
    j["n"] = c.n;
    j["keep"] = c.keep;
    j["gates"] = nlohmann::json::array();
    for (const auto& g : c.gates) {
        nlohmann::json gj;
        switch (g.type) {
            case GateType::CZ: gj["type"] = "CZ"; gj["q"] = {g.a, g.b}; break;
            case GateType::CNOT: gj["type"] = "CNOT"; gj["q"] = {g.a, g.b}; break;
            case GateType::H: gj["type"] = "H"; gj["q"] = {g.a}; break;
            case GateType::MZ: gj["type"] = "MZ"; gj["q"] = {g.a}; break;
        }
        j["gates"].push_back(gj);
    }
    return j;
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
    Circuit c;
    c.n = j.at("n").get<int>();
    c.keep = j.at("keep").get<int>();
    for (const auto& gj : j.at("gates")) {
        std::string t = gj.at("type").get<std::string>();
        auto q = gj.at("q").get<std::vector<int>>();
        if (t == "CZ" && q.size() == 2) c.gates.push_back(cz(q[0], q[1]));
        else if (t == "CNOT" && q.size() == 2) c.gates.push_back(cnot(q[0], q[1]));
        else if (t == "H" && q.size() == 1) c.gates.push_back(hadamard(q[0]));
        else if (t == "MZ" && q.size() == 1) c.gates.push_back(measure_z(q[0]));
        else throw std::invalid_argument("circuit json: unknown gate " + t);
    }
    c.validate();
    return c;
}

} // namespace distil
