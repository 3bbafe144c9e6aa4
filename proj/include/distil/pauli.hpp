#pragma once

#include <string>

#include "distil/bits.hpp"

namespace distil {

// Phaseless Pauli string on n qubits as a length-2n GF(2) vector.
// Layout [x | z]: qubit i (0-based) owns bits i and i+n. Addition of
// vectors is Pauli multiplication modulo phase.
struct PauliVector {
    int n = 0;
    u64 bits = 0;

    PauliVector() = default;
    PauliVector(int n_, u64 bits_) : n(n_), bits(bits_) {}

    u64 x_part() const { return bits & bit_mask(n); }
    u64 z_part() const { return (bits >> n) & bit_mask(n); }

    bool x(int i) const { return (bits >> i) & 1; }
    bool z(int i) const { return (bits >> (n + i)) & 1; }

    PauliVector operator+(const PauliVector& o) const { return {n, bits ^ o.bits}; }
    bool operator==(const PauliVector& o) const = default;

    // Parses strings like "IXYZ" (qubit 1 first).
    static PauliVector from_label(const std::string& s) {
        PauliVector v((int)s.size(), 0);
        for (int i = 0; i < v.n; ++i) {
            switch (s[i]) {
                case 'I': break;
                case 'X': v.bits |= u64{1} << i; break;
                case 'Y': v.bits |= (u64{1} << i) | (u64{1} << (v.n + i)); break;
                case 'Z': v.bits |= u64{1} << (v.n + i); break;
                default: throw std::invalid_argument("bad Pauli label");
            }
        }
        return v;
    }

    std::string label() const {
        std::string s(n, 'I');
        for (int i = 0; i < n; ++i) {
            bool xb = x(i), zb = z(i);
            if (xb && zb) s[i] = 'Y';
            else if (xb) s[i] = 'X';
            else if (zb) s[i] = 'Z';
        }
        return s;
    }
};

inline int weight_bits(u64 bits, int n) {
    return popcount64((bits | (bits >> n)) & bit_mask(n));
}

inline int weight(const PauliVector& v) { return weight_bits(v.bits, v.n); }

// omega(v, w) = x_v.z_w + z_v.x_w (mod 2); zero iff the strings commute.
inline int symplectic_form(const PauliVector& v, const PauliVector& w) {
    if (v.n != w.n) throw std::invalid_argument("symplectic_form: dimension mismatch");
    u64 t = (v.x_part() & w.z_part()) ^ (v.z_part() & w.x_part());
    return popcount64(t) & 1;
}

} // namespace distil
