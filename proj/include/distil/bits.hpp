#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace distil {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline constexpr u64 bit_mask(int nbits) {
    return nbits >= 64 ? ~u64{0} : (u64{1} << nbits) - 1;
}

inline int popcount64(u64 v) { return std::popcount(v); }

// Rank of a set of bit-rows over GF(2). Rows are modified in place.
inline int gf2_rank(std::vector<u64>& rows) {
    int rank = 0;
    for (int col = 0; col < 64; ++col) {
        u64 m = u64{1} << col;
        int pivot = -1;
        for (int r = rank; r < (int)rows.size(); ++r) {
            if (rows[r] & m) { pivot = r; break; }
        }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < (int)rows.size(); ++r) {
            if (r != rank && (rows[r] & m)) rows[r] ^= rows[rank];
        }
        ++rank;
        if (rank == (int)rows.size()) break;
    }
    return rank;
}

inline int gf2_rank_copy(std::vector<u64> rows) { return gf2_rank(rows); }

// Reduced row echelon form over GF(2) with the given number of columns.
// Returns pivot column per row (or -1 for zero rows, which are moved last).
inline std::vector<int> gf2_rref(std::vector<u64>& rows, int ncols) {
    std::vector<int> pivots;
    int rank = 0;
    for (int col = 0; col < ncols && rank < (int)rows.size(); ++col) {
        u64 m = u64{1} << col;
        int pivot = -1;
        for (int r = rank; r < (int)rows.size(); ++r) {
            if (rows[r] & m) { pivot = r; break; }
        }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < (int)rows.size(); ++r) {
            if (r != rank && (rows[r] & m)) rows[r] ^= rows[rank];
        }
        pivots.push_back(col);
        ++rank;
    }
    return pivots;
}

inline i64 binomial(int n, int r) {
    if (r < 0 || r > n) return 0;
    if (r > n - r) r = n - r;
    i64 v = 1;
    for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
    return v;
}

inline i64 ipow(i64 b, int e) {
    i64 v = 1;
    while (e-- > 0) v *= b;
    return v;
}

struct size_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace distil
