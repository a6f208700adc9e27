#pragma once

// Dense mod-2 linear algebra, enough for rank and homology dimensions.

#include <cstdint>
#include <vector>

#include "arcframe/common.hpp"

namespace arcframe::f2 {

struct Mat {
    int rows = 0, cols = 0;
    std::vector<std::vector<uint64_t>> bits;  // row-major, 64 columns per word

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), bits(r, std::vector<uint64_t>((c + 63) / 64, 0)) {}

    bool get(int r, int c) const { return bits[r][c >> 6] >> (c & 63) & 1; }
    void set(int r, int c, bool v) {
        if (v)
            bits[r][c >> 6] |= 1ull << (c & 63);
        else
            bits[r][c >> 6] &= ~(1ull << (c & 63));
    }
    void xor_rows(int dst, int src) {
        for (size_t w = 0; w < bits[dst].size(); ++w) bits[dst][w] ^= bits[src][w];
    }
    bool operator==(const Mat&) const = default;
};

inline Mat mul(const Mat& A, const Mat& B) {
    internal_check(A.cols == B.rows, "f2 mul shape");
    Mat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k)
            if (A.get(i, k))
                for (size_t w = 0; w < C.bits[i].size(); ++w) C.bits[i][w] ^= B.bits[k][w];
    return C;
}

inline int rank(Mat M) {
    int r = 0;
    for (int c = 0; c < M.cols && r < M.rows; ++c) {
        int piv = -1;
        for (int i = r; i < M.rows; ++i)
            if (M.get(i, c)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(M.bits[r], M.bits[piv]);
        for (int i = 0; i < M.rows; ++i)
            if (i != r && M.get(i, c)) M.xor_rows(i, r);
        ++r;
    }
    return r;
}

inline bool is_zero(const Mat& M) {
    for (auto& row : M.bits)
        for (auto w : row)
            if (w) return false;
    return true;
}

}  // namespace arcframe::f2
