#pragma once

// Independent mod-2 Khovanov cube for closed slice-word diagrams. This oracle
// shares only the slice-word struct with the main implementation: circles are
// traced over a per-state union-find on slice-boundary cells, and the
// differential is assembled from the local merge/split rules directly.

#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "arcframe/planar.hpp"

namespace kh_oracle {

struct UF {
    std::vector<int> up;
    explicit UF(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
    int find(int x) {
        while (up[x] != x) x = up[x] = up[up[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) up[std::max(a, b)] = std::min(a, b);
    }
};

// cells: strand slots at each boundary between slices (counts agree across
// resolutions since every slice is strand-count preserving or shifts equally)
struct Layout {
    const arcframe::planar::SliceWord* T;
    std::vector<int> counts;       // strand count at boundary i (0..r)
    std::vector<int> cell_offset;  // cell id of (boundary, 0)
    int free_cells = 0;            // one synthetic cell per carried loop
    int total = 0;

    explicit Layout(const arcframe::planar::SliceWord& t) : T(&t) {
        counts.push_back(t.left_pts);
        for (auto& s : t.slices) {
            int c = counts.back();
            if (s.kind == arcframe::planar::SliceKind::Cup) c += 2;
            if (s.kind == arcframe::planar::SliceKind::Cap) c -= 2;
            counts.push_back(c);
        }
        int off = 0;
        for (int c : counts) {
            cell_offset.push_back(off);
            off += c;
        }
        free_cells = t.closed_loops;
        total = off + free_cells;
    }
    int cell(int boundary, int pos) const { return cell_offset[boundary] + pos; }
    int free_cell(int i) const { return cell_offset.back() + counts.back() + i; }
};

// circle partition of the state-resolved diagram; returns root per cell
inline std::vector<int> trace(const Layout& L, uint32_t state) {
    using arcframe::planar::SliceKind;
    UF uf(L.total);
    const auto& T = *L.T;
    for (size_t i = 0; i < T.slices.size(); ++i) {
        auto& s = T.slices[i];
        int b = (int)i;
        int cl = L.counts[b];
        auto connect_straight = [&](int skip_lo, int shift_from, int shift_by) {
            for (int p = 0; p < cl; ++p) {
                if (p == skip_lo || p == skip_lo + 1) continue;
                int q = p >= shift_from ? p + shift_by : p;
                uf.unite(L.cell(b, p), L.cell(b + 1, q));
            }
        };
        switch (s.kind) {
            case SliceKind::Id:
                connect_straight(-5, cl + 1, 0);
                break;
            case SliceKind::Cup:
                connect_straight(-5, s.pos, 2);
                uf.unite(L.cell(b + 1, s.pos), L.cell(b + 1, s.pos + 1));
                break;
            case SliceKind::Cap:
                connect_straight(s.pos, s.pos, -2);
                uf.unite(L.cell(b, s.pos), L.cell(b, s.pos + 1));
                break;
            case SliceKind::Cross: {
                int bit = state >> (s.cross_index - 1) & 1;
                connect_straight(s.pos, cl + 1, 0);
                if (bit == 0) {
                    uf.unite(L.cell(b, s.pos), L.cell(b + 1, s.pos));
                    uf.unite(L.cell(b, s.pos + 1), L.cell(b + 1, s.pos + 1));
                } else {
                    uf.unite(L.cell(b, s.pos), L.cell(b, s.pos + 1));
                    uf.unite(L.cell(b + 1, s.pos), L.cell(b + 1, s.pos + 1));
                }
                break;
            }
        }
    }
    std::vector<int> root(L.total);
    for (int i = 0; i < L.total; ++i) root[i] = uf.find(i);
    return root;
}

// F2 Khovanov homology dimensions of a closed (0,0) diagram, graded by state weight
inline std::vector<int> homology_dims(const arcframe::planar::SliceWord& T) {
    using arcframe::planar::SliceKind;
    Layout L(T);
    int N = 0;
    for (auto& s : T.slices)
        if (s.kind == SliceKind::Cross) ++N;

    // circle labels per state
    std::vector<std::vector<int>> circ_ids(1u << N);      // sorted roots
    std::vector<std::vector<int>> cell_circ(1u << N);     // cell -> circle index
    for (uint32_t s = 0; s < (1u << N); ++s) {
        auto root = trace(L, s);
        std::set<int> roots(root.begin(), root.end());
        circ_ids[s].assign(roots.begin(), roots.end());
        cell_circ[s].resize(L.total);
        for (int i = 0; i < L.total; ++i)
            cell_circ[s][i] =
                (int)(std::lower_bound(circ_ids[s].begin(), circ_ids[s].end(), root[i]) - circ_ids[s].begin());
    }

    // chain groups by weight
    std::vector<std::vector<uint32_t>> by_w(N + 1);
    for (uint32_t s = 0; s < (1u << N); ++s) by_w[__builtin_popcount(s)].push_back(s);
    std::vector<long long> dim(1u << N), off(1u << N);
    std::vector<long long> level(N + 1, 0);
    for (int k = 0; k <= N; ++k)
        for (uint32_t s : by_w[k]) {
            dim[s] = 1ll << circ_ids[s].size();
            off[s] = level[k];
            level[k] += dim[s];
        }

    // dense F2 differentials
    std::vector<std::vector<std::vector<uint8_t>>> d(N);
    for (int k = 0; k < N; ++k)
        d[k].assign(level[k + 1], std::vector<uint8_t>(level[k], 0));
    for (uint32_t s = 0; s < (1u << N); ++s) {
        int k = __builtin_popcount(s);
        for (int i = 0; i < N; ++i) {
            if (s >> i & 1) continue;
            uint32_t t = s | 1u << i;
            int cs = (int)circ_ids[s].size(), ct = (int)circ_ids[t].size();
            // map circles of s to circles of t through shared cells
            std::vector<int> to_t(cs, -1);
            for (int cell = 0; cell < L.total; ++cell) to_t[cell_circ[s][cell]] = cell_circ[t][cell];
            for (uint32_t mask = 0; mask < (1u << cs); ++mask) {
                if (ct == cs - 1) {
                    // merge: dots add, X^2 = 0
                    std::vector<int> dots(ct, 0);
                    for (int c = 0; c < cs; ++c) dots[to_t[c]] += mask >> c & 1;
                    bool dead = false;
                    uint32_t omask = 0;
                    for (int c = 0; c < ct; ++c) {
                        if (dots[c] >= 2) dead = true;
                        if (dots[c] == 1) omask |= 1u << c;
                    }
                    if (!dead) d[k][off[t] + omask][off[s] + mask] ^= 1;
                } else {
                    // split: exactly one circle of s covers two circles of t
                    std::vector<std::vector<int>> imgs(cs);
                    for (int cell = 0; cell < L.total; ++cell) {
                        int a = cell_circ[s][cell], b = cell_circ[t][cell];
                        bool seen = false;
                        for (int x : imgs[a]) seen |= x == b;
                        if (!seen) imgs[a].push_back(b);
                    }
                    int split_circle = -1;
                    for (int c = 0; c < cs; ++c)
                        if (imgs[c].size() == 2) split_circle = c;
                    auto emit = [&](uint32_t omask) { d[k][off[t] + omask][off[s] + mask] ^= 1; };
                    uint32_t base = 0;
                    for (int c = 0; c < cs; ++c)
                        if (c != split_circle && (mask >> c & 1)) base |= 1u << imgs[c][0];
                    int b1 = imgs[split_circle][0], b2 = imgs[split_circle][1];
                    if (mask >> split_circle & 1) {
                        emit(base | 1u << b1 | 1u << b2);
                    } else {
                        emit(base | 1u << b1);
                        emit(base | 1u << b2);
                    }
                }
            }
        }
    }

    // homology dims
    auto rank = [](std::vector<std::vector<uint8_t>> M) {
        int r = 0;
        int rows = (int)M.size(), cols = rows ? (int)M[0].size() : 0;
        for (int c = 0; c < cols && r < rows; ++c) {
            int piv = -1;
            for (int i = r; i < rows; ++i)
                if (M[i][c]) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            std::swap(M[r], M[piv]);
            for (int i = 0; i < rows; ++i)
                if (i != r && M[i][c])
                    for (int j = 0; j < cols; ++j) M[i][j] ^= M[r][j];
            ++r;
        }
        return r;
    };
    std::vector<int> H(N + 1, 0);
    std::vector<int> rk(N + 1, 0);
    for (int k = 0; k < N; ++k) rk[k + 1] = rank(d[k]);
    for (int k = 0; k <= N; ++k) {
        int out = k < N ? rank(d[k]) : 0;
        H[k] = (int)level[k] - out - rk[k];
    }
    return H;
}

inline int total_homology(const arcframe::planar::SliceWord& T) {
    int tot = 0;
    for (int h : homology_dims(T)) tot += h;
    return tot;
}

}  // namespace kh_oracle
