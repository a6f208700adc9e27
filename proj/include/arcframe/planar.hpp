#pragma once

// Planar combinatorics: crossingless matchings, flat tangles and tangle
// diagrams as slice words, circle tracing, composition and resolution.
// Points are 0-based in code; JSON I/O uses 1-based labels.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "arcframe/common.hpp"

namespace arcframe::planar {

struct Matching {
    int n = 0;                 // 2n endpoints
    std::vector<int> pair;     // fixed-point-free involution on 0..2n-1

    bool operator==(const Matching&) const = default;
    bool operator<(const Matching& o) const {
        if (n != o.n) return n < o.n;
        return pair < o.pair;
    }
};

inline Matching matching_from_pairs(int n, std::initializer_list<std::pair<int, int>> arcs_1based) {
    Matching m;
    m.n = n;
    m.pair.assign(2 * n, -1);
    for (auto [a, b] : arcs_1based) {
        m.pair[a - 1] = b - 1;
        m.pair[b - 1] = a - 1;
    }
    return m;
}

inline bool involution_ok(const Matching& m) {
    if ((int)m.pair.size() != 2 * m.n) return false;
    for (int i = 0; i < 2 * m.n; ++i) {
        int j = m.pair[i];
        if (j < 0 || j >= 2 * m.n || j == i || m.pair[j] != i) return false;
    }
    return true;
}

inline bool noncrossing_ok(const Matching& m) {
    for (int i = 0; i < 2 * m.n; ++i) {
        for (int j = i + 1; j < 2 * m.n; ++j) {
            int k = m.pair[i], l = m.pair[j];
            if (i < j && j < k && k < l) return false;
        }
    }
    return true;
}

inline void validate(const Matching& m) {
    require(involution_ok(m), "matching: not a fixed-point-free involution");
    require(noncrossing_ok(m), "matching: arcs cross");
}

// All crossingless matchings on 2n points, lexicographic on the pair array.
inline std::vector<Matching> enumerate_matchings(int n) {
    require(n >= 0, "enumerate_matchings: n must be >= 0");
    std::vector<Matching> out;
    std::vector<int> pair(2 * n, -1);
    auto rec = [&](auto&& self, int) -> void {
        int i = 0;
        while (i < 2 * n && pair[i] >= 0) ++i;
        if (i == 2 * n) {
            out.push_back(Matching{n, pair});
            return;
        }
        for (int j = i + 1; j < 2 * n; j += 2) {
            // arcs may not cross: everything strictly between i and j pairs internally
            bool free_span = true;
            for (int t = i + 1; t < j; ++t)
                if (pair[t] >= 0) { free_span = false; break; }
            if (!free_span || pair[j] >= 0) continue;
            pair[i] = j;
            pair[j] = i;
            self(self, 0);
            pair[i] = -1;
            pair[j] = -1;
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Slice words

enum class SliceKind { Id, Cup, Cap, Cross };

struct Slice {
    SliceKind kind = SliceKind::Id;
    int pos = 0;          // 0-based strand position (lowest strand = 0)
    int cross_index = 0;  // 1..N, only for Cross

    bool operator==(const Slice&) const = default;
};

struct SliceWord {
    int left_pts = 0;   // 2m
    int right_pts = 0;  // 2n
    std::vector<Slice> slices;
    int closed_loops = 0;

    bool operator==(const SliceWord&) const = default;
};

inline SliceWord identity_word(int pts) {
    return SliceWord{pts, pts, {}, 0};
}

inline int crossing_count(const SliceWord& w) {
    int c = 0;
    for (auto& s : w.slices)
        if (s.kind == SliceKind::Cross) ++c;
    return c;
}

inline bool is_flat(const SliceWord& w) { return crossing_count(w) == 0; }

inline void validate(const SliceWord& w) {
    require(w.left_pts >= 0 && w.left_pts % 2 == 0, "slice word: left_pts must be even and nonnegative");
    require(w.right_pts >= 0 && w.right_pts % 2 == 0, "slice word: right_pts must be even and nonnegative");
    require(w.closed_loops >= 0, "slice word: negative loop count");
    int cur = w.left_pts;
    std::set<int> seen;
    for (auto& s : w.slices) {
        switch (s.kind) {
            case SliceKind::Id:
                break;
            case SliceKind::Cup:
                require(s.pos >= 0 && s.pos <= cur, "slice word: cup position out of range");
                cur += 2;
                break;
            case SliceKind::Cap:
                require(s.pos >= 0 && s.pos + 1 < cur, "slice word: cap position out of range");
                cur -= 2;
                break;
            case SliceKind::Cross:
                require(s.pos >= 0 && s.pos + 1 < cur, "slice word: crossing position out of range");
                require(seen.insert(s.cross_index).second, "slice word: duplicate crossing index");
                break;
        }
    }
    require(cur == w.right_pts, "slice word: strand count does not reach right_pts");
    int N = (int)seen.size();
    for (int c = 1; c <= N; ++c)
        require(seen.count(c), "slice word: crossing indices must be exactly 1..N");
}

// ---------------------------------------------------------------------------
// Circle tracing.
//
// The traced 1-manifold is modeled as a 2-regular multigraph on "ends".
// Boundary labels: left point p -> p, right point q -> left_pts + q.

struct Circle {
    std::vector<int> points;  // sorted boundary labels; empty for a free loop

    bool operator==(const Circle&) const = default;
    bool operator<(const Circle& o) const { return points < o.points; }
};

struct CircleSet {
    std::vector<Circle> circles;  // boundary circles sorted by min point, then free loops

    int size() const { return (int)circles.size(); }
    bool operator==(const CircleSet&) const = default;
};

namespace detail {

// Union-find with deterministic roots.
struct UF {
    std::vector<int> up;
    explicit UF(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
    int find(int x) {
        while (up[x] != x) x = up[x] = up[up[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        up[b] = a;
        return true;
    }
};

}  // namespace detail

// Trace the strands of a flat word. Returns, per left/right boundary point,
// a node id, plus the number of closed loops formed inside the word; node
// ids live in a union-find that the caller can extend with matching arcs.
struct FlatTrace {
    detail::UF uf{0};
    std::vector<int> left_node;   // node per left boundary point
    std::vector<int> right_node;  // node per right boundary point
    int internal_loops = 0;       // loops closed by the slices themselves
};

inline FlatTrace trace_flat_word(const SliceWord& w) {
    validate(w);
    require(is_flat(w), "trace: word must be flat");
    FlatTrace tr;
    int next_node = 0;
    auto fresh = [&]() { return next_node++; };
    std::vector<int> cur;  // node id per current strand
    tr.left_node.resize(w.left_pts);
    for (int p = 0; p < w.left_pts; ++p) {
        tr.left_node[p] = fresh();
        cur.push_back(tr.left_node[p]);
    }
    std::vector<std::pair<int, int>> unions;
    std::vector<std::pair<int, int>> loop_checks;  // cap unions, checked later
    for (auto& s : w.slices) {
        switch (s.kind) {
            case SliceKind::Id:
                break;
            case SliceKind::Cup: {
                int e = fresh();
                cur.insert(cur.begin() + s.pos, 2, e);
                break;
            }
            case SliceKind::Cap: {
                unions.emplace_back(cur[s.pos], cur[s.pos + 1]);
                cur.erase(cur.begin() + s.pos, cur.begin() + s.pos + 2);
                break;
            }
            case SliceKind::Cross:
                fail("trace: unexpected crossing in flat word");
        }
    }
    internal_check((int)cur.size() == w.right_pts, "flat trace strand count");
    tr.right_node = cur;
    tr.uf = detail::UF(next_node);
    for (auto [a, b] : unions)
        if (!tr.uf.unite(a, b)) ++tr.internal_loops;
    tr.internal_loops += w.closed_loops;
    return tr;
}

// Circles formed by joining two matchings on the same 2n points.
inline CircleSet circles(const Matching& a, const Matching& b) {
    validate(a);
    validate(b);
    require(a.n == b.n, "circles: matchings of different size");
    detail::UF uf(2 * a.n);
    for (int i = 0; i < 2 * a.n; ++i) {
        uf.unite(i, a.pair[i]);
        uf.unite(i, b.pair[i]);
    }
    std::map<int, Circle> by_root;
    for (int i = 0; i < 2 * a.n; ++i) by_root[uf.find(i)].points.push_back(i);
    CircleSet cs;
    for (auto& [root, c] : by_root) cs.circles.push_back(std::move(c));
    return cs;
}

// Circles of a \cup T-bar \cup b for a flat (2m,2n) word T.
inline CircleSet circles_with_tangle(const Matching& a, const SliceWord& T, const Matching& b) {
    validate(a);
    validate(b);
    require(2 * a.n == T.left_pts, "circles_with_tangle: left boundary mismatch");
    require(2 * b.n == T.right_pts, "circles_with_tangle: right boundary mismatch");
    FlatTrace tr = trace_flat_word(T);
    for (int p = 0; p < 2 * a.n; ++p) tr.uf.unite(tr.left_node[p], tr.left_node[a.pair[p]]);
    for (int q = 0; q < 2 * b.n; ++q) tr.uf.unite(tr.right_node[q], tr.right_node[b.pair[q]]);
    std::map<int, Circle> by_root;
    for (int p = 0; p < 2 * a.n; ++p) by_root[tr.uf.find(tr.left_node[p])].points.push_back(p);
    for (int q = 0; q < 2 * b.n; ++q) by_root[tr.uf.find(tr.right_node[q])].points.push_back(T.left_pts + q);
    CircleSet cs;
    for (auto& [root, c] : by_root) {
        std::sort(c.points.begin(), c.points.end());
        c.points.erase(std::unique(c.points.begin(), c.points.end()), c.points.end());
        cs.circles.push_back(std::move(c));
    }
    std::sort(cs.circles.begin(), cs.circles.end());
    for (int i = 0; i < tr.internal_loops; ++i) cs.circles.push_back(Circle{});
    return cs;
}

// ---------------------------------------------------------------------------
// Composition and normalization

// Concatenate T1 (left) with T2 (right); T2's crossing indices are shifted
// above T1's. Closed loops formed by crossing-free circles are extracted.
SliceWord normalize(const SliceWord& w);

inline SliceWord concatenate(const SliceWord& t1, const SliceWord& t2) {
    validate(t1);
    validate(t2);
    require(t1.right_pts == t2.left_pts, "compose: boundary mismatch");
    SliceWord out;
    out.left_pts = t1.left_pts;
    out.right_pts = t2.right_pts;
    out.closed_loops = t1.closed_loops + t2.closed_loops;
    out.slices = t1.slices;
    int shift = crossing_count(t1);
    for (auto s : t2.slices) {
        if (s.kind == SliceKind::Cross) s.cross_index += shift;
        out.slices.push_back(s);
    }
    return out;
}

inline SliceWord compose(const SliceWord& t1, const SliceWord& t2) {
    return normalize(concatenate(t1, t2));
}

// Replace each crossing by its v-resolution: v=0 -> id, v=1 -> cap then cup.
inline SliceWord resolve(const SliceWord& T, const std::vector<int>& v) {
    validate(T);
    require((int)v.size() == crossing_count(T), "resolve: bit vector length mismatch");
    SliceWord out;
    out.left_pts = T.left_pts;
    out.right_pts = T.right_pts;
    out.closed_loops = T.closed_loops;
    for (auto& s : T.slices) {
        if (s.kind == SliceKind::Cross) {
            int bit = v[s.cross_index - 1];
            require(bit == 0 || bit == 1, "resolve: entries must be bits");
            if (bit == 1) {
                out.slices.push_back(Slice{SliceKind::Cap, s.pos, 0});
                out.slices.push_back(Slice{SliceKind::Cup, s.pos, 0});
            }
            // bit == 0: identity slice, drop it
        } else {
            out.slices.push_back(s);
        }
    }
    return out;
}

namespace detail {

// Boundary connectivity of a word (crossings connect straight through is NOT
// meaningful for diagrams, so this is used for flat words only).
struct FlatShape {
    int left_pts = 0, right_pts = 0;
    std::vector<std::pair<int, int>> joins;  // boundary labels, left: p, right: left_pts+q
    int loops = 0;
};

inline FlatShape flat_shape(const SliceWord& w) {
    FlatTrace tr = trace_flat_word(w);
    FlatShape sh;
    sh.left_pts = w.left_pts;
    sh.right_pts = w.right_pts;
    std::map<int, std::vector<int>> by_root;
    for (int p = 0; p < w.left_pts; ++p) by_root[tr.uf.find(tr.left_node[p])].push_back(p);
    for (int q = 0; q < w.right_pts; ++q) by_root[tr.uf.find(tr.right_node[q])].push_back(w.left_pts + q);
    int untouched = 0;
    for (auto& [r, pts] : by_root) {
        internal_check(pts.size() <= 2, "flat boundary valence");
        if (pts.size() == 2) sh.joins.emplace_back(pts[0], pts[1]);
        else ++untouched;
    }
    internal_check(untouched == 0, "dangling strand end");
    // every closed loop inside the word fails exactly one cap union, so
    // internal_loops (which also carries closed_loops) is the full count
    sh.loops = tr.internal_loops;
    return sh;
}

}  // namespace detail

// Canonical flat layout of a boundary matching + loop count: caps first
// (innermost-lowest first), then cups (outermost-lowest last), through
// strands in order.
inline SliceWord canonical_flat_word(const detail::FlatShape& sh) {
    SliceWord out;
    out.left_pts = sh.left_pts;
    out.right_pts = sh.right_pts;
    out.closed_loops = sh.loops;

    std::vector<int> partner(sh.left_pts + sh.right_pts, -1);
    for (auto [x, y] : sh.joins) {
        partner[x] = y;
        partner[y] = x;
    }
    // Current strand list holds boundary labels of left points not yet capped;
    // caps: repeatedly cap adjacent left-left pairs, lowest position first.
    std::vector<int> cur;
    for (int p = 0; p < sh.left_pts; ++p) cur.push_back(p);
    bool progress = true;
    while (progress) {
        progress = false;
        for (int i = 0; i + 1 < (int)cur.size(); ++i) {
            if (partner[cur[i]] == cur[i + 1]) {
                out.slices.push_back(Slice{SliceKind::Cap, i, 0});
                cur.erase(cur.begin() + i, cur.begin() + i + 2);
                progress = true;
                break;
            }
        }
    }
    // remaining strands are all through; build the right side with cups,
    // mirroring the cap normalization of the reversed right boundary.
    std::vector<Slice> cups;
    std::vector<int> cur_r;
    for (int q = 0; q < sh.right_pts; ++q) cur_r.push_back(sh.left_pts + q);
    progress = true;
    while (progress) {
        progress = false;
        for (int i = 0; i + 1 < (int)cur_r.size(); ++i) {
            if (partner[cur_r[i]] == cur_r[i + 1]) {
                cups.push_back(Slice{SliceKind::Cup, i, 0});
                cur_r.erase(cur_r.begin() + i, cur_r.begin() + i + 2);
                progress = true;
                break;
            }
        }
    }
    internal_check(cur.size() == cur_r.size(), "through strand count mismatch");
    for (size_t i = 0; i < cur.size(); ++i)
        internal_check(partner[cur[i]] == cur_r[i], "through strands must preserve order");
    std::reverse(cups.begin(), cups.end());
    for (auto& s : cups) out.slices.push_back(s);
    return out;
}

// Normal form. Flat words are re-laid-out canonically from their boundary
// matching; words with crossings only shed id slices and free crossing-less
// loops (detected via the resolved-0 shadow sharing the crossing sites).
inline SliceWord normalize(const SliceWord& w) {
    validate(w);
    if (is_flat(w)) return canonical_flat_word(detail::flat_shape(w));
    SliceWord out;
    out.left_pts = w.left_pts;
    out.right_pts = w.right_pts;
    out.closed_loops = w.closed_loops;
    for (auto& s : w.slices)
        if (s.kind != SliceKind::Id) out.slices.push_back(s);
    return out;
}

}  // namespace arcframe::planar
