#pragma once

// Frame surfaces: the canonical multimerge cobordisms built from bridges and
// rails, as abstract polygon complexes (for Euler characteristic, boundary
// circles and genus) together with a saddle-event model of the same surface
// (for the left-to-right elementary decomposition and the gluing graph).

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arcframe/common.hpp"
#include "arcframe/planar.hpp"

namespace arcframe::frames {

// ---------------------------------------------------------------------------
// Polygon complex
//
// Polygons are disks given by a cyclic list of sides. Gluing identifies two
// sides head-to-tail; cyclic orders below are chosen so that every gluing is
// orientation compatible (checkerboard parity of boundary points).

struct PolygonComplex {
    struct Side {
        int poly = -1;
        int pos = -1;
        int partner = -1;
    };
    std::vector<Side> sides;
    std::vector<std::vector<int>> polys;

    int new_side() {
        sides.push_back(Side{});
        return (int)sides.size() - 1;
    }
    int add_polygon(const std::vector<int>& ss) {
        int p = (int)polys.size();
        polys.push_back(ss);
        for (int i = 0; i < (int)ss.size(); ++i) {
            internal_check(sides[ss[i]].poly == -1, "side reused");
            sides[ss[i]].poly = p;
            sides[ss[i]].pos = i;
        }
        return p;
    }
    void glue(int s1, int s2) {
        internal_check(s1 != s2 && sides[s1].partner == -1 && sides[s2].partner == -1, "bad gluing");
        sides[s1].partner = s2;
        sides[s2].partner = s1;
    }

    int next_in_poly(int s) const {
        auto& sd = sides[s];
        auto& ring = polys[sd.poly];
        return ring[(sd.pos + 1) % ring.size()];
    }

    struct Analysis {
        int n_components = 0;
        std::vector<int> poly_comp;
        std::vector<int> comp_chi;
        std::vector<std::vector<int>> boundary;  // cycles of free side ids
        std::vector<int> boundary_comp;
    };

    Analysis analyze() const {
        Analysis an;
        an.poly_comp.assign(polys.size(), -1);
        planar::detail::UF pc((int)polys.size());
        for (auto& sd : sides)
            if (sd.partner >= 0) pc.unite(sd.poly, sides[sd.partner].poly);
        std::map<int, int> root2comp;
        for (int p = 0; p < (int)polys.size(); ++p) {
            int r = pc.find(p);
            auto it = root2comp.find(r);
            if (it == root2comp.end()) it = root2comp.emplace(r, (int)root2comp.size()).first;
            an.poly_comp[p] = it->second;
        }
        an.n_components = (int)root2comp.size();

        // corners: 2*s = tail, 2*s+1 = head of side s
        planar::detail::UF cu(2 * (int)sides.size());
        for (auto& ring : polys)
            for (int i = 0; i < (int)ring.size(); ++i) {
                int s = ring[i], t = ring[(i + 1) % ring.size()];
                cu.unite(2 * s + 1, 2 * t);  // head(s) = tail(next)
            }
        for (int s = 0; s < (int)sides.size(); ++s) {
            int p = sides[s].partner;
            if (p > s) {
                cu.unite(2 * s + 1, 2 * p);
                cu.unite(2 * s, 2 * p + 1);
            }
        }
        std::vector<std::set<int>> vroots(an.n_components);
        std::vector<int> edges(an.n_components, 0), faces(an.n_components, 0);
        for (int p = 0; p < (int)polys.size(); ++p) ++faces[an.poly_comp[p]];
        for (int s = 0; s < (int)sides.size(); ++s) {
            int c = an.poly_comp[sides[s].poly];
            vroots[c].insert(cu.find(2 * s));
            vroots[c].insert(cu.find(2 * s + 1));
            if (sides[s].partner < 0 || sides[s].partner > s) ++edges[c];
        }
        an.comp_chi.assign(an.n_components, 0);
        for (int c = 0; c < an.n_components; ++c)
            an.comp_chi[c] = (int)vroots[c].size() - edges[c] + faces[c];

        // boundary cycles via corner rotation
        std::vector<bool> done(sides.size(), false);
        for (int s0 = 0; s0 < (int)sides.size(); ++s0) {
            if (sides[s0].partner >= 0 || done[s0]) continue;
            std::vector<int> cyc;
            int s = s0;
            do {
                done[s] = true;
                cyc.push_back(s);
                int t = next_in_poly(s);
                while (sides[t].partner >= 0) t = next_in_poly(sides[t].partner);
                s = t;
            } while (s != s0);
            an.boundary_comp.push_back(an.poly_comp[sides[s0].poly]);
            an.boundary.push_back(std::move(cyc));
        }
        return an;
    }
};

// ---------------------------------------------------------------------------
// Frame description

struct SlotLabel {
    enum Kind { LeftSlot, TvSlot, RightSlot, Output } kind = Output;
    int index = 0;  // 1-based slot index for Left/RightSlot

    bool operator==(const SlotLabel&) const = default;
    auto operator<=>(const SlotLabel&) const = default;
    std::string str() const {
        switch (kind) {
            case LeftSlot: return "in" + std::to_string(index);
            case TvSlot: return "tv";
            case RightSlot: return "r" + std::to_string(index);
            case Output: return "out";
        }
        return "?";
    }
};

struct BoundaryCircle {
    SlotLabel slot;
    std::vector<int> points;  // boundary labels in the slot's own configuration
    int loop_order = -1;      // for point-free loops: discovery order within the slot
    int component = -1;       // frame component

    bool matches(const planar::Circle& c) const { return points == c.points; }
};

struct FrameComponent {
    std::vector<int> pieces;
    int euler_char = 0;
    int genus = 0;
    std::vector<int> boundary;  // indices into FrameSurface::boundary
};

struct FrameInput {
    bool tangle = false;
    std::vector<planar::Matching> a_seq;  // arc frame: the whole sequence
    std::vector<planar::Matching> b_seq;
    planar::SliceWord T;
    std::vector<int> v, w;
};

struct FrameSurface {
    FrameInput input;
    PolygonComplex complex;
    std::vector<FrameComponent> components;
    std::vector<BoundaryCircle> boundary;
    int piece_count = 0;
    int gluing_count = 0;
};

// ---------------------------------------------------------------------------
// Saddle decomposition (event model)

struct CircleRec {
    std::vector<int> nodes;   // sorted node ranks
    int creator = -1;         // event index, -1 for frame inputs
    int consumer = -1;        // event index, -1 for frame outputs
    SlotLabel slot;           // meaningful for inputs (creator == -1)
    bool is_input = false;
    bool is_output = false;
    std::vector<int> points;  // boundary labels (empty for free loops)
    std::vector<int> sig;     // crossing-site / cup tokens, identifies free loops

    std::string key() const {
        std::string k = "c";
        for (size_t i = 0; i < nodes.size() && i < 1; ++i) k += std::to_string(nodes[i]);
        return k;
    }
};

struct SaddleEvent {
    enum Kind { Birth, Merge, Split, Death } kind = Merge;
    std::vector<int> in, out;  // circle indices
    std::string desc;
};

struct GluingGraph {
    // vertices = events, edges = circles interior to the decomposition
    std::vector<int> edge_circles;
};

struct SaddleDecomposition {
    std::vector<CircleRec> circles;
    std::vector<SaddleEvent> steps;
    std::vector<int> inputs, outputs;  // circle indices
    GluingGraph graph;

    int n_components = 0;
    std::vector<int> event_comp, circle_comp;
    std::vector<int> comp_chi, comp_genus;
    // for genus-1 components: the unique minimal cycle, as circle indices
    std::vector<std::vector<int>> comp_cycle;
};

namespace detail {

struct Machine {
    struct Edge {
        int u = -1, v = -1;
        int tag = -1;  // distinguishes parallel matching arcs in lookups
        bool alive = true;
    };
    std::vector<Edge> edges;
    std::map<std::pair<int, int>, std::vector<int>> lookup;  // sorted endpoints -> edge ids

    int add_edge(int u, int v, int tag = -1) {
        int id = (int)edges.size();
        edges.push_back(Edge{u, v, tag, true});
        lookup[std::minmax(u, v)].push_back(id);
        return id;
    }
    int find_alive(int u, int v, int tag) const {
        auto it = lookup.find(std::minmax(u, v));
        if (it == lookup.end()) return -1;
        for (int id : it->second)
            if (edges[id].alive && edges[id].tag == tag) return id;
        return -1;
    }
    void kill(int id) { edges[id].alive = false; }

    // cycles of the alive 2-regular multigraph, as sorted node sets
    std::vector<std::vector<int>> cycles() const {
        std::map<int, std::vector<int>> inc;
        for (int id = 0; id < (int)edges.size(); ++id)
            if (edges[id].alive) {
                inc[edges[id].u].push_back(id);
                inc[edges[id].v].push_back(id);  // self loops appear twice
            }
        for (auto& [n, e] : inc) internal_check(e.size() == 2, "machine graph not 2-regular");
        std::set<int> used;
        std::vector<std::vector<int>> out;
        for (auto& [n0, e0] : inc) {
            for (int first : e0) {
                if (used.count(first)) continue;
                std::vector<int> nodes;
                int node = n0, eid = first;
                while (true) {
                    used.insert(eid);
                    nodes.push_back(node);
                    if (edges[eid].u == edges[eid].v) break;  // self loop closes
                    int nxt = edges[eid].u == node ? edges[eid].v : edges[eid].u;
                    auto& cand = inc[nxt];
                    int leave = cand[0] == eid ? cand[1] : cand[0];
                    node = nxt;
                    eid = leave;
                    if (node == n0 && eid == first) break;
                }
                std::sort(nodes.begin(), nodes.end());
                nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
                out.push_back(std::move(nodes));
            }
        }
        return out;
    }
};

}  // namespace detail

// declared below
FrameSurface build_arc_frame(const std::vector<planar::Matching>& seq);
FrameSurface build_tangle_frame(const std::vector<int>& v, const std::vector<int>& w,
                                const std::vector<planar::Matching>& a_seq, const planar::SliceWord& T,
                                const std::vector<planar::Matching>& b_seq);
SaddleDecomposition saddle_decompose(const FrameSurface& F);

// ---------------------------------------------------------------------------
// Arc frame builder

namespace detail {

struct RailPieces {
    int poly = -1;
    std::vector<int> g;  // gluing segments, one per brick
    std::vector<int> f;  // free gaps, f[j] faces slot j (1-based), size bricks-1
    int top = -1, endl = -1, endr = -1;
};

// rails for a block of `bricks` bricks on `pts` boundary points; end edges are
// created but not yet glued (tangle frames glue one of them to the middle)
inline std::vector<RailPieces> make_rails(PolygonComplex& px, int pts, int bricks) {
    std::vector<RailPieces> rails(pts);
    for (int p = 0; p < pts; ++p) {
        auto& r = rails[p];
        r.g.resize(bricks);
        r.f.resize(bricks > 0 ? bricks - 1 : 0);
        for (auto& s : r.g) s = px.new_side();
        for (auto& s : r.f) s = px.new_side();
        r.top = px.new_side();
        r.endl = px.new_side();
        r.endr = px.new_side();
        std::vector<int> ring;
        if (p % 2 == 0) {
            for (int j = bricks - 1; j >= 0; --j) {
                ring.push_back(r.g[j]);
                if (j > 0) ring.push_back(r.f[j - 1]);
            }
            ring.push_back(r.endl);
            ring.push_back(r.top);
            ring.push_back(r.endr);
        } else {
            for (int j = 0; j < bricks; ++j) {
                ring.push_back(r.g[j]);
                if (j + 1 < bricks) ring.push_back(r.f[j]);
            }
            ring.push_back(r.endr);
            ring.push_back(r.top);
            ring.push_back(r.endl);
        }
        r.poly = px.add_polygon(ring);
    }
    return rails;
}

struct BridgePieces {
    int left = -1, right = -1;  // arc copy sides
};

// add the bridges of brick j for matching m, gluing them into rails
inline std::vector<BridgePieces> make_bridges(PolygonComplex& px, std::vector<RailPieces>& rails,
                                              const planar::Matching& m, int brick) {
    std::vector<BridgePieces> out;
    for (int p = 0; p < 2 * m.n; ++p) {
        int q = m.pair[p];
        if (q < p) continue;
        int gp = px.new_side(), gq = px.new_side();
        BridgePieces b;
        b.left = px.new_side();
        b.right = px.new_side();
        if (p % 2 == 0)
            px.add_polygon({gp, b.right, gq, b.left});
        else
            px.add_polygon({gp, b.left, gq, b.right});
        px.glue(gp, rails[p].g[brick]);
        px.glue(gq, rails[q].g[brick]);
        out.push_back(b);
    }
    return out;
}

// side classification data collected during building
struct SideMeta {
    SlotLabel slot;
    std::vector<int> points;  // contributed boundary labels
};

}  // namespace detail

namespace detail {

// shared by both builders: run analysis, match boundary circles to slot
// configurations, assemble FrameSurface
inline FrameSurface finish_frame(FrameInput input, PolygonComplex px, const std::map<int, SideMeta>& meta,
                                 const std::map<SlotLabel, planar::CircleSet>& slot_circles) {
    FrameSurface F;
    F.input = std::move(input);
    F.complex = std::move(px);
    auto an = F.complex.analyze();
    F.piece_count = (int)F.complex.polys.size();
    F.gluing_count = 0;
    for (int s = 0; s < (int)F.complex.sides.size(); ++s)
        if (F.complex.sides[s].partner > s) ++F.gluing_count;

    F.components.resize(an.n_components);
    for (int c = 0; c < an.n_components; ++c) F.components[c].euler_char = an.comp_chi[c];
    for (int p = 0; p < (int)F.complex.polys.size(); ++p)
        F.components[an.poly_comp[p]].pieces.push_back(p);

    // classify each traced boundary cycle
    std::map<SlotLabel, int> loop_counter;
    for (size_t bi = 0; bi < an.boundary.size(); ++bi) {
        BoundaryCircle bc;
        bc.component = an.boundary_comp[bi];
        std::optional<SlotLabel> slot;
        std::set<int> pts;
        for (int s : an.boundary[bi]) {
            auto it = meta.find(s);
            if (it == meta.end()) continue;
            if (!slot) slot = it->second.slot;
            else internal_check(*slot == it->second.slot, "boundary circle crosses slots");
            for (int p : it->second.points) pts.insert(p);
        }
        internal_check(slot.has_value(), "unlabeled boundary circle");
        bc.slot = *slot;
        bc.points.assign(pts.begin(), pts.end());
        if (bc.points.empty()) bc.loop_order = loop_counter[bc.slot]++;
        F.boundary.push_back(std::move(bc));
        F.components[an.boundary_comp[bi]].boundary.push_back((int)bi);
    }

    // genus from chi and boundary count
    for (auto& comp : F.components) {
        int b = (int)comp.boundary.size();
        int twog = 2 - comp.euler_char - b;
        internal_check(twog >= 0 && twog % 2 == 0, "genus must be a nonnegative integer");
        comp.genus = twog / 2;
    }

    // boundary multiset check against the slot configurations
    for (auto& [slot, cs] : slot_circles) {
        std::vector<std::vector<int>> want, got;
        for (auto& c : cs.circles) want.push_back(c.points);
        for (auto& bc : F.boundary)
            if (bc.slot == slot) got.push_back(bc.points);
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        if (want != got) {
            std::string msg = "boundary circles disagree with slot configuration at " + slot.str() + ": want";
            for (auto& c : want) {
                msg += " [";
                for (int p : c) msg += std::to_string(p) + " ";
                msg += "]";
            }
            msg += " got";
            for (auto& c : got) {
                msg += " [";
                for (int p : c) msg += std::to_string(p) + " ";
                msg += "]";
            }
            internal_check(false, msg.c_str());
        }
    }
    return F;
}

}  // namespace detail

inline FrameSurface build_arc_frame(const std::vector<planar::Matching>& seq) {
    require(!seq.empty(), "arc frame: need at least one matching");
    int n = seq[0].n;
    for (auto& m : seq) {
        planar::validate(m);
        require(m.n == n, "arc frame: mixed matching sizes");
    }
    int bricks = (int)seq.size();
    int m = bricks - 1;

    PolygonComplex px;
    std::map<int, detail::SideMeta> meta;
    auto rails = detail::make_rails(px, 2 * n, bricks);
    for (int p = 0; p < 2 * n; ++p) {
        auto& r = rails[p];
        meta[r.top] = {SlotLabel{SlotLabel::Output, 0}, {p}};
        meta[r.endl] = {SlotLabel{SlotLabel::Output, 0}, {}};
        meta[r.endr] = {SlotLabel{SlotLabel::Output, 0}, {}};
        for (int j = 0; j < (int)r.f.size(); ++j) meta[r.f[j]] = {SlotLabel{SlotLabel::LeftSlot, j + 1}, {p}};
    }
    for (int j = 0; j < bricks; ++j) {
        auto bs = detail::make_bridges(px, rails, seq[j], j);
        int bi = 0;
        for (int p = 0; p < 2 * n; ++p) {
            int q = seq[j].pair[p];
            if (q < p) continue;
            SlotLabel left = j == 0 ? SlotLabel{SlotLabel::Output, 0} : SlotLabel{SlotLabel::LeftSlot, j};
            SlotLabel right = j == m ? SlotLabel{SlotLabel::Output, 0} : SlotLabel{SlotLabel::LeftSlot, j + 1};
            meta[bs[bi].left] = {left, {p, q}};
            meta[bs[bi].right] = {right, {p, q}};
            ++bi;
        }
    }

    std::map<SlotLabel, planar::CircleSet> slot_circles;
    for (int j = 1; j <= m; ++j) slot_circles[SlotLabel{SlotLabel::LeftSlot, j}] = planar::circles(seq[j - 1], seq[j]);
    slot_circles[SlotLabel{SlotLabel::Output, 0}] = planar::circles(seq.front(), seq.back());

    FrameInput in;
    in.tangle = false;
    in.a_seq = seq;
    return detail::finish_frame(std::move(in), std::move(px), meta, slot_circles);
}

// ---------------------------------------------------------------------------
// Tangle frame builder

inline FrameSurface build_tangle_frame(const std::vector<int>& v, const std::vector<int>& w,
                                       const std::vector<planar::Matching>& a_seq, const planar::SliceWord& T,
                                       const std::vector<planar::Matching>& b_seq) {
    planar::validate(T);
    require(!a_seq.empty() && !b_seq.empty(), "tangle frame: need a_k and b_0");
    int N = planar::crossing_count(T);
    require((int)v.size() == N && (int)w.size() == N, "tangle frame: bit vectors must have one entry per crossing");
    for (int i = 0; i < N; ++i) {
        require((v[i] == 0 || v[i] == 1) && (w[i] == 0 || w[i] == 1), "tangle frame: entries must be bits");
        require(v[i] <= w[i], "tangle frame: need v <= w entrywise");
    }
    int twom = T.left_pts, twon = T.right_pts;
    for (auto& a : a_seq) {
        planar::validate(a);
        require(2 * a.n == twom, "tangle frame: left matchings must match the tangle boundary");
    }
    for (auto& b : b_seq) {
        planar::validate(b);
        require(2 * b.n == twon, "tangle frame: right matchings must match the tangle boundary");
    }
    int k = (int)a_seq.size() - 1, l = (int)b_seq.size() - 1;

    PolygonComplex px;
    std::map<int, detail::SideMeta> meta;
    SlotLabel out{SlotLabel::Output, 0}, tv{SlotLabel::TvSlot, 0};

    auto lrails = detail::make_rails(px, twom, k + 1);
    for (int p = 0; p < twom; ++p) {
        auto& r = lrails[p];
        meta[r.top] = {out, {p}};
        meta[r.endl] = {out, {}};
        for (int j = 0; j < (int)r.f.size(); ++j) meta[r.f[j]] = {SlotLabel{SlotLabel::LeftSlot, j + 1}, {p}};
    }
    for (int j = 0; j <= k; ++j) {
        auto bs = detail::make_bridges(px, lrails, a_seq[j], j);
        int bi = 0;
        for (int p = 0; p < twom; ++p) {
            int q = a_seq[j].pair[p];
            if (q < p) continue;
            SlotLabel left = j == 0 ? out : SlotLabel{SlotLabel::LeftSlot, j};
            SlotLabel right = j == k ? tv : SlotLabel{SlotLabel::LeftSlot, j + 1};
            meta[bs[bi].left] = {left, {p, q}};
            meta[bs[bi].right] = {right, {p, q}};
            ++bi;
        }
    }

    auto rrails = detail::make_rails(px, twon, l + 1);
    for (int q = 0; q < twon; ++q) {
        auto& r = rrails[q];
        meta[r.top] = {out, {twom + q}};
        meta[r.endr] = {out, {}};
        for (int j = 0; j < (int)r.f.size(); ++j) meta[r.f[j]] = {SlotLabel{SlotLabel::RightSlot, j + 1}, {q}};
    }
    for (int j = 0; j <= l; ++j) {
        auto bs = detail::make_bridges(px, rrails, b_seq[j], j);
        int bi = 0;
        for (int q = 0; q < twon; ++q) {
            int qq = b_seq[j].pair[q];
            if (qq < q) continue;
            // right slots live in their own 0..2n-1 labels; tv and output use
            // the combined labeling with right points shifted by 2m
            SlotLabel left = j == 0 ? tv : SlotLabel{SlotLabel::RightSlot, j};
            SlotLabel right = j == l ? out : SlotLabel{SlotLabel::RightSlot, j + 1};
            std::vector<int> lpts = j == 0 ? std::vector<int>{twom + q, twom + qq} : std::vector<int>{q, qq};
            std::vector<int> rpts = j == l ? std::vector<int>{twom + q, twom + qq} : std::vector<int>{q, qq};
            meta[bs[bi].left] = {left, lpts};
            meta[bs[bi].right] = {right, rpts};
            ++bi;
        }
    }

    // middle regions, one per slice (plus one pass-through region if empty)
    auto square = [&](int pos, std::vector<int>& lsock, std::vector<int>& rsock) {
        int vl = px.new_side(), vr = px.new_side(), top = px.new_side(), bot = px.new_side();
        if (pos % 2 == 0)
            px.add_polygon({vl, top, vr, bot});
        else
            px.add_polygon({vl, bot, vr, top});
        meta[top] = {out, {}};
        meta[bot] = {tv, {}};
        lsock[pos] = vl;
        rsock[pos] = vr;
        return std::pair{top, bot};
    };

    std::vector<int> prev_right;  // sockets awaiting gluing, per position
    auto flush = [&](std::vector<int>& left_sock) {
        if (prev_right.empty()) {
            // leftmost region: glue to left rail ends
            internal_check((int)left_sock.size() == twom, "left socket count");
            for (int p = 0; p < twom; ++p) px.glue(lrails[p].endr, left_sock[p]);
        } else {
            internal_check(prev_right.size() == left_sock.size(), "socket mismatch");
            for (size_t s = 0; s < left_sock.size(); ++s) px.glue(prev_right[s], left_sock[s]);
        }
    };

    int cur = twom;
    bool first = true;
    auto region = [&](const planar::Slice* sl) {
        int in_cnt = cur;
        int out_cnt = cur;
        std::vector<int> lsock(in_cnt, -1), rsock;
        std::optional<int> vbit, wbit;
        if (sl) switch (sl->kind) {
                case planar::SliceKind::Id:
                    break;
                case planar::SliceKind::Cup:
                    out_cnt += 2;
                    break;
                case planar::SliceKind::Cap:
                    out_cnt -= 2;
                    break;
                case planar::SliceKind::Cross:
                    vbit = v[sl->cross_index - 1];
                    wbit = w[sl->cross_index - 1];
                    break;
            }
        rsock.assign(out_cnt, -1);
        if (!sl || sl->kind == planar::SliceKind::Id) {
            for (int s = 0; s < in_cnt; ++s) square(s, lsock, rsock);
        } else if (sl->kind == planar::SliceKind::Cup) {
            int pos = sl->pos;
            for (int s = 0; s < in_cnt; ++s) {
                std::vector<int> tmpl(in_cnt, -1), tmpr(out_cnt, -1);
                square(s, tmpl, tmpr);  // build at in-parity s
                lsock[s] = tmpl[s];
                rsock[s < pos ? s : s + 2] = tmpr[s];
            }
            int vr1 = px.new_side(), vr2 = px.new_side(), top = px.new_side(), bot = px.new_side();
            if (pos % 2 == 0)
                px.add_polygon({vr1, bot, vr2, top});
            else
                px.add_polygon({top, vr2, bot, vr1});
            meta[top] = {out, {}};
            meta[bot] = {tv, {}};
            rsock[pos] = vr1;
            rsock[pos + 1] = vr2;
        } else if (sl->kind == planar::SliceKind::Cap) {
            int pos = sl->pos;
            for (int s = 0; s < in_cnt; ++s) {
                if (s == pos || s == pos + 1) continue;
                std::vector<int> tmpl(in_cnt, -1), tmpr(in_cnt, -1);
                square(s, tmpl, tmpr);
                lsock[s] = tmpl[s];
                rsock[s < pos ? s : s - 2] = tmpr[s];
            }
            int vl1 = px.new_side(), vl2 = px.new_side(), top = px.new_side(), bot = px.new_side();
            if (pos % 2 == 0)
                px.add_polygon({vl1, top, vl2, bot});
            else
                px.add_polygon({bot, vl2, top, vl1});
            meta[top] = {out, {}};
            meta[bot] = {tv, {}};
            lsock[pos] = vl1;
            lsock[pos + 1] = vl2;
        } else {
            int pos = sl->pos;
            for (int s = 0; s < in_cnt; ++s) {
                if (s == pos || s == pos + 1) continue;
                std::vector<int> tmpl(in_cnt, -1), tmpr(in_cnt, -1);
                square(s, tmpl, tmpr);
                lsock[s] = tmpl[s];
                rsock[s] = tmpr[s];
            }
            if (*vbit == *wbit && *vbit == 0) {
                std::vector<int> tmpl(in_cnt, -1), tmpr(in_cnt, -1);
                square(pos, tmpl, tmpr);
                lsock[pos] = tmpl[pos];
                rsock[pos] = tmpr[pos];
                square(pos + 1, tmpl, tmpr);
                lsock[pos + 1] = tmpl[pos + 1];
                rsock[pos + 1] = tmpr[pos + 1];
            } else if (*vbit == *wbit) {
                // resolved to cap then cup inside one region
                int vl1 = px.new_side(), vl2 = px.new_side(), ctop = px.new_side(), cbot = px.new_side();
                if (pos % 2 == 0)
                    px.add_polygon({vl1, ctop, vl2, cbot});
                else
                    px.add_polygon({cbot, vl2, ctop, vl1});
                meta[ctop] = {out, {}};
                meta[cbot] = {tv, {}};
                lsock[pos] = vl1;
                lsock[pos + 1] = vl2;
                int vr1 = px.new_side(), vr2 = px.new_side(), utop = px.new_side(), ubot = px.new_side();
                if (pos % 2 == 0)
                    px.add_polygon({vr1, ubot, vr2, utop});
                else
                    px.add_polygon({utop, vr2, ubot, vr1});
                meta[utop] = {out, {}};
                meta[ubot] = {tv, {}};
                rsock[pos] = vr1;
                rsock[pos + 1] = vr2;
            } else {
                // saddle cell
                int vl1 = px.new_side(), vl2 = px.new_side(), vr1 = px.new_side(), vr2 = px.new_side();
                int capa = px.new_side(), cupa = px.new_side(), bot1 = px.new_side(), bot2 = px.new_side();
                if (pos % 2 == 1)
                    px.add_polygon({bot1, vr1, cupa, vr2, bot2, vl2, capa, vl1});
                else
                    px.add_polygon({vl1, capa, vl2, bot2, vr2, cupa, vr1, bot1});
                meta[capa] = {out, {}};
                meta[cupa] = {out, {}};
                meta[bot1] = {tv, {}};
                meta[bot2] = {tv, {}};
                lsock[pos] = vl1;
                lsock[pos + 1] = vl2;
                rsock[pos] = vr1;
                rsock[pos + 1] = vr2;
            }
        }
        flush(lsock);
        prev_right = rsock;
        cur = out_cnt;
        first = false;
    };

    if (T.slices.empty()) {
        if (twom > 0) region(nullptr);
    } else {
        for (auto& sl : T.slices) region(&sl);
    }
    internal_check(cur == twon, "middle strand count");
    if (twon > 0) {
        if (prev_right.empty() && twom == 0) {
            internal_check(false, "strands appeared from nowhere");
        }
        for (int q = 0; q < twon; ++q) px.glue(prev_right[q], rrails[q].endl);
    }

    // free loops carried by the word
    for (int i = 0; i < T.closed_loops; ++i) {
        int va = px.new_side(), vb = px.new_side(), va2 = px.new_side(), vb2 = px.new_side();
        int t1 = px.new_side(), b1 = px.new_side(), t2 = px.new_side(), b2 = px.new_side();
        px.add_polygon({va, t1, vb, b1});
        px.add_polygon({vb2, t2, va2, b2});
        px.glue(va, va2);
        px.glue(vb, vb2);
        meta[t1] = {out, {}};
        meta[t2] = {out, {}};
        meta[b1] = {tv, {}};
        meta[b2] = {tv, {}};
    }

    std::map<SlotLabel, planar::CircleSet> slot_circles;
    for (int j = 1; j <= k; ++j)
        slot_circles[SlotLabel{SlotLabel::LeftSlot, j}] = planar::circles(a_seq[j - 1], a_seq[j]);
    for (int j = 1; j <= l; ++j)
        slot_circles[SlotLabel{SlotLabel::RightSlot, j}] = planar::circles(b_seq[j - 1], b_seq[j]);
    slot_circles[tv] = planar::circles_with_tangle(a_seq.back(), planar::resolve(T, v), b_seq.front());
    slot_circles[out] = planar::circles_with_tangle(a_seq.front(), planar::resolve(T, w), b_seq.back());

    FrameInput in;
    in.tangle = true;
    in.a_seq = a_seq;
    in.b_seq = b_seq;
    in.T = T;
    in.v = v;
    in.w = w;
    return detail::finish_frame(std::move(in), std::move(px), meta, slot_circles);
}

// ---------------------------------------------------------------------------
// Saddle decomposition

namespace detail {

struct NodeSpace {
    // rank layout: left slots, TVL, corners, TVR, right slots, virtual
    int twom = 0, twon = 0, k = 0, l = 0, ncross = 0;
    int base_tvl = 0, base_corner = 0, base_tvr = 0, base_right = 0, base_virtual = 0;
    int next_virtual = 0;

    void init(int tm, int tn, int kk, int ll, int nc) {
        twom = tm;
        twon = tn;
        k = kk;
        l = ll;
        ncross = nc;
        base_tvl = k * twom;
        base_corner = base_tvl + twom;
        base_tvr = base_corner + 4 * ncross;
        base_right = base_tvr + twon;
        base_virtual = base_right + l * twon;
        next_virtual = base_virtual;
    }
    int left(int slot, int p) const { return (slot - 1) * twom + p; }   // slot 1..k
    int tvl(int p) const { return base_tvl + p; }
    int corner(int c, int which) const { return base_corner + 4 * (c - 1) + which; }  // 0=LL 1=LU 2=RL 3=RU
    int tvr(int q) const { return base_tvr + q; }
    int right(int slot, int q) const { return base_right + (slot - 1) * twon + q; }  // slot 1..l
    int fresh_virtual() { return next_virtual++; }
};

}  // namespace detail

inline SaddleDecomposition saddle_decompose(const FrameSurface& F) {
    using planar::SliceKind;
    SaddleDecomposition D;
    detail::Machine M;
    detail::NodeSpace ns;

    const auto& in = F.input;
    int twom, twon, k, l, N = 0;
    if (in.tangle) {
        twom = in.T.left_pts;
        twon = in.T.right_pts;
        k = (int)in.a_seq.size() - 1;
        l = (int)in.b_seq.size() - 1;
        N = planar::crossing_count(in.T);
    } else {
        twom = twon = 2 * in.a_seq[0].n;
        k = (int)in.a_seq.size() - 1;
        l = 0;
    }
    ns.init(twom, twon, std::max(k, in.tangle ? k : 1), l, N);

    // --- build the initial 1-manifold
    auto left_node = [&](int slot, int p) { return in.tangle && slot == k + 1 ? ns.tvl(p) : ns.left(slot, p); };

    // edge tags: left slot j upper = 2j, lower = 2j+1 (TV counts as slot k+1);
    // right side offset by RBASE
    constexpr int RBASE = 1 << 20;
    if (!in.tangle) {
        // arc frame on slots 1..m; slot j carries a_{j-1} (upper) and a_j (lower)
        int m = (int)in.a_seq.size() - 1;
        for (int j = 1; j <= m; ++j)
            for (int p = 0; p < twom; ++p) {
                int q0 = in.a_seq[j - 1].pair[p], q1 = in.a_seq[j].pair[p];
                if (p < q0) M.add_edge(ns.left(j, p), ns.left(j, q0), 2 * j);
                if (p < q1) M.add_edge(ns.left(j, p), ns.left(j, q1), 2 * j + 1);
            }
    } else {
        for (int j = 1; j <= k; ++j)
            for (int p = 0; p < twom; ++p) {
                int q0 = in.a_seq[j - 1].pair[p], q1 = in.a_seq[j].pair[p];
                if (p < q0) M.add_edge(ns.left(j, p), ns.left(j, q0), 2 * j);
                if (p < q1) M.add_edge(ns.left(j, p), ns.left(j, q1), 2 * j + 1);
            }
        // a_k on TVL (upper layer of the TV slot), b_0 on TVR (its lower layer)
        for (int p = 0; p < twom; ++p)
            if (p < in.a_seq.back().pair[p]) M.add_edge(ns.tvl(p), ns.tvl(in.a_seq.back().pair[p]), 2 * (k + 1));
        for (int q = 0; q < twon; ++q)
            if (q < in.b_seq.front().pair[q]) M.add_edge(ns.tvr(q), ns.tvr(in.b_seq.front().pair[q]), RBASE + 1);
        for (int j = 1; j <= l; ++j)
            for (int q = 0; q < twon; ++q) {
                int q0 = in.b_seq[j - 1].pair[q], q1 = in.b_seq[j].pair[q];
                if (q < q0) M.add_edge(ns.right(j, q), ns.right(j, q0), RBASE + 2 * j);
                if (q < q1) M.add_edge(ns.right(j, q), ns.right(j, q1), RBASE + 2 * j + 1);
            }
        // T_v strand structure with corner gadgets at every crossing
        std::vector<int> anchor;
        for (int p = 0; p < twom; ++p) anchor.push_back(ns.tvl(p));
        for (auto& sl : in.T.slices) {
            switch (sl.kind) {
                case SliceKind::Id:
                    break;
                case SliceKind::Cup: {
                    int u = ns.fresh_virtual();
                    anchor.insert(anchor.begin() + sl.pos, 2, u);
                    break;
                }
                case SliceKind::Cap: {
                    M.add_edge(anchor[sl.pos], anchor[sl.pos + 1]);
                    anchor.erase(anchor.begin() + sl.pos, anchor.begin() + sl.pos + 2);
                    break;
                }
                case SliceKind::Cross: {
                    int c = sl.cross_index;
                    int LL = ns.corner(c, 0), LU = ns.corner(c, 1), RL = ns.corner(c, 2), RU = ns.corner(c, 3);
                    M.add_edge(anchor[sl.pos], LL);
                    M.add_edge(anchor[sl.pos + 1], LU);
                    if (in.v[c - 1] == 0) {
                        M.add_edge(LL, RL);
                        M.add_edge(LU, RU);
                    } else {
                        M.add_edge(LL, LU);
                        M.add_edge(RL, RU);
                    }
                    anchor[sl.pos] = RL;
                    anchor[sl.pos + 1] = RU;
                    break;
                }
            }
        }
        for (int q = 0; q < twon; ++q) M.add_edge(anchor[q], ns.tvr(q));
        for (int i = 0; i < in.T.closed_loops; ++i) {
            int u = ns.fresh_virtual();
            M.add_edge(u, u);
        }
    }

    // --- circle registry helpers
    auto points_of = [&](const std::vector<int>& nodes) {
        std::vector<int> pts;
        for (int nd : nodes) {
            if (!in.tangle) {
                pts.push_back(nd % twom);
            } else {
                if (nd < ns.base_tvl) pts.push_back(nd % twom);
                else if (nd >= ns.base_tvl && nd < ns.base_corner) pts.push_back(nd - ns.base_tvl);
                else if (nd >= ns.base_tvr && nd < ns.base_right) pts.push_back(twom + (nd - ns.base_tvr));
                else if (nd >= ns.base_right && nd < ns.base_virtual) pts.push_back(twom + (nd - ns.base_right) % twon);
            }
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        return pts;
    };
    auto slot_of_nodes = [&](const std::vector<int>& nodes) -> SlotLabel {
        // slot of an *initial* circle
        int nd = nodes[0];
        if (!in.tangle) return SlotLabel{SlotLabel::LeftSlot, nd / twom + 1};
        if (nd < ns.base_tvl) return SlotLabel{SlotLabel::LeftSlot, nd / twom + 1};
        if (nd < ns.base_right) return SlotLabel{SlotLabel::TvSlot, 0};
        if (nd < ns.base_virtual) return SlotLabel{SlotLabel::RightSlot, (nd - ns.base_right) / twon + 1};
        return SlotLabel{SlotLabel::TvSlot, 0};
    };

    auto sig_of = [&](const std::vector<int>& nodes) {
        std::vector<int> sig;
        if (!in.tangle) return sig;
        for (int nd : nodes) {
            if (nd >= ns.base_corner && nd < ns.base_tvr) sig.push_back(nd - ns.base_corner);
            else if (nd >= ns.base_virtual) sig.push_back(4 * ns.ncross + (nd - ns.base_virtual));
        }
        std::sort(sig.begin(), sig.end());
        return sig;
    };

    std::map<std::vector<int>, int> alive;  // node set -> circle index
    auto register_circle = [&](std::vector<int> nodes, int creator) {
        CircleRec r;
        r.nodes = std::move(nodes);
        r.creator = creator;
        r.points = points_of(r.nodes);
        r.sig = sig_of(r.nodes);
        int idx = (int)D.circles.size();
        D.circles.push_back(std::move(r));
        alive[D.circles[idx].nodes] = idx;
        return idx;
    };

    for (auto& nodes : M.cycles()) {
        int idx = register_circle(nodes, -1);
        auto& r = D.circles[idx];
        r.is_input = true;
        r.slot = slot_of_nodes(r.nodes);
        // right slots live in their own 0..2n-1 labels
        if (r.slot.kind == SlotLabel::RightSlot)
            for (auto& p : r.points) p -= twom;
        D.inputs.push_back(idx);
    }

    // --- event execution
    auto run_surgery = [&](int e1, int e2, std::pair<int, int> add1, std::pair<int, int> add2, const std::string& desc) {
        std::set<std::vector<int>> touched;
        for (auto& [nodes, idx] : alive) {
            auto has = [&](int nd) { return std::binary_search(nodes.begin(), nodes.end(), nd); };
            if (has(M.edges[e1].u) || has(M.edges[e1].v) || has(M.edges[e2].u) || has(M.edges[e2].v))
                touched.insert(nodes);
        }
        internal_check(touched.size() >= 1 && touched.size() <= 2, "surgery must touch 1 or 2 circles");
        SaddleEvent ev;
        ev.kind = touched.size() == 2 ? SaddleEvent::Merge : SaddleEvent::Split;
        ev.desc = desc;
        int ev_idx = (int)D.steps.size();
        std::set<int> affected_nodes;
        for (auto& nodes : touched) {
            int idx = alive[nodes];
            ev.in.push_back(idx);
            D.circles[idx].consumer = ev_idx;
            alive.erase(nodes);
            for (int nd : nodes) affected_nodes.insert(nd);
        }
        M.kill(e1);
        M.kill(e2);
        M.add_edge(add1.first, add1.second);
        M.add_edge(add2.first, add2.second);
        // re-walk only cycles through affected nodes
        for (auto& nodes : M.cycles()) {
            if (!affected_nodes.count(nodes[0])) continue;
            if (alive.count(nodes)) continue;
            int idx = register_circle(nodes, ev_idx);
            ev.out.push_back(idx);
        }
        internal_check((ev.kind == SaddleEvent::Merge && ev.out.size() == 1) ||
                           (ev.kind == SaddleEvent::Split && ev.out.size() == 2),
                       "surgery arity");
        D.steps.push_back(std::move(ev));
    };

    if (!in.tangle) {
        int m = (int)in.a_seq.size() - 1;
        if (m == 0) {
            // births: one disk per arc of the single matching
            const auto& a = in.a_seq[0];
            for (int p = 0; p < twom; ++p) {
                int q = a.pair[p];
                if (q < p) continue;
                M.add_edge(ns.left(1, p), ns.left(1, q));
                M.add_edge(ns.left(1, p), ns.left(1, q));
                SaddleEvent ev;
                ev.kind = SaddleEvent::Birth;
                ev.desc = "birth arc " + std::to_string(p + 1) + "-" + std::to_string(q + 1);
                int idx = register_circle({ns.left(1, p), ns.left(1, q)}, (int)D.steps.size());
                ev.out.push_back(idx);
                D.steps.push_back(std::move(ev));
            }
        }
        for (int j = 1; j < m; ++j) {
            const auto& aj = in.a_seq[j];
            for (int p = 0; p < twom; ++p) {
                int q = aj.pair[p];
                if (q < p) continue;
                int e1 = M.find_alive(ns.left(j, p), ns.left(j, q), 2 * j + 1);
                int e2 = M.find_alive(ns.left(j + 1, p), ns.left(j + 1, q), 2 * (j + 1));
                internal_check(e1 >= 0 && e2 >= 0, "missing contraction arcs");
                run_surgery(e1, e2, {ns.left(j, p), ns.left(j + 1, p)}, {ns.left(j, q), ns.left(j + 1, q)},
                            "contract a" + std::to_string(j) + " arc " + std::to_string(p + 1) + "-" +
                                std::to_string(q + 1));
            }
        }
    } else {
        for (int j = 1; j <= k; ++j) {
            const auto& aj = in.a_seq[j];
            for (int p = 0; p < twom; ++p) {
                int q = aj.pair[p];
                if (q < p) continue;
                int lo_p = ns.left(j, p), lo_q = ns.left(j, q);
                int hi_p = left_node(j + 1, p), hi_q = left_node(j + 1, q);
                int e1 = M.find_alive(lo_p, lo_q, 2 * j + 1);
                int e2 = M.find_alive(hi_p, hi_q, 2 * (j + 1));
                internal_check(e1 >= 0 && e2 >= 0, "missing left contraction arcs");
                run_surgery(e1, e2, {lo_p, hi_p}, {lo_q, hi_q},
                            "contract a" + std::to_string(j) + " arc " + std::to_string(p + 1) + "-" +
                                std::to_string(q + 1));
            }
        }
        for (int c = 1; c <= N; ++c) {
            if (!(in.v[c - 1] == 0 && in.w[c - 1] == 1)) continue;
            int LL = ns.corner(c, 0), LU = ns.corner(c, 1), RL = ns.corner(c, 2), RU = ns.corner(c, 3);
            int e1 = M.find_alive(LL, RL, -1), e2 = M.find_alive(LU, RU, -1);
            internal_check(e1 >= 0 && e2 >= 0, "missing crossing strands");
            run_surgery(e1, e2, {LL, LU}, {RL, RU}, "saddle at crossing " + std::to_string(c));
        }
        for (int j = 0; j < l; ++j) {
            const auto& bj = in.b_seq[j];
            for (int q = 0; q < twon; ++q) {
                int qq = bj.pair[q];
                if (qq < q) continue;
                int lo_q = j == 0 ? ns.tvr(q) : ns.right(j, q);
                int lo_qq = j == 0 ? ns.tvr(qq) : ns.right(j, qq);
                int hi_q = ns.right(j + 1, q), hi_qq = ns.right(j + 1, qq);
                int e1 = M.find_alive(lo_q, lo_qq, RBASE + 2 * j + 1);
                int e2 = M.find_alive(hi_q, hi_qq, RBASE + 2 * (j + 1));
                internal_check(e1 >= 0 && e2 >= 0, "missing right contraction arcs");
                run_surgery(e1, e2, {lo_q, hi_q}, {lo_qq, hi_qq},
                            "contract b" + std::to_string(j) + " arc " + std::to_string(q + 1) + "-" +
                                std::to_string(qq + 1));
            }
        }
    }

    for (auto& [nodes, idx] : alive) {
        D.circles[idx].is_output = true;
        D.outputs.push_back(idx);
    }

    // --- gluing graph and per-component genus
    int E = (int)D.steps.size(), C = (int)D.circles.size();
    planar::detail::UF uf(E + C);
    for (int ci = 0; ci < C; ++ci) {
        auto& r = D.circles[ci];
        if (r.creator >= 0) uf.unite(E + ci, r.creator);
        if (r.consumer >= 0) uf.unite(E + ci, r.consumer);
        if (r.creator >= 0 && r.consumer >= 0) D.graph.edge_circles.push_back(ci);
    }
    std::map<int, int> root2comp;
    auto comp_of = [&](int x) {
        int r = uf.find(x);
        auto it = root2comp.find(r);
        if (it == root2comp.end()) it = root2comp.emplace(r, (int)root2comp.size()).first;
        return it->second;
    };
    D.event_comp.resize(E);
    D.circle_comp.resize(C);
    for (int e = 0; e < E; ++e) D.event_comp[e] = comp_of(e);
    for (int ci = 0; ci < C; ++ci) D.circle_comp[ci] = comp_of(E + ci);
    D.n_components = (int)root2comp.size();

    D.comp_chi.assign(D.n_components, 0);
    std::vector<int> bcount(D.n_components, 0);
    for (int e = 0; e < E; ++e) {
        auto k2 = D.steps[e].kind;
        D.comp_chi[D.event_comp[e]] += (k2 == SaddleEvent::Birth || k2 == SaddleEvent::Death) ? 1 : -1;
    }
    for (int ci = 0; ci < C; ++ci) {
        if (D.circles[ci].is_input) ++bcount[D.circle_comp[ci]];
        if (D.circles[ci].is_output) ++bcount[D.circle_comp[ci]];
    }
    D.comp_genus.assign(D.n_components, 0);
    D.comp_cycle.assign(D.n_components, {});
    for (int c = 0; c < D.n_components; ++c) {
        int twog = 2 - D.comp_chi[c] - bcount[c];
        internal_check(twog >= 0 && twog % 2 == 0, "event genus must be a nonnegative integer");
        D.comp_genus[c] = twog / 2;
    }

    // minimal cycle per genus-1 component: prune leaves of the gluing graph
    // (cycle edges are the circles left after repeatedly removing degree-1 events)
    for (int c = 0; c < D.n_components; ++c) {
        if (D.comp_genus[c] != 1) continue;
        std::map<int, std::vector<int>> inc;  // event -> circle edges
        std::set<int> live_edges;
        for (int ci : D.graph.edge_circles)
            if (D.circle_comp[ci] == c) {
                inc[D.circles[ci].creator].push_back(ci);
                inc[D.circles[ci].consumer].push_back(ci);
                live_edges.insert(ci);
            }
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& [ev, es] : inc) {
                int alive_deg = 0, last = -1;
                for (int ci : es)
                    if (live_edges.count(ci)) {
                        ++alive_deg;
                        last = ci;
                    }
                if (alive_deg == 1) {
                    live_edges.erase(last);
                    changed = true;
                }
            }
        }
        internal_check(!live_edges.empty(), "genus-1 component lost its cycle");
        D.comp_cycle[c].assign(live_edges.begin(), live_edges.end());
    }
    return D;
}

// ---------------------------------------------------------------------------
// Canonical circle indexing for a closed-up tangle configuration a u T_bits u b.
// Point-free loops are identified by the crossing sites and cups they pass,
// matching CircleRec::sig, so bases stay aligned across different frames.

struct ConfigCircle {
    std::vector<int> points;
    std::vector<int> sig;

    bool operator==(const ConfigCircle&) const = default;
};

struct Config {
    std::vector<ConfigCircle> circles;
    int size() const { return (int)circles.size(); }
};

inline Config tv_config(const planar::Matching& a, const planar::SliceWord& T, const std::vector<int>& bits,
                        const planar::Matching& b) {
    using planar::SliceKind;
    planar::validate(T);
    planar::validate(a);
    planar::validate(b);
    int N = planar::crossing_count(T);
    require((int)bits.size() == N, "tv_config: bit vector length mismatch");
    require(2 * a.n == T.left_pts && 2 * b.n == T.right_pts, "tv_config: boundary mismatch");
    int twom = T.left_pts, twon = T.right_pts;
    detail::Machine M;
    auto corner = [&](int c, int which) { return twom + 4 * (c - 1) + which; };
    auto tvr = [&](int q) { return twom + 4 * N + q; };
    int vbase = twom + 4 * N + twon, vnext = vbase;

    for (int p = 0; p < twom; ++p)
        if (p < a.pair[p]) M.add_edge(p, a.pair[p]);
    for (int q = 0; q < twon; ++q)
        if (q < b.pair[q]) M.add_edge(tvr(q), tvr(b.pair[q]));
    std::vector<int> anchor;
    for (int p = 0; p < twom; ++p) anchor.push_back(p);
    for (auto& sl : T.slices) {
        switch (sl.kind) {
            case SliceKind::Id:
                break;
            case SliceKind::Cup:
                anchor.insert(anchor.begin() + sl.pos, 2, vnext++);
                break;
            case SliceKind::Cap:
                M.add_edge(anchor[sl.pos], anchor[sl.pos + 1]);
                anchor.erase(anchor.begin() + sl.pos, anchor.begin() + sl.pos + 2);
                break;
            case SliceKind::Cross: {
                int c = sl.cross_index;
                M.add_edge(anchor[sl.pos], corner(c, 0));
                M.add_edge(anchor[sl.pos + 1], corner(c, 1));
                if (bits[c - 1] == 0) {
                    M.add_edge(corner(c, 0), corner(c, 2));
                    M.add_edge(corner(c, 1), corner(c, 3));
                } else {
                    M.add_edge(corner(c, 0), corner(c, 1));
                    M.add_edge(corner(c, 2), corner(c, 3));
                }
                anchor[sl.pos] = corner(c, 2);
                anchor[sl.pos + 1] = corner(c, 3);
                break;
            }
        }
    }
    for (int q = 0; q < twon; ++q) M.add_edge(anchor[q], tvr(q));
    for (int i = 0; i < T.closed_loops; ++i) {
        int u = vnext++;
        M.add_edge(u, u);
    }

    Config cfg;
    for (auto& nodes : M.cycles()) {
        ConfigCircle c;
        for (int nd : nodes) {
            if (nd < twom) c.points.push_back(nd);
            else if (nd >= twom + 4 * N && nd < vbase) c.points.push_back(twom + (nd - (twom + 4 * N)));
            else if (nd < twom + 4 * N) c.sig.push_back(nd - twom);
            else c.sig.push_back(4 * N + (nd - vbase));
        }
        std::sort(c.points.begin(), c.points.end());
        std::sort(c.sig.begin(), c.sig.end());
        cfg.circles.push_back(std::move(c));
    }
    std::sort(cfg.circles.begin(), cfg.circles.end(), [](const ConfigCircle& x, const ConfigCircle& y) {
        if (x.points.empty() != y.points.empty()) return y.points.empty();
        if (x.points != y.points) return x.points < y.points;
        return x.sig < y.sig;
    });
    return cfg;
}

// Locate a machine circle in a configuration; returns the circle index.
inline int config_index(const Config& cfg, const std::vector<int>& points, const std::vector<int>& sig) {
    for (int i = 0; i < cfg.size(); ++i)
        if (cfg.circles[i].points == points && (points.empty() ? cfg.circles[i].sig == sig : true)) return i;
    fail("config_index: circle not found");
}

}  // namespace arcframe::frames
