#pragma once

// Shape multicategories and their canonical groupoid enrichment: objects,
// unique multimorphisms, decorated rooted plane trees with stump leaves,
// grafting, flattening, and exhaustive tree enumeration for coherence sweeps.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arcframe/common.hpp"
#include "arcframe/planar.hpp"

namespace arcframe::shapes {

// The ambient shape: either the pair multicategory over B_n, or the tangle
// multicategory over (B_m, T, B_n) with crossing states.
struct Context {
    enum Kind { Pairs, Tangle } kind = Pairs;
    int n = 0;               // pairs live in B_n (right side for tangles)
    int m = 0;               // tangle left side B_m
    planar::SliceWord T;     // tangle diagram

    int ncross() const { return kind == Tangle ? planar::crossing_count(T) : 0; }
    bool operator==(const Context& o) const {
        if (kind != o.kind || n != o.n) return false;
        return kind == Pairs || (m == o.m && T == o.T);
    }
};

inline Context pairs_context(int n) {
    Context c;
    c.kind = Context::Pairs;
    c.n = n;
    return c;
}

inline Context tangle_context(int m, int n, const planar::SliceWord& T) {
    planar::validate(T);
    require(T.left_pts == 2 * m && T.right_pts == 2 * n, "tangle context: boundary mismatch");
    Context c;
    c.kind = Context::Tangle;
    c.m = m;
    c.n = n;
    c.T = T;
    return c;
}

struct Object {
    enum Kind { PairM, PairN, Triple } kind = PairN;
    planar::Matching a, b;
    std::vector<int> v;  // Triple only

    bool operator==(const Object&) const = default;
    bool operator<(const Object& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (!(a == o.a)) return a < o.a;
        if (!(b == o.b)) return b < o.b;
        return v < o.v;
    }
    std::string str() const {
        auto pm = [](const planar::Matching& x) {
            std::string s = "[";
            for (int p : x.pair) s += std::to_string(p + 1) + " ";
            s += "]";
            return s;
        };
        std::string s = kind == PairM ? "m" : kind == PairN ? "n" : "t";
        if (kind == Triple) {
            s += "{";
            for (int x : v) s += std::to_string(x);
            s += "}";
        }
        return s + pm(a) + pm(b);
    }
};

inline Object pair_object(const planar::Matching& a, const planar::Matching& b, Object::Kind kind = Object::PairN) {
    require(a.n == b.n, "pair object: size mismatch");
    Object o;
    o.kind = kind;
    o.a = a;
    o.b = b;
    return o;
}

inline Object triple_object(const std::vector<int>& v, const planar::Matching& a, const planar::Matching& b) {
    Object o;
    o.kind = Object::Triple;
    o.a = a;
    o.b = b;
    o.v = v;
    return o;
}

// ---------------------------------------------------------------------------
// Multimorphisms: at most one per valid source/target pair

struct Multimorphism {
    Context ctx;
    std::vector<Object> sources;
    Object target;

    bool operator==(const Multimorphism& o) const {
        return ctx == o.ctx && sources == o.sources && target == o.target;
    }
    bool is_identity() const { return sources.size() == 1 && sources[0] == target; }

    std::string str() const {
        std::string s = "(";
        for (auto& x : sources) s += x.str() + " ";
        return s + ") -> " + target.str();
    }
};

// whether the unique multimorphism from `sources` exists, and its target
inline std::optional<Object> chain_target(const Context& ctx, const std::vector<Object>& sources,
                                          const std::vector<int>* w_arrow = nullptr) {
    // pure pair chains of one kind
    auto pair_chain = [&](Object::Kind kind, int npts) -> std::optional<Object> {
        if (sources.empty()) return std::nullopt;  // empty chains handled by caller per anchor object
        planar::Matching first = sources[0].a, last = sources[0].b;
        for (size_t i = 0; i < sources.size(); ++i) {
            if (sources[i].kind != kind) return std::nullopt;
            if (2 * sources[i].a.n != npts) return std::nullopt;
            if (i && !(sources[i].a == last)) return std::nullopt;
            last = sources[i].b;
        }
        return pair_object(first, last, kind);
    };
    if (ctx.kind == Context::Pairs) {
        if (w_arrow) return std::nullopt;
        return pair_chain(Object::PairN, 2 * ctx.n);
    }
    // tangle case: all PairM, all PairN, or pairs-triple-pairs
    bool has_triple = false;
    for (auto& s : sources) has_triple |= s.kind == Object::Triple;
    if (!has_triple) {
        if (w_arrow) return std::nullopt;
        if (!sources.empty() && sources[0].kind == Object::PairM) return pair_chain(Object::PairM, 2 * ctx.m);
        return pair_chain(Object::PairN, 2 * ctx.n);
    }
    size_t ti = 0;
    int tcount = 0;
    for (size_t i = 0; i < sources.size(); ++i)
        if (sources[i].kind == Object::Triple) {
            ti = i;
            ++tcount;
        }
    if (tcount != 1) return std::nullopt;
    const Object& tr = sources[ti];
    planar::Matching a0 = tr.a, bl = tr.b;
    for (size_t i = 0; i < ti; ++i) {
        size_t j = ti - 1 - i;  // walk left part right-to-left
        if (sources[j].kind != Object::PairM) return std::nullopt;
        if (!(sources[j].b == a0)) return std::nullopt;
        a0 = sources[j].a;
    }
    for (size_t j = ti + 1; j < sources.size(); ++j) {
        if (sources[j].kind != Object::PairN) return std::nullopt;
        if (!(sources[j].a == bl)) return std::nullopt;
        bl = sources[j].b;
    }
    std::vector<int> w = w_arrow ? *w_arrow : tr.v;
    if ((int)w.size() != ctx.ncross()) return std::nullopt;
    for (int i = 0; i < ctx.ncross(); ++i)
        if (tr.v[i] > w[i]) return std::nullopt;
    return triple_object(w, a0, bl);
}

inline std::optional<Multimorphism> make_morphism(const Context& ctx, const std::vector<Object>& sources,
                                                  const Object& target) {
    if (sources.empty()) {
        // 0-input morphisms exist exactly for targets (a,a)
        if (target.kind == Object::Triple) return std::nullopt;
        if (!(target.a == target.b)) return std::nullopt;
        return Multimorphism{ctx, sources, target};
    }
    std::optional<Object> t;
    if (target.kind == Object::Triple)
        t = chain_target(ctx, sources, &target.v);
    else
        t = chain_target(ctx, sources);
    if (!t || !(*t == target)) return std::nullopt;
    return Multimorphism{ctx, sources, target};
}

// ---------------------------------------------------------------------------
// Decorated trees

struct Tree {
    // nullopt decoration = bare edge (the identity 1-multimorphism of obj)
    struct Node {
        Multimorphism mor;
        std::vector<Tree> children;  // one per source of mor
    };
    std::shared_ptr<Node> node;  // shared for cheap copies; treated immutably
    Object obj;                  // the root edge object

    bool is_edge() const { return !node; }
    int vertex_count() const {
        if (!node) return 0;
        int c = 1;
        for (auto& ch : node->children) c += ch.vertex_count();
        return c;
    }
    void sources_into(std::vector<Object>& out) const {
        if (!node) {
            out.push_back(obj);
            return;
        }
        for (auto& ch : node->children) ch.sources_into(out);
    }
    std::vector<Object> sources() const {
        std::vector<Object> out;
        sources_into(out);
        return out;
    }
    std::string str() const {
        if (!node) return "e" + obj.str();
        std::string s = "v(" + obj.str() + ")[";
        for (auto& ch : node->children) s += ch.str() + " ";
        return s + "]";
    }
    bool operator==(const Tree& o) const { return str() == o.str(); }
    bool operator<(const Tree& o) const { return str() < o.str(); }
};

inline Tree edge_tree(const Object& obj) {
    Tree t;
    t.obj = obj;
    return t;
}

inline Tree make_vertex(const Multimorphism& mor, std::vector<Tree> children) {
    require(children.size() == mor.sources.size(), "tree vertex: child count mismatch");
    for (size_t i = 0; i < children.size(); ++i)
        require(children[i].obj == mor.sources[i], "tree vertex: child object mismatch");
    Tree t;
    t.obj = mor.target;
    t.node = std::make_shared<Tree::Node>(Tree::Node{mor, std::move(children)});
    return t;
}

inline Tree basic_tree(const Multimorphism& mor) {
    std::vector<Tree> kids;
    for (auto& s : mor.sources) kids.push_back(edge_tree(s));
    return make_vertex(mor, std::move(kids));
}

// graft child trees onto the leaf edges of the parent, in order
inline Tree graft(const std::vector<Tree>& children, const Tree& parent) {
    size_t pos = 0;
    auto rec = [&](auto&& self, const Tree& t) -> Tree {
        if (t.is_edge()) {
            require(pos < children.size(), "graft: too few children");
            const Tree& c = children[pos++];
            require(c.obj == t.obj, "graft: output object mismatch");
            return c;
        }
        std::vector<Tree> kids;
        for (auto& ch : t.node->children) kids.push_back(self(self, ch));
        return make_vertex(t.node->mor, std::move(kids));
    };
    Tree out = rec(rec, parent);
    require(pos == children.size(), "graft: too many children");
    return out;
}

inline Multimorphism flatten(const Tree& t) {
    // trees are well-formed by construction, so the composite is forced
    auto srcs = t.sources();
    Context ctx;
    if (t.is_edge()) {
        // bare edge: identity; context unknown from the edge alone, so build a
        // minimal pairs/tangle context from the object
        fail("flatten: bare edges carry no context; flatten vertices instead");
    }
    ctx = t.node->mor.ctx;
    auto mor = make_morphism(ctx, srcs, t.obj);
    internal_check(mor.has_value(), "flatten: tree does not compose");
    return *mor;
}

inline Multimorphism flatten(const Tree& t, const Context& ctx) {
    if (t.is_edge()) {
        auto mor = make_morphism(ctx, {t.obj}, t.obj);
        internal_check(mor.has_value(), "flatten: invalid identity");
        return *mor;
    }
    return flatten(t);
}

// change-of-tree 2-morphisms exist exactly between trees with equal flattening
inline bool change_of_tree_exists(const Tree& from, const Tree& to, const Context& ctx) {
    return flatten(from, ctx) == flatten(to, ctx);
}

// ---------------------------------------------------------------------------
// Tree enumeration

// all decorated trees flattening to mor with at most max_vertices vertices
inline std::vector<Tree> enumerate_trees(const Multimorphism& mor, int max_vertices) {
    std::vector<Tree> out;
    if (max_vertices < 0) return out;
    if (mor.is_identity()) out.push_back(edge_tree(mor.target));
    if (max_vertices == 0) return out;

    // root vertex g with j inputs; sources split into j consecutive blocks
    int N = (int)mor.sources.size();
    // intermediate objects are forced for pair chains; for the tangle case the
    // triple's crossing state can take any value between the block's composite
    // and the root's requirement
    struct Part {
        std::vector<std::vector<Object>> blocks;
    };
    std::vector<Part> parts;
    {
        // enumerate numbers of empty blocks inserted between cuts, bounded by budget
        int max_blocks = N + max_vertices;  // each empty block costs a vertex
        std::vector<std::vector<Object>> cur;
        auto rec = [&](auto&& self, int i) -> void {
            if ((int)cur.size() > max_blocks) return;
            if (i == N) {
                parts.push_back(Part{cur});
                // allow trailing empty blocks
                if ((int)cur.size() < max_blocks) {
                    cur.push_back({});
                    self(self, i);
                    cur.pop_back();
                }
                return;
            }
            // start a new block with sources[i]
            cur.push_back({mor.sources[i]});
            int added = 1;
            // extend the last block greedily in all ways: choose block end
            for (int j = i + 1; j <= N; ++j) {
                self(self, j);
                if (j < N) {
                    cur.back().push_back(mor.sources[j]);
                    ++added;
                }
            }
            cur.pop_back();
            (void)added;
            // or insert an empty block before sources[i]
            if ((int)cur.size() < max_blocks) {
                cur.push_back({});
                self(self, i);
                cur.pop_back();
            }
        };
        rec(rec, 0);
    }

    for (auto& part : parts) {
        int j = (int)part.blocks.size();
        if (j == 0) continue;  // handled by 0-input morphism below only if N == 0
        // root sources: one object per block
        // pair blocks: forced; triple blocks: enumerate intermediate states u
        // empty blocks: the anchor object is the neighbouring chain endpoint
        // determine block endpoint objects
        std::vector<std::optional<Object>> block_obj(j);
        // First pass: anchors for empty blocks need the running chain position,
        // which we track while scanning blocks left to right.
        // For pair chains the running position starts at mor.target.a side.
        bool bad = false;
        // compute per-block flattened object candidates
        std::vector<std::vector<Object>> candidates(j);
        // running "current left matching" for anchoring empty blocks: walk
        // through the sources; empty blocks sit at the current boundary
        // position of the chain.
        {
            // reconstruct boundary positions: maintain the object that an empty
            // block at this position would have: (x, x) where x = current left
            // endpoint of the remaining chain (or right endpoint of consumed)
            Object::Kind cur_kind;
            planar::Matching cur_m;
            bool before_triple = true;
            if (mor.target.kind == Object::Triple) {
                cur_kind = Object::PairM;
                cur_m = mor.target.a;
            } else {
                cur_kind = mor.target.kind;
                cur_m = mor.target.a;
            }
            for (int bi = 0; bi < j && !bad; ++bi) {
                auto& blk = part.blocks[bi];
                if (blk.empty()) {
                    candidates[bi].push_back(pair_object(cur_m, cur_m, cur_kind));
                    continue;
                }
                // consistency of the block with the running position
                bool has_triple = false;
                for (auto& o : blk) has_triple |= o.kind == Object::Triple;
                if (has_triple) {
                    auto t0 = chain_target(mor.ctx, blk);
                    if (!t0) {
                        bad = true;
                        break;
                    }
                    // enumerate u between the composed state and target's state
                    std::vector<int> base = t0->v;
                    const std::vector<int>& cap = mor.target.v;
                    std::vector<std::vector<Object>> opts;
                    std::vector<int> u = base;
                    auto gen = [&](auto&& self2, int idx) -> void {
                        if (idx == (int)base.size()) {
                            candidates[bi].push_back(triple_object(u, t0->a, t0->b));
                            return;
                        }
                        u[idx] = base[idx];
                        self2(self2, idx + 1);
                        if (base[idx] == 0 && cap[idx] == 1) {
                            u[idx] = 1;
                            self2(self2, idx + 1);
                            u[idx] = base[idx];
                        }
                    };
                    if (mor.target.kind == Object::Triple) gen(gen, 0);
                    before_triple = false;
                    cur_kind = Object::PairN;
                    cur_m = t0->b;
                } else {
                    auto t0 = chain_target(mor.ctx, blk);
                    if (!t0 || t0->kind != cur_kind || !(t0->a == cur_m)) {
                        bad = true;
                        break;
                    }
                    candidates[bi].push_back(*t0);
                    cur_m = t0->b;
                }
            }
            (void)before_triple;
        }
        if (bad) continue;

        // assemble: pick a candidate per block, then root morphism + children
        std::vector<int> pick(j, 0);
        auto emit = [&](auto&& self, int bi, int budget_used_hint) -> void {
            (void)budget_used_hint;
            if (bi == j) {
                std::vector<Object> root_srcs;
                for (int i2 = 0; i2 < j; ++i2) root_srcs.push_back(candidates[i2][pick[i2]]);
                auto g = make_morphism(mor.ctx, root_srcs, mor.target);
                if (!g) return;
                // children: trees for each block flattening to its morphism
                std::vector<std::vector<Tree>> child_opts(j);
                int budget = max_vertices - 1;
                // simple product enumeration with budget check at the end
                auto rec2 = [&](auto&& self2, int ci, std::vector<Tree>& acc, int used) -> void {
                    if (used > budget) return;
                    if (ci == j) {
                        // skip the trivial regrouping: all children bare edges
                        // reproduces basic_tree(g) only when g == mor
                        out.push_back(graft(acc, basic_tree(*g)));
                        return;
                    }
                    auto fi = make_morphism(mor.ctx, part.blocks[ci], root_srcs[ci]);
                    if (!fi) return;
                    for (auto& t : enumerate_trees(*fi, budget - used)) {
                        acc.push_back(t);
                        self2(self2, ci + 1, acc, used + t.vertex_count());
                        acc.pop_back();
                    }
                };
                std::vector<Tree> acc;
                rec2(rec2, 0, acc, 0);
                return;
            }
            for (pick[bi] = 0; pick[bi] < (int)candidates[bi].size(); ++pick[bi]) self(self, bi + 1, 0);
            pick[bi] = 0;
        };
        emit(emit, 0, 0);
    }

    // the 0-input basic tree when mor itself has no sources
    // (already covered above when j block enumeration yields nothing: N == 0
    // gives parts with only empty blocks; the j == 0 part means the bare
    // 0-input corolla)
    if (N == 0) {
        auto g = make_morphism(mor.ctx, {}, mor.target);
        if (g && max_vertices >= 1) out.push_back(basic_tree(*g));
    }

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    // keep only trees that flatten back to mor and respect the budget
    std::vector<Tree> ok;
    for (auto& t : out)
        if (t.vertex_count() <= max_vertices && flatten(t, mor.ctx) == mor) ok.push_back(t);
    return ok;
}

}  // namespace arcframe::shapes
