#pragma once

// The frame-based multifunctor from shape multicategories into the Burnside
// multicategory: objects to disk bases, basic multimorphisms to
// correspondences via genus and dot counting on frames, trees to composites,
// change-of-tree 2-morphisms to entrywise bijections, plus the machine-checked
// coherence sweep and the mod-2 cube of resolutions.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arcframe/burnside.hpp"
#include "arcframe/common.hpp"
#include "arcframe/f2.hpp"
#include "arcframe/frames.hpp"
#include "arcframe/shapes.hpp"
#include "arcframe/tqft.hpp"

namespace arcframe::lift {

using shapes::Context;
using shapes::Multimorphism;
using shapes::Object;
using shapes::Tree;

// ---------------------------------------------------------------------------
// Objects

inline tqft::DiskSpace object_space(const Context& ctx, const Object& obj) {
    if (obj.kind == Object::Triple) return tqft::triple_space(obj.a, ctx.T, obj.v, obj.b);
    return tqft::pair_space(obj.a, obj.b);
}

inline int phi_object_size(const Context& ctx, const Object& obj) { return object_space(ctx, obj).dim(); }

// ---------------------------------------------------------------------------
// Frames of basic multimorphisms

inline frames::FrameSurface frame_of(const Multimorphism& mor) {
    bool has_triple = mor.target.kind == Object::Triple;
    if (!has_triple) {
        std::vector<planar::Matching> seq;
        if (mor.sources.empty()) {
            seq.push_back(mor.target.a);
        } else {
            seq.push_back(mor.sources[0].a);
            for (auto& s : mor.sources) seq.push_back(s.b);
        }
        return frames::build_arc_frame(seq);
    }
    std::vector<planar::Matching> a_seq, b_seq;
    size_t ti = 0;
    for (size_t i = 0; i < mor.sources.size(); ++i)
        if (mor.sources[i].kind == Object::Triple) ti = i;
    for (size_t i = 0; i < ti; ++i) a_seq.push_back(mor.sources[i].a);
    a_seq.push_back(mor.sources[ti].a);
    b_seq.push_back(mor.sources[ti].b);
    for (size_t i = ti + 1; i < mor.sources.size(); ++i) b_seq.push_back(mor.sources[i].b);
    return frames::build_tangle_frame(mor.sources[ti].v, mor.target.v, a_seq, mor.ctx.T, b_seq);
}

// slot label of source position i
inline frames::SlotLabel slot_of_source(const Multimorphism& mor, int i) {
    using frames::SlotLabel;
    if (mor.target.kind != Object::Triple) return SlotLabel{SlotLabel::LeftSlot, i + 1};
    int ti = 0;
    for (size_t j = 0; j < mor.sources.size(); ++j)
        if (mor.sources[j].kind == Object::Triple) ti = (int)j;
    if (i < ti) return SlotLabel{SlotLabel::LeftSlot, i + 1};
    if (i == ti) return SlotLabel{SlotLabel::TvSlot, 0};
    return SlotLabel{SlotLabel::RightSlot, i - ti};
}

inline std::string context_key(const Context& ctx) {
    std::string k = ctx.kind == Context::Pairs ? "P" : "G";
    k += std::to_string(ctx.n) + "." + std::to_string(ctx.m) + ".";
    if (ctx.kind == Context::Tangle)
        for (auto& s : ctx.T.slices)
            k += std::to_string((int)s.kind) + "," + std::to_string(s.pos) + "," + std::to_string(s.cross_index) + ";";
    return k;
}

namespace detail {

inline std::vector<int> canonical_circle_order(const frames::SaddleDecomposition& D, const std::vector<int>& ids) {
    std::vector<int> out = ids;
    std::sort(out.begin(), out.end(), [&](int x, int y) {
        auto& cx = D.circles[x];
        auto& cy = D.circles[y];
        if (cx.points.empty() != cy.points.empty()) return cy.points.empty();
        if (cx.points != cy.points) return cx.points < cy.points;
        return cx.sig < cy.sig;
    });
    return out;
}

// per slot, the input circle ids in basis order; plus the output circle ids
struct FrameIndex {
    frames::SaddleDecomposition D;
    std::map<frames::SlotLabel, std::vector<int>> slot_circles;
    std::vector<int> output_circles;
    std::vector<int> genus1_comps;  // component ids with genus 1, ascending
};

inline std::string mor_key(const Multimorphism& mor) { return context_key(mor.ctx) + "#" + mor.str(); }

inline const FrameIndex& index_frame(const Multimorphism& mor) {
    static thread_local std::map<std::string, FrameIndex> cache;
    auto key = mor_key(mor);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    FrameIndex fi;
    fi.D = frames::saddle_decompose(frame_of(mor));
    std::map<frames::SlotLabel, std::vector<int>> by_slot;
    for (int idx : fi.D.inputs) by_slot[fi.D.circles[idx].slot].push_back(idx);
    for (auto& [slot, ids] : by_slot) fi.slot_circles[slot] = canonical_circle_order(fi.D, ids);
    fi.output_circles = canonical_circle_order(fi.D, fi.D.outputs);
    for (int c = 0; c < fi.D.n_components; ++c)
        if (fi.D.comp_genus[c] == 1) fi.genus1_comps.push_back(c);
    return cache.emplace(key, std::move(fi)).first->second;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Basic correspondences

inline const burnside::Correspondence& phi_basic(const Multimorphism& mor) {
    static thread_local std::map<std::string, burnside::Correspondence> cache;
    auto cache_key = detail::mor_key(mor);
    if (auto it = cache.find(cache_key); it != cache.end()) return it->second;
    auto finish = [&](burnside::Correspondence c) -> const burnside::Correspondence& {
        return cache.emplace(cache_key, std::move(c)).first->second;
    };
    if (mor.is_identity()) return finish(burnside::identity_correspondence(phi_object_size(mor.ctx, mor.target)));
    const auto& fi = detail::index_frame(mor);
    const auto& D = fi.D;

    burnside::Correspondence out;
    for (auto& s : mor.sources) out.source_sizes.push_back(phi_object_size(mor.ctx, s));
    out.target_size = phi_object_size(mor.ctx, mor.target);

    for (int c = 0; c < D.n_components; ++c)
        if (D.comp_genus[c] >= 2) return finish(std::move(out));  // every entry empty

    int arity = (int)mor.sources.size();
    std::string key = mor.str();

    std::map<int, std::pair<int, int>> in_bit;  // circle -> (source index, bit)
    for (int i = 0; i < arity; ++i) {
        auto slot = slot_of_source(mor, i);
        auto it = fi.slot_circles.find(slot);
        if (it == fi.slot_circles.end()) {
            internal_check(phi_object_size(mor.ctx, mor.sources[i]) == 1, "phi_basic: missing slot");
            continue;
        }
        for (int b = 0; b < (int)it->second.size(); ++b) in_bit[it->second[b]] = {i, b};
    }
    std::map<int, int> out_bit;
    for (int b = 0; b < (int)fi.output_circles.size(); ++b) out_bit[fi.output_circles[b]] = b;

    int g1 = (int)fi.genus1_comps.size();
    for (int row = 0; row < out.target_size; ++row) {
        for (auto& col : out.columns()) {
            std::vector<int> dots(D.n_components, 0);
            for (int idx : D.inputs) {
                auto [src, bit] = in_bit.at(idx);
                dots[D.circle_comp[idx]] += col[src] >> bit & 1;
            }
            for (int idx : D.outputs) dots[D.circle_comp[idx]] += 1 - (row >> out_bit.at(idx) & 1);
            bool ok = true;
            for (int c = 0; c < D.n_components && ok; ++c)
                ok = dots[c] == (D.comp_genus[c] == 0 ? 1 : 0);
            if (!ok) continue;
            for (uint32_t mask = 0; mask < (1u << g1); ++mask) {
                std::vector<int> choice;
                for (int i = 0; i < g1; ++i) choice.push_back(mask >> i & 1);
                out.add(row, col, burnside::basic_token(arity, burnside::Atom{key, row, col, choice}));
            }
        }
    }
    return finish(std::move(out));
}

// ---------------------------------------------------------------------------
// Trees

inline const burnside::Correspondence& phi_tree(const Tree& t, const Context& ctx) {
    static thread_local std::map<std::string, burnside::Correspondence> cache;
    auto key = context_key(ctx) + "#" + t.str();
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    burnside::Correspondence out;
    if (t.is_edge()) {
        out = burnside::identity_correspondence(phi_object_size(ctx, t.obj));
    } else {
        std::vector<burnside::Correspondence> inners;
        for (auto& ch : t.node->children) inners.push_back(phi_tree(ch, ctx));
        out = burnside::compose(phi_basic(t.node->mor), inners);
    }
    return cache.emplace(key, std::move(out)).first->second;
}

// ---------------------------------------------------------------------------
// Change-of-tree bijections

namespace detail {

struct TreeAnalysis {
    struct VertexInfo {
        const Tree::Node* node = nullptr;
        const FrameIndex* fi = nullptr;
        int depth = 0;
        bool identity = false;  // identity-decorated vertices contribute no atoms
    };
    std::vector<VertexInfo> vertices;  // postorder

    struct EdgeInfo {
        int child = -1;   // postorder index of the child subtree's root vertex
        int parent = -1;  // postorder index of the parent vertex
        int parent_slot = -1;
        Object obj;
        int depth = 0;
        int preorder = 0;
        int ncirc = 0;
    };
    std::vector<EdgeInfo> edges;

    struct LeafInfo {
        int parent = -1;
        int parent_slot = -1;
        int source_pos = -1;
        Object obj;
    };
    std::vector<LeafInfo> leaves;

    // for each vertex: edge index below it (from its parent), or -1 for root
    std::vector<int> up_edge;
    // for each vertex and slot: either the edge index (>=0) or ~leaf index
    std::map<std::pair<int, int>, int> slot_to_edge;   // (vertex, slot) -> edge
    std::map<std::pair<int, int>, int> slot_to_leaf;   // (vertex, slot) -> leaf
};

inline TreeAnalysis analyze_tree(const Tree& t, const Context& ctx) {
    internal_check(!t.is_edge(), "analyze_tree: bare edge");
    TreeAnalysis ta;
    int next_pre = 0, next_src = 0;
    auto rec = [&](auto&& self, const Tree& node, int depth) -> int {
        int my_pre = next_pre++;
        std::vector<std::pair<int, int>> child_vertices;
        std::vector<TreeAnalysis::LeafInfo> my_leaves;
        for (size_t s = 0; s < node.node->children.size(); ++s) {
            auto& ch = node.node->children[s];
            if (ch.is_edge()) {
                my_leaves.push_back({-1, (int)s, next_src++, ch.obj});
            } else {
                int ci = self(self, ch, depth + 1);
                child_vertices.emplace_back((int)s, ci);
            }
        }
        TreeAnalysis::VertexInfo vi;
        vi.node = node.node.get();
        vi.identity = node.node->mor.is_identity();
        if (!vi.identity) vi.fi = &index_frame(node.node->mor);
        vi.depth = depth;
        int my_idx = (int)ta.vertices.size();
        ta.vertices.push_back(std::move(vi));
        for (auto& [slot, ci] : child_vertices) {
            TreeAnalysis::EdgeInfo e;
            e.child = ci;
            e.parent = my_idx;
            e.parent_slot = slot;
            e.obj = node.node->mor.sources[slot];
            e.depth = depth + 1;
            e.preorder = my_pre;
            e.ncirc = (int)object_space(ctx, e.obj).config.size();
            ta.slot_to_edge[{my_idx, slot}] = (int)ta.edges.size();
            ta.edges.push_back(std::move(e));
        }
        for (auto& l : my_leaves) {
            auto lf = l;
            lf.parent = my_idx;
            ta.slot_to_leaf[{my_idx, lf.parent_slot}] = (int)ta.leaves.size();
            ta.leaves.push_back(lf);
        }
        return my_idx;
    };
    rec(rec, t, 0);
    ta.up_edge.assign(ta.vertices.size(), -1);
    for (int e = 0; e < (int)ta.edges.size(); ++e) ta.up_edge[ta.edges[e].child] = e;
    return ta;
}

// decode a composite token into one atom per non-identity vertex, postorder
inline std::vector<const burnside::Atom*> decode_atoms(const TreeAnalysis& ta, const burnside::Token& t) {
    std::vector<const burnside::Atom*> atoms_in_order;
    for (auto& it : t)
        if (!it.leaf) atoms_in_order.push_back(&it.atom);
    std::vector<const burnside::Atom*> out(ta.vertices.size(), nullptr);
    size_t k = 0;
    for (size_t v = 0; v < ta.vertices.size(); ++v) {
        if (ta.vertices[v].identity) continue;
        internal_check(k < atoms_in_order.size(), "decode_atoms: not enough atoms");
        out[v] = atoms_in_order[k++];
    }
    internal_check(k == atoms_in_order.size(), "decode_atoms: too many atoms");
    return out;
}

// the intermediate basis element at a tree edge, for a given token: the row of
// the child subtree's root atom, walking through identity vertices
inline int intermediate_row(const TreeAnalysis& ta, const std::vector<const burnside::Atom*>& atoms,
                            const std::vector<int>& col, int edge) {
    int v = ta.edges[edge].child;
    while (ta.vertices[v].identity) {
        // identity vertices have exactly one slot
        auto ite = ta.slot_to_edge.find({v, 0});
        if (ite != ta.slot_to_edge.end()) {
            v = ta.edges[ite->second].child;
            continue;
        }
        auto itl = ta.slot_to_leaf.find({v, 0});
        internal_check(itl != ta.slot_to_leaf.end(), "identity vertex without input");
        return col[ta.leaves[itl->second].source_pos];
    }
    internal_check(atoms[v] != nullptr, "intermediate_row: missing atom");
    return atoms[v]->row;
}

}  // namespace detail

// the bijection phi_{T -> T0} from phi_tree(T) to phi_basic(flatten(T))
inline burnside::EntrywiseBijection phi_to_basic_uncached(const Tree& t, const Context& ctx) {
    using burnside::Token;
    auto mor = shapes::flatten(t, ctx);
    auto AT = phi_tree(t, ctx);
    auto A0 = phi_basic(mor);
    burnside::EntrywiseBijection out;

    if (t.is_edge()) return burnside::EntrywiseBijection::identity(AT);
    if (mor.is_identity()) {
        // the target is the identity correspondence with singleton entries
        for (auto& [k, e] : AT.entries) {
            auto* e0 = A0.entry(k.first, k.second);
            internal_check(e0 && e0->size() == e.size(), "phi_to_basic: identity entry mismatch");
            for (size_t i = 0; i < e.size(); ++i) out.maps[k][e[i]] = (*e0)[i];
        }
        return out;
    }

    auto ta = detail::analyze_tree(t, ctx);
    const auto& fi0 = detail::index_frame(mor);
    std::string key0 = mor.str();
    int arity = (int)mor.sources.size();

    // ---- piece graph: (vertex, component) glued along tree-edge circles
    int stride = 1;
    for (auto& v : ta.vertices)
        if (!v.identity) stride = std::max(stride, v.fi->D.n_components);
    // identity vertices: one piece per circle of their object
    for (auto& v : ta.vertices)
        if (v.identity) stride = std::max(stride, (int)object_space(ctx, v.node->mor.target).config.size());
    int npieces = (int)ta.vertices.size() * stride;
    planar::detail::UF uf(npieces > 0 ? npieces : 1);
    auto pid = [&](int v, int c) { return v * stride + c; };

    // component of the circle at (vertex, slot-or-output, position)
    auto input_comp = [&](int v, int slot, int posn) -> int {
        auto& vi = ta.vertices[v];
        if (vi.identity) return posn;  // annulus per circle
        auto sl = slot_of_source(vi.node->mor, slot);
        auto& ids = vi.fi->slot_circles.at(sl);
        return vi.fi->D.circle_comp[ids[posn]];
    };
    auto output_comp = [&](int v, int posn) -> int {
        auto& vi = ta.vertices[v];
        if (vi.identity) return posn;
        return vi.fi->D.circle_comp[vi.fi->output_circles[posn]];
    };

    for (int e = 0; e < (int)ta.edges.size(); ++e)
        for (int i = 0; i < ta.edges[e].ncirc; ++i)
            uf.unite(pid(ta.edges[e].child, output_comp(ta.edges[e].child, i)),
                     pid(ta.edges[e].parent, input_comp(ta.edges[e].parent, ta.edges[e].parent_slot, i)));

    // ---- match piece classes with the basic frame's components
    std::map<int, int> cls2comp;
    auto learn = [&](int cls, int comp0) {
        auto [it, fresh] = cls2comp.emplace(cls, comp0);
        internal_check(it->second == comp0, "phi_to_basic: inconsistent component matching");
    };
    for (auto& lf : ta.leaves) {
        auto sl0 = slot_of_source(mor, lf.source_pos);
        auto it0 = fi0.slot_circles.find(sl0);
        int nc = (int)object_space(ctx, lf.obj).config.size();
        if (nc == 0) continue;
        internal_check(it0 != fi0.slot_circles.end(), "phi_to_basic: flat slot missing");
        for (int i = 0; i < nc; ++i)
            learn(uf.find(pid(lf.parent, input_comp(lf.parent, lf.parent_slot, i))),
                  fi0.D.circle_comp[it0->second[i]]);
    }
    int root = (int)ta.vertices.size() - 1;
    for (int i = 0; i < (int)fi0.output_circles.size(); ++i)
        learn(uf.find(pid(root, output_comp(root, i))), fi0.D.circle_comp[fi0.output_circles[i]]);

    // ---- per genus-1 component of the basic frame: transport rule
    struct Genus1Rule {
        bool local = false;  // case (i): a vertex piece already has the genus
        int vertex = -1, local_pos = -1;
        int anchor_edge = -1, anchor_circle = -1;  // case (ii) anchor
    };
    std::vector<Genus1Rule> rules(fi0.genus1_comps.size());
    for (size_t gi = 0; gi < fi0.genus1_comps.size(); ++gi) {
        int comp0 = fi0.genus1_comps[gi];
        // collect the class(es) mapping to comp0 and its pieces
        std::set<int> classes;
        for (auto& [cls, c0] : cls2comp)
            if (c0 == comp0) classes.insert(cls);
        Genus1Rule rule;
        for (int v = 0; v < (int)ta.vertices.size() && !rule.local; ++v) {
            if (ta.vertices[v].identity) continue;
            auto& fi = *ta.vertices[v].fi;
            for (size_t li = 0; li < fi.genus1_comps.size(); ++li)
                if (classes.count(uf.find(pid(v, fi.genus1_comps[li])))) {
                    rule.local = true;
                    rule.vertex = v;
                    rule.local_pos = (int)li;
                    break;
                }
        }
        if (!rule.local) {
            // tree-level cycle: prune leaves of the piece multigraph restricted
            // to this class; surviving edges are the cycle
            struct CEdge {
                int e, i, u, w;
            };
            std::vector<CEdge> ces;
            std::map<int, int> degree;
            for (int e = 0; e < (int)ta.edges.size(); ++e)
                for (int i = 0; i < ta.edges[e].ncirc; ++i) {
                    int u = uf.find(pid(ta.edges[e].child, output_comp(ta.edges[e].child, i)));
                    if (!classes.count(u)) continue;
                    int a = pid(ta.edges[e].child, output_comp(ta.edges[e].child, i));
                    int b = pid(ta.edges[e].parent, input_comp(ta.edges[e].parent, ta.edges[e].parent_slot, i));
                    ces.push_back({e, i, a, b});
                }
            // vertices of this graph are pieces (not classes)
            std::set<int> alive;
            for (size_t ce = 0; ce < ces.size(); ++ce) alive.insert((int)ce);
            auto deg = [&](int piece) {
                int d = 0;
                for (int ce : alive) d += (ces[ce].u == piece) + (ces[ce].w == piece);
                return d;
            };
            bool changed = true;
            while (changed) {
                changed = false;
                for (int ce : std::vector<int>(alive.begin(), alive.end())) {
                    if (deg(ces[ce].u) == 1 || deg(ces[ce].w) == 1) {
                        alive.erase(ce);
                        changed = true;
                    }
                }
            }
            internal_check(!alive.empty(), "phi_to_basic: genus-1 class without a cycle");
            // anchor: least (edge depth, edge preorder, circle position)
            int best = -1;
            for (int ce : alive) {
                if (best < 0) {
                    best = ce;
                    continue;
                }
                auto key_of = [&](int x) {
                    return std::tuple(ta.edges[ces[x].e].depth, ta.edges[ces[x].e].preorder, ces[x].i);
                };
                if (key_of(ce) < key_of(best)) best = ce;
            }
            rule.anchor_edge = ces[best].e;
            rule.anchor_circle = ces[best].i;
        }
        rules[gi] = rule;
    }

    // ---- map every token
    for (auto& [k, e] : AT.entries) {
        auto& [row, col] = k;
        for (auto& tok : e) {
            auto atoms = detail::decode_atoms(ta, tok);
            std::vector<int> choice(fi0.genus1_comps.size(), 0);
            for (size_t gi = 0; gi < rules.size(); ++gi) {
                auto& rule = rules[gi];
                if (rule.local) {
                    choice[gi] = atoms[rule.vertex]->choice[rule.local_pos];
                } else {
                    int r = detail::intermediate_row(ta, atoms, col, rule.anchor_edge);
                    choice[gi] = r >> rule.anchor_circle & 1;  // dot bit: 0 = no dot = plus
                }
            }
            out.maps[k][tok] = burnside::basic_token(arity, burnside::Atom{key0, row, col, choice});
        }
    }
    return out;
}

inline const burnside::EntrywiseBijection& phi_to_basic(const Tree& t, const Context& ctx) {
    static thread_local std::map<std::string, burnside::EntrywiseBijection> cache;
    auto key = context_key(ctx) + "#" + t.str();
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    return cache.emplace(key, phi_to_basic_uncached(t, ctx)).first->second;
}

inline burnside::EntrywiseBijection phi_change_of_tree(const Tree& from, const Tree& to, const Context& ctx) {
    require(shapes::change_of_tree_exists(from, to, ctx), "phi_change_of_tree: trees do not compose equally");
    return burnside::vcompose(burnside::invert(phi_to_basic(to, ctx)), phi_to_basic(from, ctx));
}

// ---------------------------------------------------------------------------
// Coherence sweep

struct VerifyBounds {
    int max_arity = 3;
    int max_vertices = 3;
    int max_split_vertices = 3;  // total vertex budget in factorization checks
};

struct VerifyReport {
    long long checks = 0;
    std::map<std::string, long long> counts;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

namespace detail {

inline Tree basic_of(const Tree& t, const Context& ctx) {
    if (t.is_edge()) return t;
    return shapes::basic_tree(shapes::flatten(t, ctx));
}

}  // namespace detail

inline VerifyReport verify_multifunctor(int n, const VerifyBounds& bounds) {
    VerifyReport rep;
    auto ctx = shapes::pairs_context(n);
    auto ms = planar::enumerate_matchings(n);

    auto record = [&](const std::string& cat, bool ok, const std::string& instance) {
        ++rep.checks;
        ++rep.counts[cat];
        if (!ok) rep.failures.push_back(cat + ": " + instance);
    };
    auto guarded = [&](const std::string& cat, const std::string& instance, auto&& fn) {
        ++rep.checks;
        ++rep.counts[cat];
        try {
            fn();
        } catch (std::exception& ex) {
            rep.failures.push_back(cat + ": " + instance + " -- " + ex.what());
        }
    };

    // identities
    for (auto& a : ms)
        for (auto& b : ms) {
            auto obj = shapes::pair_object(a, b);
            auto idm = shapes::make_morphism(ctx, {obj}, obj);
            record("identity", burnside::is_identity(phi_basic(*idm)), idm->str());
        }

    // all chain morphisms up to the arity bound
    std::vector<Multimorphism> mors;
    {
        std::vector<std::vector<planar::Matching>> chains;
        for (auto& a : ms) chains.push_back({a});
        for (int len = 0; len < bounds.max_arity; ++len) {
            std::vector<std::vector<planar::Matching>> next;
            for (auto& c : chains)
                if ((int)c.size() == len + 1)
                    for (auto& m : ms) {
                        auto d = c;
                        d.push_back(m);
                        next.push_back(d);
                    }
            for (auto& c : next) chains.push_back(c);
        }
        for (auto& c : chains) {
            std::vector<Object> srcs;
            for (size_t i = 0; i + 1 < c.size(); ++i) srcs.push_back(shapes::pair_object(c[i], c[i + 1]));
            auto mor = shapes::make_morphism(ctx, srcs, shapes::pair_object(c.front(), c.back()));
            if (mor) mors.push_back(*mor);
        }
        // 0-input morphisms
        for (auto& a : ms) mors.push_back(*shapes::make_morphism(ctx, {}, shapes::pair_object(a, a)));
    }

    // flatten consistency and vertical composition per morphism
    for (auto& mor : mors) {
        auto trees = shapes::enumerate_trees(mor, bounds.max_vertices);
        std::vector<burnside::Correspondence> corrs;
        std::vector<burnside::EntrywiseBijection> to_basic;
        auto A0 = phi_basic(mor);
        for (auto& T : trees) {
            guarded("flatten-consistency", mor.str() + " tree " + T.str(), [&] {
                auto AT = phi_tree(T, ctx);
                auto f = phi_to_basic(T, ctx);
                burnside::validate_bijection(f, AT, A0);
                corrs.push_back(AT);
                to_basic.push_back(f);
            });
        }
        if (corrs.size() != trees.size()) continue;  // already recorded failure
        size_t cap = std::min<size_t>(trees.size(), 10);
        for (size_t i = 0; i < cap; ++i)
            for (size_t j = 0; j < cap; ++j) {
                guarded("vertical", trees[i].str() + " -> " + trees[j].str(), [&] {
                    auto fij = burnside::vcompose(burnside::invert(to_basic[j]), to_basic[i]);
                    burnside::validate_bijection(fij, corrs[i], corrs[j]);
                    for (size_t l = 0; l < std::min<size_t>(trees.size(), 6); ++l) {
                        auto fjl = burnside::vcompose(burnside::invert(to_basic[l]), to_basic[j]);
                        auto fil = burnside::vcompose(burnside::invert(to_basic[l]), to_basic[i]);
                        internal_check(burnside::vcompose(fjl, fij) == fil, "vertical composition law");
                    }
                });
                if (rep.failures.size() > 20) return rep;
            }
    }

    // horizontal interchange and the factorization equation
    for (auto& mor : mors) {
        if ((int)mor.sources.size() > bounds.max_arity) continue;
        // 2-level splits: outer morphism g with blocks of mor.sources
        int N = (int)mor.sources.size();
        // enumerate block partitions (with empty blocks capped at 1 for scale)
        std::vector<std::vector<std::pair<int, int>>> splits;  // list of (begin, end)
        {
            std::vector<std::pair<int, int>> cur;
            auto rec = [&](auto&& self, int i) -> void {
                if ((int)cur.size() > N + 1) return;
                if (i == N) {
                    splits.push_back(cur);
                    return;
                }
                for (int j = i + 1; j <= N; ++j) {
                    cur.emplace_back(i, j);
                    self(self, j);
                    cur.pop_back();
                }
                // one empty block allowed at this position
                if (cur.empty() || cur.back().first != cur.back().second) {
                    cur.emplace_back(i, i);
                    self(self, i);
                    cur.pop_back();
                }
            };
            rec(rec, 0);
        }
        for (auto& split : splits) {
            int j = (int)split.size();
            if (j == 0) continue;
            // inner morphisms
            std::vector<Multimorphism> fs;
            std::vector<Object> gsrcs;
            bool ok = true;
            planar::Matching cursor = mor.sources.empty() ? mor.target.a : mor.sources[0].a;
            for (auto& [b, e2] : split) {
                std::vector<Object> blk(mor.sources.begin() + b, mor.sources.begin() + e2);
                Object tgt = blk.empty() ? shapes::pair_object(cursor, cursor)
                                         : shapes::pair_object(blk.front().a, blk.back().b);
                auto f = shapes::make_morphism(ctx, blk, tgt);
                if (!f) {
                    ok = false;
                    break;
                }
                fs.push_back(*f);
                gsrcs.push_back(tgt);
                cursor = tgt.b;
            }
            if (!ok) continue;
            auto g = shapes::make_morphism(ctx, gsrcs, mor.target);
            if (!g) continue;
            // tree choices: keep it small -- the outer tree is basic or one of
            // the enumerated non-basic trees with 1 vertex; inner trees within
            // the leftover budget
            auto outer_trees = shapes::enumerate_trees(*g, 1);
            for (auto& Tp : outer_trees) {
                if (Tp.is_edge()) continue;
                std::vector<std::vector<Tree>> inner_opts;
                for (auto& f : fs)
                    inner_opts.push_back(shapes::enumerate_trees(f, bounds.max_split_vertices - 1));
                std::vector<int> pick(fs.size(), 0);
                while (true) {
                    std::vector<Tree> inners;
                    int total = Tp.vertex_count();
                    for (size_t i2 = 0; i2 < fs.size(); ++i2) {
                        inners.push_back(inner_opts[i2][pick[i2]]);
                        total += inners.back().vertex_count();
                    }
                    if (total <= bounds.max_split_vertices) {
                        guarded("factorization", g->str() + " with " + std::to_string(j) + " blocks", [&] {
                            Tree S = shapes::graft(inners, Tp);
                            // strict multicomposition of 1-multimorphisms
                            std::vector<burnside::Correspondence> innc;
                            for (auto& ti : inners) innc.push_back(phi_tree(ti, ctx));
                            auto composed = burnside::compose(phi_tree(Tp, ctx), innc);
                            internal_check(phi_tree(S, ctx) == composed, "strict 1-multicomposition");
                            // factorization of phi_{S -> S0}
                            std::vector<Tree> inners0;
                            std::vector<burnside::EntrywiseBijection> fmaps;
                            for (auto& ti : inners) {
                                inners0.push_back(detail::basic_of(ti, ctx));
                                fmaps.push_back(phi_to_basic(ti, ctx));
                            }
                            Tree M = shapes::graft(inners0, detail::basic_of(Tp, ctx));
                            auto h = burnside::hcompose_bijections(phi_to_basic(Tp, ctx), phi_tree(Tp, ctx), fmaps,
                                                                   innc);
                            auto lhs = phi_to_basic(S, ctx);
                            auto rhs = burnside::vcompose(phi_to_basic(M, ctx), h);
                            internal_check(lhs == rhs, "factorization equation");
                            // horizontal interchange with identity on the outer
                            // tree: hcompose(id, phi_i) must equal the change
                            // of tree from S to graft(basic inners, Tp)
                            Tree S2 = shapes::graft(inners0, Tp);
                            auto hmor = burnside::hcompose_bijections(
                                burnside::EntrywiseBijection::identity(phi_tree(Tp, ctx)), phi_tree(Tp, ctx), fmaps,
                                innc);
                            auto want = phi_change_of_tree(S, S2, ctx);
                            internal_check(hmor == want, "horizontal interchange");
                        });
                    }
                    int d = (int)fs.size() - 1;
                    for (; d >= 0; --d) {
                        if (++pick[d] < (int)inner_opts[d].size()) break;
                        pick[d] = 0;
                    }
                    if (d < 0 || rep.failures.size() > 20) break;
                }
                if (rep.failures.size() > 20) return rep;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Cube of resolutions over F2

struct CubeResult {
    int crossings = 0;
    std::vector<int> vertex_dims;         // by state index (bits of v)
    bool d_squared_zero = true;
    std::vector<int> homology;            // dimension per homological degree 0..N
    int total_homology = 0;
};

inline CubeResult phi_cube_linearize(const planar::SliceWord& T, const planar::Matching& a,
                                     const planar::Matching& b) {
    planar::validate(T);
    int N = planar::crossing_count(T);
    require(N <= 12, "cube: too many crossings for the dense sweep");
    auto ctx = shapes::tangle_context(T.left_pts / 2, T.right_pts / 2, T);

    CubeResult res;
    res.crossings = N;
    auto bits_of = [&](uint32_t s) {
        std::vector<int> v(N);
        for (int i = 0; i < N; ++i) v[i] = s >> i & 1;
        return v;
    };
    std::vector<int> dims(1u << N);
    for (uint32_t s = 0; s < (1u << N); ++s) {
        dims[s] = phi_object_size(ctx, shapes::triple_object(bits_of(s), a, b));
        res.vertex_dims.push_back(dims[s]);
    }
    // grade by |v|
    std::vector<std::vector<uint32_t>> by_weight(N + 1);
    for (uint32_t s = 0; s < (1u << N); ++s) by_weight[__builtin_popcount(s)].push_back(s);
    std::vector<int> offset(1u << N, 0), level_dim(N + 1, 0);
    for (int k = 0; k <= N; ++k)
        for (uint32_t s : by_weight[k]) {
            offset[s] = level_dim[k];
            level_dim[k] += dims[s];
        }

    // edge maps
    std::vector<f2::Mat> d(N);
    for (int k = 0; k < N; ++k) d[k] = f2::Mat(level_dim[k + 1], level_dim[k]);
    for (uint32_t s = 0; s < (1u << N); ++s)
        for (int i = 0; i < N; ++i) {
            if (s >> i & 1) continue;
            uint32_t t = s | 1u << i;
            auto src = shapes::triple_object(bits_of(s), a, b);
            auto tgt = shapes::triple_object(bits_of(t), a, b);
            auto mor = shapes::make_morphism(ctx, {src}, tgt);
            internal_check(mor.has_value(), "cube edge morphism");
            auto M = burnside::linearize(phi_basic(*mor));
            int k = __builtin_popcount(s);
            for (int r = 0; r < (int)M.size(); ++r)
                for (int c = 0; c < (int)M[r].size(); ++c)
                    if (M[r][c] & 1) d[k].set(offset[t] + r, offset[s] + c, true);
        }

    for (int k = 0; k + 1 < N; ++k)
        if (!f2::is_zero(f2::mul(d[k + 1], d[k]))) res.d_squared_zero = false;

    res.homology.assign(N + 1, 0);
    std::vector<int> ranks(N + 1, 0);
    for (int k = 0; k < N; ++k) ranks[k + 1] = f2::rank(d[k]);
    for (int k = 0; k <= N; ++k) {
        int rk_out = k < N ? f2::rank(d[k]) : 0;
        res.homology[k] = level_dim[k] - rk_out - ranks[k];
        res.total_homology += res.homology[k];
    }
    return res;
}

}  // namespace arcframe::lift
