#pragma once

// Generators and relations of the categorified quantum group, realized on the
// mod-2 (and up-to-sign integral) shadow: Chevalley generators act through
// ladder tangles, generating 2-morphisms act through explicit saddle, birth,
// death and dot events on closures, and each catalog relation is checked by
// comparing assembled matrices.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arcframe/burnside.hpp"
#include "arcframe/common.hpp"
#include "arcframe/planar.hpp"
#include "arcframe/tqft.hpp"

namespace arcframe::qgroup {

struct GLWeight {
    std::vector<int> k;

    int n() const { return (int)k.size(); }
    bool in_range() const {
        for (int x : k)
            if (x < 0 || x > 2) return false;
        return true;
    }
    int ones() const {
        int c = 0;
        for (int x : k) c += x == 1;
        return c;
    }
    // out of range or an odd number of ones lands on the zero object
    bool zero() const { return !in_range() || ones() % 2 == 1; }
    int m() const { return ones() / 2; }

    GLWeight shifted(int i, int sign) const {  // += sign * alpha_i, i is 1-based
        GLWeight w = *this;
        w.k[i - 1] += sign;
        w.k[i] -= sign;
        return w;
    }
    std::string str() const {
        std::string s = "(";
        for (int x : k) s += std::to_string(x) + ",";
        s += ")";
        return s;
    }
    bool operator==(const GLWeight&) const = default;
};

enum class Gen { E, F };

struct GenUse {
    Gen g = Gen::E;
    int i = 1;  // 1-based, 1..n-1
};

// words are stored in application order: gens[0] acts on the source weight
struct Word {
    std::vector<GenUse> gens;

    std::string str() const {
        std::string s;
        for (auto it = gens.rbegin(); it != gens.rend(); ++it)
            s += (it->g == Gen::E ? "E" : "F") + std::to_string(it->i);
        return s.empty() ? "1" : s;
    }
};

inline GLWeight target_weight(const Word& w, const GLWeight& src) {
    GLWeight cur = src;
    for (auto& g : w.gens) cur = cur.shifted(g.i, g.g == Gen::E ? 1 : -1);
    return cur;
}

inline bool word_zero(const Word& w, const GLWeight& src) {
    if (src.zero()) return true;
    GLWeight cur = src;
    for (auto& g : w.gens) {
        cur = cur.shifted(g.i, g.g == Gen::E ? 1 : -1);
        if (!cur.in_range()) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Ladder tangles

enum class LadderType { Through, Cup, Cap };

struct Ladder {
    LadderType type = LadderType::Through;
    int pos = 0;  // strand position of the cup/cap, or of the moving strand
};

// the flat tangle shape of one generator at a weight; requires both weights
// in range (zero handling happens upstream)
inline Ladder ladder_shape(const GenUse& g, const GLWeight& src) {
    int i = g.i;
    require(i >= 1 && i < src.n(), "ladder: index out of range");
    int ki = src.k[i - 1], kj = src.k[i];
    int pos = 0;
    for (int t = 0; t < i - 1; ++t) pos += src.k[t] == 1;
    Ladder L;
    L.pos = pos;
    if (g.g == Gen::E) {
        if (ki == 0 && kj == 1) L.type = LadderType::Through;
        else if (ki == 1 && kj == 2) L.type = LadderType::Through;
        else if (ki == 0 && kj == 2) L.type = LadderType::Cup;
        else if (ki == 1 && kj == 1) L.type = LadderType::Cap;
        else fail("ladder: generator out of range at this weight");
    } else {
        if (ki == 1 && kj == 0) L.type = LadderType::Through;
        else if (ki == 2 && kj == 1) L.type = LadderType::Through;
        else if (ki == 2 && kj == 0) L.type = LadderType::Cup;
        else if (ki == 1 && kj == 1) L.type = LadderType::Cap;
        else fail("ladder: generator out of range at this weight");
    }
    return L;
}

inline planar::SliceWord ladder_tangle(const GenUse& g, const GLWeight& src) {
    auto tgt = src.shifted(g.i, g.g == Gen::E ? 1 : -1);
    require(src.in_range() && tgt.in_range(), "ladder_tangle: zero weight");
    auto L = ladder_shape(g, src);
    planar::SliceWord w;
    w.left_pts = src.ones();
    w.right_pts = tgt.ones();
    if (L.type == LadderType::Cup) w.slices = {planar::Slice{planar::SliceKind::Cup, L.pos, 0}};
    if (L.type == LadderType::Cap) w.slices = {planar::Slice{planar::SliceKind::Cap, L.pos, 0}};
    return w;
}

// slice offsets of each ladder inside the composite tangle
inline planar::SliceWord word_tangle(const Word& w, const GLWeight& src, std::vector<int>* ladder_offsets = nullptr) {
    require(!word_zero(w, src), "word_tangle: zero word");
    planar::SliceWord out = planar::identity_word(src.ones());
    GLWeight cur = src;
    for (auto& g : w.gens) {
        if (ladder_offsets) ladder_offsets->push_back((int)out.slices.size());
        auto lad = ladder_tangle(g, cur);
        internal_check(lad.left_pts == out.right_pts, "word_tangle: boundary chain");
        for (auto& s : lad.slices) out.slices.push_back(s);
        out.right_pts = lad.right_pts;
        cur = cur.shifted(g.i, g.g == Gen::E ? 1 : -1);
    }
    if (ladder_offsets) ladder_offsets->push_back((int)out.slices.size());
    return out;
}

// ---------------------------------------------------------------------------
// Closure tracing on cells (slice-boundary slots)

struct ClosedTrace {
    std::vector<int> counts, off;  // strand counts and cell offsets per boundary
    std::vector<int> cell_circle;  // cell -> circle index in canonical order
    int ncircles = 0;

    int cell(int boundary, int pos) const { return off[boundary] + pos; }
};

inline ClosedTrace trace_closure(const planar::SliceWord& T, const planar::Matching& a, const planar::Matching& b) {
    using planar::SliceKind;
    require(T.left_pts == 2 * a.n && T.right_pts == 2 * b.n, "trace_closure: boundary mismatch");
    require(planar::is_flat(T) && T.closed_loops == 0, "trace_closure: flat loop-free words only");
    ClosedTrace tr;
    tr.counts.push_back(T.left_pts);
    for (auto& s : T.slices) {
        int c = tr.counts.back();
        if (s.kind == SliceKind::Cup) c += 2;
        if (s.kind == SliceKind::Cap) c -= 2;
        tr.counts.push_back(c);
    }
    int total = 0;
    for (int c : tr.counts) {
        tr.off.push_back(total);
        total += c;
    }
    planar::detail::UF uf(total);
    std::vector<int> cup_slice_of_cell(total, -1);
    int cupno = 0;
    for (size_t si = 0; si < T.slices.size(); ++si) {
        auto& s = T.slices[si];
        int bdy = (int)si;
        int cl = tr.counts[bdy];
        auto straight = [&](int skip, int from, int by) {
            for (int p = 0; p < cl; ++p) {
                if (p == skip || p == skip + 1) continue;
                uf.unite(tr.cell(bdy, p), tr.cell(bdy + 1, p >= from ? p + by : p));
            }
        };
        switch (s.kind) {
            case SliceKind::Id:
                straight(-5, cl + 1, 0);
                break;
            case SliceKind::Cup:
                straight(-5, s.pos, 2);
                uf.unite(tr.cell(bdy + 1, s.pos), tr.cell(bdy + 1, s.pos + 1));
                cup_slice_of_cell[tr.cell(bdy + 1, s.pos)] = cupno++;
                break;
            case SliceKind::Cap:
                straight(s.pos, s.pos, -2);
                uf.unite(tr.cell(bdy, s.pos), tr.cell(bdy, s.pos + 1));
                break;
            case SliceKind::Cross:
                fail("trace_closure: crossings not supported");
        }
    }
    for (int p = 0; p < T.left_pts; ++p) uf.unite(tr.cell(0, p), tr.cell(0, a.pair[p]));
    int last = (int)T.slices.size();
    for (int q = 0; q < T.right_pts; ++q) uf.unite(tr.cell(last, q), tr.cell(last, b.pair[q]));

    // canonical circle order: boundary point sets first, then loops by cup set
    struct Rec {
        std::vector<int> points, sig;
        int root;
    };
    std::map<int, Rec> comps;
    for (int p = 0; p < T.left_pts; ++p) comps[uf.find(tr.cell(0, p))].points.push_back(p);
    for (int q = 0; q < T.right_pts; ++q) comps[uf.find(tr.cell(last, q))].points.push_back(T.left_pts + q);
    for (int c = 0; c < total; ++c)
        if (cup_slice_of_cell[c] >= 0) comps[uf.find(c)].sig.push_back(cup_slice_of_cell[c]);
    for (int c = 0; c < total; ++c) comps[uf.find(c)];  // ensure every component exists
    std::vector<Rec> recs;
    for (auto& [root, r] : comps) {
        auto rr = r;
        std::sort(rr.points.begin(), rr.points.end());
        rr.points.erase(std::unique(rr.points.begin(), rr.points.end()), rr.points.end());
        std::sort(rr.sig.begin(), rr.sig.end());
        rr.root = root;
        recs.push_back(std::move(rr));
    }
    std::sort(recs.begin(), recs.end(), [](const Rec& x, const Rec& y) {
        if (x.points.empty() != y.points.empty()) return y.points.empty();
        if (x.points != y.points) return x.points < y.points;
        return x.sig < y.sig;
    });
    std::map<int, int> root2idx;
    for (int i = 0; i < (int)recs.size(); ++i) root2idx[recs[i].root] = i;
    tr.cell_circle.resize(total);
    for (int c = 0; c < total; ++c) tr.cell_circle[c] = root2idx[uf.find(c)];
    tr.ncircles = (int)recs.size();
    return tr;
}

// ---------------------------------------------------------------------------
// Layers: one generating 2-morphism applied at a position in a word

struct LayerSpec {
    enum Kind { Dot, InsEtaL, InsEtaR, RemEpsL, RemEpsR, CrossSame, CrossDistant, CrossMixed } kind = Dot;
    int pos = 0;  // gens index where the layer acts (application order)
    int i = 1;    // strand index of the generator pair being created/removed/crossed
};

// apply the layer to the word, producing the output word
inline Word layer_out_word(const Word& w, const LayerSpec& L) {
    Word out = w;
    switch (L.kind) {
        case LayerSpec::Dot:
            break;
        case LayerSpec::InsEtaL:  // 1 -> F_i E_i: application order [E, F]
            out.gens.insert(out.gens.begin() + L.pos, {GenUse{Gen::E, L.i}, GenUse{Gen::F, L.i}});
            break;
        case LayerSpec::InsEtaR:  // 1 -> E_i F_i: application order [F, E]
            out.gens.insert(out.gens.begin() + L.pos, {GenUse{Gen::F, L.i}, GenUse{Gen::E, L.i}});
            break;
        case LayerSpec::RemEpsL:  // F_i E_i -> 1
            require(L.pos + 1 < (int)out.gens.size() && out.gens[L.pos].g == Gen::E && out.gens[L.pos + 1].g == Gen::F &&
                        out.gens[L.pos].i == L.i && out.gens[L.pos + 1].i == L.i,
                    "layer: eps_L expects F_i E_i here");
            out.gens.erase(out.gens.begin() + L.pos, out.gens.begin() + L.pos + 2);
            break;
        case LayerSpec::RemEpsR:  // E_i F_i -> 1
            require(L.pos + 1 < (int)out.gens.size() && out.gens[L.pos].g == Gen::F && out.gens[L.pos + 1].g == Gen::E &&
                        out.gens[L.pos].i == L.i && out.gens[L.pos + 1].i == L.i,
                    "layer: eps_R expects E_i F_i here");
            out.gens.erase(out.gens.begin() + L.pos, out.gens.begin() + L.pos + 2);
            break;
        case LayerSpec::CrossSame:
        case LayerSpec::CrossDistant:
        case LayerSpec::CrossMixed:
            require(L.pos + 1 < (int)out.gens.size(), "layer: crossing needs two generators");
            std::swap(out.gens[L.pos], out.gens[L.pos + 1]);
            break;
    }
    return out;
}

namespace detail {

// build the step list of a layer on the closure with matchings (a, b)
inline tqft::StepList layer_steps(const Word& w_in, const GLWeight& src, const LayerSpec& L,
                                  const planar::Matching& a, const planar::Matching& b) {
    using S = tqft::StepList::Step;
    Word w_out = layer_out_word(w_in, L);
    std::vector<int> offs_in, offs_out;
    auto T_in = word_tangle(w_in, src, &offs_in);
    auto T_out = word_tangle(w_out, src, &offs_out);
    auto tr_in = trace_closure(T_in, a, b);
    auto tr_out = trace_closure(T_out, a, b);

    int win_lo = L.pos;
    int win_hi_in = L.pos, win_hi_out = L.pos;
    switch (L.kind) {
        case LayerSpec::Dot:
            win_hi_in = win_hi_out = L.pos + 1;
            break;
        case LayerSpec::InsEtaL:
        case LayerSpec::InsEtaR:
            win_hi_in = L.pos;
            win_hi_out = L.pos + 2;
            break;
        case LayerSpec::RemEpsL:
        case LayerSpec::RemEpsR:
            win_hi_in = L.pos + 2;
            win_hi_out = L.pos;
            break;
        default:
            win_hi_in = win_hi_out = L.pos + 2;
            break;
    }
    int ws_in = offs_in[win_lo], we_in = offs_in[win_hi_in];
    int ws_out = offs_out[win_lo], we_out = offs_out[win_hi_out];

    // weight and one-position at the start of the window
    GLWeight at = src;
    for (int t = 0; t < L.pos; ++t) at = at.shifted(w_in.gens[t].i, w_in.gens[t].g == Gen::E ? 1 : -1);
    int ki = at.k[L.i - 1], kj = L.i < at.n() ? at.k[L.i] : -1;
    int p1 = 0;
    for (int t = 0; t < L.i - 1; ++t) p1 += at.k[t] == 1;

    // event resolution: which input/output circles the event touches
    std::set<int> touched_in, touched_out;
    bool saddle = false, birth = false, death = false, cut = false;
    switch (L.kind) {
        case LayerSpec::Dot:
            break;
        case LayerSpec::InsEtaL:
        case LayerSpec::InsEtaR: {
            bool right = L.kind == LayerSpec::InsEtaR;
            if (ki == 1 && kj == 1) saddle = true;
            else if (right ? (ki == 2 && kj == 0) : (ki == 0 && kj == 2)) birth = true;
            if (saddle) {
                touched_in.insert(tr_in.cell_circle[tr_in.cell(ws_in, p1)]);
                touched_in.insert(tr_in.cell_circle[tr_in.cell(ws_in, p1 + 1)]);
                touched_out.insert(tr_out.cell_circle[tr_out.cell(ws_out, p1)]);
                touched_out.insert(tr_out.cell_circle[tr_out.cell(ws_out, p1 + 1)]);
                touched_out.insert(tr_out.cell_circle[tr_out.cell(we_out, p1)]);
                touched_out.insert(tr_out.cell_circle[tr_out.cell(we_out, p1 + 1)]);
            }
            break;
        }
        case LayerSpec::RemEpsL:
        case LayerSpec::RemEpsR: {
            bool right = L.kind == LayerSpec::RemEpsR;
            if (ki == 1 && kj == 1) saddle = true;
            else if (right ? (ki == 2 && kj == 0) : (ki == 0 && kj == 2)) death = true;
            if (saddle) {
                touched_in.insert(tr_in.cell_circle[tr_in.cell(ws_in, p1)]);
                touched_in.insert(tr_in.cell_circle[tr_in.cell(ws_in, p1 + 1)]);
                touched_in.insert(tr_in.cell_circle[tr_in.cell(we_in, p1)]);
                touched_in.insert(tr_in.cell_circle[tr_in.cell(we_in, p1 + 1)]);
                touched_out.insert(tr_out.cell_circle[tr_out.cell(ws_out, p1)]);
                touched_out.insert(tr_out.cell_circle[tr_out.cell(ws_out, p1 + 1)]);
            }
            break;
        }
        case LayerSpec::CrossSame:
            cut = true;
            break;
        default:
            break;
    }

    // align untouched circles through cells outside the window
    std::map<int, int> in2out;
    auto align = [&](int b_in, int b_out) {
        internal_check(tr_in.counts[b_in] == tr_out.counts[b_out], "layer: aligned strand counts differ");
        for (int p = 0; p < tr_in.counts[b_in]; ++p) {
            int ci = tr_in.cell_circle[tr_in.cell(b_in, p)];
            int co = tr_out.cell_circle[tr_out.cell(b_out, p)];
            if (touched_in.count(ci)) {
                internal_check(touched_out.count(co), "layer: touched circle aligned to untouched");
                continue;
            }
            internal_check(!touched_out.count(co), "layer: untouched circle aligned to touched");
            auto [it, fresh] = in2out.emplace(ci, co);
            internal_check(it->second == co, "layer: inconsistent circle alignment");
        }
    };
    for (int bi = 0; bi <= ws_in; ++bi) align(bi, bi);
    for (int bi = we_in; bi <= (int)T_in.slices.size(); ++bi) align(bi, bi - we_in + we_out);

    tqft::StepList sl;
    std::vector<int> out_id(tr_out.ncircles, -1);
    int next_id = tr_in.ncircles;
    for (auto& [ci, co] : in2out) out_id[co] = ci;
    for (int k = 0; k < tr_in.ncircles; ++k) sl.inputs.push_back(k);

    auto unmatched_inputs = [&] {
        std::vector<int> v;
        std::set<int> used;
        for (auto& [ci, co] : in2out) used.insert(ci);
        for (int k = 0; k < tr_in.ncircles; ++k)
            if (!used.count(k)) v.push_back(k);
        return v;
    };
    auto unmatched_outputs = [&] {
        std::vector<int> v;
        for (int k = 0; k < tr_out.ncircles; ++k)
            if (out_id[k] < 0) v.push_back(k);
        return v;
    };

    if (L.kind == LayerSpec::Dot) {
        auto& g = w_in.gens[L.pos];
        auto shape = ladder_shape(g, at);
        int bdy = shape.type == LadderType::Cup ? we_in : ws_in;
        int c = tr_in.cell_circle[tr_in.cell(bdy, shape.pos)];
        sl.steps.push_back({S::Dot, c});
        internal_check(unmatched_outputs().empty(), "dot: circles must align");
    } else if (saddle) {
        std::vector<int> ti(touched_in.begin(), touched_in.end());
        std::vector<int> to(touched_out.begin(), touched_out.end());
        if (ti.size() == 2) {
            internal_check(to.size() == 1, "saddle: merge needs one result");
            out_id[to[0]] = next_id++;
            sl.steps.push_back({S::Merge, ti[0], ti[1], out_id[to[0]]});
        } else {
            internal_check(ti.size() == 1 && to.size() == 2, "saddle: split needs two results");
            out_id[to[0]] = next_id++;
            out_id[to[1]] = next_id++;
            sl.steps.push_back({S::Split, ti[0], out_id[to[0]], out_id[to[1]]});
        }
        internal_check(unmatched_outputs().empty(), "saddle: leftover circles");
    } else if (birth) {
        auto uo = unmatched_outputs();
        internal_check(uo.size() == 1 && unmatched_inputs().empty(), "birth: expected one new loop");
        out_id[uo[0]] = next_id++;
        sl.steps.push_back({S::Birth, out_id[uo[0]]});
    } else if (death) {
        auto ui = unmatched_inputs();
        internal_check(ui.size() == 1 && unmatched_outputs().empty(), "death: expected one dying loop");
        sl.steps.push_back({S::Death, ui[0]});
    } else if (cut) {
        auto ui = unmatched_inputs();
        auto uo = unmatched_outputs();
        internal_check(ui.size() == 1 && uo.size() == 1, "tau: expected the window loop on both sides");
        sl.steps.push_back({S::Death, ui[0]});
        out_id[uo[0]] = next_id++;
        sl.steps.push_back({S::Birth, out_id[uo[0]]});
    } else {
        // identity shadows; window-internal loops pair up one to one
        auto ui = unmatched_inputs();
        auto uo = unmatched_outputs();
        internal_check(ui.size() == uo.size() && ui.size() <= 1, "identity layer: circles must align");
        if (ui.size() == 1) out_id[uo[0]] = ui[0];
    }
    for (int k = 0; k < tr_out.ncircles; ++k) {
        internal_check(out_id[k] >= 0, "layer: unassigned output circle");
        sl.outputs.push_back(out_id[k]);
    }
    return sl;
}

// chain two step lists: the first's outputs feed the second's inputs
inline tqft::StepList chain_steps(const tqft::StepList& s1, const tqft::StepList& s2) {
    internal_check(s1.outputs.size() == s2.inputs.size(), "chain_steps: arity mismatch");
    // rename s2's abstract ids to live after s1's
    int base = 0;
    for (int x : s1.inputs) base = std::max(base, x + 1);
    for (int x : s1.outputs) base = std::max(base, x + 1);
    for (auto& st : s1.steps) base = std::max({base, st.a + 1, st.b + 1, st.c + 1});
    std::map<int, int> rename;
    for (size_t k = 0; k < s2.inputs.size(); ++k) rename[s2.inputs[k]] = s1.outputs[k];
    int next = base;
    auto rn = [&](int x) {
        if (x < 0) return x;
        auto [it, fresh] = rename.emplace(x, next);
        if (fresh) ++next;
        return it->second;
    };
    tqft::StepList out;
    out.inputs = s1.inputs;
    out.steps = s1.steps;
    for (auto st : s2.steps) {
        st.a = rn(st.a);
        st.b = rn(st.b);
        st.c = rn(st.c);
        out.steps.push_back(st);
    }
    for (int x : s2.outputs) out.outputs.push_back(rn(x));
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Terms and evaluation

struct Term {
    std::string name;
    Word w_in;  // source word; layers carry it to the target word
    std::vector<LayerSpec> layers;
};

inline Word term_out_word(const Term& t) {
    Word w = t.w_in;
    for (auto& L : t.layers) w = layer_out_word(w, L);
    return w;
}

// the step list of the whole term on the closure (a, b)
inline tqft::StepList term_steps(const Term& t, const GLWeight& src, const planar::Matching& a,
                                 const planar::Matching& b) {
    Word w = t.w_in;
    std::optional<tqft::StepList> acc;
    for (auto& L : t.layers) {
        auto sl = detail::layer_steps(w, src, L, a, b);
        acc = acc ? detail::chain_steps(*acc, sl) : sl;
        w = layer_out_word(w, L);
    }
    if (!acc) {
        auto T = word_tangle(w, src);
        auto tr = trace_closure(T, a, b);
        return tqft::StepList::identity(tr.ncircles);
    }
    return *acc;
}

// full matrix of a term over the direct sum of closures; nullopt when the
// source or target 1-morphism is zero, zero matrix when an intermediate
// weight leaves the range
inline std::optional<burnside::Matrix> evaluate_term(const Term& t, const GLWeight& src, tqft::Ring ring) {
    if (src.zero()) return std::nullopt;
    Word w_out = term_out_word(t);
    if (word_zero(t.w_in, src) || word_zero(w_out, src)) return std::nullopt;
    auto tgt = target_weight(t.w_in, src);
    internal_check(tgt == target_weight(w_out, src), "term: weight mismatch");

    bool intermediate_zero = false;
    {
        Word w = t.w_in;
        for (auto& L : t.layers) {
            w = layer_out_word(w, L);
            if (word_zero(w, src)) intermediate_zero = true;
        }
    }
    auto ms_a = planar::enumerate_matchings(src.m());
    auto ms_b = planar::enumerate_matchings(tgt.m());
    auto T_in = word_tangle(t.w_in, src);
    auto T_out = word_tangle(w_out, src);

    // block offsets
    std::vector<std::vector<long long>> in_off(ms_a.size(), std::vector<long long>(ms_b.size(), 0));
    std::vector<std::vector<long long>> out_off = in_off;
    long long in_dim = 0, out_dim = 0;
    for (size_t ai = 0; ai < ms_a.size(); ++ai)
        for (size_t bi = 0; bi < ms_b.size(); ++bi) {
            in_off[ai][bi] = in_dim;
            out_off[ai][bi] = out_dim;
            in_dim += 1ll << trace_closure(T_in, ms_a[ai], ms_b[bi]).ncircles;
            out_dim += 1ll << trace_closure(T_out, ms_a[ai], ms_b[bi]).ncircles;
        }
    burnside::Matrix M(out_dim, std::vector<long long>(in_dim, 0));
    if (intermediate_zero) return M;
    for (size_t ai = 0; ai < ms_a.size(); ++ai)
        for (size_t bi = 0; bi < ms_b.size(); ++bi) {
            auto sl = term_steps(t, src, ms_a[ai], ms_b[bi]);
            auto block = tqft::step_matrix(sl, ring);
            for (size_t r = 0; r < block.size(); ++r)
                for (size_t c = 0; c < block[r].size(); ++c)
                    M[out_off[ai][bi] + r][in_off[ai][bi] + c] = block[r][c];
        }
    return M;
}

// ---------------------------------------------------------------------------
// The relation catalog

struct RelationInstance {
    std::string name;
    std::vector<Term> terms;  // the relation asserts these sum to zero (mod 2)
};

inline std::vector<std::string> catalog() {
    return {"tau_sq_e",     "tau_sq_f",     "dot_slide_e1", "dot_slide_e2", "dot_slide_f1", "dot_slide_f2",
            "distant_ee",   "distant_ff",   "distant_ef",   "zigzag_e1",    "zigzag_e2",    "zigzag_f1",
            "zigzag_f2",    "bubble_cw",    "bubble_ccw",   "effe_decomp"};
}

namespace detail {

inline Term identity_term(const Word& w, const std::string& name) { return Term{name, w, {}}; }

}  // namespace detail

// instances of a relation at a weight; instances whose source word is zero are
// skipped (they hold vacuously)
inline std::vector<RelationInstance> relation_instances(const std::string& rel, const GLWeight& kk) {
    std::vector<RelationInstance> out;
    int n = kk.n();
    if (kk.zero()) return out;
    auto alive = [&](const Word& w) { return !word_zero(w, kk); };

    for (int i = 1; i < n; ++i) {
        if (rel == "tau_sq_e" || rel == "tau_sq_f") {
            Gen g = rel == "tau_sq_e" ? Gen::E : Gen::F;
            Word w{{GenUse{g, i}, GenUse{g, i}}};
            if (!alive(w)) continue;
            RelationInstance inst{rel + "@i=" + std::to_string(i) + kk.str(), {}};
            inst.terms.push_back(Term{"tau tau", w, {{LayerSpec::CrossSame, 0, i}, {LayerSpec::CrossSame, 0, i}}});
            out.push_back(inst);
        } else if (rel == "dot_slide_e1" || rel == "dot_slide_e2" || rel == "dot_slide_f1" || rel == "dot_slide_f2") {
            Gen g = rel[10] == 'e' ? Gen::E : Gen::F;
            bool first = rel.back() == '1';
            Word w{{GenUse{g, i}, GenUse{g, i}}};
            if (!alive(w)) continue;
            RelationInstance inst{rel + "@i=" + std::to_string(i) + kk.str(), {}};
            if (first) {
                inst.terms.push_back(Term{"tau dot0", w, {{LayerSpec::Dot, 0, i}, {LayerSpec::CrossSame, 0, i}}});
                inst.terms.push_back(Term{"dot1 tau", w, {{LayerSpec::CrossSame, 0, i}, {LayerSpec::Dot, 1, i}}});
            } else {
                inst.terms.push_back(Term{"tau dot1", w, {{LayerSpec::Dot, 1, i}, {LayerSpec::CrossSame, 0, i}}});
                inst.terms.push_back(Term{"dot0 tau", w, {{LayerSpec::CrossSame, 0, i}, {LayerSpec::Dot, 0, i}}});
            }
            inst.terms.push_back(detail::identity_term(w, "id"));
            out.push_back(inst);
        } else if (rel == "zigzag_e1" || rel == "zigzag_e2" || rel == "zigzag_f1" || rel == "zigzag_f2") {
            Gen g = rel[7] == 'e' ? Gen::E : Gen::F;
            Word w{{GenUse{g, i}}};
            if (!alive(w)) continue;
            RelationInstance inst{rel + "@i=" + std::to_string(i) + kk.str(), {}};
            Term z{"zigzag", w, {}};
            bool variant1 = rel.back() == '1';
            if (g == Gen::E && variant1) {
                z.layers = {{LayerSpec::InsEtaL, 0, i}, {LayerSpec::RemEpsR, 1, i}};
            } else if (g == Gen::E) {
                z.layers = {{LayerSpec::InsEtaR, 1, i}, {LayerSpec::RemEpsL, 0, i}};
            } else if (variant1) {
                z.layers = {{LayerSpec::InsEtaR, 0, i}, {LayerSpec::RemEpsL, 1, i}};
            } else {
                z.layers = {{LayerSpec::InsEtaL, 1, i}, {LayerSpec::RemEpsR, 0, i}};
            }
            inst.terms.push_back(z);
            inst.terms.push_back(detail::identity_term(w, "id"));
            out.push_back(inst);
        } else if (rel == "bubble_cw" || rel == "bubble_ccw") {
            bool cw = rel == "bubble_cw";
            Word unit{};  // the identity 1-morphism
            int lam = kk.k[i - 1] - kk.k[i];
            for (int d = 0; d <= 1; ++d) {
                Term bub{"bubble d=" + std::to_string(d), unit, {}};
                bub.layers.push_back({cw ? LayerSpec::InsEtaR : LayerSpec::InsEtaL, 0, i});
                // the E copy sits at gens index 1 for eta_R, 0 for eta_L
                for (int t = 0; t < d; ++t) bub.layers.push_back({LayerSpec::Dot, cw ? 1 : 0, i});
                bub.layers.push_back({cw ? LayerSpec::RemEpsR : LayerSpec::RemEpsL, 0, i});
                // skip if the intermediate word is zero on both routes: the
                // bubble itself is zero then, and the relation is vacuous
                Word mid = layer_out_word(unit, bub.layers[0]);
                if (word_zero(mid, kk)) continue;
                int deg = cw ? 2 - 2 * lam + 2 * d : 2 + 2 * lam + 2 * d;
                // negative degree: the bubble vanishes; zero degree: it is the
                // identity; positive degrees are unconstrained
                if (deg > 0) continue;
                RelationInstance inst{rel + "@i=" + std::to_string(i) + ",d=" + std::to_string(d) + kk.str(), {}};
                inst.terms.push_back(bub);
                if (deg == 0) inst.terms.push_back(detail::identity_term(unit, "id"));
                out.push_back(inst);
            }
        } else if (rel == "effe_decomp") {
            int lam = kk.k[i - 1] - kk.k[i];
            Word ef{{GenUse{Gen::F, i}, GenUse{Gen::E, i}}};  // E F 1
            Word fe{{GenUse{Gen::E, i}, GenUse{Gen::F, i}}};  // F E 1
            bool ef_alive = alive(ef), fe_alive = alive(fe);
            if (lam == 0 && ef_alive && fe_alive) {
                RelationInstance i1{rel + "@i=" + std::to_string(i) + ",tt'" + kk.str(), {}};
                i1.terms.push_back(Term{"t't", ef, {{LayerSpec::CrossMixed, 0, i}, {LayerSpec::CrossMixed, 0, i}}});
                i1.terms.push_back(detail::identity_term(ef, "id"));
                out.push_back(i1);
                RelationInstance i2{rel + "@i=" + std::to_string(i) + ",t't" + kk.str(), {}};
                i2.terms.push_back(Term{"tt'", fe, {{LayerSpec::CrossMixed, 0, i}, {LayerSpec::CrossMixed, 0, i}}});
                i2.terms.push_back(detail::identity_term(fe, "id"));
                out.push_back(i2);
            } else if (lam > 0 && ef_alive) {
                // EF1 decomposes as lam copies of the identity (FE1 is zero here
                // for lam in {1,2} at in-range weights)
                RelationInstance i1{rel + "@i=" + std::to_string(i) + ",neckcut" + kk.str(), {}};
                for (int d = 0; d < lam; ++d) {
                    // d dots into the counit, lam-1-d dots out of the unit
                    Term t{"eta_d eps_d'", ef, {}};
                    for (int x = 0; x < d; ++x) t.layers.push_back({LayerSpec::Dot, 1, i});
                    t.layers.push_back({LayerSpec::RemEpsR, 0, i});
                    t.layers.push_back({LayerSpec::InsEtaR, 0, i});
                    for (int x = 0; x < lam - 1 - d; ++x) t.layers.push_back({LayerSpec::Dot, 1, i});
                    i1.terms.push_back(t);
                }
                i1.terms.push_back(detail::identity_term(ef, "id"));
                out.push_back(i1);
                // the diagonal identities on the unit summands
                for (int d = 0; d < lam; ++d)
                    for (int dp = 0; dp < lam; ++dp) {
                        Word unit{};
                        Term t{"eps eta", unit, {}};
                        t.layers.push_back({LayerSpec::InsEtaR, 0, i});
                        for (int x = 0; x < (lam - 1 - dp) + d; ++x) t.layers.push_back({LayerSpec::Dot, 1, i});
                        t.layers.push_back({LayerSpec::RemEpsR, 0, i});
                        RelationInstance inst{
                            rel + "@i=" + std::to_string(i) + ",diag" + std::to_string(d) + std::to_string(dp) +
                                kk.str(),
                            {}};
                        inst.terms.push_back(t);
                        if (d == dp) inst.terms.push_back(detail::identity_term(unit, "id"));
                        out.push_back(inst);
                    }
            } else if (lam < 0 && fe_alive) {
                int lm = -lam;
                RelationInstance i1{rel + "@i=" + std::to_string(i) + ",neckcut" + kk.str(), {}};
                for (int d = 0; d < lm; ++d) {
                    Term t{"eta_d eps_d'", fe, {}};
                    for (int x = 0; x < d; ++x) t.layers.push_back({LayerSpec::Dot, 0, i});
                    t.layers.push_back({LayerSpec::RemEpsL, 0, i});
                    t.layers.push_back({LayerSpec::InsEtaL, 0, i});
                    for (int x = 0; x < lm - 1 - d; ++x) t.layers.push_back({LayerSpec::Dot, 0, i});
                    i1.terms.push_back(t);
                }
                i1.terms.push_back(detail::identity_term(fe, "id"));
                out.push_back(i1);
                for (int d = 0; d < lm; ++d)
                    for (int dp = 0; dp < lm; ++dp) {
                        Word unit{};
                        Term t{"eps eta", unit, {}};
                        t.layers.push_back({LayerSpec::InsEtaL, 0, i});
                        for (int x = 0; x < (lm - 1 - dp) + d; ++x) t.layers.push_back({LayerSpec::Dot, 0, i});
                        t.layers.push_back({LayerSpec::RemEpsL, 0, i});
                        RelationInstance inst{
                            rel + "@i=" + std::to_string(i) + ",diag" + std::to_string(d) + std::to_string(dp) +
                                kk.str(),
                            {}};
                        inst.terms.push_back(t);
                        if (d == dp) inst.terms.push_back(detail::identity_term(unit, "id"));
                        out.push_back(inst);
                    }
            }
        }
    }
    // distant crossings need |i - j| >= 2
    if (rel == "distant_ee" || rel == "distant_ff" || rel == "distant_ef") {
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j) {
                if (std::abs(i - j) < 2) continue;
                Gen g1 = rel == "distant_ff" ? Gen::F : Gen::E;
                Gen g2 = rel == "distant_ee" ? Gen::E : Gen::F;
                Word w{{GenUse{g2, j}, GenUse{g1, i}}};
                if (word_zero(w, kk)) continue;
                RelationInstance inst{rel + "@i=" + std::to_string(i) + ",j=" + std::to_string(j) + kk.str(), {}};
                inst.terms.push_back(
                    Term{"swap swap", w, {{LayerSpec::CrossDistant, 0, i}, {LayerSpec::CrossDistant, 0, i}}});
                inst.terms.push_back(detail::identity_term(w, "id"));
                out.push_back(inst);
            }
    }
    return out;
}

inline bool check_relation(const std::string& rel, const GLWeight& kk) {
    bool known = false;
    for (auto& r : catalog()) known |= r == rel;
    require(known, "check_relation: unknown relation id " + rel);
    for (auto& inst : relation_instances(rel, kk)) {
        std::optional<burnside::Matrix> sum;
        for (auto& t : inst.terms) {
            auto M = evaluate_term(t, kk, tqft::Ring::F2);
            if (!M) continue;  // zero 2-morphism space, nothing to add
            if (!sum) sum = burnside::Matrix((*M).size(), std::vector<long long>((*M)[0].size(), 0));
            for (size_t r = 0; r < M->size(); ++r)
                for (size_t c = 0; c < (*M)[r].size(); ++c) (*sum)[r][c] = ((*sum)[r][c] + (*M)[r][c]) & 1;
        }
        if (!sum) continue;  // vacuous
        for (auto& row : *sum)
            for (auto x : row)
                if (x) return false;
    }
    return true;
}

// the mod-2 cross-validation: the same verdict via the local reductions
inline bool check_relation_barnatan(const std::string& rel, const GLWeight& kk) {
    for (auto& inst : relation_instances(rel, kk)) {
        if (inst.terms.empty()) continue;
        auto& t0 = inst.terms[0];
        if (word_zero(t0.w_in, kk) || kk.zero()) continue;
        auto tgt = target_weight(t0.w_in, kk);
        bool any_intermediate_zero = false;
        std::vector<const Term*> live;
        for (auto& t : inst.terms) {
            Word w = t.w_in;
            bool tz = false;
            for (auto& L : t.layers) {
                w = layer_out_word(w, L);
                if (word_zero(w, kk)) tz = true;
            }
            if (!tz) live.push_back(&t);
            else any_intermediate_zero = true;
        }
        (void)any_intermediate_zero;
        for (auto& a : planar::enumerate_matchings(kk.m()))
            for (auto& b : planar::enumerate_matchings(tgt.m())) {
                std::vector<tqft::StepList> lhs;
                for (auto* t : live) lhs.push_back(term_steps(*t, kk, a, b));
                if (lhs.empty()) continue;
                if (!tqft::check_barnatan_f2(lhs, {})) return false;
            }
    }
    return true;
}

// search for term signs making the integral identity hold; one optional
// vector per instance, lexicographically least (+1 before -1)
inline std::optional<std::vector<int>> solve_instance(const RelationInstance& inst, const GLWeight& kk) {
    std::vector<burnside::Matrix> mats;
    bool all_zero = true;
    for (auto& t : inst.terms) {
        auto M = evaluate_term(t, kk, tqft::Ring::Z);
        if (M) {
            mats.push_back(*M);
            all_zero = false;
        } else {
            mats.push_back({});
        }
    }
    int tcount = (int)inst.terms.size();
    require(tcount <= 16, "solve_signs: too many terms");
    if (all_zero) return std::vector<int>(tcount, 1);
    std::optional<std::vector<int>> best;
    for (uint32_t mask = 0; mask < (1u << tcount); ++mask) {
        std::vector<int> eps(tcount);
        for (int t = 0; t < tcount; ++t) eps[t] = mask >> t & 1 ? -1 : 1;
        std::optional<burnside::Matrix> sum;
        bool ok = true;
        for (int t = 0; t < tcount && ok; ++t) {
            if (mats[t].empty()) continue;
            if (!sum) sum = burnside::Matrix(mats[t].size(), std::vector<long long>(mats[t][0].size(), 0));
            for (size_t r = 0; r < mats[t].size(); ++r)
                for (size_t c = 0; c < mats[t][r].size(); ++c) (*sum)[r][c] += eps[t] * mats[t][r][c];
        }
        if (sum)
            for (auto& row : *sum)
                for (auto x : row) ok &= x == 0;
        if (ok && (!best || std::lexicographical_compare(eps.begin(), eps.end(), best->begin(), best->end(),
                                                         [](int x, int y) { return x > y; })))
            best = eps;
    }
    return best;
}

inline std::vector<std::optional<std::vector<int>>> solve_signs(const std::string& rel, const GLWeight& kk) {
    bool known = false;
    for (auto& r : catalog()) known |= r == rel;
    require(known, "solve_signs: unknown relation id " + rel);
    std::vector<std::optional<std::vector<int>>> out;
    for (auto& inst : relation_instances(rel, kk)) out.push_back(solve_instance(inst, kk));
    return out;
}

}  // namespace arcframe::qgroup
