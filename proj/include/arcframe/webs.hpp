#pragma once

// The signed-Burnside lift for web algebras over balanced weight sequences:
// the web basis in bijection with crossingless matchings, signed
// correspondences with one sign per entry supplied by a pluggable oracle, and
// the verifier that rejects oracles breaking associativity.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arcframe/burnside.hpp"
#include "arcframe/common.hpp"
#include "arcframe/lift.hpp"
#include "arcframe/planar.hpp"
#include "arcframe/shapes.hpp"
#include "arcframe/tqft.hpp"

namespace arcframe::webs {

struct WeightSeq {
    std::vector<int> k;  // entries in {0,1,2}

    int ones() const {
        int c = 0;
        for (int x : k) c += x == 1;
        return c;
    }
    int sum() const {
        int s = 0;
        for (int x : k) s += x;
        return s;
    }
    bool balanced() const { return ones() % 2 == 0; }
    int p() const { return ones() / 2; }
    int m() const { return sum() / 2; }
    std::string str() const {
        std::string s = "(";
        for (int x : k) s += std::to_string(x);
        return s + ")";
    }
    void validate() const {
        for (int x : k) require(x >= 0 && x <= 2, "weight: entries must be 0, 1 or 2");
    }
};

struct WebBasisElement {
    WeightSeq weight;
    planar::Matching matching;  // the underlying topological web, on 2p points
};

// one web per crossingless matching on 2p points, in canonical order
inline std::vector<WebBasisElement> web_basis(const WeightSeq& kk) {
    kk.validate();
    require(kk.balanced(), "web_basis: weight must be balanced");
    std::vector<WebBasisElement> out;
    for (auto& m : planar::enumerate_matchings(kk.p())) out.push_back(WebBasisElement{kk, m});
    return out;
}

// ---------------------------------------------------------------------------
// Sign oracles: a total map from nonempty entries to +-1

inline std::string element_key(const tqft::DiskSpace& space, int idx) {
    std::string s = "[";
    for (int x : space.a.pair) s += std::to_string(x + 1) + " ";
    s += "|";
    for (int x : space.b.pair) s += std::to_string(x + 1) + " ";
    s += "]:";
    for (int i = 0; i < space.ncirc(); ++i) s += (idx >> i & 1) ? '1' : '0';
    return s;
}

struct EntryRef {
    std::string column;  // joined element keys
    std::string row;
};

struct SignOracle {
    // missing key = error when strict; the trivial oracle answers +1 always
    bool trivial = true;
    std::map<std::pair<std::string, std::string>, int> table;

    int sign(const EntryRef& e) const {
        if (trivial) return 1;
        auto it = table.find({e.column, e.row});
        require(it != table.end(), "sign oracle: undefined on entry col=" + e.column + " row=" + e.row);
        return it->second;
    }
};

inline SignOracle trivial_signs() { return SignOracle{}; }

// ---------------------------------------------------------------------------
// The signed lift of a basic multimorphism over a weight sequence

struct WebMorphism {
    WeightSeq weight;
    std::vector<planar::Matching> chain;  // u_0 .. u_m over B_p

    shapes::Multimorphism underlying() const {
        auto ctx = shapes::pairs_context(weight.p());
        std::vector<shapes::Object> srcs;
        for (size_t i = 0; i + 1 < chain.size(); ++i) srcs.push_back(shapes::pair_object(chain[i], chain[i + 1]));
        auto mor = shapes::make_morphism(ctx, srcs, shapes::pair_object(chain.front(), chain.back()));
        internal_check(mor.has_value(), "web morphism: invalid chain");
        return *mor;
    }
};

inline EntryRef entry_ref(const WebMorphism& wm, const std::vector<int>& col, int row) {
    EntryRef e;
    for (size_t i = 0; i + 1 < wm.chain.size(); ++i) {
        auto sp = tqft::pair_space(wm.chain[i], wm.chain[i + 1]);
        if (i) e.column += "*";
        e.column += element_key(sp, col[i]);
    }
    e.row = element_key(tqft::pair_space(wm.chain.front(), wm.chain.back()), row);
    return e;
}

inline burnside::SignedCorrespondence phi_signed_basic(const WebMorphism& wm, const SignOracle& oracle) {
    wm.weight.validate();
    require(wm.weight.balanced(), "signed lift: weight must be balanced");
    for (auto& m : wm.chain) require(m.n == wm.weight.p(), "signed lift: matchings must live on 2p points");
    auto mor = wm.underlying();
    const auto& plain = lift::phi_basic(mor);
    burnside::SignedCorrespondence out;
    out.corr = plain;
    for (auto& [k, e] : plain.entries) {
        int s = oracle.sign(entry_ref(wm, k.second, k.first));
        out.signs[k].assign(e.size(), s);
    }
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Verification

struct SignedReport {
    long long checks = 0;
    std::map<std::string, long long> counts;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

struct SignedBounds {
    int max_arity = 3;
    int max_vertices = 2;
};

inline SignedReport verify_signed_multifunctor(const WeightSeq& kk, const SignOracle& oracle,
                                               const SignedBounds& bounds = {}) {
    SignedReport rep;
    kk.validate();
    require(kk.balanced(), "verify_signed: weight must be balanced");
    int p = kk.p();
    auto ms = planar::enumerate_matchings(p);
    auto ctx = shapes::pairs_context(p);

    auto guarded = [&](const std::string& cat, const std::string& instance, auto&& fn) {
        ++rep.checks;
        ++rep.counts[cat];
        try {
            fn();
        } catch (std::exception& ex) {
            rep.failures.push_back(cat + ": " + instance + " -- " + ex.what());
        }
    };

    // chains up to the arity bound
    std::vector<WebMorphism> mors;
    {
        std::vector<std::vector<planar::Matching>> chains;
        for (auto& a : ms) chains.push_back({a});
        for (int len = 1; len <= bounds.max_arity; ++len) {
            std::vector<std::vector<planar::Matching>> next;
            for (auto& c : chains)
                if ((int)c.size() == len)
                    for (auto& m : ms) {
                        auto d = c;
                        d.push_back(m);
                        next.push_back(d);
                    }
            chains.insert(chains.end(), next.begin(), next.end());
        }
        for (auto& c : chains)
            if (c.size() >= 2) mors.push_back(WebMorphism{kk, c});
    }

    // (i) constant sign per entry is preserved under signed composition
    for (auto& wm : mors) {
        if ((int)wm.chain.size() > 3) continue;
        guarded("entry-sign-constancy", wm.weight.str() + " " + wm.underlying().str(), [&] {
            auto A = phi_signed_basic(wm, oracle);
            for (auto& [k, sgn] : A.signs)
                for (int s : sgn) internal_check(s == sgn[0], "entry with mixed signs");
        });
    }
    // (ii) change-of-tree bijections preserve signs: signed composite of basic
    // lifts along a tree vs the basic lift of the flattening
    for (auto& u0 : ms)
        for (auto& u1 : ms)
            for (auto& u2 : ms)
                for (auto& u3 : ms) {
                    WebMorphism tern{kk, {u0, u1, u2, u3}};
                    guarded("sign-preserving-2morphisms", tern.underlying().str(), [&] {
                        auto A0 = phi_signed_basic(tern, oracle);
                        // left tree: (u0u1 * u1u2) then * u2u3
                        WebMorphism inner{kk, {u0, u1, u2}};
                        WebMorphism outer{kk, {u0, u2, u3}};
                        WebMorphism last{kk, {u2, u3}};
                        auto AI = phi_signed_basic(inner, oracle);
                        auto AL = phi_signed_basic(last, oracle);
                        auto AO = phi_signed_basic(outer, oracle);
                        auto AT = burnside::signed_compose(AO, {AI, AL});
                        // composite entries keep one sign per entry
                        for (auto& [k, sgn] : AT.signs)
                            for (int s : sgn) internal_check(s == sgn[0], "composite entry with mixed signs");
                        // the unsigned change-of-tree bijection must preserve signs
                        auto ctx2 = shapes::pairs_context(p);
                        auto obj = [&](const planar::Matching& x, const planar::Matching& y) {
                            return shapes::pair_object(x, y);
                        };
                        auto morI = inner.underlying();
                        auto morO = outer.underlying();
                        auto T = shapes::graft({shapes::basic_tree(morI), shapes::edge_tree(obj(u2, u3))},
                                               shapes::basic_tree(morO));
                        auto f = lift::phi_to_basic(T, ctx2);
                        burnside::validate_signed_bijection(f, AT, A0);
                    });
                }

    // (iii) the oracle-induced linearized algebra is associative
    for (auto& x : ms)
        for (auto& y : ms)
            for (auto& z : ms)
                for (auto& w : ms) {
                    guarded("associativity", "(" + WebMorphism{kk, {x, y, z, w}}.underlying().str() + ")", [&] {
                        WebMorphism mxy{kk, {x, y, z}};
                        WebMorphism myz{kk, {y, z, w}};
                        WebMorphism mxz_w{kk, {x, z, w}};
                        WebMorphism mx_yw{kk, {x, y, w}};
                        auto Mxy = burnside::linearize(phi_signed_basic(mxy, oracle));
                        auto Myz = burnside::linearize(phi_signed_basic(myz, oracle));
                        auto Mo1 = burnside::linearize(phi_signed_basic(mxz_w, oracle));
                        auto Mo2 = burnside::linearize(phi_signed_basic(mx_yw, oracle));
                        int dy = 1 << planar::circles(y, z).size();  // middle dims
                        (void)dy;
                        // (ab)c: Mo1 * (Mxy x I); a(bc): Mo2 * (I x Myz)
                        int dims_xy = 1 << planar::circles(x, y).size();
                        int dims_zw = 1 << planar::circles(z, w).size();
                        burnside::Matrix Ixy(dims_xy, std::vector<long long>(dims_xy, 0));
                        for (int i = 0; i < dims_xy; ++i) Ixy[i][i] = 1;
                        burnside::Matrix Izw(dims_zw, std::vector<long long>(dims_zw, 0));
                        for (int i = 0; i < dims_zw; ++i) Izw[i][i] = 1;
                        auto lhs = burnside::mat_mul(Mo1, burnside::kronecker(Mxy, Izw));
                        auto rhs = burnside::mat_mul(Mo2, burnside::kronecker(Ixy, Myz));
                        if (lhs != rhs) {
                            // name the exact failing triple of basis elements
                            int dyz = 1 << planar::circles(y, z).size();
                            for (int e1 = 0; e1 < dims_xy; ++e1)
                                for (int e2 = 0; e2 < dyz; ++e2)
                                    for (int e3 = 0; e3 < dims_zw; ++e3) {
                                        long long colidx = ((long long)e1 * dyz + e2) * dims_zw + e3;
                                        for (size_t r = 0; r < lhs.size(); ++r)
                                            if (lhs[r][colidx] != rhs[r][colidx])
                                                fail("associativity fails on triple ",
                                                     element_key(tqft::pair_space(x, y), e1), " * ",
                                                     element_key(tqft::pair_space(y, z), e2), " * ",
                                                     element_key(tqft::pair_space(z, w), e3), " at weight ",
                                                     kk.str());
                                    }
                            fail("associativity fails at weight ", kk.str());
                        }
                    });
                }
    return rep;
}

// with the trivial oracle the lift linearizes to the plain algebra
inline bool trivial_lift_matches_plain(const WeightSeq& kk) {
    int p = kk.p();
    auto ms = planar::enumerate_matchings(p);
    auto oracle = trivial_signs();
    for (auto& x : ms)
        for (auto& y : ms)
            for (auto& z : ms) {
                WebMorphism wm{kk, {x, y, z}};
                auto S = burnside::linearize(phi_signed_basic(wm, oracle));
                auto P = burnside::linearize(lift::phi_basic(wm.underlying()));
                if (S != P) return false;
            }
    return true;
}

}  // namespace arcframe::webs
