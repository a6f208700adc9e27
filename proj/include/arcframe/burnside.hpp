#pragma once

// The (signed) Burnside multicategory on finite index sets. Elements of
// composite correspondences are tokens: postorder sequences of atoms with
// leaf markers. Multicomposition splices inner tokens into the outer token's
// leaf positions, which makes composition strictly associative and strictly
// unital (the identity token is a single leaf marker).

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "arcframe/common.hpp"

namespace arcframe::burnside {

struct Atom {
    std::string origin;       // the basic correspondence this element came from
    int row = 0;              // its row index there
    std::vector<int> col;     // its column tuple there
    std::vector<int> choice;  // per genus-one component selection

    auto operator<=>(const Atom&) const = default;
};

struct TokenItem {
    bool leaf = false;
    Atom atom;  // meaningful when !leaf

    auto operator<=>(const TokenItem&) const = default;
};

using Token = std::vector<TokenItem>;

inline TokenItem leaf_item() { return TokenItem{true, {}}; }
inline TokenItem atom_item(Atom a) { return TokenItem{false, std::move(a)}; }

// token of a basic correspondence element: one leaf per input, then the atom
inline Token basic_token(int arity, Atom a) {
    Token t(arity, leaf_item());
    t.push_back(atom_item(std::move(a)));
    return t;
}

inline int leaf_count(const Token& t) {
    int c = 0;
    for (auto& it : t) c += it.leaf;
    return c;
}

// substitute inner tokens for the outer token's leaves, left to right
inline Token splice(const Token& outer, const std::vector<const Token*>& inners) {
    Token out;
    size_t i = 0;
    for (auto& it : outer) {
        if (it.leaf) {
            internal_check(i < inners.size(), "splice: not enough inner tokens");
            out.insert(out.end(), inners[i]->begin(), inners[i]->end());
            ++i;
        } else {
            out.push_back(it);
        }
    }
    internal_check(i == inners.size(), "splice: too many inner tokens");
    return out;
}

using Key = std::pair<int, std::vector<int>>;  // (row, column tuple)

struct Correspondence {
    std::vector<int> source_sizes;
    int target_size = 0;
    std::map<Key, std::vector<Token>> entries;  // tokens sorted and distinct

    void add(int row, const std::vector<int>& col, Token t) {
        auto& e = entries[{row, col}];
        auto it = std::lower_bound(e.begin(), e.end(), t);
        require(it == e.end() || *it != t, "correspondence: duplicate token");
        e.insert(it, std::move(t));
    }
    const std::vector<Token>* entry(int row, const std::vector<int>& col) const {
        auto it = entries.find({row, col});
        return it == entries.end() ? nullptr : &it->second;
    }
    long long entry_size(int row, const std::vector<int>& col) const {
        auto* e = entry(row, col);
        return e ? (long long)e->size() : 0;
    }
    bool in_range(const Key& k) const {
        if (k.first < 0 || k.first >= target_size) return false;
        if (k.second.size() != source_sizes.size()) return false;
        for (size_t i = 0; i < source_sizes.size(); ++i)
            if (k.second[i] < 0 || k.second[i] >= source_sizes[i]) return false;
        return true;
    }
    void validate() const {
        for (auto& [k, e] : entries) {
            require(in_range(k), "correspondence: key out of range");
            require(std::is_sorted(e.begin(), e.end()), "correspondence: tokens unsorted");
            require(std::adjacent_find(e.begin(), e.end()) == e.end(), "correspondence: duplicate tokens");
        }
    }
    bool operator==(const Correspondence&) const = default;

    // all column tuples, in mixed-radix order (first source most significant)
    std::vector<std::vector<int>> columns() const {
        std::vector<std::vector<int>> out;
        std::vector<int> cur(source_sizes.size(), 0);
        long long total = 1;
        for (int s : source_sizes) total *= s;
        if (total == 0) return out;
        for (long long i = 0; i < total; ++i) {
            out.push_back(cur);
            for (int d = (int)cur.size() - 1; d >= 0; --d) {
                if (++cur[d] < source_sizes[d]) break;
                cur[d] = 0;
            }
        }
        return out;
    }
};

inline Correspondence identity_correspondence(int size) {
    Correspondence c;
    c.source_sizes = {size};
    c.target_size = size;
    for (int i = 0; i < size; ++i) c.entries[{i, {i}}] = {Token{leaf_item()}};
    return c;
}

inline bool is_identity(const Correspondence& c) {
    return c == identity_correspondence(c.target_size);
}

namespace detail {

// shared entry-product walker for compose / signed compose / hcompose: calls
// fn(row, composite column, outer key, outer token index, inner keys, inner
// token indices) for every element of the multicomposition
template <class Fn>
void walk_composition(const Correspondence& outer, const std::vector<const Correspondence*>& inners, Fn&& fn) {
    require(outer.source_sizes.size() == inners.size(), "compose: arity mismatch");
    for (size_t i = 0; i < inners.size(); ++i)
        require(inners[i]->target_size == outer.source_sizes[i],
                "compose: shape mismatch at slot " + std::to_string(i));
    for (auto& [okey, otoks] : outer.entries) {
        const auto& [z, ys] = okey;
        std::vector<std::vector<const Key*>> options(inners.size());
        bool dead = false;
        for (size_t i = 0; i < inners.size() && !dead; ++i) {
            for (auto& [ikey, itoks] : inners[i]->entries)
                if (ikey.first == ys[i]) options[i].push_back(&ikey);
            if (options[i].empty()) dead = true;
        }
        if (dead) continue;
        std::vector<int> pick(inners.size(), 0);
        while (true) {
            std::vector<int> col;
            std::vector<const Key*> ikeys(inners.size());
            for (size_t i = 0; i < inners.size(); ++i) {
                ikeys[i] = options[i][pick[i]];
                for (int x : ikeys[i]->second) col.push_back(x);
            }
            // product over token choices
            std::vector<int> tpick(inners.size(), 0);
            std::vector<const std::vector<Token>*> tlists(inners.size());
            bool any = true;
            for (size_t i = 0; i < inners.size(); ++i) {
                tlists[i] = inners[i]->entry(ikeys[i]->first, ikeys[i]->second);
                if (!tlists[i] || tlists[i]->empty()) any = false;
            }
            if (any) {
                while (true) {
                    for (size_t oi = 0; oi < otoks.size(); ++oi) fn(z, col, okey, (int)oi, ikeys, tpick);
                    int d = (int)inners.size() - 1;
                    for (; d >= 0; --d) {
                        if (++tpick[d] < (int)tlists[d]->size()) break;
                        tpick[d] = 0;
                    }
                    if (d < 0) break;
                }
            }
            int d = (int)inners.size() - 1;
            for (; d >= 0; --d) {
                if (++pick[d] < (int)options[d].size()) break;
                pick[d] = 0;
            }
            if (d < 0) break;
        }
    }
}

}  // namespace detail

inline Correspondence compose(const Correspondence& outer, const std::vector<Correspondence>& inners) {
    std::vector<const Correspondence*> ptrs;
    for (auto& i : inners) ptrs.push_back(&i);
    Correspondence out;
    out.target_size = outer.target_size;
    for (auto& inn : inners)
        for (int s : inn.source_sizes) out.source_sizes.push_back(s);
    detail::walk_composition(outer, ptrs, [&](int z, const std::vector<int>& col, const Key& okey, int oi,
                                              const std::vector<const Key*>& ikeys, const std::vector<int>& tpick) {
        std::vector<const Token*> parts(ikeys.size());
        for (size_t i = 0; i < ikeys.size(); ++i)
            parts[i] = &(*inners[i].entry(ikeys[i]->first, ikeys[i]->second))[tpick[i]];
        out.add(z, col, splice((*outer.entry(okey.first, okey.second))[oi], parts));
    });
    return out;
}

// ---------------------------------------------------------------------------
// Signed correspondences

struct SignedCorrespondence {
    Correspondence corr;
    std::map<Key, std::vector<int>> signs;  // aligned with corr entry tokens

    void validate() const {
        corr.validate();
        for (auto& [k, e] : corr.entries) {
            auto it = signs.find(k);
            require(it != signs.end() && it->second.size() == e.size(), "signed: sign labels must cover all tokens");
            for (int s : it->second) require(s == 1 || s == -1, "signed: labels must be +1/-1");
        }
    }
    int sign_of(const Key& k, const Token& t) const {
        auto* e = corr.entry(k.first, k.second);
        internal_check(e != nullptr, "sign_of: no such entry");
        auto it = std::lower_bound(e->begin(), e->end(), t);
        internal_check(it != e->end() && *it == t, "sign_of: no such token");
        return signs.at(k)[it - e->begin()];
    }
    bool operator==(const SignedCorrespondence&) const = default;
};

inline SignedCorrespondence with_signs(const Correspondence& c, int sign = 1) {
    SignedCorrespondence s;
    s.corr = c;
    for (auto& [k, e] : c.entries) s.signs[k].assign(e.size(), sign);
    return s;
}

inline SignedCorrespondence signed_identity(int size) { return with_signs(identity_correspondence(size)); }

inline SignedCorrespondence signed_compose(const SignedCorrespondence& outer,
                                           const std::vector<SignedCorrespondence>& inners) {
    std::vector<Correspondence> plain;
    std::vector<const Correspondence*> ptrs;
    for (auto& i : inners) plain.push_back(i.corr);
    for (auto& i : inners) ptrs.push_back(&i.corr);
    SignedCorrespondence out;
    out.corr = compose(outer.corr, plain);
    for (auto& [k, e] : out.corr.entries) out.signs[k].assign(e.size(), 0);
    detail::walk_composition(
        outer.corr, ptrs,
        [&](int z, const std::vector<int>& col, const Key& okey, int oi, const std::vector<const Key*>& ikeys,
            const std::vector<int>& tpick) {
            std::vector<const Token*> parts(ikeys.size());
            int sign = outer.signs.at(okey)[oi];
            for (size_t i = 0; i < ikeys.size(); ++i) {
                parts[i] = &(*inners[i].corr.entry(ikeys[i]->first, ikeys[i]->second))[tpick[i]];
                sign *= inners[i].signs.at(*ikeys[i])[tpick[i]];
            }
            Token t = splice((*outer.corr.entry(okey.first, okey.second))[oi], parts);
            auto* e = out.corr.entry(z, col);
            auto it = std::lower_bound(e->begin(), e->end(), t);
            internal_check(it != e->end() && *it == t, "signed compose: missing token");
            out.signs[{z, col}][it - e->begin()] = sign;
        });
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Entrywise bijections (2-morphisms)

struct EntrywiseBijection {
    std::map<Key, std::map<Token, Token>> maps;

    static EntrywiseBijection identity(const Correspondence& c) {
        EntrywiseBijection f;
        for (auto& [k, e] : c.entries)
            for (auto& t : e) f.maps[k][t] = t;
        return f;
    }
    Token apply(const Key& k, const Token& t) const {
        auto it = maps.find(k);
        internal_check(it != maps.end(), "bijection: no such entry");
        auto jt = it->second.find(t);
        internal_check(jt != it->second.end(), "bijection: no such token");
        return jt->second;
    }
    bool operator==(const EntrywiseBijection&) const = default;
};

inline void validate_bijection(const EntrywiseBijection& f, const Correspondence& from, const Correspondence& to) {
    require(from.source_sizes == to.source_sizes && from.target_size == to.target_size, "bijection: shape mismatch");
    for (auto& [k, e] : from.entries) {
        auto it = f.maps.find(k);
        require(it != f.maps.end() && it->second.size() == e.size(), "bijection: entry not covered");
        auto* te = to.entry(k.first, k.second);
        require(te && te->size() == e.size(), "bijection: entry sizes differ");
        std::set<Token> image;
        for (auto& t : e) {
            auto jt = it->second.find(t);
            require(jt != it->second.end(), "bijection: token not mapped");
            require(std::binary_search(te->begin(), te->end(), jt->second), "bijection: image not in target entry");
            require(image.insert(jt->second).second, "bijection: not injective");
        }
    }
    for (auto& [k, e] : to.entries)
        require(from.entry_size(k.first, k.second) == (long long)e.size(), "bijection: target entry uncovered");
}

inline void validate_signed_bijection(const EntrywiseBijection& f, const SignedCorrespondence& from,
                                      const SignedCorrespondence& to) {
    validate_bijection(f, from.corr, to.corr);
    for (auto& [k, e] : from.corr.entries)
        for (auto& t : e)
            require(from.sign_of(k, t) == to.sign_of(k, f.apply(k, t)), "bijection: sign not preserved");
}

// vertical composition g after f
inline EntrywiseBijection vcompose(const EntrywiseBijection& g, const EntrywiseBijection& f) {
    EntrywiseBijection out;
    for (auto& [k, m] : f.maps)
        for (auto& [t, u] : m) out.maps[k][t] = g.apply(k, u);
    return out;
}

inline EntrywiseBijection invert(const EntrywiseBijection& f) {
    EntrywiseBijection out;
    for (auto& [k, m] : f.maps)
        for (auto& [t, u] : m) out.maps[k][u] = t;
    return out;
}

// horizontal multicomposition g * (f_1 x ... x f_m) on the composed correspondences
inline EntrywiseBijection hcompose_bijections(const EntrywiseBijection& g, const Correspondence& outer_from,
                                              const std::vector<EntrywiseBijection>& fs,
                                              const std::vector<Correspondence>& inners_from) {
    require(fs.size() == inners_from.size() && outer_from.source_sizes.size() == fs.size(), "hcompose: arity mismatch");
    std::vector<const Correspondence*> ptrs;
    for (auto& i : inners_from) ptrs.push_back(&i);
    EntrywiseBijection out;
    detail::walk_composition(
        outer_from, ptrs,
        [&](int z, const std::vector<int>& col, const Key& okey, int oi, const std::vector<const Key*>& ikeys,
            const std::vector<int>& tpick) {
            std::vector<const Token*> from_parts(ikeys.size());
            std::vector<Token> to_parts_store(ikeys.size());
            std::vector<const Token*> to_parts(ikeys.size());
            for (size_t i = 0; i < ikeys.size(); ++i) {
                from_parts[i] = &(*inners_from[i].entry(ikeys[i]->first, ikeys[i]->second))[tpick[i]];
                to_parts_store[i] = fs[i].apply(*ikeys[i], *from_parts[i]);
                to_parts[i] = &to_parts_store[i];
            }
            const Token& ofrom = (*outer_from.entry(okey.first, okey.second))[oi];
            Token oto = g.apply(okey, ofrom);
            out.maps[{z, col}][splice(ofrom, from_parts)] = splice(oto, to_parts);
        });
    return out;
}

// ---------------------------------------------------------------------------
// Linearization to integer matrices

using Matrix = std::vector<std::vector<long long>>;

inline long long col_index(const std::vector<int>& sizes, const std::vector<int>& col) {
    long long idx = 0;
    for (size_t i = 0; i < sizes.size(); ++i) idx = idx * sizes[i] + col[i];
    return idx;
}

inline Matrix linearize(const Correspondence& c) {
    long long cols = 1;
    for (int s : c.source_sizes) cols *= s;
    Matrix M(c.target_size, std::vector<long long>(cols, 0));
    for (auto& [k, e] : c.entries) M[k.first][col_index(c.source_sizes, k.second)] += (long long)e.size();
    return M;
}

inline Matrix linearize(const SignedCorrespondence& c) {
    long long cols = 1;
    for (int s : c.corr.source_sizes) cols *= s;
    Matrix M(c.corr.target_size, std::vector<long long>(cols, 0));
    for (auto& [k, e] : c.corr.entries) {
        long long tot = 0;
        for (int s : c.signs.at(k)) tot += s;
        M[k.first][col_index(c.corr.source_sizes, k.second)] += tot;
    }
    return M;
}

inline Matrix mat_mul(const Matrix& A, const Matrix& B) {
    internal_check(A.empty() || B.empty() || A[0].size() == B.size(), "mat_mul shape");
    Matrix C(A.size(), std::vector<long long>(B.empty() ? 0 : B[0].size(), 0));
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t k = 0; k < B.size(); ++k)
            if (A[i][k])
                for (size_t j = 0; j < B[k].size(); ++j) C[i][j] += A[i][k] * B[k][j];
    return C;
}

inline Matrix kronecker(const Matrix& A, const Matrix& B) {
    if (A.empty()) return B;
    if (B.empty()) return A;
    Matrix C(A.size() * B.size(), std::vector<long long>(A[0].size() * B[0].size(), 0));
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < A[0].size(); ++j)
            for (size_t k = 0; k < B.size(); ++k)
                for (size_t l = 0; l < B[0].size(); ++l) C[i * B.size() + k][j * B[0].size() + l] = A[i][j] * B[k][l];
    return C;
}

}  // namespace arcframe::burnside
