#include <catch2/catch_amalgamated.hpp>

#include "arcframe/burnside.hpp"

#include <random>

using namespace arcframe;
using namespace arcframe::burnside;

namespace {

Atom atom(const std::string& origin, int row, std::vector<int> col, std::vector<int> choice = {}) {
    return Atom{origin, row, std::move(col), std::move(choice)};
}

// random correspondence with the given shape; every entry gets 0..2 tokens
Correspondence random_corr(std::mt19937& rng, std::vector<int> sources, int target, const std::string& name) {
    Correspondence c;
    c.source_sizes = std::move(sources);
    c.target_size = target;
    int arity = (int)c.source_sizes.size();
    for (int z = 0; z < target; ++z)
        for (auto& col : c.columns()) {
            int k = (int)(rng() % 3);
            for (int t = 0; t < k; ++t) c.add(z, col, basic_token(arity, atom(name, z, col, {t})));
        }
    return c;
}

SignedCorrespondence random_signed(std::mt19937& rng, std::vector<int> sources, int target, const std::string& name) {
    auto c = random_corr(rng, std::move(sources), target, name);
    SignedCorrespondence s;
    s.corr = c;
    for (auto& [k, e] : c.entries) {
        auto& v = s.signs[k];
        for (size_t i = 0; i < e.size(); ++i) v.push_back(rng() % 2 ? 1 : -1);
    }
    return s;
}

}  // namespace

TEST_CASE("identity correspondence") {
    auto id3 = identity_correspondence(3);
    CHECK(id3.entry_size(0, {0}) == 1);
    CHECK(id3.entry_size(0, {1}) == 0);
    CHECK(compose(id3, {id3}) == id3);
}

TEST_CASE("compose") {
    std::mt19937 rng(42);
    SECTION("identity is strictly neutral, token for token") {
        auto A = random_corr(rng, {2, 3}, 2, "A");
        auto idt = identity_correspondence(2);
        CHECK(compose(idt, {A}) == A);
        auto id2 = identity_correspondence(2), id3 = identity_correspondence(3);
        CHECK(compose(A, {id2, id3}) == A);
    }
    SECTION("1x1 product cardinality") {
        Correspondence A, B;
        A.source_sizes = {1};
        A.target_size = 1;
        for (int t = 0; t < 2; ++t) A.add(0, {0}, basic_token(1, atom("A", 0, {0}, {t})));
        B.source_sizes = {1};
        B.target_size = 1;
        for (int t = 0; t < 3; ++t) B.add(0, {0}, basic_token(1, atom("B", 0, {0}, {t})));
        auto C = compose(A, {B});
        CHECK(C.entry_size(0, {0}) == 6);
    }
    SECTION("strict associativity on random instances") {
        for (int it = 0; it < 40; ++it) {
            auto C = random_corr(rng, {2}, 2, "C");
            auto B = random_corr(rng, {2}, 2, "B");
            auto A = random_corr(rng, {2}, 2, "A");
            CHECK(compose(compose(A, {B}), {C}) == compose(A, {compose(B, {C})}));
        }
        // multi-arity associativity
        for (int it = 0; it < 20; ++it) {
            auto B = random_corr(rng, {2, 2}, 2, "B");
            auto A1 = random_corr(rng, {2}, 2, "A1");
            auto A2 = random_corr(rng, {3}, 2, "A2");
            auto C1 = random_corr(rng, {2}, 2, "C1");
            auto C2 = random_corr(rng, {2}, 3, "C2");
            // (B (A1, A2)) (C1, C2) == B (A1 C1, A2 C2)
            auto lhs = compose(compose(B, {A1, A2}), {C1, C2});
            auto rhs = compose(B, {compose(A1, {C1}), compose(A2, {C2})});
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("signed compose") {
    std::mt19937 rng(7);
    SECTION("all plus stays all plus") {
        auto A = with_signs(random_corr(rng, {2}, 2, "A"));
        auto B = with_signs(random_corr(rng, {2}, 2, "B"));
        auto C = signed_compose(A, {B});
        for (auto& [k, sgn] : C.signs)
            for (int s : sgn) CHECK(s == 1);
    }
    SECTION("minus times minus is plus") {
        auto A = with_signs(random_corr(rng, {2}, 2, "A"), -1);
        auto B = with_signs(random_corr(rng, {2}, 2, "B"), -1);
        auto C = signed_compose(A, {B});
        bool any = false;
        for (auto& [k, sgn] : C.signs)
            for (int s : sgn) {
                CHECK(s == 1);
                any = true;
            }
        CHECK(any);
    }
    SECTION("per-token products on mixed instances") {
        for (int it = 0; it < 30; ++it) {
            auto A = random_signed(rng, {2}, 2, "A");
            auto B = random_signed(rng, {2}, 2, "B");
            auto C = signed_compose(A, {B});
            for (auto& [k, e] : C.corr.entries)
                for (auto& t : e) {
                    // token = leaf, inner atom, outer atom
                    REQUIRE(t.size() == 3);
                    REQUIRE(t[0].leaf);
                    Key bk{t[1].atom.row, t[1].atom.col};
                    Key ak{t[2].atom.row, t[2].atom.col};
                    CHECK(C.sign_of(k, t) ==
                          A.sign_of(ak, basic_token(1, t[2].atom)) * B.sign_of(bk, basic_token(1, t[1].atom)));
                }
            // associativity of signed composition
            auto D = random_signed(rng, {2}, 2, "D");
            CHECK(signed_compose(signed_compose(A, {B}), {D}) == signed_compose(A, {signed_compose(B, {D})}));
        }
    }
}

TEST_CASE("entrywise bijections") {
    std::mt19937 rng(11);
    SECTION("horizontal composition of identities is the identity") {
        auto A = random_corr(rng, {2}, 3, "A");
        auto B = random_corr(rng, {3}, 2, "B");
        auto comp = compose(B, {A});
        auto h = hcompose_bijections(EntrywiseBijection::identity(B), B, {EntrywiseBijection::identity(A)}, {A});
        CHECK(h == EntrywiseBijection::identity(comp));
    }
    SECTION("interchange law on random instances") {
        for (int it = 0; it < 25; ++it) {
            auto A = random_corr(rng, {2}, 3, "A");
            auto B = random_corr(rng, {3}, 2, "B");
            // vertical chains: A --f--> A --f'--> A and B --g--> B --g'--> B
            // use permutation bijections: reverse each entry's token list
            auto rev = [](const Correspondence& c) {
                EntrywiseBijection f;
                for (auto& [k, e] : c.entries)
                    for (size_t i = 0; i < e.size(); ++i) f.maps[k][e[i]] = e[e.size() - 1 - i];
                return f;
            };
            auto f = rev(A), g = rev(B);
            validate_bijection(f, A, A);
            validate_bijection(g, B, B);
            auto f2 = invert(f), g2 = invert(g);
            // hcompose(g2 o g, f2 o f) == hcompose(g2, f2) o hcompose(g, f)
            auto lhs = hcompose_bijections(vcompose(g2, g), B, {vcompose(f2, f)}, {A});
            auto rhs = vcompose(hcompose_bijections(g2, B, {f2}, {A}), hcompose_bijections(g, B, {f}, {A}));
            CHECK(lhs == rhs);
        }
    }
    SECTION("sign preservation under horizontal composition") {
        auto A = random_signed(rng, {2}, 2, "A");
        auto B = random_signed(rng, {2}, 2, "B");
        auto f = EntrywiseBijection::identity(A.corr);
        auto g = EntrywiseBijection::identity(B.corr);
        auto comp = signed_compose(B, {A});
        auto h = hcompose_bijections(g, B.corr, {f}, {A.corr});
        validate_signed_bijection(h, comp, comp);
    }
}

TEST_CASE("linearize") {
    std::mt19937 rng(5);
    SECTION("identity goes to the identity matrix") {
        auto M = linearize(identity_correspondence(3));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(M[i][j] == (i == j ? 1 : 0));
    }
    SECTION("functoriality: compose maps to matrix product") {
        for (int it = 0; it < 30; ++it) {
            auto A = random_corr(rng, {3}, 2, "A");
            auto B = random_corr(rng, {2}, 2, "B");
            CHECK(linearize(compose(B, {A})) == mat_mul(linearize(B), linearize(A)));
        }
        for (int it = 0; it < 15; ++it) {
            auto A1 = random_corr(rng, {2}, 2, "A1");
            auto A2 = random_corr(rng, {2}, 2, "A2");
            auto B = random_corr(rng, {2, 2}, 2, "B");
            CHECK(linearize(compose(B, {A1, A2})) ==
                  mat_mul(linearize(B), kronecker(linearize(A1), linearize(A2))));
        }
    }
    SECTION("signed cancellation") {
        Correspondence A;
        A.source_sizes = {1};
        A.target_size = 1;
        A.add(0, {0}, basic_token(1, atom("A", 0, {0}, {0})));
        A.add(0, {0}, basic_token(1, atom("A", 0, {0}, {1})));
        SignedCorrespondence S;
        S.corr = A;
        S.signs[{0, {0}}] = {1, -1};
        auto M = linearize(S);
        CHECK(M[0][0] == 0);
    }
    SECTION("signed functoriality on random instances") {
        for (int it = 0; it < 30; ++it) {
            auto A = random_signed(rng, {2}, 2, "A");
            auto B = random_signed(rng, {2}, 2, "B");
            CHECK(linearize(signed_compose(B, {A})) == mat_mul(linearize(B), linearize(A)));
        }
    }
}
