#pragma once

// The rank-2 Frobenius theory on dotted-disk bases: arc algebra products,
// tangle bimodule generators, cobordism actions and the mod-2 local relations.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "arcframe/common.hpp"
#include "arcframe/frames.hpp"
#include "arcframe/planar.hpp"

namespace arcframe::tqft {

enum class Ring { Z, F2 };

// basis {1, X}: product 1*1=1, 1*X=X, X*X=0; coproduct d(1)=1@X+X@1,
// d(X)=X@X; unit 1; counit e(1)=0, e(X)=1; a dot multiplies by X
struct FrobeniusData {
    static int product(int d1, int d2) { return d1 + d2; }  // dot count, >=2 dies
    static int counit(int d) { return d == 1 ? 1 : 0; }
};

// ---------------------------------------------------------------------------
// Disk spaces: the canonical circle-indexed bases

struct DiskSpace {
    bool pair = true;
    planar::Matching a, b;
    planar::SliceWord T;     // triple case only
    std::vector<int> bits;   // resolution of T's crossings
    frames::Config config;   // canonical circle order

    int ncirc() const { return config.size(); }
    int dim() const { return 1 << ncirc(); }

    std::string key() const {
        std::string k = pair ? "P" : "T";
        for (int p : a.pair) k += std::to_string(p) + ",";
        k += "|";
        for (int p : b.pair) k += std::to_string(p) + ",";
        if (!pair) {
            k += "|";
            for (auto& s : T.slices)
                k += std::to_string((int)s.kind) + "." + std::to_string(s.pos) + "." + std::to_string(s.cross_index) + ";";
            k += "L" + std::to_string(T.closed_loops) + "|";
            for (int x : bits) k += std::to_string(x);
        }
        return k;
    }
    bool operator==(const DiskSpace& o) const { return key() == o.key(); }
};

inline DiskSpace pair_space(const planar::Matching& a, const planar::Matching& b) {
    require(a.n == b.n, "pair space: size mismatch");
    DiskSpace s;
    s.pair = true;
    s.a = a;
    s.b = b;
    for (auto& c : planar::circles(a, b).circles) s.config.circles.push_back(frames::ConfigCircle{c.points, {}});
    return s;
}

inline DiskSpace triple_space(const planar::Matching& a, const planar::SliceWord& T, const std::vector<int>& bits,
                              const planar::Matching& b) {
    DiskSpace s;
    s.pair = false;
    s.a = a;
    s.b = b;
    s.T = T;
    s.bits = bits;
    s.config = frames::tv_config(a, T, bits, b);
    return s;
}

// A dotted-disk basis element: dot bit i belongs to circle i of the space.
struct DiskElement {
    DiskSpace space;
    uint32_t dots = 0;

    std::string dots_string() const {
        std::string s;
        for (int i = 0; i < space.ncirc(); ++i) s += (dots >> i & 1) ? '1' : '0';
        return s;
    }
};

inline std::vector<DiskElement> bimodule_generators(const planar::Matching& a, const planar::SliceWord& T,
                                                    const planar::Matching& b) {
    require(planar::is_flat(T), "bimodule_generators: tangle must be flat");
    auto space = triple_space(a, T, {}, b);
    std::vector<DiskElement> out;
    for (uint32_t d = 0; d < (uint32_t)space.dim(); ++d) out.push_back(DiskElement{space, d});
    return out;
}

// ---------------------------------------------------------------------------
// Linear combinations

struct Cob {
    Ring ring = Ring::Z;
    DiskSpace space;
    std::map<uint32_t, long long> terms;  // no zero coefficients stored

    void add(uint32_t dots, long long c) {
        if (ring == Ring::F2) c &= 1;
        if (c == 0) return;
        auto [it, fresh] = terms.emplace(dots, 0);
        it->second += c;
        if (ring == Ring::F2) it->second &= 1;
        if (it->second == 0) terms.erase(it);
    }
    bool is_zero() const { return terms.empty(); }
    bool operator==(const Cob& o) const { return ring == o.ring && space == o.space && terms == o.terms; }
};

inline Cob cob_of(const DiskElement& x, Ring ring = Ring::Z) {
    Cob c;
    c.ring = ring;
    c.space = x.space;
    c.add(x.dots, 1);
    return c;
}

// ---------------------------------------------------------------------------
// Frame replay: push dotted circles through a saddle decomposition

namespace detail {

struct ReplayState {
    std::map<int, int> dots;  // machine circle index -> dot count (0 or 1)
    long long coeff = 1;
};

// canonical order of a circle list: nonempty point sets first by points, then
// free loops by signature (matches frames::Config ordering)
inline std::vector<int> canonical_order(const frames::SaddleDecomposition& D, const std::vector<int>& ids) {
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

}  // namespace detail

// input_dots maps machine circle index -> 0/1; the result maps output dot
// masks (in canonical output order) to integer coefficients
inline std::map<uint32_t, long long> replay_frame(const frames::SaddleDecomposition& D,
                                                  const std::map<int, int>& input_dots) {
    using frames::SaddleEvent;
    std::vector<detail::ReplayState> work;
    detail::ReplayState init;
    for (int idx : D.inputs) {
        auto it = input_dots.find(idx);
        internal_check(it != input_dots.end(), "replay: missing input dots");
        init.dots[idx] = it->second;
    }
    work.push_back(init);
    for (auto& ev : D.steps) {
        std::vector<detail::ReplayState> next;
        for (auto& st : work) {
            switch (ev.kind) {
                case SaddleEvent::Birth: {
                    auto s = st;
                    s.dots[ev.out[0]] = 0;
                    next.push_back(std::move(s));
                    break;
                }
                case SaddleEvent::Death: {
                    int d = st.dots.at(ev.in[0]);
                    if (FrobeniusData::counit(d) == 0) break;
                    auto s = st;
                    s.dots.erase(ev.in[0]);
                    next.push_back(std::move(s));
                    break;
                }
                case SaddleEvent::Merge: {
                    int d = st.dots.at(ev.in[0]) + st.dots.at(ev.in[1]);
                    if (d >= 2) break;  // X^2 = 0
                    auto s = st;
                    s.dots.erase(ev.in[0]);
                    s.dots.erase(ev.in[1]);
                    s.dots[ev.out[0]] = d;
                    next.push_back(std::move(s));
                    break;
                }
                case SaddleEvent::Split: {
                    int d = st.dots.at(ev.in[0]);
                    if (d == 0) {
                        for (int side = 0; side < 2; ++side) {
                            auto s = st;
                            s.dots.erase(ev.in[0]);
                            s.dots[ev.out[0]] = side == 0 ? 1 : 0;
                            s.dots[ev.out[1]] = side == 0 ? 0 : 1;
                            next.push_back(std::move(s));
                        }
                    } else {
                        auto s = st;
                        s.dots.erase(ev.in[0]);
                        s.dots[ev.out[0]] = 1;
                        s.dots[ev.out[1]] = 1;
                        next.push_back(std::move(s));
                    }
                    break;
                }
            }
        }
        work = std::move(next);
    }
    auto order = detail::canonical_order(D, D.outputs);
    std::map<uint32_t, long long> out;
    for (auto& st : work) {
        uint32_t mask = 0;
        bool dead = false;
        for (int i = 0; i < (int)order.size(); ++i) {
            int d = st.dots.at(order[i]);
            if (d >= 2) {
                dead = true;
                break;
            }
            if (d == 1) mask |= 1u << i;
        }
        if (dead) continue;
        out[mask] += st.coeff;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

// dot index of a machine input circle within its slot's canonical order
inline std::map<int, int> slot_positions(const frames::SaddleDecomposition& D) {
    std::map<frames::SlotLabel, std::vector<int>> by_slot;
    for (int idx : D.inputs) by_slot[D.circles[idx].slot].push_back(idx);
    std::map<int, int> pos;
    for (auto& [slot, ids] : by_slot) {
        auto order = detail::canonical_order(D, ids);
        for (int i = 0; i < (int)order.size(); ++i) pos[order[i]] = i;
    }
    return pos;
}

// ---------------------------------------------------------------------------
// Arc algebra multiplication

inline Cob multiply_n(const std::vector<DiskElement>& xs, Ring ring = Ring::Z) {
    require(!xs.empty(), "multiply_n: empty chain");
    std::vector<planar::Matching> seq;
    seq.push_back(xs[0].space.a);
    for (auto& x : xs) {
        require(x.space.pair, "multiply_n: pair elements only");
        require(x.space.a == seq.back(), "multiply_n: chain break");
        seq.push_back(x.space.b);
    }
    auto F = frames::build_arc_frame(seq);
    auto D = frames::saddle_decompose(F);
    auto pos = slot_positions(D);
    std::map<int, int> input_dots;
    for (int idx : D.inputs) {
        auto& r = D.circles[idx];
        internal_check(r.slot.kind == frames::SlotLabel::LeftSlot, "unexpected input slot");
        input_dots[idx] = xs[r.slot.index - 1].dots >> pos[idx] & 1;
    }
    Cob out;
    out.ring = ring;
    out.space = pair_space(seq.front(), seq.back());
    for (auto& [mask, c] : replay_frame(D, input_dots)) out.add(mask, c);
    return out;
}

inline Cob multiply(const DiskElement& x, const DiskElement& y, Ring ring = Ring::Z) {
    require(x.space.pair && y.space.pair, "multiply: pair elements only");
    require(x.space.b == y.space.a, "multiply: middle mismatch");
    return multiply_n({x, y}, ring);
}

// ---------------------------------------------------------------------------
// Abstract dotted cobordisms as step lists (shared with the relation checker)

struct StepList {
    struct Step {
        enum K { Birth, Merge, Split, Death, Dot } k = Dot;
        int a = -1, b = -1, c = -1;  // abstract circle ids
    };
    std::vector<Step> steps;
    std::vector<int> inputs;   // abstract ids, in input-space circle order
    std::vector<int> outputs;  // abstract ids, in output-space circle order

    static StepList identity(int ncirc) {
        StepList s;
        for (int i = 0; i < ncirc; ++i) {
            s.inputs.push_back(i);
            s.outputs.push_back(i);
        }
        return s;
    }
};

// action on dot masks: returns map output-mask -> coefficient
inline std::map<uint32_t, long long> act_steps(const StepList& sl, uint32_t in_mask) {
    struct State {
        std::map<int, int> dots;
    };
    std::vector<State> work(1);
    for (int i = 0; i < (int)sl.inputs.size(); ++i) work[0].dots[sl.inputs[i]] = in_mask >> i & 1;
    for (auto& st : sl.steps) {
        std::vector<State> next;
        for (auto& s : work) {
            switch (st.k) {
                case StepList::Step::Birth: {
                    auto t = s;
                    t.dots[st.a] = 0;
                    next.push_back(std::move(t));
                    break;
                }
                case StepList::Step::Death: {
                    if (FrobeniusData::counit(s.dots.at(st.a)) == 0) break;
                    auto t = s;
                    t.dots.erase(st.a);
                    next.push_back(std::move(t));
                    break;
                }
                case StepList::Step::Dot: {
                    if (s.dots.at(st.a) >= 1) break;  // X^2 = 0
                    auto t = s;
                    t.dots[st.a] = 1;
                    next.push_back(std::move(t));
                    break;
                }
                case StepList::Step::Merge: {
                    int d = s.dots.at(st.a) + s.dots.at(st.b);
                    if (d >= 2) break;
                    auto t = s;
                    t.dots.erase(st.a);
                    t.dots.erase(st.b);
                    t.dots[st.c] = d;
                    next.push_back(std::move(t));
                    break;
                }
                case StepList::Step::Split: {
                    int d = s.dots.at(st.a);
                    if (d == 0) {
                        for (int side = 0; side < 2; ++side) {
                            auto t = s;
                            t.dots.erase(st.a);
                            t.dots[st.b] = side == 0 ? 1 : 0;
                            t.dots[st.c] = side == 0 ? 0 : 1;
                            next.push_back(std::move(t));
                        }
                    } else {
                        auto t = s;
                        t.dots.erase(st.a);
                        t.dots[st.b] = 1;
                        t.dots[st.c] = 1;
                        next.push_back(std::move(t));
                    }
                    break;
                }
            }
        }
        work = std::move(next);
    }
    std::map<uint32_t, long long> out;
    for (auto& s : work) {
        uint32_t mask = 0;
        for (int i = 0; i < (int)sl.outputs.size(); ++i)
            if (s.dots.at(sl.outputs[i]) == 1) mask |= 1u << i;
        ++out[mask];
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

inline Cob act_cobordism(const StepList& sl, const Cob& x, const DiskSpace& out_space) {
    require((int)sl.inputs.size() == x.space.ncirc(), "act_cobordism: input signature mismatch");
    require((int)sl.outputs.size() == out_space.ncirc(), "act_cobordism: output signature mismatch");
    Cob out;
    out.ring = x.ring;
    out.space = out_space;
    for (auto& [mask, c] : x.terms)
        for (auto& [omask, k] : act_steps(sl, mask)) out.add(omask, c * k);
    return out;
}

// matrix of a step list over a ring, columns = input masks, rows = output masks
inline std::vector<std::vector<long long>> step_matrix(const StepList& sl, Ring ring) {
    int ic = (int)sl.inputs.size(), oc = (int)sl.outputs.size();
    std::vector<std::vector<long long>> M(1 << oc, std::vector<long long>(1 << ic, 0));
    for (uint32_t in = 0; in < (1u << ic); ++in)
        for (auto& [om, c] : act_steps(sl, in)) {
            M[om][in] += c;
            if (ring == Ring::F2) M[om][in] &= 1;
        }
    return M;
}

// both sides are formal sums of cobordism descriptors over F2
inline bool check_barnatan_f2(const std::vector<StepList>& lhs, const std::vector<StepList>& rhs) {
    require(!lhs.empty() || !rhs.empty(), "check_barnatan_f2: nothing to compare");
    auto arity = [](const std::vector<StepList>& v) {
        std::pair<int, int> a{-1, -1};
        for (auto& s : v) {
            std::pair<int, int> b{(int)s.inputs.size(), (int)s.outputs.size()};
            if (a.first < 0) a = b;
            require(a == b, "check_barnatan_f2: signature mismatch inside a side");
        }
        return a;
    };
    auto al = lhs.empty() ? arity(rhs) : arity(lhs);
    auto ar = rhs.empty() ? al : arity(rhs);
    require(al == ar, "check_barnatan_f2: signature mismatch between sides");
    int ic = al.first, oc = al.second;
    std::vector<std::vector<long long>> L(1 << oc, std::vector<long long>(1 << ic, 0));
    auto acc = [&](const std::vector<StepList>& v) {
        std::vector<std::vector<long long>> M(1 << oc, std::vector<long long>(1 << ic, 0));
        for (auto& s : v) {
            auto sm = step_matrix(s, Ring::F2);
            for (int r = 0; r < (1 << oc); ++r)
                for (int c = 0; c < (1 << ic); ++c) M[r][c] = (M[r][c] + sm[r][c]) & 1;
        }
        return M;
    };
    return acc(lhs) == acc(rhs);
}

}  // namespace arcframe::tqft
