#pragma once

// JSON encodings for the external interfaces and the line-based diagram DSL.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "arcframe/burnside.hpp"
#include "arcframe/common.hpp"
#include "arcframe/frames.hpp"
#include "arcframe/planar.hpp"
#include "arcframe/tqft.hpp"

namespace arcframe::json_io {

using json = nlohmann::ordered_json;

// -------------------------------------------------- planar

inline json to_json(const planar::Matching& m) {
    json arr = json::array();
    for (int p : m.pair) arr.push_back(p + 1);
    return arr;
}

inline planar::Matching matching_from_json(const json& j) {
    require(j.is_array(), "matching: expected an array");
    planar::Matching m;
    m.n = (int)j.size() / 2;
    require((int)j.size() == 2 * m.n, "matching: odd point count");
    for (auto& x : j) {
        require(x.is_number_integer(), "matching: entries must be integers");
        m.pair.push_back((int)x - 1);
    }
    planar::validate(m);
    return m;
}

inline json to_json(const planar::SliceWord& w) {
    json slices = json::array();
    for (auto& s : w.slices) {
        json rec;
        switch (s.kind) {
            case planar::SliceKind::Id: rec["t"] = "id"; break;
            case planar::SliceKind::Cup:
                rec["t"] = "cup";
                rec["i"] = s.pos + 1;
                break;
            case planar::SliceKind::Cap:
                rec["t"] = "cap";
                rec["i"] = s.pos + 1;
                break;
            case planar::SliceKind::Cross:
                rec["t"] = "x";
                rec["i"] = s.pos + 1;
                rec["c"] = s.cross_index;
                break;
        }
        slices.push_back(rec);
    }
    return json{{"left", w.left_pts}, {"right", w.right_pts}, {"loops", w.closed_loops}, {"slices", slices}};
}

inline json to_json(const planar::CircleSet& cs) {
    json arr = json::array();
    for (auto& c : cs.circles) {
        json pts = json::array();
        for (int p : c.points) pts.push_back(p + 1);
        arr.push_back(pts);
    }
    return arr;
}

// -------------------------------------------------- tqft

inline json to_json(const tqft::DiskSpace& s) {
    json j;
    j["a"] = to_json(s.a);
    j["b"] = to_json(s.b);
    if (!s.pair) {
        j["tangle"] = to_json(s.T);
        json bits = json::array();
        for (int x : s.bits) bits.push_back(x);
        j["state"] = bits;
    }
    return j;
}

inline json to_json(const tqft::DiskElement& e) {
    json j = to_json(e.space);
    j["dots"] = e.dots_string();
    return j;
}

inline json to_json(const tqft::Cob& c) {
    json terms = json::array();
    for (auto& [mask, coeff] : c.terms) {
        tqft::DiskElement e{c.space, mask};
        terms.push_back(json{{"element", to_json(e)}, {"coeff", coeff}});
    }
    return json{{"ring", c.ring == tqft::Ring::Z ? "z" : "f2"}, {"space", to_json(c.space)}, {"terms", terms}};
}

// -------------------------------------------------- frames

inline json to_json(const frames::FrameSurface& F) {
    json comps = json::array();
    for (auto& comp : F.components) {
        json boundary = json::array();
        for (int bi : comp.boundary) {
            auto& bc = F.boundary[bi];
            json pts = json::array();
            for (int p : bc.points) pts.push_back(p + 1);
            boundary.push_back(json{{"slot", bc.slot.str()}, {"points", pts}});
        }
        comps.push_back(json{{"genus", comp.genus}, {"euler_char", comp.euler_char}, {"boundary", boundary}});
    }
    return json{{"pieces", F.piece_count}, {"gluings", F.gluing_count}, {"components", comps}};
}

inline json to_json(const frames::SaddleDecomposition& D) {
    json steps = json::array();
    for (auto& ev : D.steps) {
        json in = json::array(), out = json::array();
        for (int c : ev.in) in.push_back(D.circles[c].key());
        for (int c : ev.out) out.push_back(D.circles[c].key());
        const char* kind = ev.kind == frames::SaddleEvent::Birth    ? "birth"
                           : ev.kind == frames::SaddleEvent::Death  ? "death"
                           : ev.kind == frames::SaddleEvent::Merge  ? "merge"
                                                                    : "split";
        steps.push_back(json{{"kind", kind}, {"in", in}, {"out", out}, {"desc", ev.desc}});
    }
    return steps;
}

// -------------------------------------------------- burnside

inline std::string token_string(const burnside::Token& t) {
    std::string s;
    for (auto& it : t) {
        if (it.leaf) {
            s += "_";
            continue;
        }
        s += "<" + it.atom.origin + "|r" + std::to_string(it.atom.row) + "|c";
        for (int x : it.atom.col) s += std::to_string(x) + ",";
        s += "|g";
        for (int x : it.atom.choice) s += std::to_string(x);
        s += ">";
    }
    return s;
}

inline json to_json(const burnside::Correspondence& c) {
    json entries = json::array();
    for (auto& [k, e] : c.entries) {
        json toks = json::array();
        for (auto& t : e) toks.push_back(token_string(t));
        json col = json::array();
        for (int x : k.second) col.push_back(x);
        entries.push_back(json{{"row", k.first}, {"col", col}, {"tokens", toks}});
    }
    json sizes = json::array();
    for (int s : c.source_sizes) sizes.push_back(s);
    return json{{"sources", sizes}, {"target", c.target_size}, {"entries", entries}};
}

inline json to_json(const burnside::SignedCorrespondence& c) {
    json j = to_json(c.corr);
    for (auto& entry : j["entries"]) {
        int row = entry["row"];
        std::vector<int> col;
        for (auto& x : entry["col"]) col.push_back((int)x);
        json toks = json::array();
        auto& signs = c.signs.at({row, col});
        auto* e = c.corr.entry(row, col);
        for (size_t i = 0; i < e->size(); ++i)
            toks.push_back(std::string(signs[i] > 0 ? "+" : "-") + token_string((*e)[i]));
        entry["tokens"] = toks;
    }
    return j;
}

// -------------------------------------------------- diagram DSL
//
// one slice per line: `id`, `cup i`, `cap i`, `x i c` (1-based positions,
// crossing index c), plus `loop` for a carried free circle; `#` comments

inline planar::SliceWord parse_diagram(std::istream& in, int left_pts = 0) {
    planar::SliceWord w;
    w.left_pts = left_pts;
    int cur = left_pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        auto ctx = "diagram line " + std::to_string(lineno);
        if (tok == "id") {
            w.slices.push_back({planar::SliceKind::Id, 0, 0});
        } else if (tok == "loop") {
            ++w.closed_loops;
        } else if (tok == "cup" || tok == "cap" || tok == "x") {
            int i;
            require(bool(ls >> i), ctx + ": missing position");
            require(i >= 1, ctx + ": positions are 1-based");
            if (tok == "cup") {
                require(i <= cur + 1, ctx + ": cup position out of range");
                w.slices.push_back({planar::SliceKind::Cup, i - 1, 0});
                cur += 2;
            } else if (tok == "cap") {
                require(i + 1 <= cur, ctx + ": cap position out of range");
                w.slices.push_back({planar::SliceKind::Cap, i - 1, 0});
                cur -= 2;
            } else {
                int c;
                require(bool(ls >> c), ctx + ": missing crossing index");
                require(i + 1 <= cur, ctx + ": crossing position out of range");
                w.slices.push_back({planar::SliceKind::Cross, i - 1, c});
            }
        } else {
            fail(ctx + ": unknown slice `" + tok + "`");
        }
    }
    w.right_pts = cur;
    planar::validate(w);
    return w;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace arcframe::json_io
