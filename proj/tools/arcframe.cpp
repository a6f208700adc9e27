// Command line surface: enumeration, arc algebra products, verification
// sweeps, and the mod-2 cube of resolutions.
//
// Exit codes: 0 = pass, 1 = a check failed, 2 = usage or input error.

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "arcframe/json_io.hpp"
#include "arcframe/lift.hpp"
#include "arcframe/qgroup.hpp"
#include "arcframe/webs.hpp"

using namespace arcframe;
using json = json_io::json;

namespace {

struct Output {
    std::string path;

    void write(const json& j) const {
        auto text = json_io::dump(j);
        if (path.empty()) {
            std::cout << text;
        } else {
            std::ofstream os(path, std::ios::binary);
            os << text;
        }
    }
};

json report_header(const std::string& command, long long seed) {
    json j;
    j["schema"] = 1;
    j["command"] = command;
    j["seed"] = seed;
    return j;
}

std::vector<int> parse_weight(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    require(!out.empty(), "empty weight");
    return out;
}

webs::SignOracle load_sign_table(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open sign table " + path);
    json j = json::parse(in);
    require(j.contains("entries") && j["entries"].is_array(), "sign table: missing entries array");
    webs::SignOracle oracle;
    oracle.trivial = false;
    for (auto& e : j["entries"]) {
        int s = e.at("sign");
        require(s == 1 || s == -1, "sign table: signs must be +1 or -1");
        oracle.table[{e.at("col"), e.at("row")}] = s;
    }
    return oracle;
}

int run_enum(int n, const Output& out, long long seed) {
    auto ms = planar::enumerate_matchings(n);
    json j = report_header("enum", seed);
    j["n"] = n;
    json arr = json::array();
    for (auto& m : ms) arr.push_back(json_io::to_json(m));
    j["matchings"] = arr;
    j["count"] = ms.size();
    out.write(j);
    return 0;
}

int run_multiply(const std::string& elements_path, const std::string& ring_name, const Output& out, long long seed) {
    std::ifstream in(elements_path);
    require(in.good(), "cannot open elements file " + elements_path);
    json j = json::parse(in);
    require(j.is_array() && !j.empty(), "multiply: expected a nonempty array of elements");
    std::vector<tqft::DiskElement> xs;
    for (auto& e : j) {
        auto a = json_io::matching_from_json(e.at("a"));
        auto b = json_io::matching_from_json(e.at("b"));
        std::string dots = e.at("dots");
        auto space = tqft::pair_space(a, b);
        require((int)dots.size() == space.ncirc(), "multiply: dot string length mismatch");
        uint32_t mask = 0;
        for (size_t i = 0; i < dots.size(); ++i) {
            require(dots[i] == '0' || dots[i] == '1', "multiply: dots must be 0/1");
            if (dots[i] == '1') mask |= 1u << i;
        }
        xs.push_back(tqft::DiskElement{space, mask});
    }
    auto ring = ring_name == "f2" ? tqft::Ring::F2 : tqft::Ring::Z;
    auto prod = tqft::multiply_n(xs, ring);
    json rep = report_header("multiply", seed);
    rep["product"] = json_io::to_json(prod);
    out.write(rep);
    return 0;
}

int run_verify_phi(int n, int bounds, const Output& out, long long seed) {
    lift::VerifyBounds vb{3, bounds, bounds};
    auto rep = lift::verify_multifunctor(n, vb);
    json j = report_header("verify phi", seed);
    j["n"] = n;
    j["bounds"] = bounds;
    j["checks"] = rep.checks;
    json counts = json::object();
    for (auto& [k, v] : rep.counts) counts[k] = v;
    j["counts"] = counts;
    json fails = json::array();
    for (auto& f : rep.failures) fails.push_back(f);
    j["failures"] = fails;
    j["ok"] = rep.ok();
    out.write(j);
    return rep.ok() ? 0 : 1;
}

int run_verify_signed(const std::vector<int>& weight, const std::string& signs_path, const Output& out,
                      long long seed) {
    webs::WeightSeq kk{weight};
    auto oracle = signs_path.empty() ? webs::trivial_signs() : load_sign_table(signs_path);
    auto rep = webs::verify_signed_multifunctor(kk, oracle);
    json j = report_header("verify signed", seed);
    j["weight"] = weight;
    j["oracle"] = signs_path.empty() ? "trivial" : signs_path;
    j["checks"] = rep.checks;
    json counts = json::object();
    for (auto& [k, v] : rep.counts) counts[k] = v;
    j["counts"] = counts;
    json fails = json::array();
    for (auto& f : rep.failures) fails.push_back(f);
    j["failures"] = fails;
    j["ok"] = rep.ok();
    out.write(j);
    return rep.ok() ? 0 : 1;
}

std::vector<qgroup::GLWeight> in_range_weights(int n) {
    std::vector<qgroup::GLWeight> out;
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (long long code = 0; code < total; ++code) {
        qgroup::GLWeight w;
        long long c = code;
        for (int i = 0; i < n; ++i) {
            w.k.push_back((int)(c % 3));
            c /= 3;
        }
        if (!w.zero()) out.push_back(w);
    }
    return out;
}

std::vector<std::string> pick_relations(const std::string& spec) {
    if (spec == "all") return qgroup::catalog();
    std::vector<std::string> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

int run_qgroup_check(int n, const std::string& relations, const std::string& ring, const Output& out,
                     long long seed) {
    require(ring == "f2", "qgroup-check: only the f2 ring is supported for relation checks");
    auto rels = pick_relations(relations);
    json verdicts = json::array();
    bool all_ok = true;
    for (auto& rel : rels)
        for (auto& kk : in_range_weights(n)) {
            bool ok = qgroup::check_relation(rel, kk);
            all_ok &= ok;
            verdicts.push_back(json{{"relation", rel}, {"weight", kk.k}, {"holds", ok}});
        }
    json j = report_header("qgroup-check", seed);
    j["n"] = n;
    j["ring"] = ring;
    j["verdicts"] = verdicts;
    j["ok"] = all_ok;
    out.write(j);
    return all_ok ? 0 : 1;
}

int run_qgroup_signs(int n, const std::string& relations, const Output& out, long long seed) {
    auto rels = pick_relations(relations);
    json results = json::array();
    bool all_ok = true;
    for (auto& rel : rels)
        for (auto& kk : in_range_weights(n)) {
            auto insts = qgroup::relation_instances(rel, kk);
            auto sols = qgroup::solve_signs(rel, kk);
            for (size_t t = 0; t < insts.size(); ++t) {
                json rec{{"instance", insts[t].name}};
                if (sols[t]) {
                    json eps = json::array();
                    for (int e : *sols[t]) eps.push_back(e);
                    rec["signs"] = eps;
                } else {
                    rec["signs"] = nullptr;
                    all_ok = false;
                }
                results.push_back(rec);
            }
        }
    json j = report_header("qgroup-signs", seed);
    j["n"] = n;
    j["results"] = results;
    j["ok"] = all_ok;
    out.write(j);
    return all_ok ? 0 : 1;
}

int run_sign_table(const std::vector<int>& weight, const Output& out, long long seed) {
    webs::WeightSeq kk{weight};
    require(kk.balanced(), "sign-table: weight must be balanced");
    auto ms = planar::enumerate_matchings(kk.p());
    json entries = json::array();
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<std::vector<planar::Matching>> chs{{}};
    for (int len = 0; len < 4; ++len) {
        std::vector<std::vector<planar::Matching>> next;
        for (auto& c : chs)
            if ((int)c.size() == len)
                for (auto& m : ms) {
                    auto d = c;
                    d.push_back(m);
                    next.push_back(d);
                }
        chs.insert(chs.end(), next.begin(), next.end());
    }
    for (auto& c : chs) {
        if (c.size() < 2) continue;
        webs::WebMorphism wm{kk, c};
        const auto& plain = lift::phi_basic(wm.underlying());
        for (auto& [k, e] : plain.entries) {
            auto ref = webs::entry_ref(wm, k.second, k.first);
            if (!seen.insert({ref.column, ref.row}).second) continue;
            entries.push_back(json{{"col", ref.column}, {"row", ref.row}, {"sign", 1}});
        }
    }
    json j = report_header("sign-table", seed);
    j["weight"] = weight;
    j["entries"] = entries;
    out.write(j);
    return 0;
}

int run_kh(const std::string& diagram_path, const Output& out, long long seed) {
    std::ifstream in(diagram_path);
    require(in.good(), "cannot open diagram file " + diagram_path);
    auto T = json_io::parse_diagram(in);
    require(T.left_pts == 0 && T.right_pts == 0, "kh: the diagram must be closed (no boundary points)");
    planar::Matching empty{0, {}};
    auto res = lift::phi_cube_linearize(T, empty, empty);
    json j = report_header("kh", seed);
    j["diagram"] = json_io::to_json(T);
    j["crossings"] = res.crossings;
    j["d_squared_zero"] = res.d_squared_zero;
    json hom = json::array();
    for (int h : res.homology) hom.push_back(h);
    j["homology_f2"] = hom;
    j["total_dimension"] = res.total_homology;
    out.write(j);
    return res.d_squared_zero ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale arc algebra and Burnside lift toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_path;
    long long seed = 0;
    app.add_option("--out", out_path, "write the JSON report here instead of stdout");
    app.add_option("--seed", seed, "seed recorded in reports (sweeps are deterministic)");

    int n = 1;
    int bounds = 3;
    std::string ring = "z";
    std::string weight_str;
    std::string signs_path;
    std::string relations = "all";
    std::string input_path;

    auto* c_enum = app.add_subcommand("enum", "list crossingless matchings on 2n points");
    c_enum->add_option("--n", n, "arc count")->required();

    auto* c_mul = app.add_subcommand("multiply", "multiply a chain of arc algebra basis elements");
    c_mul->add_option("elements", input_path, "JSON file with the element chain")->required();
    c_mul->add_option("--ring", ring, "z or f2")->check(CLI::IsMember({"z", "f2"}));

    auto* c_verify = app.add_subcommand("verify", "run a verification sweep");
    std::string kind;
    c_verify->add_option("kind", kind, "phi, signed or qgroup")
        ->required()
        ->check(CLI::IsMember({"phi", "signed", "qgroup"}));
    c_verify->add_option("--n", n, "matching size / rank");
    c_verify->add_option("--bounds", bounds, "tree vertex bound for phi");
    c_verify->add_option("--weight", weight_str, "weight sequence like 1,1,1,1 (signed)");
    c_verify->add_option("--signs", signs_path, "sign table JSON file (signed)");
    c_verify->add_option("--ring", ring, "ring for qgroup checks")->check(CLI::IsMember({"z", "f2"}));
    c_verify->add_option("--relations", relations, "all or a comma list of relation ids");

    auto* c_qc = app.add_subcommand("qgroup-check", "check the relation catalog over F2");
    c_qc->add_option("--n", n, "rank")->required();
    c_qc->add_option("--relations", relations, "all or a comma list");
    c_qc->add_option("--ring", ring, "must be f2")->check(CLI::IsMember({"f2"}));

    auto* c_qs = app.add_subcommand("qgroup-signs", "solve term signs over Z");
    c_qs->add_option("--n", n, "rank")->required();
    c_qs->add_option("--relations", relations, "all or a comma list");

    auto* c_kh = app.add_subcommand("kh", "mod-2 homology of the cube of resolutions");
    c_kh->add_option("diagram", input_path, "slice-word diagram file")->required();

    auto* c_st = app.add_subcommand("sign-table", "dump the all-plus sign table for a weight");
    c_st->add_option("--weight", weight_str, "weight sequence like 1,1,1,1")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Output out{out_path};
    try {
        if (c_enum->parsed()) return run_enum(n, out, seed);
        if (c_mul->parsed()) return run_multiply(input_path, ring, out, seed);
        if (c_verify->parsed()) {
            if (kind == "phi") return run_verify_phi(n, bounds, out, seed);
            if (kind == "signed") {
                require(!weight_str.empty(), "verify signed needs --weight");
                return run_verify_signed(parse_weight(weight_str), signs_path, out, seed);
            }
            require(ring == "f2", "verify qgroup needs --ring f2");
            return run_qgroup_check(n, relations, "f2", out, seed);
        }
        if (c_qc->parsed()) return run_qgroup_check(n, relations, "f2", out, seed);
        if (c_qs->parsed()) return run_qgroup_signs(n, relations, out, seed);
        if (c_kh->parsed()) return run_kh(input_path, out, seed);
        if (c_st->parsed()) return run_sign_table(parse_weight(weight_str), out, seed);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
