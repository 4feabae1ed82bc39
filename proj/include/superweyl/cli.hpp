#pragma once

/**
 * @file cli.hpp
 * @brief The superweyl command-line front end.
 *
 * Exit codes: 0 success or property holds, 2 invalid input or refused
 * precondition, 3 unsupported (root-data-only family, odd-root condition
 * failure, dimension cap), 4 invariant violation.
 */

#include "superweyl/checks.hpp"
#include "superweyl/json_io.hpp"

#include "CLI11.hpp"

#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace superweyl::cli {

enum ExitCode : int { kOk = 0, kInvalid = 2, kUnsupported = 3, kInvariant = 4 };

// ---------------------------------------------------------------------------
// Literal grammar

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!text.empty() && text.back() == sep) out.emplace_back();
    return out;
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

/// distinguished | good | reflect:i1,i2,... (odd reflections applied to the
/// distinguished base in sequence; indices into the current base).
inline SimpleSystem parse_system(const std::string& text, const Family& family) {
    auto [rs, dist] = root_system(family);
    const std::string t = trim(text);
    if (t == "distinguished") return dist;
    if (t == "good") return default_good_system(family);
    if (t.rfind("reflect:", 0) == 0) {
        SimpleSystem s = dist;
        for (const auto& part : split(t.substr(8), ',')) {
            const std::string p = trim(part);
            if (p.empty() || p.find_first_not_of("0123456789") != std::string::npos)
                throw InvalidInput("reflection index must be a natural number: '" + p + "'");
            s = odd_reflection(s, rs, std::stoul(p));
        }
        return s;
    }
    throw InvalidInput("unknown system selector '" + text + "' (expected distinguished, good or reflect:i,j,...)");
}

/// Comma-separated rationals on weight_label_functionals, or "nat" for the
/// highest weight of the natural representation, or "zero".
inline WeightVector parse_weight(const std::string& text, const RootSystem& rs, const SimpleSystem& system) {
    const std::string t = trim(text);
    if (t == "nat") return natural_highest_weight(rs, system);
    if (t == "zero") return WeightVector::zero(rs.rank_h());
    ScalarVector labels;
    for (const auto& part : split(t, ',')) labels.push_back(parse_scalar(trim(part)));
    return weight_from_labels(rs, system, labels);
}

/// "z1:w1;z2:w2;..." with w in the weight grammar; "" or "0" is psi = 0.
inline MapWeight parse_psi(const std::string& text, const RootSystem& rs, const SimpleSystem& system) {
    const std::string t = trim(text);
    std::vector<std::pair<Scalar, WeightVector>> entries;
    if (!t.empty() && t != "0") {
        for (const auto& item : split(t, ';')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) throw InvalidInput("map weight entry '" + item + "' lacks ':'");
            entries.emplace_back(parse_scalar(trim(item.substr(0, colon))),
                                 parse_weight(item.substr(colon + 1), rs, system));
        }
    }
    return psi_make(entries, rs, system);
}

/// Coefficients low degree first, comma separated: "0,1" is t, "-1,1" is t-1.
inline Polynomial parse_polynomial(const std::string& text) {
    ScalarVector c;
    for (const auto& part : split(trim(text), ',')) c.push_back(parse_scalar(trim(part)));
    return Polynomial(c);
}

// ---------------------------------------------------------------------------
// Rendering helpers

inline std::string render_vector(const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

inline std::string render_vector(const ScalarVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s + ")";
}

inline std::string render_roots(const std::vector<Root>& roots) {
    std::string s;
    for (std::size_t i = 0; i < roots.size(); ++i) s += (i ? " " : "") + render_vector(roots[i].coords);
    return s;
}

inline void render_character_table(std::ostream& out, const std::vector<std::pair<ScalarVector, std::size_t>>& ch) {
    for (const auto& [w, d] : ch) out << "  " << std::left << std::setw(28) << render_vector(w) << d << "\n";
}

inline void render_table(std::ostream& out, const CharacterReport& r) {
    out << "algebra      " << r.algebra << "\n";
    out << "system       " << render_roots(r.system) << "\n";
    out << "coordinates  ";
    for (std::size_t i = 0; i < r.coordinates.size(); ++i) out << (i ? ", " : "") << r.coordinates[i];
    out << "\n";
    if (!r.psi.empty()) {
        out << "psi         ";
        for (const auto& [z, w] : r.psi) out << " " << to_string(z) << ":" << render_vector(w);
        out << "\n";
    }
    out << "truncation   M=" << r.truncation;
    if (r.trace.size() > 1) {
        out << " (trace";
        for (const auto& [M, d] : r.trace) out << " " << M << ":" << d;
        out << ")";
    }
    out << "\n";
    out << "dimension    " << r.dimension << "\n";
    out << "character\n";
    render_character_table(out, r.character);
    for (const auto& n : r.notes) out << "note: " << n << "\n";
}

inline std::vector<std::pair<ScalarVector, std::size_t>> labelled(const Character& ch, const RootSystem& rs,
                                                                  const SimpleSystem& system) {
    std::vector<std::pair<ScalarVector, std::size_t>> out;
    for (const auto& [w, d] : ch) out.emplace_back(weight_labels(rs, system, w), d);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Self test

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

inline std::vector<SuiteResult> selftest_suites() {
    std::vector<SuiteResult> out;
    auto suite = [&](const std::string& name, const std::function<std::string()>& body) {
        try {
            const std::string failure = body();
            out.push_back({name, failure.empty(), failure});
        } catch (const std::exception& e) {
            out.push_back({name, false, e.what()});
        }
    };
    auto lie = [](const std::string& d) { return std::make_shared<const LieSuperalgebra>(realize(Family::parse(d))); };

    suite("axioms", [&]() -> std::string {
        for (const char* d : {"gl:1,2", "osp:1,2"}) {
            auto g = lie(d);
            if (!check_axioms(*g).holds()) return std::string(d) + " fails";
            if (!check_axioms(map_algebra(g, truncated_algebra(ideal_from_points({{Scalar(0), 2u}})))).holds())
                return std::string(d) + " (x) Q[t]/(t^2) fails";
        }
        return "";
    });
    suite("odd-reflections", [&]() -> std::string {
        for (const char* d : {"gl:2,2", "D21a:alpha=1"}) {
            auto [rs, dist] = root_system(Family::parse(d));
            for (const auto& s : reachable_systems(rs, dist, 2))
                for (auto i : s.odd_indices())
                    if (s.isotropic[i] && !reflection_identity_holds(rs, s, i)) return std::string(d) + " fails";
        }
        return "";
    });
    suite("odd-root-condition", [&]() -> std::string {
        auto [rs, dist] = root_system(Family::parse("gl:1,2"));
        if (check_condition(dist, rs).holds) return "gl(1|2) distinguished passes";
        if (!check_condition(odd_reflection(dist, rs, dist.odd_indices().front()), rs).holds)
            return "gl(1|2) reflected fails";
        auto [rb, db] = root_system(Family::parse("osp:1,2"));
        if (!check_condition(db, rb).holds) return "osp(1|2) distinguished fails";
        return "";
    });
    suite("kac-sl2", [&]() -> std::string {
        auto g = lie("sl:2");
        auto sys = default_good_system(g->family());
        for (int m = 0; m <= 4; ++m) {
            auto k = kac_module(g, sys, weight_from_labels(g->roots(), sys, {Scalar(m)}));
            if (k.dim() != static_cast<std::size_t>(m + 1) || !check_module(k).holds())
                return "V(" + std::to_string(m) + ") wrong";
        }
        return "";
    });
    suite("weyl-sl2", [&]() -> std::string {
        auto g = lie("sl:2");
        const auto& rs = g->roots();
        auto sys = default_good_system(g->family());
        for (int m = 1; m <= 2; ++m) {
            auto psi = psi_make({{Scalar(0), weight_from_labels(rs, sys, {Scalar(m)})}}, rs, sys);
            auto w = local_weyl(g, sys, psi, default_plan(psi, rs, sys));
            if (w.dim() != (1u << m) || !check_module(w).holds() || action_defects(w, 200) != 0)
                return "W(" + std::to_string(m) + "@0) wrong";
        }
        return "";
    });
    suite("trivial-psi", [&]() -> std::string {
        for (const char* d : {"sl:1,2", "osp:1,2"}) {
            auto g = lie(d);
            auto sys = default_good_system(g->family());
            auto psi = psi_make({}, g->roots(), sys);
            if (local_weyl(g, sys, psi, default_plan(psi, g->roots(), sys)).dim() != 1)
                return std::string(d) + " W(0) is not trivial";
        }
        return "";
    });
    suite("kac-degeneration", [&]() -> std::string {
        auto g = lie("sl:1,2");
        const auto& rs = g->roots();
        auto sys = default_good_system(g->family());
        const auto lambda = natural_highest_weight(rs, sys);
        auto k = kac_module(g, sys, lambda);
        auto w = local_weyl(g, sys, psi_make({{Scalar(0), lambda}}, rs, sys), TruncationPlan{1, false});
        return k.character() == w.character() ? "" : "W_1 differs from the Kac module";
    });
    suite("tensor-sl2", [&]() -> std::string {
        auto g = lie("sl:2");
        const auto& rs = g->roots();
        auto sys = default_good_system(g->family());
        const auto one = weight_from_labels(rs, sys, {Scalar(1)});
        auto rep = verify_tensor_theorem(g, sys, psi_make({{Scalar(0), one}}, rs, sys),
                                         psi_make({{Scalar(1), one}}, rs, sys));
        return rep.holds && rep.dim_sum == 4 ? "" : "character does not factor";
    });
    suite("garland-sl2", [&]() -> std::string {
        auto g = lie("sl:2");
        const auto& rs = g->roots();
        auto sys = default_good_system(g->family());
        const auto one = weight_from_labels(rs, sys, {Scalar(1)});
        auto psi = psi_make({{Scalar(0), one}, {Scalar(1), one}}, rs, sys);
        auto w = local_weyl(g, sys, psi, default_plan(psi, rs, sys));
        for (unsigned m = 0; m <= 3; ++m)
            for (const auto& a : {Polynomial{0, 1}, Polynomial{-1, 1}, Polynomial{0, 0, 1}})
                if (!garland_identity_check(w, m, a, sys.positive.front()).empty())
                    return "nonzero residual at m=" + std::to_string(m);
        return "";
    });
    return out;
}

// ---------------------------------------------------------------------------
// Entry point

struct Options {
    std::string family;
    std::string system;
    std::string weight;
    std::string psi, psi1, psi2;
    std::string at;
    std::string polys = "0,1;-1,1;0,0,1";
    unsigned m_max = 3;
    std::optional<long> trunc;
    bool adaptive = true;
    bool json = false;
    bool table = false;
    bool verbose = false;
};

inline std::string family_help() {
    std::ostringstream s;
    s << "Systems: distinguished | good | reflect:i,j,... (odd reflections at base indices,\n"
         "         applied in order starting from the distinguished system)\n\n"
         "Families: gl:m,n  sl:m,n (sl:n is sl(n))  A:n (sl(n+1|n+1))  osp:M,2n  B:m,n  C:k  D:m,n\n"
         "          F4  G3  D21a:alpha=p/q   (F4, G3 and D21a are root data only)\n\n"
         "Weight literal: comma-separated rationals giving lambda(H_alpha) on the even simple\n"
         "coroots of the chosen system (Sigma(g_0) ordered by height), followed by the values\n"
         "on the remaining Cartan coordinates; 'nat' is the highest weight of the natural\n"
         "representation and 'zero' the zero weight. Map weight: 'z1:w1;z2:w2;...'.\n"
         "Coordinates for the default (good) system of representative families:\n";
    for (const char* d : {"sl:2", "gl:1,2", "sl:1,2", "gl:2,2", "sl:2,2", "osp:1,2", "osp:3,2", "osp:2,2"}) {
        try {
            const Family f = Family::parse(d);
            auto rs = root_system(f).first;
            auto sys = default_good_system(f);
            s << "  " << std::left << std::setw(10) << d;
            const auto names = weight_label_names(rs, sys);
            for (std::size_t i = 0; i < names.size(); ++i) s << (i ? ", " : "") << names[i];
            s << "\n";
        } catch (const std::exception&) {
        }
    }
    s << "Run 'superweyl roots FAMILY --system ...' to list the coordinates of any system.\n\n"
         "Exit codes: 0 ok, 2 invalid input, 3 unsupported, 4 invariant violation.\n"
         "SUPERWEYL_MAX_DIM caps the total module dimension (default 10000).";
    return s.str();
}

namespace detail {

inline int fail(std::ostream& out, std::ostream& err, bool json, int code, const std::string& reason) {
    if (json) out << dump(error_json(reason));
    else err << "error: " << reason << "\n";
    return code;
}

inline std::shared_ptr<const LieSuperalgebra> realize_shared(const Family& f) {
    return std::make_shared<const LieSuperalgebra>(realize(f));
}

inline unsigned module_command_plan(const Options& o, const MapWeight& psi, const RootSystem& rs,
                                    const SimpleSystem& sys, TruncationPlan& plan) {
    plan = default_plan(psi, rs, sys);
    if (o.trunc) {
        if (*o.trunc < 1) throw InvalidInput("truncation exponent must be a positive integer");
        plan.exponent = static_cast<unsigned>(*o.trunc);
    }
    plan.adaptive = o.adaptive;
    return plan.exponent;
}

inline int cmd_roots(const Options& o, std::ostream& out) {
    const Family f = Family::parse(o.family);
    auto rs = root_system(f).first;
    const SimpleSystem sys = parse_system(o.system.empty() ? "distinguished" : o.system, f);
    const RootReport r = make_root_report(rs, sys);
    if (o.json) {
        out << dump(to_json(r));
        return kOk;
    }
    std::size_t even = 0;
    for (const auto& x : rs.roots) even += x.parity == 0;
    out << "algebra      " << r.algebra << "\n";
    out << "roots        " << rs.roots.size() << " (" << even << " even, " << rs.roots.size() - even << " odd)\n";
    for (const auto& x : rs.roots)
        out << "  " << std::left << std::setw(20) << render_vector(x.coords) << (x.parity ? "odd" : "even")
            << (sys.is_positive(x) ? "  +" : "") << "\n";
    out << "base         " << render_roots(sys.base) << "\n";
    out << "cartan matrix\n";
    for (const auto& row : r.cartan_matrix) out << "  " << render_vector(row) << "\n";
    out << "coordinates  ";
    for (std::size_t i = 0; i < r.coordinates.size(); ++i) out << (i ? ", " : "") << r.coordinates[i];
    out << "\n";
    return kOk;
}

inline int cmd_reflect(const Options& o, std::ostream& out) {
    const Family f = Family::parse(o.family);
    auto rs = root_system(f).first;
    SimpleSystem sys = parse_system(o.system.empty() ? "distinguished" : o.system, f);
    Json steps = Json::array();
    const auto start = sys.base;
    if (!trim(o.at).empty())
        for (const auto& part : split(o.at, ',')) {
            const std::string p = trim(part);
            if (p.empty() || p.find_first_not_of("0123456789") != std::string::npos)
                throw InvalidInput("reflection index must be a natural number: '" + p + "'");
            const std::size_t i = std::stoul(p);
            if (i >= sys.rank()) throw InvalidInput("reflection index out of range");
            const Root beta = sys.base[i];
            sys = odd_reflection(sys, rs, i);
            steps.push_back(Json{{"index", i}, {"root", beta.coords}, {"base", roots_json(sys.base)}});
        }
    const auto cond = check_condition(sys, rs);
    if (o.json) {
        Json j;
        j["algebra"] = f.name();
        j["start"] = roots_json(start);
        j["steps"] = steps;
        j["final"] = to_json(make_root_report(rs, sys));
        j["condition_holds"] = cond.holds;
        out << dump(j);
        return kOk;
    }
    out << "algebra  " << f.name() << "\n";
    out << "start    " << render_roots(start) << "\n";
    for (const auto& s : steps)
        out << "reflect at " << s["index"].get<std::size_t>() << " "
            << render_vector(s["root"].get<std::vector<int>>()) << " -> "
            << render_roots([&] {
                   std::vector<Root> b;
                   for (const auto& x : s["base"]) b.push_back(Root{x.get<std::vector<int>>(), 0});
                   return b;
               }())
            << "\n";
    out << "final    " << render_roots(sys.base) << "\n";
    out << "odd-root condition " << (cond.holds ? "holds" : "fails") << "\n";
    return kOk;
}

inline int cmd_check_system(const Options& o, std::ostream& out) {
    const Family f = Family::parse(o.family);
    auto rs = root_system(f).first;
    const SimpleSystem sys = parse_system(o.system.empty() ? "distinguished" : o.system, f);
    const auto rep = check_condition(sys, rs);
    if (o.json) {
        Json j;
        j["algebra"] = f.name();
        j["system"] = roots_json(sys.base);
        j["holds"] = rep.holds;
        Json w = Json::array();
        for (const auto& [i, wit] : rep.witnesses) {
            Json e;
            e["index"] = i;
            e["simple"] = sys.base[i].coords;
            e["isotropic"] = static_cast<bool>(sys.isotropic[i]);
            e["witness"] = wit ? Json(wit->coords) : Json(nullptr);
            w.push_back(e);
        }
        j["witnesses"] = w;
        out << dump(j);
        return kOk;
    }
    out << "algebra  " << f.name() << "\n";
    out << "system   " << render_roots(sys.base) << "\n";
    for (const auto& [i, wit] : rep.witnesses)
        out << "  odd simple " << i << " " << render_vector(sys.base[i].coords) << ": "
            << (wit ? "witness " + render_vector(wit->coords) : std::string("no witness")) << "\n";
    out << "condition " << (rep.holds ? "holds" : "fails") << "\n";
    return kOk;
}

inline void emit(std::ostream& out, const Options& o, const CharacterReport& r) {
    if (o.json) out << dump(to_json(r));
    else render_table(out, r);
}

inline int cmd_kac(const Options& o, std::ostream& out) {
    const Family f = Family::parse(o.family);
    auto g = realize_shared(f);
    const SimpleSystem sys = parse_system(o.system.empty() ? "good" : o.system, f);
    if (o.weight.empty()) throw InvalidInput("kac needs --weight");
    const auto lambda = parse_weight(o.weight, g->roots(), sys);
    emit(out, o, make_character_report(kac_module(g, sys, lambda)));
    return kOk;
}

inline int cmd_weyl(const Options& o, std::ostream& out, std::ostream& err) {
    const Family f = Family::parse(o.family);
    auto g = realize_shared(f);
    const auto& rs = g->roots();
    const SimpleSystem sys = parse_system(o.system.empty() ? "good" : o.system, f);
    const MapWeight psi = parse_psi(o.psi, rs, sys);
    TruncationPlan plan;
    module_command_plan(o, psi, rs, sys, plan);
    if (o.verbose) err << "superweyl: seed M=" << seed_exponent(psi, rs, sys) << ", starting at M=" << plan.exponent << "\n";
    emit(out, o, make_character_report(local_weyl(g, sys, psi, plan)));
    return kOk;
}

inline int cmd_tensor(const Options& o, std::ostream& out) {
    const Family f = Family::parse(o.family);
    auto g = realize_shared(f);
    const auto& rs = g->roots();
    const SimpleSystem sys = parse_system(o.system.empty() ? "good" : o.system, f);
    const MapWeight p1 = parse_psi(o.psi1, rs, sys);
    const MapWeight p2 = parse_psi(o.psi2, rs, sys);
    const auto rep = verify_tensor_theorem(g, sys, p1, p2);
    if (o.json) {
        auto psi_json = [&](const MapWeight& p) {
            Json a = Json::array();
            for (const auto& [z, w] : p.entries)
                a.push_back(Json{{"point", to_string(z)}, {"weight", superweyl::detail::scalars_json(weight_labels(rs, sys, w))}});
            return a;
        };
        Json j;
        j["algebra"] = f.name();
        j["system"] = roots_json(sys.base);
        j["coordinates"] = weight_label_names(rs, sys);
        j["psi1"] = psi_json(p1);
        j["psi2"] = psi_json(p2);
        j["truncations"] = {rep.m1, rep.m2, rep.m_sum};
        j["dimensions"] = {rep.dim1, rep.dim2, rep.dim_sum};
        j["character1"] = character_json(labelled(rep.ch1, rs, sys));
        j["character2"] = character_json(labelled(rep.ch2, rs, sys));
        j["character_sum"] = character_json(labelled(rep.ch_sum, rs, sys));
        j["character_product"] = character_json(labelled(rep.ch_product, rs, sys));
        j["holds"] = rep.holds;
        out << dump(j);
    } else {
        out << "algebra  " << f.name() << "\n";
        out << "system   " << render_roots(sys.base) << "\n";
        out << "dim W(psi1) = " << rep.dim1 << " (M=" << rep.m1 << "), dim W(psi2) = " << rep.dim2
            << " (M=" << rep.m2 << "), dim W(psi1+psi2) = " << rep.dim_sum << " (M=" << rep.m_sum << ")\n";
        out << "character of W(psi1+psi2)\n";
        render_character_table(out, labelled(rep.ch_sum, rs, sys));
        out << "ch W(psi1+psi2) = ch W(psi1) ch W(psi2): " << (rep.holds ? "holds" : "FAILS") << "\n";
    }
    return rep.holds ? kOk : kInvariant;
}

inline int cmd_garland(const Options& o, std::ostream& out) {
    const Family f = Family::parse(o.family);
    auto g = realize_shared(f);
    const auto& rs = g->roots();
    const SimpleSystem sys = parse_system(o.system.empty() ? "good" : o.system, f);
    const MapWeight psi = parse_psi(o.psi, rs, sys);
    TruncationPlan plan;
    module_command_plan(o, psi, rs, sys, plan);
    const auto w = local_weyl(g, sys, psi, plan);
    std::vector<Polynomial> polys;
    for (const auto& p : split(o.polys, ';')) polys.push_back(parse_polynomial(p));
    Json checks = Json::array();
    bool all_zero = true;
    std::ostringstream table;
    for (const auto& alpha : sys.positive) {
        if (alpha.parity != 0) continue;
        for (unsigned m = 0; m <= o.m_max; ++m)
            for (const auto& a : polys) {
                const bool zero = garland_identity_check(w, m, a, alpha).empty();
                all_zero = all_zero && zero;
                checks.push_back(Json{{"root", alpha.coords}, {"m", m}, {"a", to_json(a)}, {"residual_zero", zero}});
                table << "  " << std::left << std::setw(16) << render_vector(alpha.coords) << "m=" << m << "  a="
                      << std::setw(14) << render_vector(a.coefficients()) << (zero ? "0" : "NONZERO") << "\n";
            }
    }
    if (o.json) {
        Json j;
        j["algebra"] = f.name();
        j["system"] = roots_json(sys.base);
        j["truncation"] = w.truncation;
        j["dimension"] = w.dim();
        j["checks"] = checks;
        j["all_zero"] = all_zero;
        out << dump(j);
    } else {
        out << "algebra    " << f.name() << "\n";
        out << "system     " << render_roots(sys.base) << "\n";
        out << "module     dim " << w.dim() << ", M=" << w.truncation << "\n";
        out << "residuals (a as coefficients, low degree first)\n" << table.str();
        out << "all residuals zero: " << (all_zero ? "yes" : "NO") << "\n";
    }
    return all_zero ? kOk : kInvariant;
}

inline int cmd_selftest(const Options& o, std::ostream& out) {
    const auto suites = selftest_suites();
    bool pass = true;
    for (const auto& s : suites) pass = pass && s.pass;
    if (o.json) {
        Json a = Json::array();
        for (const auto& s : suites) a.push_back(Json{{"suite", s.name}, {"pass", s.pass}, {"detail", s.detail}});
        out << dump(Json{{"suites", a}, {"pass", pass}});
    } else {
        for (const auto& s : suites)
            out << (s.pass ? "PASS " : "FAIL ") << s.name << (s.detail.empty() ? "" : ": " + s.detail) << "\n";
    }
    return pass ? kOk : kInvariant;
}

}  // namespace detail

/// Runs one invocation; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact computations with Lie superalgebras, generalized Kac modules and local Weyl modules of "
                 "map superalgebras.",
                 "superweyl"};
    app.require_subcommand(1);
    app.footer(family_help());

    auto common = [&](CLI::App* sub, bool needs_family, bool module_level) {
        if (needs_family) sub->add_option("family", o.family, "family descriptor, e.g. gl:1,2")->required();
        sub->add_option("--system", o.system,
                        "distinguished | good | reflect:i,j,... (default: " +
                            std::string(module_level ? "good" : "distinguished") + ")");
        sub->add_flag("--json", o.json, "JSON output");
        sub->add_flag("--table", o.table, "table output (default; overrides --json)");
        sub->add_flag("-v,--verbose", o.verbose, "progress notes on standard error");
    };
    auto trunc = [&](CLI::App* sub) {
        sub->add_option_function<long>(
            "--trunc", [&](const long& v) { o.trunc = v; }, "truncation exponent M (default: seed bound)");
        sub->add_flag("--adaptive,!--no-adaptive", o.adaptive, "raise M until two consecutive characters agree");
    };

    auto* roots = app.add_subcommand("roots", "roots, base, parities and Cartan matrix");
    common(roots, true, false);
    auto* reflect = app.add_subcommand("reflect", "apply odd reflections in sequence");
    common(reflect, true, false);
    reflect->add_option("--at", o.at, "comma-separated indices into the current base");
    auto* check = app.add_subcommand("check-system", "odd-root condition with witnesses");
    common(check, true, false);
    auto* kac = app.add_subcommand("kac", "generalized Kac module");
    common(kac, true, true);
    kac->add_option("--weight", o.weight, "highest weight literal")->required();
    auto* weyl = app.add_subcommand("weyl", "local Weyl module of the current superalgebra");
    common(weyl, true, true);
    weyl->add_option("--psi", o.psi, "map weight 'z:w;...'")->required();
    trunc(weyl);
    auto* tensor = app.add_subcommand("tensor-check", "tensor factorization for disjoint supports");
    common(tensor, true, true);
    tensor->add_option("--psi1", o.psi1, "first map weight")->required();
    tensor->add_option("--psi2", o.psi2, "second map weight")->required();
    auto* garland = app.add_subcommand("garland", "Garland identity residuals");
    common(garland, true, true);
    garland->add_option("--psi", o.psi, "map weight 'z:w;...'")->required();
    garland->add_option("--m", o.m_max, "largest m (default 3)");
    garland->add_option("--a", o.polys, "polynomials a, ';'-separated, coefficients low degree first");
    trunc(garland);
    auto* self = app.add_subcommand("selftest", "run the invariant suites");
    self->add_flag("--json", o.json, "JSON output");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (o.table) o.json = false;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        const bool json = std::find(args.begin(), args.end(), "--json") != args.end();
        return detail::fail(out, err, json, kInvalid, std::string("usage: ") + e.what());
    }

    try {
        if (*roots) return detail::cmd_roots(o, out);
        if (*reflect) return detail::cmd_reflect(o, out);
        if (*check) return detail::cmd_check_system(o, out);
        if (*kac) return detail::cmd_kac(o, out);
        if (*weyl) return detail::cmd_weyl(o, out, err);
        if (*tensor) return detail::cmd_tensor(o, out);
        if (*garland) return detail::cmd_garland(o, out);
        if (*self) return detail::cmd_selftest(o, out);
    } catch (const InvalidInput& e) {
        return detail::fail(out, err, o.json, kInvalid, e.what());
    } catch (const Unsupported& e) {
        return detail::fail(out, err, o.json, kUnsupported, e.what());
    } catch (const InvariantViolation& e) {
        return detail::fail(out, err, o.json, kInvariant, e.what());
    } catch (const std::exception& e) {
        return detail::fail(out, err, o.json, kInvariant, std::string("internal error: ") + e.what());
    }
    return kInvalid;
}

}  // namespace superweyl::cli
