// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Every comparison is exact over the rationals; the only tolerance is the
// per-criterion wall-clock budget of 60 s.

#include "oracle/closure_oracle.hpp"
#include "support.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace superweyl;
using fixtures::lie;

namespace {

constexpr double kBudgetSeconds = 60.0;
constexpr std::size_t kOracleLimit = 64;

struct Check {
    bool ok = true;
    std::ostringstream why;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            if (ok) why << what;
            else why << "; " << what;
            ok = false;
        }
    }
};

std::map<Scalar, std::size_t> sl2_labels(const Character& ch, const RootSystem& rs, const SimpleSystem& s) {
    std::map<Scalar, std::size_t> out;
    for (const auto& [w, d] : ch) out[weight_labels(rs, s, w).front()] += d;
    return out;
}

std::vector<fixtures::WeylInstance> criteria_5_to_7() {
    auto v = fixtures::desk_instances();
    for (auto& in : fixtures::tensor_instances()) v.push_back(std::move(in));
    return v;
}

// ---------------------------------------------------------------------------

void axioms(Check& c) {
    for (const char* d : {"gl:1,1", "gl:1,2", "gl:2,2", "sl:2,2", "osp:1,2", "osp:3,2"}) {
        const auto g = lie(d);
        const auto r = check_axioms(*g);
        c.expect(r.holds(), std::string(d) + " axioms");
        const auto G = map_algebra(g, truncated_algebra(ideal_from_points({{Scalar(0), 2u}})));
        const auto rm = check_axioms(G, 40000, 10000);
        c.expect(rm.holds() && (rm.exhaustive || rm.triples >= 10000), std::string(d) + " (x) Q[t]/(t^2) axioms");
    }
}

void reflections(Check& c) {
    for (const char* d : {"gl:1,2", "gl:2,2", "sl:2,2", "D21a:alpha=1"}) {
        auto [rs, dist] = root_system(Family::parse(d));
        std::size_t n = 0;
        for (const auto& s : reachable_systems(rs, dist, 2))
            for (auto i : s.odd_indices())
                if (s.isotropic[i]) {
                    c.expect(reflection_identity_holds(rs, s, i), std::string(d) + " identity");
                    ++n;
                }
        c.expect(n > 0, std::string(d) + " has no isotropic odd simple root");
    }
}

void condition_matrix(Check& c) {
    auto holds = [](const char* d, bool reflect) {
        auto [rs, dist] = root_system(Family::parse(d));
        const auto s = reflect ? odd_reflection(dist, rs, dist.odd_indices().front()) : dist;
        return check_condition(s, rs).holds;
    };
    c.expect(holds("B:0,1", false), "B(0,1) distinguished");
    c.expect(holds("B:1,1", false), "B(1,1) distinguished");
    for (const char* d : {"gl:1,2", "gl:2,2", "sl:2,2"}) {
        c.expect(!holds(d, false), std::string(d) + " distinguished should fail");
        c.expect(holds(d, true), std::string(d) + " reflected");
    }
    for (const char* d : {"sl:2", "sl:3", "gl:1,2", "gl:2,2", "gl:2,3", "sl:1,2", "sl:2,2", "A:2", "osp:1,2",
                          "osp:3,2", "osp:5,4", "osp:2,2", "osp:2,4", "osp:4,2", "osp:6,2", "F4", "G3",
                          "D21a:alpha=1", "D21a:alpha=2/3"}) {
        const Family f = Family::parse(d);
        c.expect(check_condition(default_good_system(f), root_system(f).first).holds, std::string(d) + " good system");
    }
}

void kac_dimensions(Check& c) {
    const auto sl2 = lie("sl:2");
    const auto s2 = default_good_system(sl2->family());
    for (int m = 0; m <= 4; ++m)
        c.expect(kac_module(sl2, s2, fixtures::labels(sl2->roots(), s2, {m})).dim() == static_cast<std::size_t>(m + 1),
                 "sl(2) m=" + std::to_string(m));
    const auto g = lie("sl:1,2");
    auto [rs, dist] = root_system(g->family());
    for (int m : {0, 1, 2})
        c.expect(kac_module(g, dist, fixtures::labels(rs, dist, {m, 1})).dim() == static_cast<std::size_t>(4 * (m + 1)),
                 "sl(1|2) distinguished m=" + std::to_string(m));
    c.expect(kac_module(g, default_good_system(g->family()), WeightVector::zero(rs.rank_h())).dim() == 1,
             "sl(1|2) reflected 0");
}

void desk_numbers(Check& c) {
    const auto g = lie("sl:2");
    const auto s = default_good_system(g->family());
    const auto& rs = g->roots();
    const std::vector<std::map<Scalar, std::size_t>> expect{
        {{1, 1}, {-1, 1}}, {{2, 1}, {0, 2}, {-2, 1}}, {{3, 1}, {1, 3}, {-1, 3}, {-3, 1}}};
    for (int m = 1; m <= 3; ++m) {
        const auto w = fixtures::weyl(fixtures::weyl_instance("sl:2", {{0, m}}));
        c.expect(w.dim() == (std::size_t{1} << m), "sl(2) m=" + std::to_string(m) + " dimension");
        c.expect(sl2_labels(w.character(), rs, s) == expect[static_cast<std::size_t>(m - 1)],
                 "sl(2) m=" + std::to_string(m) + " character");
    }
    for (const auto& f : fixtures::degeneration_families())
        c.expect(fixtures::weyl(fixtures::weyl_instance(f, {})).dim() == 1, f + " psi=0");
}

void degeneration(Check& c) {
    for (const auto& f : fixtures::degeneration_families()) {
        const auto g = lie(f);
        const auto s = default_good_system(g->family());
        const auto omega = natural_highest_weight(g->roots(), s);
        for (int k : {0, 1, 2}) {
            const WeightVector lambda = Scalar(k) * omega;
            const auto kac = kac_module(g, s, lambda);
            const auto psi = psi_make({{Scalar(3), lambda}}, g->roots(), s);
            const auto w = local_weyl(g, s, psi, TruncationPlan{1, false});
            c.expect(w.dim() == kac.dim() && w.character() == kac.character(), f + " k=" + std::to_string(k));
        }
    }
}

void tensor(Check& c) {
    for (const auto& f : fixtures::tensor_families()) {
        const auto a = fixtures::weyl_instance(f, {{0, 1}});
        const auto b = fixtures::weyl_instance(f, {{1, 1}});
        const auto r = verify_tensor_theorem(a.g, a.system, a.psi, b.psi);
        c.expect(r.holds, f + " characters");
        if (f == "sl:2") c.expect(r.dim_sum == 4 && r.dim1 == 2 && r.dim2 == 2, "sl(2) dims 2*2=4");
        bool refused = false;
        try {
            verify_tensor_theorem(a.g, a.system, a.psi, a.psi);
        } catch (const PreconditionViolation&) {
            refused = true;
        }
        c.expect(refused, f + " overlapping supports refused");
    }
}

void garland(Check& c) {
    for (const auto& in : criteria_5_to_7()) {
        const auto w = fixtures::weyl(in);
        const auto& rs = in.g->roots();
        for (const auto& alpha : in.system.positive) {
            if (alpha.parity != 0) continue;
            for (const Polynomial& a : {Polynomial{0, 1}, Polynomial{-1, 1}, Polynomial{0, 0, 1}}) {
                for (unsigned m = 0; m <= 3; ++m)
                    c.expect(garland_identity_check(w, m, a, alpha).empty(), in.name + " residual m=" + std::to_string(m));
                // product form: prod_i (1 - a(z_i) u)^{lambda_i(H_alpha)} to degree 6
                ScalarVector p(7);
                p[0] = 1;
                const auto H = rs.cartan_coordinates(rs.coroot_coords(alpha));
                for (const auto& [z, wt] : in.psi.entries) {
                    const Scalar az = a.evaluate(z);
                    const long n = rs.evaluate(wt, H).get_num().get_si();
                    for (long k = 0; k < n; ++k)
                        for (std::size_t d = 6; d >= 1; --d) p[d] -= az * p[d - 1];
                }
                c.expect(garland_scalars(in.psi, a, alpha, 6, rs, in.system) == p, in.name + " product form");
            }
        }
    }
}

void finiteness(Check& c) {
    for (const auto& in : criteria_5_to_7()) {
        const auto w = fixtures::weyl(in);
        const auto r = check_module(w);
        c.expect(r.weights_in_frontier, in.name + " frontier");
        c.expect(r.top_one_dimensional && r.raising_kills_top && r.cartan_scalar_on_top, in.name + " top");
        c.expect(r.weyl_invariant, in.name + " Weyl invariance");
        const unsigned seed = seed_exponent(in.psi, in.g->roots(), in.system);
        const auto a = local_weyl(in.g, in.system, in.psi, TruncationPlan{seed, false});
        const auto b = local_weyl(in.g, in.system, in.psi, TruncationPlan{seed + 1, false});
        c.expect(a.character() == b.character(), in.name + " W_seed != W_seed+1");
        c.expect(w.notes.empty(), in.name + " plateau disagrees with seed");
    }
}

void oracle_equivalence(Check& c, std::size_t& compared) {
    for (const auto& in : criteria_5_to_7()) {
        const auto w = fixtures::weyl(in);
        if (w.dim() > kOracleLimit) continue;
        const auto B = truncated_algebra(TruncationPlan{w.truncation, false}.ideal(in.psi));
        c.expect(oracle::closure_character(in.g, in.system, in.psi, B) == w.character(), in.name);
        ++compared;
    }
    const auto sl2 = lie("sl:2");
    const auto s2 = default_good_system(sl2->family());
    const auto g12 = lie("sl:1,2");
    auto [rs12, dist] = root_system(g12->family());
    std::vector<std::tuple<std::shared_ptr<const LieSuperalgebra>, SimpleSystem, WeightVector, std::string>> kac;
    for (int m = 0; m <= 4; ++m)
        kac.emplace_back(sl2, s2, fixtures::labels(sl2->roots(), s2, {m}), "kac sl(2) m=" + std::to_string(m));
    for (int m : {0, 1, 2})
        kac.emplace_back(g12, dist, fixtures::labels(rs12, dist, {m, 1}), "kac sl(1|2) m=" + std::to_string(m));
    kac.emplace_back(g12, default_good_system(g12->family()), WeightVector::zero(rs12.rank_h()), "kac sl(1|2) reflected");
    for (const auto& f : fixtures::degeneration_families()) {
        const auto g = lie(f);
        const auto s = default_good_system(g->family());
        for (int k : {0, 1, 2})
            kac.emplace_back(g, s, Scalar(k) * natural_highest_weight(g->roots(), s), f + " k=" + std::to_string(k));
    }
    const auto B = truncated_algebra(ideal_from_points({{Scalar(0), 1u}}));
    for (const auto& [g, s, lambda, name] : kac) {
        const auto k = kac_module(g, s, lambda);
        if (k.dim() > kOracleLimit) continue;
        const auto psi = psi_make({{Scalar(0), lambda}}, g->roots(), s);
        c.expect(oracle::closure_character(g, s, psi, B) == k.character(), name);
        ++compared;
    }
}

}  // namespace

int main() {
    std::size_t compared = 0;
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"axiom suite", axioms},
        {"odd-reflection identity", reflections},
        {"odd-root condition matrix", condition_matrix},
        {"Kac-module dimensions", kac_dimensions},
        {"local Weyl desk numbers", desk_numbers},
        {"degeneration to Kac modules", degeneration},
        {"tensor theorem", tensor},
        {"Garland identity and product form", garland},
        {"finiteness and invariance", finiteness},
        {"oracle equivalence", [&](Check& c) { oracle_equivalence(c, compared); }},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        c.expect(secs < kBudgetSeconds, "over the time budget");
        all = all && c.ok;
        std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first;
        if (i + 1 == criteria.size()) std::cout << " (" << compared << " instances)";
        std::cout << " [" << std::fixed << std::setprecision(2) << secs << " s]";
        if (!c.ok) std::cout << " -- " << c.why.str();
        std::cout << "\n";
    }
    return all ? 0 : 1;
}
