#pragma once

// Shared fixtures for the test binaries: named algebra instances and the
// module instances used by several suites.

#include "superweyl/checks.hpp"

#include <string>
#include <vector>

namespace fixtures {

using namespace superweyl;

inline std::shared_ptr<const LieSuperalgebra> lie(const std::string& d) {
    return std::make_shared<const LieSuperalgebra>(realize(Family::parse(d)));
}

inline WeightVector labels(const RootSystem& rs, const SimpleSystem& s, std::initializer_list<Scalar> v) {
    return weight_from_labels(rs, s, ScalarVector(v));
}

struct WeylInstance {
    std::string name;
    std::shared_ptr<const LieSuperalgebra> g;
    SimpleSystem system;
    MapWeight psi;
};

inline WeylInstance weyl_instance(const std::string& family, const std::vector<std::pair<int, int>>& nat_multiples) {
    WeylInstance in;
    in.g = lie(family);
    in.system = default_good_system(in.g->family());
    const auto& rs = in.g->roots();
    const WeightVector omega = natural_highest_weight(rs, in.system);
    std::vector<std::pair<Scalar, WeightVector>> entries;
    in.name = family + " psi=";
    for (const auto& [z, k] : nat_multiples) {
        entries.emplace_back(Scalar(z), Scalar(k) * omega);
        in.name += std::to_string(k) + "w@" + std::to_string(z) + " ";
    }
    if (nat_multiples.empty()) in.name += "0";
    in.psi = psi_make(entries, rs, in.system);
    return in;
}

/// sl(2) with psi = m@0, m = 1, 2, 3, and psi = 0 on several algebras.
inline std::vector<WeylInstance> desk_instances() {
    std::vector<WeylInstance> out;
    for (int m = 1; m <= 3; ++m) out.push_back(weyl_instance("sl:2", {{0, m}}));
    for (const char* f : {"sl:2", "gl:1,2", "sl:2,2", "osp:1,2", "osp:3,2"}) out.push_back(weyl_instance(f, {}));
    return out;
}

/// Factors and sums for the tensor theorem: omega-type weights at 0 and 1.
inline std::vector<std::string> tensor_families() { return {"sl:2", "osp:1,2", "sl:1,2"}; }

inline std::vector<WeylInstance> tensor_instances() {
    std::vector<WeylInstance> out;
    for (const auto& f : tensor_families()) {
        out.push_back(weyl_instance(f, {{0, 1}}));
        out.push_back(weyl_instance(f, {{1, 1}}));
        out.push_back(weyl_instance(f, {{0, 1}, {1, 1}}));
    }
    return out;
}

/// Families checked against the Kac degeneration.
inline std::vector<std::string> degeneration_families() {
    return {"sl:2", "sl:3", "gl:1,2", "sl:1,2", "gl:2,2", "sl:2,2", "osp:1,2", "osp:3,2", "osp:2,2", "osp:4,2",
            "osp:1,4"};
}

inline WeightModule weyl(const WeylInstance& in) {
    return local_weyl(in.g, in.system, in.psi, default_plan(in.psi, in.g->roots(), in.system));
}

inline std::size_t total(const Character& ch) { return character_dimension(ch); }

}  // namespace fixtures
