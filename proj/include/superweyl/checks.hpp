#pragma once

/**
 * @file checks.hpp
 * @brief Property checks shared by the self test and the test suites:
 * superalgebra axioms, the odd-reflection identity and module invariants.
 */

#include "superweyl/weylmod.hpp"

#include <random>

namespace superweyl {

struct AxiomReport {
    std::size_t pairs = 0;
    std::size_t triples = 0;
    std::size_t skew_failures = 0;
    std::size_t jacobi_failures = 0;
    bool exhaustive = true;

    bool holds() const { return skew_failures == 0 && jacobi_failures == 0; }
};

namespace detail {

template <class Algebra>
Element bracket_with_basis(const Algebra& A, const Element& x, std::size_t j) {
    SparseAccumulator acc;
    for (const auto& [i, c] : x.entries()) {
        const Element e = A.bracket_basis(static_cast<std::size_t>(i), j);
        acc.add(c, e);
    }
    return acc.finish();
}

inline int koszul(int a, int b) { return (a * b) % 2 == 0 ? 1 : -1; }

}  // namespace detail

/// Skew-supersymmetry on all basis pairs and super Jacobi on all basis
/// triples, or on `samples` random triples when dim^3 exceeds `exhaustive_limit`.
template <class Algebra>
AxiomReport check_axioms(const Algebra& A, std::size_t exhaustive_limit = 40000, std::size_t samples = 10000,
                         unsigned seed = 1) {
    AxiomReport r;
    const std::size_t n = A.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ++r.pairs;
            Element lhs = A.bracket_basis(i, j);
            Element rhs = A.bracket_basis(j, i);
            rhs *= Scalar(detail::koszul(A.parity(i), A.parity(j)));
            if (!(lhs + rhs).empty()) ++r.skew_failures;
        }
    auto jacobi = [&](std::size_t x, std::size_t y, std::size_t z) {
        const int px = A.parity(x), py = A.parity(y), pz = A.parity(z);
        // (-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]]
        auto nested = [&](std::size_t a, std::size_t b, std::size_t c) {
            const Element inner = A.bracket_basis(b, c);
            Element out = detail::bracket_with_basis(A, inner, a);
            // [a, inner] = -(-1)^{|a||inner|} [inner, a]
            out *= Scalar(-detail::koszul(A.parity(a), (A.parity(b) + A.parity(c)) % 2));
            return out;
        };
        Element sum = Scalar(detail::koszul(px, pz)) * nested(x, y, z);
        sum += Scalar(detail::koszul(py, px)) * nested(y, z, x);
        sum += Scalar(detail::koszul(pz, py)) * nested(z, x, y);
        ++r.triples;
        if (!sum.empty()) ++r.jacobi_failures;
    };
    if (n * n * n <= exhaustive_limit) {
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z) jacobi(x, y, z);
    } else {
        r.exhaustive = false;
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (std::size_t s = 0; s < samples; ++s) jacobi(pick(rng), pick(rng), pick(rng));
    }
    return r;
}

/// Delta^+(r_beta Sigma) \ {-beta} == Delta^+(Sigma) \ {beta} for the
/// isotropic odd simple root at `index`.
inline bool reflection_identity_holds(const RootSystem& rs, const SimpleSystem& system, std::size_t index) {
    const Root beta = system.base.at(index);
    const SimpleSystem next = odd_reflection(system, rs, index);
    std::vector<Root> before, after;
    for (const auto& r : system.positive)
        if (!(r == beta)) before.push_back(r);
    for (const auto& r : next.positive)
        if (!(r == -beta)) after.push_back(r);
    return before == after && next.is_positive(-beta) && !next.is_positive(beta);
}

/// Every system reachable from `start` by at most `depth` odd reflections at
/// isotropic simple roots, including start.
inline std::vector<SimpleSystem> reachable_systems(const RootSystem& rs, const SimpleSystem& start, unsigned depth) {
    std::vector<SimpleSystem> out{start};
    std::vector<SimpleSystem> layer{start};
    auto seen = [&](const SimpleSystem& s) {
        return std::any_of(out.begin(), out.end(), [&](const SimpleSystem& t) { return t.positive == s.positive; });
    };
    for (unsigned d = 0; d < depth; ++d) {
        std::vector<SimpleSystem> next;
        for (const auto& s : layer)
            for (auto i : s.odd_indices()) {
                if (!s.isotropic[i]) continue;
                SimpleSystem r = odd_reflection(s, rs, i);
                if (seen(r)) continue;
                out.push_back(r);
                next.push_back(std::move(r));
            }
        layer = std::move(next);
    }
    return out;
}

struct ModuleReport {
    bool top_one_dimensional = true;
    bool raising_kills_top = true;
    bool cartan_scalar_on_top = true;
    bool weights_in_frontier = true;
    bool weyl_invariant = true;
    bool parity_consistent = true;
    bool weight_graded = true;

    bool holds() const {
        return top_one_dimensional && raising_kills_top && cartan_scalar_on_top && weights_in_frontier &&
               weyl_invariant && parity_consistent && weight_graded;
    }
};

/// Structural invariants of a constructed Kac or local Weyl module. The
/// frontier uses odd multiplicity truncation * (number of points), or 1 for
/// Kac modules.
inline ModuleReport check_module(const WeightModule& m) {
    ModuleReport r;
    if (m.dim() == 0) return r;
    const auto& g = *m.algebra;
    const auto& rs = g.roots();
    r.top_one_dimensional = !m.blocks.empty() && m.blocks.front().weight == m.highest && m.blocks.front().dim == 1;
    const SparseVector w = SparseVector::unit(0);

    std::vector<Polynomial> probes{Polynomial::constant(1)};
    unsigned K = 1;
    if (m.psi && !m.psi->is_zero()) {
        K = m.truncation * static_cast<unsigned>(m.psi->entries.size());
        for (unsigned d = 1; d < K; ++d) probes.push_back(Polynomial::monomial(d));
    } else if (m.psi) {
        K = m.truncation;
        for (unsigned d = 1; d < K; ++d) probes.push_back(Polynomial::monomial(d));
    }

    for (std::size_t i = 0; i < g.dim(); ++i) {
        const Element x = Element::unit(static_cast<int>(i));
        for (const auto& a : probes) {
            const SparseVector v = m.act(x, a, w);
            if (g.is_cartan(i)) {
                ScalarVector hc(g.cartan_dim());
                hc[i] = 1;
                const Scalar expected =
                    m.psi ? m.psi->value(rs, hc, a) : (a.degree() == 0 ? rs.evaluate(m.highest, hc) * a[0] : Scalar(0));
                SparseVector e = w;
                e *= expected;
                if (!(v - e).empty()) r.cartan_scalar_on_top = false;
            } else if (m.system.is_positive(*g.root_of(i)) && !v.empty()) {
                r.raising_kills_top = false;
            }
        }
    }

    const auto omega = weight_frontier(m.highest, rs, m.system, K);
    for (const auto& b : m.blocks)
        if (!std::binary_search(omega.begin(), omega.end(), b.weight)) r.weights_in_frontier = false;
    r.weyl_invariant = character_weyl_invariant(m.character(), rs, m.system);

    // every generator maps a basis vector into a single weight block with the
    // expected parity
    for (std::size_t j = 0; j < m.dim(); ++j) {
        const WeightVector& wt = m.blocks[m.block_index(j)].weight;
        for (std::size_t i = 0; i < g.dim(); ++i) {
            const SparseVector v = m.act(Element::unit(static_cast<int>(i)), Polynomial::constant(1),
                                         SparseVector::unit(static_cast<int>(j)));
            if (v.empty()) continue;
            const WeightVector target = g.is_cartan(i) ? wt : wt + rs.weight_of(*g.root_of(i));
            for (const auto& [k, c] : v.entries()) {
                if (!(m.blocks[m.block_index(static_cast<std::size_t>(k))].weight == target)) r.weight_graded = false;
                if (m.parity[static_cast<std::size_t>(k)] != (m.parity[j] + g.parity(i)) % 2)
                    r.parity_consistent = false;
            }
        }
    }
    return r;
}

/// Number of sampled (x (x) a, y (x) b, basis vector) with
/// act([x,y] (x) ab) != act(x (x) a) act(y (x) b) - (-1)^{|x||y|} act(y (x) b) act(x (x) a).
inline std::size_t action_defects(const WeightModule& m, std::size_t samples, unsigned seed = 7) {
    if (m.dim() == 0) return 0;
    const auto& g = *m.algebra;
    const unsigned K = m.psi && !m.psi->is_zero() ? m.truncation * static_cast<unsigned>(m.psi->entries.size())
                                                  : (m.psi ? m.truncation : 1u);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pg(0, g.dim() - 1), pv(0, m.dim() - 1), pd(0, K - 1);
    std::size_t defects = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        const std::size_t i = pg(rng), j = pg(rng), k = pv(rng);
        const Polynomial a = Polynomial::monomial(pd(rng)), b = Polynomial::monomial(pd(rng));
        const Element x = Element::unit(static_cast<int>(i)), y = Element::unit(static_cast<int>(j));
        const SparseVector v = SparseVector::unit(static_cast<int>(k));
        const SparseVector lhs = m.act(g.bracket_basis(i, j), a * b, v);
        SparseVector rhs = m.act(x, a, m.act(y, b, v));
        SparseVector other = m.act(y, b, m.act(x, a, v));
        other *= Scalar(detail::koszul(g.parity(i), g.parity(j)));
        rhs = rhs - other;
        if (!(lhs - rhs).empty()) ++defects;
    }
    return defects;
}

}  // namespace superweyl
