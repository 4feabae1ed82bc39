#pragma once

/**
 * @file liesuper.hpp
 * @brief Matrix realizations of gl(m|n), sl(m|n) and osp(M|2n) with exact
 * structure constants, Chevalley data relative to a simple system, and map
 * superalgebras g (x) B.
 *
 * Basis order: Cartan basis first (matching RootSystem::cartan_basis), then
 * one root vector per root in the sorted order of RootSystem::roots.
 */

#include "superweyl/algebra_base.hpp"
#include "superweyl/linalg.hpp"
#include "superweyl/rootdata.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace superweyl {

/// Element of a Lie superalgebra or map superalgebra on its basis.
using Element = SparseVector;

class LieSuperalgebra {
public:
    const Family& family() const { return rs_.family; }
    const RootSystem& roots() const { return rs_; }
    std::size_t dim() const { return parity_.size(); }
    std::size_t cartan_dim() const { return rs_.rank_h(); }
    int parity(std::size_t i) const { return parity_[i]; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    bool is_cartan(std::size_t i) const { return i < cartan_dim(); }

    /// Root of a basis element, nullopt for Cartan elements.
    const std::optional<Root>& root_of(std::size_t i) const { return basis_root_[i]; }
    std::size_t root_index(const Root& r) const {
        auto it = root_index_.find(r.coords);
        if (it == root_index_.end()) throw InvalidInput("not a root of " + family().name());
        return it->second;
    }

    /// [e_i, e_j] on the basis.
    const Element& bracket_basis(std::size_t i, std::size_t j) const { return table_[i][j]; }

    const DenseMatrix& matrix(std::size_t i) const { return matrices_[i]; }

    friend LieSuperalgebra realize(const Family& family);

private:
    RootSystem rs_;
    std::vector<int> parity_;
    std::vector<std::string> labels_;
    std::vector<std::optional<Root>> basis_root_;
    std::map<std::vector<int>, std::size_t> root_index_;
    std::vector<DenseMatrix> matrices_;
    std::vector<std::vector<Element>> table_;
};

namespace detail {

inline DenseMatrix zero_matrix(std::size_t n) { return DenseMatrix(n, ScalarVector(n)); }

inline DenseMatrix elementary(std::size_t n, std::size_t a, std::size_t b) {
    auto m = zero_matrix(n);
    m[a][b] = 1;
    return m;
}

/// AB - (-1)^{pq} BA
inline DenseMatrix super_commutator(const DenseMatrix& a, int pa, const DenseMatrix& b, int pb) {
    const std::size_t n = a.size();
    auto r = zero_matrix(n);
    const int sign = (pa * pb) % 2 == 0 ? 1 : -1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (sgn(a[i][k]) != 0)
                for (std::size_t j = 0; j < n; ++j)
                    if (sgn(b[k][j]) != 0) r[i][j] += a[i][k] * b[k][j];
            if (sgn(b[i][k]) != 0)
                for (std::size_t j = 0; j < n; ++j)
                    if (sgn(a[k][j]) != 0) r[i][j] -= sign * b[i][k] * a[k][j];
        }
    return r;
}

inline bool is_zero_matrix(const DenseMatrix& m) {
    for (const auto& row : m)
        for (const auto& x : row)
            if (sgn(x) != 0) return false;
    return true;
}

inline ScalarVector flatten(const DenseMatrix& m) {
    ScalarVector v;
    for (const auto& row : m) v.insert(v.end(), row.begin(), row.end());
    return v;
}

/// Gram matrix of the even-symmetric, odd-skew form on the osp natural module.
inline DenseMatrix osp_form(const std::vector<NaturalWeight>& nat, int even_dim) {
    const std::size_t n = nat.size();
    auto g = zero_matrix(n);
    const std::size_t k = static_cast<std::size_t>(even_dim / 2);
    for (std::size_t i = 0; i < k; ++i) {
        g[i][k + i] = 1;
        g[k + i][i] = 1;
    }
    std::size_t off = 2 * k;
    if (even_dim % 2 == 1) {
        g[off][off] = 1;
        ++off;
    }
    const std::size_t odd = (n - off) / 2;
    for (std::size_t j = 0; j < odd; ++j) {
        g[off + j][off + odd + j] = 1;
        g[off + odd + j][off + j] = -1;
    }
    return g;
}

}  // namespace detail

inline LieSuperalgebra realize(const Family& family) {
    if (family.support() != SupportLevel::Full)
        throw Unsupported(family.name() + " is unsupported at module level (root data only)");
    LieSuperalgebra g;
    g.rs_ = root_system(family).first;
    const auto nat = natural_representation_weights(family);
    const std::size_t n = nat.size();
    std::vector<int> vpar;
    for (const auto& w : nat) vpar.push_back(w.parity);

    // Cartan part
    if (family.kind == FamilyKind::GL || family.kind == FamilyKind::SL) {
        for (const auto& c : g.rs_.cartan_basis) {
            auto m = detail::zero_matrix(n);
            for (std::size_t i = 0; i < n; ++i) m[i][i] = c[i];
            g.matrices_.push_back(m);
        }
    } else {
        const std::size_t k = static_cast<std::size_t>(family.m / 2);
        const std::size_t off = 2 * k + (family.m % 2);
        const std::size_t nn = static_cast<std::size_t>(family.n);
        for (std::size_t i = 0; i < k; ++i) {
            auto m = detail::zero_matrix(n);
            m[i][i] = 1;
            m[k + i][k + i] = -1;
            g.matrices_.push_back(m);
        }
        for (std::size_t j = 0; j < nn; ++j) {
            auto m = detail::zero_matrix(n);
            m[off + j][off + j] = 1;
            m[off + nn + j][off + nn + j] = -1;
            g.matrices_.push_back(m);
        }
    }
    for (std::size_t i = 0; i < g.rs_.rank_h(); ++i) {
        g.parity_.push_back(0);
        g.labels_.push_back(g.rs_.cartan_labels[i]);
        g.basis_root_.push_back(std::nullopt);
    }

    // Root vectors: matrices supported on entries (a,b) with wt(a) - wt(b) = root.
    const DenseMatrix form =
        family.kind == FamilyKind::OSP ? detail::osp_form(nat, family.m) : DenseMatrix{};
    for (const auto& r : g.rs_.roots) {
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (a != b || !r.is_zero())
                    if (add_coords(nat[b].coords, r.coords) == nat[a].coords) slots.emplace_back(a, b);
        DenseMatrix chosen;
        if (family.kind != FamilyKind::OSP) {
            if (slots.size() != 1) throw InvariantViolation("gl root space is not one-dimensional");
            chosen = detail::elementary(n, slots[0].first, slots[0].second);
        } else {
            // X_ca G_cb + (-1)^{p|a|} G_ac X_cb = 0 for all a, b
            DenseMatrix eqs;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    ScalarVector row(slots.size());
                    bool any = false;
                    for (std::size_t s = 0; s < slots.size(); ++s) {
                        const auto [c, d] = slots[s];
                        Scalar v = 0;
                        if (d == a) v += form[c][b];
                        if (d == b) v += ((r.parity * vpar[a]) % 2 == 0 ? 1 : -1) * form[a][c];
                        row[s] = v;
                        any = any || sgn(v) != 0;
                    }
                    if (any) eqs.push_back(row);
                }
            auto ns = nullspace(eqs, slots.size());
            if (ns.size() != 1) throw InvariantViolation("osp root space is not one-dimensional");
            ScalarVector x = ns[0];
            Scalar lead = 0;
            for (const auto& v : x)
                if (sgn(v) != 0) {
                    lead = v;
                    break;
                }
            chosen = detail::zero_matrix(n);
            for (std::size_t s = 0; s < slots.size(); ++s) chosen[slots[s].first][slots[s].second] = x[s] / lead;
        }
        g.root_index_[r.coords] = g.parity_.size();
        g.matrices_.push_back(chosen);
        g.parity_.push_back(r.parity);
        g.basis_root_.push_back(r);
        std::string lab = "X[";
        for (std::size_t i = 0; i < r.coords.size(); ++i) lab += (i ? "," : "") + std::to_string(r.coords[i]);
        g.labels_.push_back(lab + "]");
    }

    // Structure constants by weight decomposition
    const std::size_t dim = g.parity_.size();
    const std::size_t r0 = g.rs_.rank_h();
    std::vector<ScalarVector> cartan_cols;
    for (std::size_t i = 0; i < r0; ++i) cartan_cols.push_back(detail::flatten(g.matrices_[i]));
    g.table_.assign(dim, std::vector<Element>(dim));
    auto weight_of = [&](std::size_t i) {
        return g.basis_root_[i] ? g.basis_root_[i]->coords : std::vector<int>(g.rs_.ambient_dim, 0);
    };
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const DenseMatrix c = detail::super_commutator(g.matrices_[i], g.parity_[i], g.matrices_[j], g.parity_[j]);
            if (detail::is_zero_matrix(c)) continue;
            const auto w = add_coords(weight_of(i), weight_of(j));
            Element out;
            DenseMatrix recon = detail::zero_matrix(n);
            if (std::all_of(w.begin(), w.end(), [](int x) { return x == 0; })) {
                auto x = solve_columns(cartan_cols, detail::flatten(c));
                if (!x) throw InvariantViolation("bracket of weight zero is not in the Cartan subalgebra");
                for (std::size_t k = 0; k < r0; ++k) {
                    if (sgn((*x)[k]) == 0) continue;
                    out += Element::unit(static_cast<int>(k), (*x)[k]);
                    for (std::size_t a = 0; a < n; ++a)
                        for (std::size_t b = 0; b < n; ++b) recon[a][b] += (*x)[k] * g.matrices_[k][a][b];
                }
            } else {
                auto it = g.root_index_.find(w);
                if (it == g.root_index_.end()) throw InvariantViolation("nonzero bracket outside the root spaces");
                const auto& basis = g.matrices_[it->second];
                Scalar ratio = 0;
                for (std::size_t a = 0; a < n && sgn(ratio) == 0; ++a)
                    for (std::size_t b = 0; b < n; ++b)
                        if (sgn(basis[a][b]) != 0) {
                            ratio = c[a][b] / basis[a][b];
                            break;
                        }
                out = Element::unit(static_cast<int>(it->second), ratio);
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b) recon[a][b] = ratio * basis[a][b];
            }
            if (recon != c) throw InvariantViolation("structure constant reconstruction failed");
            g.table_[i][j] = std::move(out);
        }
    }
    return g;
}

/// Bilinear extension of the structure constants.
inline Element bracket(const LieSuperalgebra& g, const Element& x, const Element& y) {
    SparseAccumulator acc;
    for (const auto& [i, a] : x.entries()) {
        if (static_cast<std::size_t>(i) >= g.dim()) throw InvalidInput("element has the wrong dimension");
        for (const auto& [j, b] : y.entries()) {
            if (static_cast<std::size_t>(j) >= g.dim()) throw InvalidInput("element has the wrong dimension");
            acc.add(a * b, g.bracket_basis(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
        }
    }
    return acc.finish();
}

/// Parity of a homogeneous element; -1 for zero or inhomogeneous elements.
inline int parity_of(const LieSuperalgebra& g, const Element& x) {
    int p = -1;
    for (const auto& [i, c] : x.entries()) {
        const int q = g.parity(static_cast<std::size_t>(i));
        if (p == -1) p = q;
        else if (p != q) return -1;
    }
    return p;
}

struct ChevalleyData {
    std::vector<Root> positive;   ///< same order as SimpleSystem::positive
    std::vector<Element> x;       ///< X_alpha
    std::vector<Element> y;       ///< Y_alpha
    std::vector<Element> h;       ///< [X_alpha, Y_alpha]; alpha(H_alpha) = 2 for even alpha
    std::vector<Element> simple_h;  ///< H_beta for the base, in base order

    std::size_t index(const Root& r) const {
        auto it = std::lower_bound(positive.begin(), positive.end(), r);
        if (it == positive.end() || !(*it == r)) throw InvalidInput("not a positive root");
        return static_cast<std::size_t>(it - positive.begin());
    }
};

/// Root vectors of the realization with even triples rescaled so that
/// alpha(H_alpha) = 2.
inline ChevalleyData chevalley_data(const LieSuperalgebra& g, const SimpleSystem& system) {
    ChevalleyData cd;
    cd.positive = system.positive;
    const auto& rs = g.roots();
    for (const auto& r : system.positive) {
        Element x = Element::unit(static_cast<int>(g.root_index(r)));
        Element y = Element::unit(static_cast<int>(g.root_index(-r)));
        Element h = bracket(g, x, y);
        if (h.empty()) throw InvariantViolation("[X_alpha, Y_alpha] vanishes");
        if (r.parity == 0) {
            ScalarVector hc(g.cartan_dim());
            for (const auto& [k, c] : h.entries()) hc[static_cast<std::size_t>(k)] = c;
            const Scalar val = rs.evaluate(rs.weight_of(r), hc);
            if (sgn(val) == 0) throw InvariantViolation("even root vanishes on its coroot");
            const Scalar s = Scalar(2) / val;
            y *= s;
            h *= s;
        }
        cd.x.push_back(x);
        cd.y.push_back(y);
        cd.h.push_back(h);
    }
    for (const auto& b : system.base) cd.simple_h.push_back(cd.h[cd.index(b)]);
    return cd;
}

/// g (x) B with basis index i * dim(B) + b.
class MapSuperalgebra {
public:
    MapSuperalgebra(std::shared_ptr<const LieSuperalgebra> g, FinDimCommAlgebra b)
        : g_(std::move(g)), b_(std::move(b)) {}

    const LieSuperalgebra& base() const { return *g_; }
    std::shared_ptr<const LieSuperalgebra> base_ptr() const { return g_; }
    const FinDimCommAlgebra& algebra() const { return b_; }
    std::size_t dim() const { return g_->dim() * b_.dim(); }
    std::size_t index(std::size_t gi, std::size_t bi) const { return gi * b_.dim() + bi; }
    std::pair<std::size_t, std::size_t> split(std::size_t k) const { return {k / b_.dim(), k % b_.dim()}; }
    int parity(std::size_t k) const { return g_->parity(split(k).first); }

    Element bracket_basis(std::size_t p, std::size_t q) const {
        const auto [i, a] = split(p);
        const auto [j, b] = split(q);
        const auto& prod = b_.product(a, b);
        SparseAccumulator acc;
        for (const auto& [k, c] : g_->bracket_basis(i, j).entries())
            for (std::size_t e = 0; e < prod.size(); ++e)
                if (sgn(prod[e]) != 0) acc.add(static_cast<int>(index(static_cast<std::size_t>(k), e)), c * prod[e]);
        return acc.finish();
    }

    Element bracket(const Element& x, const Element& y) const {
        SparseAccumulator acc;
        for (const auto& [p, a] : x.entries())
            for (const auto& [q, b] : y.entries())
                acc.add(a * b, bracket_basis(static_cast<std::size_t>(p), static_cast<std::size_t>(q)));
        return acc.finish();
    }

    /// x (x) f for x in g and f a polynomial reduced into B.
    Element tensor(const Element& x, const Polynomial& f) const {
        const auto coords = b_.coordinates(f);
        SparseAccumulator acc;
        for (const auto& [i, c] : x.entries())
            for (std::size_t e = 0; e < coords.size(); ++e)
                acc.add(static_cast<int>(index(static_cast<std::size_t>(i), e)), c * coords[e]);
        return acc.finish();
    }

private:
    std::shared_ptr<const LieSuperalgebra> g_;
    FinDimCommAlgebra b_;
};

inline MapSuperalgebra map_algebra(std::shared_ptr<const LieSuperalgebra> g, FinDimCommAlgebra b) {
    return MapSuperalgebra(std::move(g), std::move(b));
}

}  // namespace superweyl
