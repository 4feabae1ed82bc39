#pragma once

/**
 * @file weylmod.hpp
 * @brief Map weights, Garland series, generalized Kac modules and local Weyl
 * modules of map superalgebras g (x) A for A = Q[t], tensor products and the
 * tensor factorization check.
 *
 * Modules are computed as quotients M / N of the induced module
 * M = U(g (x) B) (x)_{U(b (x) B)} Q_psi, which is free over U(n^- (x) B) with a
 * normal-ordered monomial basis. N is generated by the relation vectors
 * Y_alpha^{lambda(H_alpha)+1} w; it is computed as the lowering span of the
 * closure of the relation vectors under b (x) B.
 */

#include "superweyl/algebra_base.hpp"
#include "superweyl/liesuper.hpp"
#include "superweyl/linalg.hpp"
#include "superweyl/rootdata.hpp"

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace superweyl {

/// Raised when a theorem's hypothesis fails and the check is refused.
struct PreconditionViolation : InvalidInput {
    using InvalidInput::InvalidInput;
};

// ---------------------------------------------------------------------------
// Map weights

/// psi = sum_i lambda_i (x) ev_{z_i}, points pairwise distinct.
struct MapWeight {
    std::vector<std::pair<Scalar, WeightVector>> entries;  ///< sorted by point
    WeightVector restriction;                               ///< psi restricted to h

    bool is_zero() const { return entries.empty(); }

    FactoredIdeal eval_ideal() const {
        std::vector<std::pair<Scalar, unsigned>> pts;
        for (const auto& [z, w] : entries) pts.emplace_back(z, 1u);
        return ideal_from_points(pts);
    }

    /// psi(h (x) f) for h with the given Cartan coordinates.
    Scalar value(const RootSystem& rs, const ScalarVector& cartan_coords, const Polynomial& f) const {
        Scalar s = 0;
        for (const auto& [z, w] : entries) s += rs.evaluate(w, cartan_coords) * f.evaluate(z);
        return s;
    }

    friend bool operator==(const MapWeight& a, const MapWeight& b) { return a.entries == b.entries; }
};

inline MapWeight psi_make(const std::vector<std::pair<Scalar, WeightVector>>& entries, const RootSystem& rs,
                          const SimpleSystem& system) {
    MapWeight psi;
    psi.restriction = WeightVector::zero(rs.rank_h());
    std::set<Scalar> seen;
    for (const auto& [z, w] : entries) {
        if (w.dim() != rs.rank_h()) throw InvalidInput("map weight component has the wrong number of coordinates");
        if (!seen.insert(z).second) throw InvalidInput("duplicate point " + to_string(z) + " in map weight");
        if (w.is_zero()) continue;
        if (!lambda_plus_check(w, rs, system))
            throw InvalidInput("map weight component at " + to_string(z) + " is not g_0-dominant integral");
        psi.entries.emplace_back(z, w);
        psi.restriction += w;
    }
    std::sort(psi.entries.begin(), psi.entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (!lambda_plus_check(psi.restriction, rs, system))
        throw InvalidInput("restriction of the map weight is not g_0-dominant integral");
    return psi;
}

/// psi1 + psi2 for map weights with disjoint supports.
inline MapWeight psi_sum(const MapWeight& a, const MapWeight& b, const RootSystem& rs, const SimpleSystem& system) {
    auto entries = a.entries;
    entries.insert(entries.end(), b.entries.begin(), b.entries.end());
    return psi_make(entries, rs, system);
}

namespace detail {

inline void require_even_positive(const SimpleSystem& system, const Root& alpha) {
    if (alpha.parity != 0) throw InvalidInput("root must be even");
    if (!system.is_positive(alpha)) throw InvalidInput("root must be positive for the chosen system");
}

}  // namespace detail

/// c_0..c_maxdeg with c_0 = 1 and c_k = -(1/k) sum_{i=1..k} psi(H_alpha (x) a^i) c_{k-i}.
inline ScalarVector garland_scalars(const MapWeight& psi, const Polynomial& a, const Root& alpha,
                                    std::size_t maxdeg, const RootSystem& rs, const SimpleSystem& system) {
    detail::require_even_positive(system, alpha);
    const auto h = rs.cartan_coordinates(rs.coroot_coords(alpha));
    ScalarVector p(maxdeg + 1);  // p[i] = psi(H (x) a^i)
    for (std::size_t i = 1; i <= maxdeg; ++i) p[i] = psi.value(rs, h, a.pow(static_cast<unsigned>(i)));
    ScalarVector c(maxdeg + 1);
    c[0] = 1;
    for (std::size_t k = 1; k <= maxdeg; ++k) {
        Scalar s = 0;
        for (std::size_t i = 1; i <= k; ++i) s += p[i] * c[k - i];
        c[k] = -s / static_cast<long>(k);
    }
    return c;
}

/// Q_alpha = prod_i (t - z_i)^{lambda_i(H_alpha)}.
inline Polynomial even_root_annihilator(const MapWeight& psi, const Root& alpha, const RootSystem& rs,
                                        const SimpleSystem& system) {
    detail::require_even_positive(system, alpha);
    const auto h = rs.cartan_coordinates(rs.coroot_coords(alpha));
    Polynomial q = Polynomial::constant(1);
    for (const auto& [z, w] : psi.entries) {
        const Scalar e = rs.evaluate(w, h);
        if (!is_natural(e)) throw InvariantViolation("negative exponent in even-root annihilator");
        q = q * Polynomial::linear(z).pow(static_cast<unsigned>(e.get_num().get_ui()));
    }
    return q;
}

// ---------------------------------------------------------------------------
// Truncation

struct TruncationPlan {
    unsigned exponent = 1;  ///< M
    bool adaptive = true;

    FactoredIdeal ideal(const MapWeight& psi) const {
        if (psi.is_zero()) return ideal_from_points({{Scalar(0), exponent}});
        return ideal_combine(psi.eval_ideal(), {}, IdealOp::Power, exponent);
    }
};

/// M = max(1, max over even positive alpha and points i of lambda_i(H_alpha))
///     * height of the highest root.
inline unsigned seed_exponent(const MapWeight& psi, const RootSystem& rs, const SimpleSystem& system) {
    Scalar best = 1;
    for (const auto& r : system.positive) {
        if (r.parity != 0) continue;
        const auto h = rs.cartan_coordinates(rs.coroot_coords(r));
        for (const auto& [z, w] : psi.entries) best = std::max(best, rs.evaluate(w, h));
    }
    const unsigned height = static_cast<unsigned>(std::max(1, system.max_height()));
    return static_cast<unsigned>(best.get_num().get_ui()) * height;
}

inline TruncationPlan default_plan(const MapWeight& psi, const RootSystem& rs, const SimpleSystem& system) {
    return TruncationPlan{seed_exponent(psi, rs, system), true};
}

inline std::size_t max_dimension() {
    if (const char* env = std::getenv("SUPERWEYL_MAX_DIM")) {
        try {
            return static_cast<std::size_t>(std::stoull(env));
        } catch (const std::exception&) {
            throw InvalidInput("SUPERWEYL_MAX_DIM is not a nonnegative integer");
        }
    }
    return 10000;
}

// ---------------------------------------------------------------------------
// Characters

using Character = std::map<WeightVector, std::size_t>;

inline std::size_t character_dimension(const Character& ch) {
    std::size_t s = 0;
    for (const auto& [w, d] : ch) s += d;
    return s;
}

inline Character character_product(const Character& a, const Character& b) {
    Character out;
    for (const auto& [wa, da] : a)
        for (const auto& [wb, db] : b) out[wa + wb] += da * db;
    return out;
}

/// Invariance under the simple reflections of the even Weyl group.
inline bool character_weyl_invariant(const Character& ch, const RootSystem& rs, const SimpleSystem& system) {
    for (const auto& [mu, d] : ch) {
        for (const auto& s : even_reflections(rs, system, mu)) {
            auto it = ch.find(s);
            if (it == ch.end() || it->second != d) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Verma engine

namespace detail {

enum class GenKind { Cartan, Raising, Lowering };

/// Induced module of g (x) B with normal-ordered rewriting and the relation
/// submodule, computed weight by weight. Weights are recorded as q in N^r,
/// meaning lambda - sum_i q_i beta_i.
class VermaEngine {
public:
    using Q = std::vector<int>;

    VermaEngine(std::shared_ptr<const MapSuperalgebra> G, SimpleSystem system, ScalarVector psi_table,
                WeightVector lambda)
        : G_(std::move(G)), sys_(std::move(system)), lambda_(std::move(lambda)), psi_(std::move(psi_table)) {
        const auto& g = G_->base();
        const std::size_t bdim = G_->algebra().dim();
        const std::size_t r = sys_.rank();
        kind_.resize(G_->dim());
        shift_.resize(G_->dim(), Q(r, 0));
        low_id_.assign(G_->dim(), -1);
        struct Low {
            int parity, height;
            std::size_t b;
            Root root;
            std::size_t gidx;
        };
        std::vector<Low> lows;
        for (std::size_t i = 0; i < g.dim(); ++i) {
            for (std::size_t e = 0; e < bdim; ++e) {
                const std::size_t k = G_->index(i, e);
                if (g.is_cartan(i)) {
                    kind_[k] = GenKind::Cartan;
                    continue;
                }
                const Root& rt = *g.root_of(i);
                const auto coeffs = sys_.coefficients(rt);
                const bool pos = sys_.is_positive(rt);
                kind_[k] = pos ? GenKind::Raising : GenKind::Lowering;
                for (std::size_t j = 0; j < r; ++j) shift_[k][j] = -coeffs[j];  // q changes by -coeffs
                if (!pos) lows.push_back({rt.parity, sys_.height(-rt), e, -rt, k});
            }
        }
        std::sort(lows.begin(), lows.end(), [](const Low& a, const Low& b) {
            if (a.parity != b.parity) return a.parity < b.parity;
            if (a.height != b.height) return a.height < b.height;
            if (a.b != b.b) return a.b < b.b;
            return a.root < b.root;
        });
        for (const auto& l : lows) {
            low_id_[l.gidx] = static_cast<int>(low_g_.size());
            low_g_.push_back(l.gidx);
            low_parity_.push_back(l.parity);
            Q q(r);
            const auto c = sys_.coefficients(l.root);
            for (std::size_t j = 0; j < r; ++j) q[j] = c[j];
            low_q_.push_back(q);
        }
        empty_ = intern({});
    }

    const MapSuperalgebra& algebra() const { return *G_; }
    const SimpleSystem& system() const { return sys_; }
    const WeightVector& lambda() const { return lambda_; }
    std::size_t rank() const { return sys_.rank(); }
    GenKind kind(std::size_t k) const { return kind_[k]; }
    const Q& shift(std::size_t k) const { return shift_[k]; }
    int empty_monomial() const { return empty_; }

    const std::vector<int>& monomial(int id) const { return monos_[static_cast<std::size_t>(id)]; }
    const Q& monomial_q(int id) const { return mono_q_[static_cast<std::size_t>(id)]; }
    int monomial_parity(int id) const { return mono_parity_[static_cast<std::size_t>(id)]; }

    std::string monomial_label(int id) const {
        const auto& g = G_->base();
        std::string s;
        for (int l : monomial(id)) {
            const auto [gi, e] = G_->split(low_g_[static_cast<std::size_t>(l)]);
            s += "(" + g.label(gi) + "*" + G_->algebra().label(e) + ")";
        }
        return s + "w";
    }

    int intern(const std::vector<int>& m) {
        auto it = ids_.find(m);
        if (it != ids_.end()) return it->second;
        const int id = static_cast<int>(monos_.size());
        Q q(rank(), 0);
        int p = 0;
        for (int l : m) {
            for (std::size_t j = 0; j < rank(); ++j) q[j] += low_q_[static_cast<std::size_t>(l)][j];
            p += low_parity_[static_cast<std::size_t>(l)];
        }
        monos_.push_back(m);
        mono_q_.push_back(q);
        mono_parity_.push_back(p % 2);
        ids_.emplace(m, id);
        return id;
    }

    /// Basis element k of g (x) B applied to a monomial of the induced module.
    SparseVector apply(std::size_t k, int mono) {
        const std::uint64_t key = static_cast<std::uint64_t>(k) * 0x100000000ULL + static_cast<std::uint64_t>(mono);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        SparseVector out = compute(k, mono);
        memo_.emplace(key, out);
        return out;
    }

    SparseVector apply_vector(std::size_t k, const SparseVector& v) {
        SparseAccumulator acc;
        for (const auto& [m, c] : v.entries()) acc.add(c, apply(k, m));
        return acc.finish();
    }

    SparseVector apply_element(const Element& x, const SparseVector& v) {
        SparseAccumulator acc;
        for (const auto& [k, c] : x.entries()) acc.add(c, apply_vector(static_cast<std::size_t>(k), v));
        return acc.finish();
    }

    /// All normal-ordered monomials of weight q, in increasing id order.
    const std::vector<int>& monomials(const Q& q) {
        if (auto it = by_q_.find(q); it != by_q_.end()) return it->second;
        std::vector<int> out;
        std::vector<int> cur;
        Q rem = q;
        enumerate(0, rem, cur, out);
        std::sort(out.begin(), out.end());
        return by_q_.emplace(q, std::move(out)).first->second;
    }

    WeightVector weight(const Q& q) const {
        const auto& rs = G_->base().roots();
        WeightVector w = lambda_;
        for (std::size_t j = 0; j < rank(); ++j)
            if (q[j] != 0) w -= Scalar(q[j]) * rs.weight_of(sys_.base[j]);
        return w;
    }

private:
    void enumerate(std::size_t from, Q& rem, std::vector<int>& cur, std::vector<int>& out) {
        if (std::all_of(rem.begin(), rem.end(), [](int x) { return x == 0; })) {
            out.push_back(intern(cur));
            return;
        }
        for (std::size_t l = from; l < low_q_.size(); ++l) {
            const auto& lq = low_q_[l];
            bool fits = true;
            for (std::size_t j = 0; j < rem.size(); ++j)
                if (lq[j] > rem[j]) {
                    fits = false;
                    break;
                }
            if (!fits) continue;
            for (std::size_t j = 0; j < rem.size(); ++j) rem[j] -= lq[j];
            cur.push_back(static_cast<int>(l));
            enumerate(low_parity_[l] == 1 ? l + 1 : l, rem, cur, out);
            cur.pop_back();
            for (std::size_t j = 0; j < rem.size(); ++j) rem[j] += lq[j];
        }
    }

    SparseVector compute(std::size_t k, int mono) {
        const std::vector<int> m = monomial(mono);
        if (m.empty()) {
            switch (kind_[k]) {
                case GenKind::Raising: return {};
                case GenKind::Cartan: return SparseVector::unit(empty_, psi_[k]);
                case GenKind::Lowering: return SparseVector::unit(intern({low_id_[k]}));
            }
        }
        const int y = m.front();
        const std::vector<int> rest_v(m.begin() + 1, m.end());
        const int rest = intern(rest_v);
        if (kind_[k] == GenKind::Lowering) {
            const int lx = low_id_[k];
            if (lx < y || (lx == y && low_parity_[static_cast<std::size_t>(lx)] == 0)) {
                std::vector<int> nm;
                nm.reserve(m.size() + 1);
                nm.push_back(lx);
                nm.insert(nm.end(), m.begin(), m.end());
                return SparseVector::unit(intern(nm));
            }
            if (lx == y) {
                // x x = (1/2)[x, x] for odd x
                SparseAccumulator acc;
                const SparseVector sq = G_->bracket_basis(k, k);
                for (const auto& [z, c] : sq.entries())
                    acc.add(c / 2, apply(static_cast<std::size_t>(z), rest));
                return acc.finish();
            }
        }
        // x y rest = [x, y] rest + (-1)^{|x||y|} y (x rest)
        const std::size_t yg = low_g_[static_cast<std::size_t>(y)];
        SparseAccumulator acc;
        const SparseVector xy = G_->bracket_basis(k, yg);
        for (const auto& [z, c] : xy.entries()) acc.add(c, apply(static_cast<std::size_t>(z), rest));
        const int sign = (G_->parity(k) * low_parity_[static_cast<std::size_t>(y)]) % 2 == 0 ? 1 : -1;
        const SparseVector xr = apply(k, rest);
        for (const auto& [mm, c] : xr.entries()) acc.add(sign * c, apply(yg, mm));
        return acc.finish();
    }

    std::shared_ptr<const MapSuperalgebra> G_;
    SimpleSystem sys_;
    WeightVector lambda_;
    ScalarVector psi_;  ///< psi on Cartan basis elements of g (x) B, indexed like G
    std::vector<GenKind> kind_;
    std::vector<Q> shift_;
    std::vector<int> low_id_;
    std::vector<std::size_t> low_g_;
    std::vector<int> low_parity_;
    std::vector<Q> low_q_;
    std::vector<std::vector<int>> monos_;
    std::vector<Q> mono_q_;
    std::vector<int> mono_parity_;
    std::map<std::vector<int>, int> ids_;
    std::map<Q, std::vector<int>> by_q_;
    std::unordered_map<std::uint64_t, SparseVector> memo_;
    int empty_ = 0;
};

/// Per-weight data of the quotient.
struct QuotientSpace {
    bool full = false;               ///< N_q = M_q
    EchelonBasis relations;          ///< N_q when not full
    std::vector<int> quotient_basis;  ///< non-pivot monomials
};

/// The quotient M / N for relation vectors given in the induced module.
class QuotientEngine {
public:
    using Q = VermaEngine::Q;

    /// known_zero marks weights whose quotient space is zero a priori.
    QuotientEngine(std::shared_ptr<VermaEngine> verma, const std::vector<SparseVector>& relations,
                   std::function<bool(const Q&)> known_zero = {})
        : v_(std::move(verma)), known_zero_(std::move(known_zero)) {
        raising_closure(relations);
    }

    VermaEngine& verma() { return *v_; }

    /// The relation submodule at q.
    const QuotientSpace& space(const Q& q) {
        if (auto it = spaces_.find(q); it != spaces_.end()) return it->second;
        QuotientSpace s = build(q);
        return spaces_.emplace(q, std::move(s)).first->second;
    }

    std::size_t quotient_dim(const Q& q) { return space(q).quotient_basis.size(); }

    /// Canonical representative of v modulo N; v must be homogeneous of weight q.
    SparseVector reduce(const Q& q, const SparseVector& v) {
        const auto& s = space(q);
        if (s.full) return {};
        return s.relations.reduce(v);
    }

private:
    static bool nonneg(const Q& q) {
        return std::all_of(q.begin(), q.end(), [](int x) { return x >= 0; });
    }

    /// U(n^+ (x) B) applied to the relation vectors. The h (x) B closure is
    /// taken lazily per weight in build(), since U(b (x) B) = U(h (x) B) U(n^+ (x) B).
    void raising_closure(const std::vector<SparseVector>& relations) {
        std::vector<std::pair<Q, SparseVector>> queue;
        auto push = [&](const SparseVector& v) {
            if (v.empty()) return;
            const Q q = v_->monomial_q(v.entries().front().first);
            if (closure_[q].insert(v)) queue.emplace_back(q, v);
        };
        for (const auto& r : relations) push(r);
        const auto& G = v_->algebra();
        const auto& sys = v_->system();
        for (std::size_t k = 0; k < G.dim(); ++k) {
            if (v_->kind(k) == GenKind::Cartan && G.split(k).second != G.algebra().unit_index()) cartan_.push_back(k);
            if (v_->kind(k) == GenKind::Raising) {
                const auto& rt = *G.base().root_of(G.split(k).first);
                if (std::find(sys.base.begin(), sys.base.end(), rt) != sys.base.end()) raising_.push_back(k);
            }
        }
        while (!queue.empty()) {
            auto [q, vec] = std::move(queue.back());
            queue.pop_back();
            for (auto k : raising_) {
                Q nq = q;
                for (std::size_t j = 0; j < nq.size(); ++j) nq[j] += v_->shift(k)[j];
                if (!nonneg(nq)) continue;
                push(v_->apply_vector(k, vec));
            }
        }
    }

    /// Inserts v and its h (x) B orbit span into basis.
    void insert_cartan_closed(EchelonBasis& basis, const SparseVector& v) {
        if (!basis.insert(v)) return;
        std::vector<SparseVector> queue{v};
        while (!queue.empty()) {
            SparseVector cur = std::move(queue.back());
            queue.pop_back();
            for (auto k : cartan_) {
                SparseVector u = v_->apply_vector(k, cur);
                if (basis.insert(u)) queue.push_back(std::move(u));
            }
        }
    }

    QuotientSpace build(const Q& q) {
        QuotientSpace s;
        const auto& monos = v_->monomials(q);
        if (monos.empty() || (known_zero_ && known_zero_(q))) {
            s.full = true;
            return s;
        }
        const bool top = std::all_of(q.begin(), q.end(), [](int x) { return x == 0; });
        std::vector<std::pair<Q, std::size_t>> neighbours;  // (q - e_i, i)
        bool all_full = !top;
        if (!top) {
            for (std::size_t i = 0; i < q.size(); ++i) {
                if (q[i] == 0) continue;
                Q up = q;
                --up[i];
                if (v_->monomials(up).empty()) continue;
                neighbours.emplace_back(up, i);
                if (!space(up).full) all_full = false;
            }
        }
        if (all_full) {
            s.full = true;
            return s;
        }
        if (auto it = closure_.find(q); it != closure_.end())
            for (const auto& row : it->second.rows()) insert_cartan_closed(s.relations, row);
        const auto& G = v_->algebra();
        const auto& g = G.base();
        const auto& sys = v_->system();
        for (const auto& [up, i] : neighbours) {
            if (s.relations.rank() == monos.size()) break;
            const std::size_t gi = g.root_index(-sys.base[i]);
            const QuotientSpace& us = space(up);
            for (std::size_t e = 0; e < G.algebra().dim(); ++e) {
                const std::size_t k = G.index(gi, e);
                if (us.full) {
                    for (int m : v_->monomials(up)) s.relations.insert(v_->apply(k, m));
                } else {
                    for (const auto& row : us.relations.rows()) s.relations.insert(v_->apply_vector(k, row));
                }
                if (s.relations.rank() == monos.size()) break;
            }
        }
        if (s.relations.rank() == monos.size()) {
            s.full = true;
            s.relations = EchelonBasis{};
            return s;
        }
        for (int m : monos)
            if (!s.relations.is_pivot(m)) s.quotient_basis.push_back(m);
        return s;
    }

    std::shared_ptr<VermaEngine> v_;
    std::map<Q, EchelonBasis> closure_;
    std::map<Q, QuotientSpace> spaces_;
    std::function<bool(const Q&)> known_zero_;
    std::vector<std::size_t> cartan_;
    std::vector<std::size_t> raising_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Weight modules

/// Finite-dimensional weight module with a homogeneous basis grouped by weight.
class WeightModule {
public:
    struct Block {
        WeightVector weight;
        std::size_t offset = 0;
        std::size_t dim = 0;
    };
    /// Action of (g basis element) (x) a on a module basis vector.
    using Action = std::function<SparseVector(std::size_t, const Polynomial&, std::size_t)>;

    std::shared_ptr<const LieSuperalgebra> algebra;
    SimpleSystem system;
    WeightVector highest;
    std::optional<MapWeight> psi;  ///< absent for Kac modules
    unsigned truncation = 1;
    std::vector<Block> blocks;     ///< highest weight first
    std::vector<int> parity;
    std::vector<std::string> labels;
    std::vector<std::pair<unsigned, std::size_t>> trace;  ///< (M, dim) for each truncation tried
    std::vector<std::string> notes;
    Action action;

    std::size_t dim() const { return parity.size(); }
    bool has_cyclic_vector() const { return dim() > 0; }
    std::size_t cyclic_index() const { return 0; }

    /// Index of the block with the given weight, if any.
    std::optional<std::size_t> block_of(const WeightVector& w) const {
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if (blocks[i].weight == w) return i;
        return std::nullopt;
    }

    std::size_t block_index(std::size_t basis_index) const {
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if (basis_index < blocks[i].offset + blocks[i].dim) return i;
        throw InvalidInput("basis index out of range");
    }

    Character character() const {
        Character ch;
        for (const auto& b : blocks) ch[b.weight] += b.dim;
        return ch;
    }

    /// (x (x) a) v for x in g.
    SparseVector act(const Element& x, const Polynomial& a, const SparseVector& v) const {
        SparseAccumulator acc;
        for (const auto& [i, c] : x.entries())
            for (const auto& [j, d] : v.entries()) {
                if (static_cast<std::size_t>(j) >= dim()) throw InvalidInput("vector has the wrong dimension");
                acc.add(c * d, action(static_cast<std::size_t>(i), a, static_cast<std::size_t>(j)));
            }
        return acc.finish();
    }
};

inline Character character(const WeightModule& m) { return m.character(); }

namespace detail {

/// psi(h (x) b_e) for each Cartan basis element of g (x) B.
inline ScalarVector psi_table(const MapSuperalgebra& G, const MapWeight& psi) {
    const auto& g = G.base();
    const auto& rs = g.roots();
    ScalarVector table(G.dim());
    for (std::size_t i = 0; i < g.cartan_dim(); ++i) {
        ScalarVector h(g.cartan_dim());
        h[i] = 1;
        for (std::size_t e = 0; e < G.algebra().dim(); ++e)
            table[G.index(i, e)] = psi.value(rs, h, Polynomial::monomial(e));
    }
    return table;
}

/// Builds the quotient module generated by w subject to the highest-weight
/// relations over g (x) B.
///
/// With prune set, weights outside the frontier for odd multiplicity dim B
/// are taken to be zero: the quotient is g_0-integrable (Y_alpha (x) 1 is
/// locally nilpotent), so its character is W_0-invariant and each weight has
/// its dominant conjugate inside the PBW cone.
inline WeightModule build_quotient_module(std::shared_ptr<const LieSuperalgebra> g, const SimpleSystem& system,
                                          const MapWeight& psi, FinDimCommAlgebra B, bool prune = true) {
    const auto& rs = g->roots();
    const WeightVector lambda = psi.is_zero() ? WeightVector::zero(rs.rank_h()) : psi.restriction;
    auto G = std::make_shared<const MapSuperalgebra>(g, std::move(B));
    const std::size_t bdim = G->algebra().dim();
    auto verma = std::make_shared<VermaEngine>(G, system, psi_table(*G, psi), lambda);

    // relation vectors Y_alpha^{lambda(H_alpha)+1} w
    const auto cd = chevalley_data(*g, system);
    std::vector<SparseVector> relations;
    for (std::size_t i = 0; i < system.even_simple.size(); ++i) {
        const Scalar n = even_label(rs, system, lambda, i);
        const Element y = G->tensor(cd.y[cd.index(system.even_simple[i])], Polynomial::constant(1));
        SparseVector v = SparseVector::unit(verma->empty_monomial());
        for (unsigned p = 0; p <= n.get_num().get_ui(); ++p) v = verma->apply_element(y, v);
        relations.push_back(v);
    }
    std::function<bool(const VermaEngine::Q&)> known_zero;
    if (prune) {
        const auto omega = weight_frontier(lambda, rs, system, static_cast<unsigned>(bdim));
        auto allowed = std::make_shared<std::set<WeightVector>>(omega.begin(), omega.end());
        known_zero = [verma, allowed](const VermaEngine::Q& q) { return !allowed->count(verma->weight(q)); };
    }
    auto engine = std::make_shared<QuotientEngine>(verma, relations, std::move(known_zero));

    // support discovery from the top
    const std::size_t r = system.rank();
    const std::size_t cap = max_dimension();
    std::map<int, std::vector<VermaEngine::Q>> by_height;
    std::set<VermaEngine::Q> support;
    const VermaEngine::Q top(r, 0);
    std::size_t total = 0;
    if (engine->quotient_dim(top) > 0) {
        support.insert(top);
        std::vector<VermaEngine::Q> frontier{top};
        total = 1;
        while (!frontier.empty()) {
            std::set<VermaEngine::Q> next;
            for (const auto& q : frontier)
                for (std::size_t i = 0; i < r; ++i) {
                    auto nq = q;
                    ++nq[i];
                    if (support.count(nq) || next.count(nq)) continue;
                    const std::size_t d = engine->quotient_dim(nq);
                    if (d == 0) continue;
                    total += d;
                    if (total > cap)
                        throw Unsupported("module dimension exceeds SUPERWEYL_MAX_DIM=" + std::to_string(cap));
                    next.insert(nq);
                }
            support.insert(next.begin(), next.end());
            frontier.assign(next.begin(), next.end());
        }
    }

    std::vector<VermaEngine::Q> order(support.begin(), support.end());
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        int ha = 0, hb = 0;
        for (int x : a) ha += x;
        for (int x : b) hb += x;
        if (ha != hb) return ha < hb;
        return a < b;
    });

    WeightModule mod;
    mod.algebra = g;
    mod.system = system;
    mod.highest = lambda;
    mod.psi = psi;
    auto index = std::make_shared<std::map<int, std::size_t>>();  // monomial -> basis index
    auto basis_monos = std::make_shared<std::vector<int>>();
    for (const auto& q : order) {
        WeightModule::Block b;
        b.weight = verma->weight(q);
        b.offset = mod.parity.size();
        for (int m : engine->space(q).quotient_basis) {
            (*index)[m] = mod.parity.size();
            basis_monos->push_back(m);
            mod.parity.push_back(verma->monomial_parity(m));
            mod.labels.push_back(verma->monomial_label(m));
        }
        b.dim = mod.parity.size() - b.offset;
        mod.blocks.push_back(b);
    }

    auto support_ptr = std::make_shared<std::set<VermaEngine::Q>>(support);
    mod.action = [G, engine, verma, index, basis_monos, support_ptr, bdim](std::size_t gi, const Polynomial& a,
                                                                          std::size_t j) -> SparseVector {
        const auto coords = G->algebra().coordinates(a);
        const int mono = (*basis_monos)[j];
        SparseAccumulator acc;
        for (std::size_t e = 0; e < bdim; ++e) {
            if (sgn(coords[e]) == 0) continue;
            acc.add(coords[e], verma->apply(G->index(gi, e), mono));
        }
        const SparseVector raw = acc.finish();
        if (raw.empty()) return {};
        const auto q = verma->monomial_q(raw.entries().front().first);
        if (!support_ptr->count(q)) return {};
        const SparseVector red = engine->reduce(q, raw);
        SparseAccumulator out;
        for (const auto& [m, c] : red.entries()) {
            auto it = index->find(m);
            if (it == index->end()) throw InvariantViolation("reduced vector outside the quotient basis");
            out.add(static_cast<int>(it->second), c);
        }
        return out.finish();
    };
    return mod;
}

/// Every weight lies in the frontier for the given odd multiplicity.
inline void check_frontier(const WeightModule& m, unsigned odd_multiplicity) {
    if (m.dim() == 0) return;
    const auto& rs = m.algebra->roots();
    const auto omega = weight_frontier(m.highest, rs, m.system, odd_multiplicity);
    for (const auto& b : m.blocks)
        if (!std::binary_search(omega.begin(), omega.end(), b.weight))
            throw InvariantViolation("module weight outside the weight frontier");
}

inline void require_module_level(const LieSuperalgebra& g, const SimpleSystem& system) {
    if (g.family().support() != SupportLevel::Full) throw Unsupported(g.family().name() + " is root data only");
    // the system must belong to g's root system
    make_simple_system(g.roots(), system.base);
}

}  // namespace detail

/// Generalized Kac module: relations n^+ v = 0, h v = lambda(h) v and
/// Y_alpha^{lambda(H_alpha)+1} v = 0 for alpha in Sigma(g_0).
inline WeightModule kac_module(std::shared_ptr<const LieSuperalgebra> g, const SimpleSystem& system,
                               const WeightVector& lambda) {
    detail::require_module_level(*g, system);
    const auto& rs = g->roots();
    if (!lambda_plus_check(lambda, rs, system)) throw InvalidInput("weight is not g_0-dominant integral");
    MapWeight psi = psi_make({{Scalar(0), lambda}}, rs, system);
    auto m = detail::build_quotient_module(g, system, psi, truncated_algebra(ideal_from_points({{Scalar(0), 1u}})));
    m.psi.reset();
    m.highest = lambda;
    m.truncation = 1;
    m.trace = {{1u, m.dim()}};
    return m;
}

/// W_M for the plan's M; with adaptive plans, M grows until two consecutive
/// truncations have the same character.
inline WeightModule local_weyl(std::shared_ptr<const LieSuperalgebra> g, const SimpleSystem& system,
                               const MapWeight& psi, const TruncationPlan& plan) {
    detail::require_module_level(*g, system);
    const auto& rs = g->roots();
    if (!check_condition(system, rs).holds)
        throw Unsupported("the simple system fails the odd-root condition; local Weyl modules are refused");
    if (plan.exponent == 0) throw InvalidInput("truncation exponent must be positive");
    auto build = [&](unsigned M) {
        TruncationPlan p{M, false};
        const FactoredIdeal J = p.ideal(psi);
        auto mod = detail::build_quotient_module(g, system, psi, truncated_algebra(J));
        mod.truncation = M;
        return mod;
    };
    WeightModule cur = build(plan.exponent);
    std::vector<std::pair<unsigned, std::size_t>> trace{{plan.exponent, cur.dim()}};
    std::vector<std::string> notes;
    if (plan.adaptive) {
        const unsigned seed = seed_exponent(psi, rs, system);
        constexpr unsigned kMaxSteps = 8;
        for (unsigned step = 0;; ++step) {
            WeightModule next = build(cur.truncation + 1);
            trace.emplace_back(next.truncation, next.dim());
            if (next.character() == cur.character()) break;
            if (cur.truncation >= seed)
                notes.push_back("seed M=" + std::to_string(seed) + " and plateau disagree at M=" +
                                std::to_string(cur.truncation));
            cur = std::move(next);
            if (step + 1 == kMaxSteps) {
                notes.push_back("no plateau within " + std::to_string(kMaxSteps) + " steps");
                break;
            }
        }
    }
    for (const auto& n : notes) std::cerr << "superweyl: " << n << "\n";
    cur.trace = std::move(trace);
    cur.notes = std::move(notes);
    return cur;
}

// ---------------------------------------------------------------------------
// Tensor products

inline WeightModule tensor_module(const WeightModule& m1, const WeightModule& m2) {
    if (m1.algebra->family() != m2.algebra->family() || !(m1.system == m2.system))
        throw InvalidInput("tensor factors live over different algebras or systems");
    WeightModule t;
    t.algebra = m1.algebra;
    t.system = m1.system;
    t.highest = m1.highest + m2.highest;
    t.truncation = std::max(m1.truncation, m2.truncation);
    // group basis pairs by weight, highest first
    std::map<WeightVector, std::vector<std::pair<std::size_t, std::size_t>>> groups;
    std::vector<WeightVector> order;
    for (const auto& b1 : m1.blocks)
        for (const auto& b2 : m2.blocks) {
            const WeightVector w = b1.weight + b2.weight;
            if (!groups.count(w)) order.push_back(w);
            auto& list = groups[w];
            for (std::size_t i = 0; i < b1.dim; ++i)
                for (std::size_t j = 0; j < b2.dim; ++j) list.emplace_back(b1.offset + i, b2.offset + j);
        }
    const auto& rs = t.algebra->roots();
    std::vector<WeightVector> base_weights;
    for (const auto& b : t.system.base) base_weights.push_back(rs.weight_of(b));
    auto depth = [&](const WeightVector& w) {
        auto c = detail::nonneg_integer_coefficients(base_weights, t.highest - w);
        long s = 0;
        if (c)
            for (long x : *c) s += x;
        return s;
    };
    std::stable_sort(order.begin(), order.end(), [&](const auto& a, const auto& b) { return depth(a) < depth(b); });
    auto pair_index = std::make_shared<std::map<std::pair<std::size_t, std::size_t>, std::size_t>>();
    auto pairs = std::make_shared<std::vector<std::pair<std::size_t, std::size_t>>>();
    for (const auto& w : order) {
        WeightModule::Block b;
        b.weight = w;
        b.offset = t.parity.size();
        for (const auto& pr : groups[w]) {
            (*pair_index)[pr] = t.parity.size();
            pairs->push_back(pr);
            t.parity.push_back((m1.parity[pr.first] + m2.parity[pr.second]) % 2);
            t.labels.push_back(m1.labels[pr.first] + " (x) " + m2.labels[pr.second]);
        }
        b.dim = t.parity.size() - b.offset;
        t.blocks.push_back(b);
    }
    auto a1 = m1.action;
    auto a2 = m2.action;
    auto p1 = std::make_shared<std::vector<int>>(m1.parity);
    auto g = t.algebra;
    t.action = [a1, a2, p1, g, pair_index, pairs](std::size_t gi, const Polynomial& a, std::size_t k) -> SparseVector {
        const auto [i, j] = (*pairs)[k];
        SparseAccumulator acc;
        const SparseVector left = a1(gi, a, i);
        for (const auto& [ii, c] : left.entries())
            acc.add(static_cast<int>(pair_index->at({static_cast<std::size_t>(ii), j})), c);
        const Scalar sign = (g->parity(gi) * (*p1)[i]) % 2 == 0 ? 1 : -1;
        const SparseVector right = a2(gi, a, j);
        for (const auto& [jj, c] : right.entries())
            acc.add(static_cast<int>(pair_index->at({i, static_cast<std::size_t>(jj)})), sign * c);
        return acc.finish();
    };
    return t;
}

struct TensorReport {
    Character ch1, ch2, ch_sum, ch_product;
    std::size_t dim1 = 0, dim2 = 0, dim_sum = 0;
    unsigned m1 = 0, m2 = 0, m_sum = 0;
    bool holds = false;
};

/// Compares ch W(psi1 + psi2) with ch W(psi1) * ch W(psi2) for disjoint supports.
inline TensorReport verify_tensor_theorem(std::shared_ptr<const LieSuperalgebra> g, const SimpleSystem& system,
                                          const MapWeight& psi1, const MapWeight& psi2) {
    const auto s1 = ideal_support(psi1.eval_ideal());
    for (const auto& z : ideal_support(psi2.eval_ideal()))
        if (s1.count(z))
            throw PreconditionViolation("tensor factorization needs disjoint supports; both contain " + to_string(z));
    const auto& rs = g->roots();
    const MapWeight sum = psi_sum(psi1, psi2, rs, system);
    TensorReport r;
    const auto w1 = local_weyl(g, system, psi1, default_plan(psi1, rs, system));
    const auto w2 = local_weyl(g, system, psi2, default_plan(psi2, rs, system));
    const auto ws = local_weyl(g, system, sum, default_plan(sum, rs, system));
    r.ch1 = w1.character();
    r.ch2 = w2.character();
    r.ch_sum = ws.character();
    r.ch_product = character_product(r.ch1, r.ch2);
    r.dim1 = w1.dim();
    r.dim2 = w2.dim();
    r.dim_sum = ws.dim();
    r.m1 = w1.truncation;
    r.m2 = w2.truncation;
    r.m_sum = ws.truncation;
    r.holds = r.ch_sum == r.ch_product;
    return r;
}

// ---------------------------------------------------------------------------
// Garland identity

/// (X (x) a)^m (Y (x) 1)^{m+1} w / (m! (m+1)!) - (-1)^m sum_i c_i (Y (x) a^{m-i}) w
/// for the normalized triple of an even positive root; zero in every module
/// generated by a highest map-weight vector.
inline SparseVector garland_identity_check(const WeightModule& module, unsigned m, const Polynomial& a,
                                           const Root& alpha) {
    if (!module.has_cyclic_vector()) return {};
    if (!module.psi) throw InvalidInput("garland identity needs a map weight");
    const auto& g = *module.algebra;
    const auto& rs = g.roots();
    detail::require_even_positive(module.system, alpha);
    const auto cd = chevalley_data(g, module.system);
    const std::size_t idx = cd.index(alpha);
    const Element& X = cd.x[idx];
    const Element& Y = cd.y[idx];
    SparseVector v = SparseVector::unit(static_cast<int>(module.cyclic_index()));
    for (unsigned i = 0; i <= m; ++i) v = module.act(Y, Polynomial::constant(1), v);
    for (unsigned i = 0; i < m; ++i) v = module.act(X, a, v);
    Scalar norm = 1;
    for (unsigned i = 2; i <= m; ++i) norm *= i;
    for (unsigned i = 2; i <= m + 1; ++i) norm *= i;
    v *= Scalar(1 / norm);
    const auto c = garland_scalars(*module.psi, a, alpha, m, rs, module.system);
    const SparseVector w = SparseVector::unit(static_cast<int>(module.cyclic_index()));
    SparseVector rhs;
    for (unsigned i = 0; i <= m; ++i) rhs.axpy(c[i], module.act(Y, a.pow(m - i), w));
    if (m % 2 == 1) rhs *= Scalar(-1);
    return v - rhs;
}

}  // namespace superweyl
