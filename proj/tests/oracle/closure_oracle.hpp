#pragma once

// Brute-force model of the quotient of the induced module by the submodule
// generated by Y_alpha^{lambda(H_alpha)+1} w, written independently of the
// engine in weylmod.hpp. Words use the reverse order (non-increasing indices
// over a (B-degree descending, g-index ascending) listing of lowering
// elements), and N is the closure of the relation vectors under every basis
// element of g (x) B inside a depth window that grows until a whole layer of
// the quotient vanishes.

#include "superweyl/weylmod.hpp"

#include <functional>
#include <map>
#include <vector>

namespace oracle {

using namespace superweyl;

class ClosureOracle {
public:
    using Word = std::vector<int>;
    using Vec = std::map<Word, Scalar>;

    ClosureOracle(std::shared_ptr<const LieSuperalgebra> g, SimpleSystem system, const MapWeight& psi,
                  FinDimCommAlgebra B)
        : g_(std::move(g)), G_(g_, std::move(B)), sys_(std::move(system)) {
        const auto& rs = g_->roots();
        const std::size_t bdim = G_.algebra().dim();
        for (std::size_t e = bdim; e-- > 0;)
            for (std::size_t i = 0; i < g_->dim(); ++i) {
                if (g_->is_cartan(i) || sys_.is_positive(*g_->root_of(i))) continue;
                low_id_[G_.index(i, e)] = static_cast<int>(low_.size());
                low_.push_back(G_.index(i, e));
            }
        for (std::size_t k = 0; k < G_.dim(); ++k) {
            const auto [i, e] = G_.split(k);
            if (!g_->is_cartan(i)) continue;
            ScalarVector h(g_->cartan_dim());
            h[i] = 1;
            cartan_value_[k] = psi.value(rs, h, Polynomial::monomial(e));
        }
        const WeightVector lambda = psi.is_zero() ? WeightVector::zero(rs.rank_h()) : psi.restriction;
        lambda_ = lambda;
        const auto cd = chevalley_data(*g_, sys_);
        for (std::size_t a = 0; a < sys_.even_simple.size(); ++a) {
            const Scalar n = even_label(rs, sys_, lambda, a);
            const Element y = G_.tensor(cd.y[cd.index(sys_.even_simple[a])], Polynomial::constant(1));
            Vec v{{Word{}, Scalar(1)}};
            for (long p = 0; p <= n.get_num().get_si(); ++p) v = act_element(y, v);
            if (!v.empty()) relations_.push_back(v);
        }
    }

    /// Character of the quotient, each weight with its multiplicity.
    Character character() {
        int window = 0;
        for (const auto& r : relations_) window = std::max(window, depth(r.begin()->first));
        for (;; ++window) {
            auto layers = quotient_layers(window);
            if (layers.back().empty() || window > 64) {
                Character ch;
                for (const auto& layer : layers)
                    for (const auto& [q, d] : layer)
                        if (d > 0) ch[weight(q)] += d;
                return ch;
            }
        }
    }

private:
    using Q = std::vector<int>;

    bool lowering(std::size_t k) const { return low_id_.count(k) > 0; }
    bool cartan(std::size_t k) const { return g_->is_cartan(G_.split(k).first); }
    int parity_of_low(int l) const { return G_.parity(low_[static_cast<std::size_t>(l)]); }

    Q q_of_low(int l) const {
        const Root r = *g_->root_of(G_.split(low_[static_cast<std::size_t>(l)]).first);
        return sys_.coefficients(-r);
    }
    Q q_of(const Word& w) const {
        Q q(sys_.rank(), 0);
        for (int l : w) {
            const Q d = q_of_low(l);
            for (std::size_t i = 0; i < q.size(); ++i) q[i] += d[i];
        }
        return q;
    }
    int depth(const Word& w) const {
        int d = 0;
        for (int x : q_of(w)) d += x;
        return d;
    }
    WeightVector weight(const Q& q) const {
        WeightVector w = lambda_;
        for (std::size_t i = 0; i < q.size(); ++i) w -= Scalar(q[i]) * g_->roots().weight_of(sys_.base[i]);
        return w;
    }

    static void add(Vec& acc, const Scalar& c, const Vec& v) {
        for (const auto& [w, x] : v) {
            auto& slot = acc[w];
            slot += c * x;
            if (sgn(slot) == 0) acc.erase(w);
        }
    }

    /// basis element k of g (x) B applied to a word
    const Vec& act(std::size_t k, const Word& w) {
        auto key = std::make_pair(k, w);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Vec out;
        if (w.empty()) {
            if (lowering(k)) out[Word{low_id_.at(k)}] = 1;
            else if (cartan(k) && sgn(cartan_value_.at(k)) != 0) out[Word{}] = cartan_value_.at(k);
        } else {
            const int y = w.front();
            const Word rest(w.begin() + 1, w.end());
            bool done = false;
            if (lowering(k)) {
                const int l = low_id_.at(k);
                if (l > y || (l == y && parity_of_low(l) == 0)) {
                    Word nw{l};
                    nw.insert(nw.end(), w.begin(), w.end());
                    out[nw] = 1;
                    done = true;
                } else if (l == y) {
                    // odd square
                    const Element sq = G_.bracket_basis(k, k);
                    for (const auto& [z, c] : sq.entries()) add(out, c / 2, act(static_cast<std::size_t>(z), rest));
                    done = true;
                }
            }
            if (!done) {
                const std::size_t yk = low_[static_cast<std::size_t>(y)];
                const Element xy = G_.bracket_basis(k, yk);
                for (const auto& [z, c] : xy.entries()) add(out, c, act(static_cast<std::size_t>(z), rest));
                const int sign = (G_.parity(k) * parity_of_low(y)) % 2 == 0 ? 1 : -1;
                const Vec xr = act(k, rest);
                for (const auto& [m, c] : xr) add(out, Scalar(sign) * c, act(yk, m));
            }
        }
        return memo_.emplace(std::move(key), std::move(out)).first->second;
    }

    Vec act_vec(std::size_t k, const Vec& v) {
        Vec out;
        for (const auto& [w, c] : v) add(out, c, act(k, w));
        return out;
    }
    Vec act_element(const Element& x, const Vec& v) {
        Vec out;
        for (const auto& [k, c] : x.entries()) add(out, c, act_vec(static_cast<std::size_t>(k), v));
        return out;
    }

    /// All words of exactly the given depth.
    std::vector<Word> words_at_depth(int d) {
        std::vector<Word> out;
        Word cur;
        std::function<void(int, int)> rec = [&](int remaining, int max_l) {
            if (remaining == 0) {
                out.push_back(cur);
                return;
            }
            for (int l = max_l; l >= 0; --l) {
                int h = 0;
                for (int x : q_of_low(l)) h += x;
                if (h > remaining) continue;
                if (!cur.empty() && cur.back() == l && parity_of_low(l) == 1) continue;
                cur.push_back(l);
                rec(remaining - h, l);
                cur.pop_back();
            }
        };
        rec(d, static_cast<int>(low_.size()) - 1);
        return out;
    }

    /// Quotient dimensions per weight for depths 0..window.
    std::vector<std::map<Q, std::size_t>> quotient_layers(int window) {
        std::map<Q, std::vector<Word>> index;  // words of each weight
        for (int d = 0; d <= window; ++d)
            for (auto& w : words_at_depth(d)) index[q_of(w)].push_back(std::move(w));
        std::map<Q, std::map<Word, int>> pos;
        for (const auto& [q, ws] : index)
            for (std::size_t i = 0; i < ws.size(); ++i) pos[q][ws[i]] = static_cast<int>(i);

        std::map<Q, EchelonBasis> span;
        std::vector<Vec> queue;
        auto push = [&](const Vec& v) {
            if (v.empty()) return;
            const Q q = q_of(v.begin()->first);
            int d = 0;
            for (int x : q) d += x;
            if (d > window) return;
            SparseAccumulator acc;
            for (const auto& [w, c] : v) acc.add(pos.at(q).at(w), c);
            if (span[q].insert(acc.finish())) queue.push_back(v);
        };
        for (const auto& r : relations_) push(r);
        while (!queue.empty()) {
            const Vec v = std::move(queue.back());
            queue.pop_back();
            for (std::size_t k = 0; k < G_.dim(); ++k) push(act_vec(k, v));
        }
        std::vector<std::map<Q, std::size_t>> layers(static_cast<std::size_t>(window) + 1);
        for (const auto& [q, ws] : index) {
            int d = 0;
            for (int x : q) d += x;
            const std::size_t n = span.count(q) ? span.at(q).rank() : 0;
            if (ws.size() > n) layers[static_cast<std::size_t>(d)][q] = ws.size() - n;
        }
        return layers;
    }

    std::shared_ptr<const LieSuperalgebra> g_;
    MapSuperalgebra G_;
    SimpleSystem sys_;
    WeightVector lambda_;
    std::vector<std::size_t> low_;
    std::map<std::size_t, int> low_id_;
    std::map<std::size_t, Scalar> cartan_value_;
    std::vector<Vec> relations_;
    std::map<std::pair<std::size_t, Word>, Vec> memo_;
};

/// Character of the module presented over g (x) B by the highest map-weight
/// relations, computed by closure.
inline Character closure_character(std::shared_ptr<const LieSuperalgebra> g, const SimpleSystem& system,
                                   const MapWeight& psi, FinDimCommAlgebra B) {
    ClosureOracle o(std::move(g), system, psi, std::move(B));
    return o.character();
}

}  // namespace oracle
