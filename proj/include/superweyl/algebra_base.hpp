#pragma once

/**
 * @file algebra_base.hpp
 * @brief Univariate polynomials over Q, ideals of Q[t] with rational roots,
 * and the finite-dimensional quotients Q[t]/I.
 */

#include "superweyl/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace superweyl {

/// Dense polynomial in t, coefficients low degree first, no trailing zeros.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(ScalarVector coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<Scalar> coeffs) : coeffs_(coeffs) { trim(); }

    static Polynomial constant(const Scalar& c) { return Polynomial(ScalarVector{c}); }
    static Polynomial monomial(std::size_t degree, const Scalar& c = 1) {
        ScalarVector v(degree + 1);
        v[degree] = c;
        return Polynomial(std::move(v));
    }
    /// t - root
    static Polynomial linear(const Scalar& root) { return Polynomial{-root, 1}; }

    /// Degree of the zero polynomial.
    static constexpr int zero_degree = -1;

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const ScalarVector& coefficients() const { return coeffs_; }

    Scalar operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Scalar(0); }
    Scalar leading() const { return coeffs_.empty() ? Scalar(0) : coeffs_.back(); }

    Scalar evaluate(const Scalar& x) const {
        Scalar r = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        ScalarVector v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        ScalarVector v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        ScalarVector v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator*(const Scalar& c, const Polynomial& p) {
        ScalarVector v = p.coeffs_;
        for (auto& x : v) x *= c;
        return Polynomial(std::move(v));
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    Polynomial pow(unsigned n) const {
        Polynomial r = constant(1);
        for (unsigned i = 0; i < n; ++i) r = r * *this;
        return r;
    }

    /// Quotient and remainder by a nonzero divisor.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const {
        if (divisor.is_zero()) throw InvalidInput("polynomial division by zero");
        ScalarVector rem = coeffs_;
        const int dd = divisor.degree();
        if (degree() < dd) return {Polynomial{}, *this};
        ScalarVector quot(static_cast<std::size_t>(degree() - dd + 1));
        const Scalar lead_inv = 1 / divisor.leading();
        for (int k = degree(); k >= dd; --k) {
            const Scalar f = rem[static_cast<std::size_t>(k)] * lead_inv;
            quot[static_cast<std::size_t>(k - dd)] = f;
            if (sgn(f) == 0) continue;
            for (int j = 0; j <= dd; ++j)
                rem[static_cast<std::size_t>(k - dd + j)] -= f * divisor.coeffs_[static_cast<std::size_t>(j)];
        }
        return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
    }

    Polynomial mod(const Polynomial& divisor) const { return divmod(divisor).second; }

private:
    void trim() {
        while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
    }

    ScalarVector coeffs_;
};

/// Ideal of Q[t] generated by prod (t - root)^mult. The empty factor list is
/// the unit ideal.
class FactoredIdeal {
public:
    FactoredIdeal() = default;

    /// Duplicate roots are merged by summing multiplicities.
    static FactoredIdeal from_points(const std::vector<std::pair<Scalar, unsigned>>& entries) {
        FactoredIdeal ideal;
        for (const auto& [root, mult] : entries) {
            if (mult == 0) throw InvalidInput("ideal multiplicity must be positive");
            ideal.factors_[root] += mult;
        }
        return ideal;
    }

    const std::map<Scalar, unsigned>& factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }

    std::set<Scalar> support() const {
        std::set<Scalar> s;
        for (const auto& [root, mult] : factors_) s.insert(root);
        return s;
    }

    unsigned multiplicity(const Scalar& root) const {
        auto it = factors_.find(root);
        return it == factors_.end() ? 0 : it->second;
    }

    unsigned codimension() const {
        unsigned total = 0;
        for (const auto& [root, mult] : factors_) total += mult;
        return total;
    }

    Polynomial generator() const {
        Polynomial g = Polynomial::constant(1);
        for (const auto& [root, mult] : factors_) g = g * Polynomial::linear(root).pow(mult);
        return g;
    }

    /// Membership test: f in I iff the generator divides f.
    bool contains(const Polynomial& f) const { return f.mod(generator()).is_zero(); }

    friend bool operator==(const FactoredIdeal& a, const FactoredIdeal& b) { return a.factors_ == b.factors_; }

private:
    std::map<Scalar, unsigned> factors_;
};

inline FactoredIdeal ideal_from_points(const std::vector<std::pair<Scalar, unsigned>>& entries) {
    return FactoredIdeal::from_points(entries);
}

inline std::set<Scalar> ideal_support(const FactoredIdeal& ideal) { return ideal.support(); }

enum class IdealOp { Sum, Product, Intersection, Power };

/// Sum is the gcd of generators, intersection the lcm, product adds
/// multiplicities, power(n) scales them; `n` is only read for Power.
inline FactoredIdeal ideal_combine(const FactoredIdeal& lhs, const FactoredIdeal& rhs, IdealOp op,
                                   unsigned n = 1) {
    std::vector<std::pair<Scalar, unsigned>> out;
    switch (op) {
        case IdealOp::Power:
            if (n == 0) throw InvalidInput("ideal power requires n >= 1");
            for (const auto& [root, mult] : lhs.factors()) out.emplace_back(root, mult * n);
            break;
        case IdealOp::Product:
            for (const auto& [root, mult] : lhs.factors()) out.emplace_back(root, mult);
            for (const auto& [root, mult] : rhs.factors()) out.emplace_back(root, mult);
            break;
        case IdealOp::Sum:
            for (const auto& [root, mult] : lhs.factors()) {
                const unsigned m = std::min(mult, rhs.multiplicity(root));
                if (m > 0) out.emplace_back(root, m);
            }
            break;
        case IdealOp::Intersection: {
            std::set<Scalar> roots = lhs.support();
            for (const auto& r : rhs.support()) roots.insert(r);
            for (const auto& r : roots) out.emplace_back(r, std::max(lhs.multiplicity(r), rhs.multiplicity(r)));
            break;
        }
    }
    return FactoredIdeal::from_points(out);
}

/// B = Q[t]/I with basis the residues of 1, t, ..., t^{d-1}.
class FinDimCommAlgebra {
public:
    explicit FinDimCommAlgebra(FactoredIdeal ideal) : ideal_(std::move(ideal)) {
        if (ideal_.is_unit()) throw InvalidInput("zero algebra: quotient by the unit ideal");
        modulus_ = ideal_.generator();
        dim_ = ideal_.codimension();
        table_.assign(dim_, std::vector<ScalarVector>(dim_));
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) table_[i][j] = coordinates(Polynomial::monomial(i + j));
    }

    std::size_t dim() const { return dim_; }
    std::size_t unit_index() const { return 0; }
    const FactoredIdeal& ideal() const { return ideal_; }
    const Polynomial& modulus() const { return modulus_; }

    /// Coordinates of e_i * e_j.
    const ScalarVector& product(std::size_t i, std::size_t j) const { return table_[i][j]; }

    /// Coordinates of the residue class of f.
    ScalarVector coordinates(const Polynomial& f) const {
        const Polynomial r = f.mod(modulus_);
        ScalarVector v(dim_);
        for (std::size_t k = 0; k < dim_; ++k) v[k] = r[k];
        return v;
    }

    /// Product of two elements given by coordinates.
    ScalarVector multiply(const ScalarVector& a, const ScalarVector& b) const {
        ScalarVector out(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (sgn(a[i]) == 0) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (sgn(b[j]) == 0) continue;
                const Scalar f = a[i] * b[j];
                for (std::size_t k = 0; k < dim_; ++k) out[k] += f * table_[i][j][k];
            }
        }
        return out;
    }

    std::string label(std::size_t i) const {
        if (i == 0) return "1";
        if (i == 1) return "t";
        return "t^" + std::to_string(i);
    }

private:
    FactoredIdeal ideal_;
    Polynomial modulus_;
    std::size_t dim_ = 0;
    std::vector<std::vector<ScalarVector>> table_;
};

inline FinDimCommAlgebra truncated_algebra(const FactoredIdeal& ideal) { return FinDimCommAlgebra(ideal); }

}  // namespace superweyl
