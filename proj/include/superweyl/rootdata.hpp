#pragma once

/**
 * @file rootdata.hpp
 * @brief Root systems of basic Lie superalgebras in epsilon/delta coordinates,
 * simple systems, odd reflections and the odd-root witness condition.
 *
 * Roots are integer vectors in a fixed coordinate space (epsilon coordinates
 * first, then delta coordinates) together with a parity bit. Pairings are
 * computed from a nondegenerate invariant form on that space, so parities,
 * isotropy and Cartan integers are derived rather than tabulated.
 *
 * A weight is a functional on the Cartan subalgebra h and is stored as its
 * values on a fixed basis of h (WeightVector). Each basis element of h is
 * described by a coordinate vector c with alpha(h) = sum_k alpha_k c_k.
 */

#include "superweyl/linalg.hpp"
#include "superweyl/scalar.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace superweyl {

enum class FamilyKind { GL, SL, ANN, OSP, F4, G3, D21A };
enum class SupportLevel { Full, RootDataOnly };

struct Family {
    FamilyKind kind = FamilyKind::GL;
    int m = 0;  ///< GL/SL: even block size; OSP: dimension of the even part of V; ANN: n
    int n = 0;  ///< GL/SL: odd block size; OSP: half the dimension of the odd part
    Scalar alpha = 1;  ///< only for D(2,1;alpha)

    static Family gl(int m, int n) { return checked({FamilyKind::GL, m, n, 1}); }
    static Family sl(int m, int n) { return checked({FamilyKind::SL, m, n, 1}); }
    static Family ann(int n) { return checked({FamilyKind::ANN, n, n, 1}); }
    /// osp(M|2n)
    static Family osp(int even_dim, int odd_half) { return checked({FamilyKind::OSP, even_dim, odd_half, 1}); }
    static Family f4() { return {FamilyKind::F4, 0, 0, 1}; }
    static Family g3() { return {FamilyKind::G3, 0, 0, 1}; }
    static Family d21(const Scalar& a) { return checked({FamilyKind::D21A, 0, 0, a}); }

    SupportLevel support() const {
        switch (kind) {
            case FamilyKind::GL:
            case FamilyKind::SL:
            case FamilyKind::OSP: return SupportLevel::Full;
            default: return SupportLevel::RootDataOnly;
        }
    }

    /// Type II basic superalgebras have an irreducible odd part.
    bool type_two() const {
        switch (kind) {
            case FamilyKind::OSP: return m != 2;
            case FamilyKind::F4:
            case FamilyKind::G3:
            case FamilyKind::D21A: return true;
            default: return false;
        }
    }

    std::string name() const {
        std::ostringstream os;
        switch (kind) {
            case FamilyKind::GL: os << "gl(" << m << "|" << n << ")"; break;
            case FamilyKind::SL:
                if (n == 0) os << "sl(" << m << ")";
                else os << "sl(" << m << "|" << n << ")";
                break;
            case FamilyKind::ANN: os << "A(" << m << "," << m << ")"; break;
            case FamilyKind::OSP: os << "osp(" << m << "|" << 2 * n << ")"; break;
            case FamilyKind::F4: os << "F(4)"; break;
            case FamilyKind::G3: os << "G(3)"; break;
            case FamilyKind::D21A: os << "D(2,1;" << to_string(alpha) << ")"; break;
        }
        return os.str();
    }

    /// Descriptor grammar: gl:m,n  sl:m,n  sl:n  A:n  osp:M,2n  B:m,n  C:k
    /// D:m,n  F4  G3  D21a:alpha=p/q (or D21a:p/q).
    static Family parse(const std::string& text);

    friend bool operator==(const Family& a, const Family& b) {
        return a.kind == b.kind && a.m == b.m && a.n == b.n && a.alpha == b.alpha;
    }

private:
    static Family checked(Family f) {
        switch (f.kind) {
            case FamilyKind::GL:
                if (f.m < 0 || f.n < 0 || f.m + f.n < 2) throw InvalidInput("gl(m|n) needs m,n >= 0 and m+n >= 2");
                break;
            case FamilyKind::SL:
                if (f.m < 0 || f.n < 0 || f.m + f.n < 2) throw InvalidInput("sl(m|n) needs m,n >= 0 and m+n >= 2");
                if (f.m == f.n && f.n < 2) throw InvalidInput("sl(n|n) needs n >= 2");
                break;
            case FamilyKind::ANN:
                if (f.m < 1) throw InvalidInput("A(n,n) needs n >= 1");
                break;
            case FamilyKind::OSP:
                if (f.m < 1 || f.n < 1) throw InvalidInput("osp(M|2n) needs M >= 1 and n >= 1");
                if (f.m % 2 == 0 && f.m != 2 && f.m < 4) throw InvalidInput("osp(2m|2n) needs m >= 2 (or M = 2)");
                break;
            case FamilyKind::D21A:
                if (sgn(f.alpha) == 0 || f.alpha == -1) throw InvalidInput("D(2,1;alpha) needs alpha not in {0,-1}");
                break;
            default: break;
        }
        return f;
    }
};

inline Family Family::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    std::vector<int> nums;
    auto read_ints = [&]() {
        std::stringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                const int v = std::stoi(item, &used);
                if (used != item.size()) throw InvalidInput("");
                nums.push_back(v);
            } catch (const std::exception&) {
                throw InvalidInput("bad family parameter '" + item + "' in '" + text + "'");
            }
        }
    };
    if (head == "gl" || head == "sl") {
        read_ints();
        if (nums.size() == 1) nums.push_back(0);
        if (nums.size() != 2) throw InvalidInput("expected " + head + ":m,n in '" + text + "'");
        return head == "gl" ? gl(nums[0], nums[1]) : sl(nums[0], nums[1]);
    }
    if (head == "A") {
        read_ints();
        if (nums.size() != 1) throw InvalidInput("expected A:n in '" + text + "'");
        return ann(nums[0]);
    }
    if (head == "osp") {
        read_ints();
        if (nums.size() != 2 || nums[1] % 2 != 0) throw InvalidInput("expected osp:M,2n in '" + text + "'");
        return osp(nums[0], nums[1] / 2);
    }
    if (head == "B") {
        read_ints();
        if (nums.size() != 2) throw InvalidInput("expected B:m,n in '" + text + "'");
        return osp(2 * nums[0] + 1, nums[1]);
    }
    if (head == "C") {
        read_ints();
        if (nums.size() != 1 || nums[0] < 2) throw InvalidInput("expected C:k with k >= 2 in '" + text + "'");
        return osp(2, nums[0] - 1);
    }
    if (head == "D") {
        read_ints();
        if (nums.size() != 2 || nums[0] < 2) throw InvalidInput("expected D:m,n with m >= 2 in '" + text + "'");
        return osp(2 * nums[0], nums[1]);
    }
    if (head == "F4" && rest.empty()) return f4();
    if (head == "G3" && rest.empty()) return g3();
    if (head == "D21a") {
        std::string a = rest;
        if (a.rfind("alpha=", 0) == 0) a = a.substr(6);
        else if (a.rfind("a=", 0) == 0) a = a.substr(2);
        return d21(parse_scalar(a));
    }
    throw InvalidInput("unknown family descriptor '" + text + "'");
}

// ---------------------------------------------------------------------------

struct Root {
    std::vector<int> coords;
    int parity = 0;

    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(), [](int c) { return c == 0; });
    }
    Root operator-() const {
        Root r = *this;
        for (auto& c : r.coords) c = -c;
        return r;
    }
    friend bool operator==(const Root& a, const Root& b) { return a.coords == b.coords; }
    friend auto operator<=>(const Root& a, const Root& b) { return a.coords <=> b.coords; }
};

inline std::vector<int> add_coords(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

/// A functional on h: its values on the fixed Cartan basis.
struct WeightVector {
    ScalarVector values;

    WeightVector() = default;
    explicit WeightVector(ScalarVector v) : values(std::move(v)) {}
    static WeightVector zero(std::size_t dim) { return WeightVector(ScalarVector(dim)); }

    std::size_t dim() const { return values.size(); }
    bool is_zero() const {
        return std::all_of(values.begin(), values.end(), [](const Scalar& x) { return sgn(x) == 0; });
    }

    WeightVector& operator+=(const WeightVector& o) {
        for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
        return *this;
    }
    WeightVector& operator-=(const WeightVector& o) {
        for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
        return *this;
    }
    friend WeightVector operator+(WeightVector a, const WeightVector& b) { return a += b; }
    friend WeightVector operator-(WeightVector a, const WeightVector& b) { return a -= b; }
    friend WeightVector operator*(const Scalar& c, WeightVector a) {
        for (auto& x : a.values) x *= c;
        return a;
    }
    friend bool operator==(const WeightVector& a, const WeightVector& b) { return a.values == b.values; }
    friend bool operator<(const WeightVector& a, const WeightVector& b) { return a.values < b.values; }
};

/// Static root data of a family: all roots, the invariant form, and the
/// Cartan basis used for weight coordinates.
struct RootSystem {
    Family family;
    std::size_t ambient_dim = 0;
    std::size_t even_coords = 0;  ///< number of epsilon coordinates (informational)
    std::vector<Root> roots;      ///< Delta, sorted
    DenseMatrix form;             ///< invariant form on the coordinate space
    std::vector<ScalarVector> cartan_basis;  ///< coordinate vectors of the h basis
    std::vector<std::string> cartan_labels;

    std::size_t rank_h() const { return cartan_basis.size(); }

    std::optional<Root> find(const std::vector<int>& coords) const {
        auto it = std::lower_bound(roots.begin(), roots.end(), Root{coords, 0});
        if (it != roots.end() && it->coords == coords) return *it;
        return std::nullopt;
    }
    bool contains(const std::vector<int>& coords) const { return find(coords).has_value(); }

    Scalar inner(const std::vector<Scalar>& a, const std::vector<Scalar>& b) const {
        Scalar s = 0;
        for (std::size_t i = 0; i < ambient_dim; ++i)
            for (std::size_t j = 0; j < ambient_dim; ++j)
                if (sgn(form[i][j]) != 0) s += a[i] * form[i][j] * b[j];
        return s;
    }
    static ScalarVector as_scalars(const std::vector<int>& v) {
        ScalarVector s;
        for (int x : v) s.emplace_back(x);
        return s;
    }
    Scalar inner(const Root& a, const Root& b) const { return inner(as_scalars(a.coords), as_scalars(b.coords)); }

    bool isotropic(const Root& r) const { return sgn(inner(r, r)) == 0; }

    /// Coordinate vector of the coroot H_gamma: 2F gamma/(gamma,gamma), or
    /// F gamma for isotropic gamma.
    ScalarVector coroot_coords(const Root& gamma) const {
        ScalarVector v(ambient_dim);
        for (std::size_t i = 0; i < ambient_dim; ++i)
            for (std::size_t j = 0; j < ambient_dim; ++j) v[i] += form[i][j] * gamma.coords[j];
        const Scalar nn = inner(gamma, gamma);
        if (sgn(nn) != 0)
            for (auto& x : v) x *= 2 / nn;
        return v;
    }

    /// beta(H_gamma)
    Scalar pair(const Root& beta, const Root& gamma) const {
        const auto c = coroot_coords(gamma);
        Scalar s = 0;
        for (std::size_t i = 0; i < ambient_dim; ++i) s += beta.coords[i] * c[i];
        return s;
    }

    WeightVector weight_of(const Root& r) const {
        ScalarVector v(rank_h());
        for (std::size_t i = 0; i < rank_h(); ++i)
            for (std::size_t k = 0; k < ambient_dim; ++k) v[i] += r.coords[k] * cartan_basis[i][k];
        return WeightVector(std::move(v));
    }

    /// Coordinates of the element with coordinate vector c in the Cartan basis.
    ScalarVector cartan_coordinates(const ScalarVector& c) const {
        auto x = solve_columns(cartan_basis, c);
        if (!x) throw InvariantViolation("element is not in the Cartan subalgebra of " + family.name());
        return *x;
    }

    Scalar evaluate(const WeightVector& lambda, const ScalarVector& cartan_coords) const {
        Scalar s = 0;
        for (std::size_t i = 0; i < rank_h(); ++i) s += lambda.values[i] * cartan_coords[i];
        return s;
    }
};

/// A base of the root system with everything derived from it.
struct SimpleSystem {
    std::vector<Root> base;
    std::vector<bool> isotropic;
    std::vector<Root> positive;               ///< Delta^+, sorted
    std::vector<std::vector<int>> positive_coeffs;  ///< coefficients in the base
    std::vector<int> heights;
    std::vector<Root> even_simple;            ///< Sigma(g_0)
    std::vector<ScalarVector> even_coroots;   ///< H_alpha in Cartan coordinates, alpha(H_alpha) = 2
    DenseMatrix cartan_matrix;                ///< b_ij = beta_j(H_{beta_i})

    std::size_t rank() const { return base.size(); }

    std::vector<std::size_t> odd_indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < base.size(); ++i)
            if (base[i].parity == 1) out.push_back(i);
        return out;
    }

    std::optional<std::size_t> positive_index(const Root& r) const {
        auto it = std::lower_bound(positive.begin(), positive.end(), r);
        if (it != positive.end() && *it == r) return static_cast<std::size_t>(it - positive.begin());
        return std::nullopt;
    }
    bool is_positive(const Root& r) const { return positive_index(r).has_value(); }

    int height(const Root& r) const {
        auto i = positive_index(r);
        if (i) return heights[*i];
        auto j = positive_index(-r);
        if (j) return -heights[*j];
        throw InvalidInput("not a root of this system");
    }

    /// Coefficients of a root in the base (negative for negative roots).
    std::vector<int> coefficients(const Root& r) const {
        if (auto i = positive_index(r)) return positive_coeffs[*i];
        if (auto j = positive_index(-r)) {
            auto c = positive_coeffs[*j];
            for (auto& x : c) x = -x;
            return c;
        }
        throw InvalidInput("not a root of this system");
    }

    int max_height() const { return heights.empty() ? 0 : *std::max_element(heights.begin(), heights.end()); }

    friend bool operator==(const SimpleSystem& a, const SimpleSystem& b) { return a.base == b.base; }
};

namespace detail {

struct NaturalWeight {
    std::vector<int> coords;
    int parity;
};

inline std::vector<int> unit(std::size_t d, std::size_t i, int c = 1) {
    std::vector<int> v(d, 0);
    v[i] = c;
    return v;
}

inline std::vector<int> combo(std::size_t d, std::initializer_list<std::pair<std::size_t, int>> terms) {
    std::vector<int> v(d, 0);
    for (auto [i, c] : terms) v[i] += c;
    return v;
}

/// Weights of the natural representation of gl(m|n) or osp(M|2n).
inline std::vector<NaturalWeight> natural_weights(const Family& f) {
    std::vector<NaturalWeight> out;
    if (f.kind == FamilyKind::GL || f.kind == FamilyKind::SL || f.kind == FamilyKind::ANN) {
        const std::size_t d = static_cast<std::size_t>(f.m + f.n);
        const int even = f.kind == FamilyKind::ANN ? f.m + 1 : f.m;
        const std::size_t dd = f.kind == FamilyKind::ANN ? static_cast<std::size_t>(2 * (f.m + 1)) : d;
        for (std::size_t i = 0; i < dd; ++i) out.push_back({unit(dd, i), static_cast<int>(i) < even ? 0 : 1});
        return out;
    }
    // osp: basis e_1..e_k, e_{-1}..e_{-k}, [e_0], f_1..f_n, f_{-1}..f_{-n}
    const std::size_t k = static_cast<std::size_t>(f.m / 2);
    const std::size_t n = static_cast<std::size_t>(f.n);
    const std::size_t d = k + n;
    for (std::size_t i = 0; i < k; ++i) out.push_back({unit(d, i), 0});
    for (std::size_t i = 0; i < k; ++i) out.push_back({unit(d, i, -1), 0});
    if (f.m % 2 == 1) out.push_back({std::vector<int>(d, 0), 0});
    for (std::size_t j = 0; j < n; ++j) out.push_back({unit(d, k + j), 1});
    for (std::size_t j = 0; j < n; ++j) out.push_back({unit(d, k + j, -1), 1});
    return out;
}

}  // namespace detail

inline std::vector<detail::NaturalWeight> natural_representation_weights(const Family& f) {
    if (f.kind != FamilyKind::GL && f.kind != FamilyKind::SL && f.kind != FamilyKind::OSP)
        throw Unsupported(f.name() + " has no matrix realization");
    return detail::natural_weights(f);
}

/// Builds Delta^+, heights, Sigma(g_0) and the Cartan matrix for a base.
/// Throws InvariantViolation if the base does not split Delta into one-signed
/// integer combinations.
inline SimpleSystem make_simple_system(const RootSystem& rs, std::vector<Root> base) {
    SimpleSystem sys;
    for (auto& b : base) {
        auto found = rs.find(b.coords);
        if (!found) throw InvariantViolation("simple root is not a root");
        b.parity = found->parity;
    }
    sys.base = base;
    for (const auto& b : base) sys.isotropic.push_back(b.parity == 1 && rs.isotropic(b));

    std::vector<ScalarVector> columns;
    for (const auto& b : base) columns.push_back(RootSystem::as_scalars(b.coords));
    if (rank(DenseMatrix(columns.begin(), columns.end())) != base.size())
        throw InvariantViolation("simple roots are linearly dependent");

    std::vector<std::pair<Root, std::vector<int>>> pos;
    for (const auto& r : rs.roots) {
        auto x = solve_columns(columns, RootSystem::as_scalars(r.coords));
        if (!x) throw InvariantViolation("root outside the span of the base");
        std::vector<int> c;
        bool nonneg = true, nonpos = true;
        for (const auto& v : *x) {
            if (!is_integer(v)) throw InvariantViolation("non-integral root coefficient");
            const int iv = static_cast<int>(v.get_num().get_si());
            c.push_back(iv);
            nonneg = nonneg && iv >= 0;
            nonpos = nonpos && iv <= 0;
        }
        if (!nonneg && !nonpos) throw InvariantViolation("root is not one-signed with respect to the base");
        if (nonneg) pos.emplace_back(r, c);
    }
    std::sort(pos.begin(), pos.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [r, c] : pos) {
        int h = 0;
        for (int x : c) h += x;
        sys.positive.push_back(r);
        sys.positive_coeffs.push_back(c);
        sys.heights.push_back(h);
    }

    std::vector<Root> even_pos;
    for (const auto& r : sys.positive)
        if (r.parity == 0) even_pos.push_back(r);
    std::set<std::vector<int>> even_sums;
    for (const auto& a : even_pos)
        for (const auto& b : even_pos) even_sums.insert(add_coords(a.coords, b.coords));
    for (const auto& r : even_pos) {
        if (even_sums.count(r.coords)) continue;
        sys.even_simple.push_back(r);
        sys.even_coroots.push_back(rs.cartan_coordinates(rs.coroot_coords(r)));
    }
    // order even simple roots by height, then coordinates
    std::vector<std::size_t> order(sys.even_simple.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const int ha = sys.height(sys.even_simple[a]);
        const int hb = sys.height(sys.even_simple[b]);
        if (ha != hb) return ha < hb;
        return sys.even_simple[a] > sys.even_simple[b];
    });
    std::vector<Root> es;
    std::vector<ScalarVector> ec;
    for (auto i : order) {
        es.push_back(sys.even_simple[i]);
        ec.push_back(sys.even_coroots[i]);
    }
    sys.even_simple = std::move(es);
    sys.even_coroots = std::move(ec);

    sys.cartan_matrix.assign(base.size(), ScalarVector(base.size()));
    for (std::size_t i = 0; i < base.size(); ++i)
        for (std::size_t j = 0; j < base.size(); ++j) sys.cartan_matrix[i][j] = rs.pair(base[j], base[i]);
    return sys;
}

namespace detail {

inline RootSystem build_root_system(const Family& f, std::vector<Root>& distinguished) {
    RootSystem rs;
    rs.family = f;
    std::set<Root> roots;
    auto diag_form = [&](std::size_t d, const ScalarVector& entries) {
        rs.form.assign(d, ScalarVector(d));
        for (std::size_t i = 0; i < d; ++i) rs.form[i][i] = entries[i];
    };
    switch (f.kind) {
        case FamilyKind::GL:
        case FamilyKind::SL:
        case FamilyKind::ANN: {
            const int m = f.kind == FamilyKind::ANN ? f.m + 1 : f.m;
            const int n = f.kind == FamilyKind::ANN ? f.m + 1 : f.n;
            const std::size_t d = static_cast<std::size_t>(m + n);
            rs.ambient_dim = d;
            rs.even_coords = static_cast<std::size_t>(m);
            const auto nat = natural_weights(f);
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b)
                    if (a != b) {
                        std::vector<int> c(d, 0);
                        c[a] = 1;
                        c[b] = -1;
                        roots.insert(Root{c, (nat[a].parity + nat[b].parity) % 2});
                    }
            ScalarVector fd(d);
            for (std::size_t i = 0; i < d; ++i) fd[i] = static_cast<int>(i) < m ? 1 : -1;
            diag_form(d, fd);
            if (f.kind == FamilyKind::GL) {
                for (std::size_t i = 0; i < d; ++i) {
                    ScalarVector c(d);
                    c[i] = 1;
                    rs.cartan_basis.push_back(c);
                    rs.cartan_labels.push_back("E" + std::to_string(i + 1) + "," + std::to_string(i + 1));
                }
            } else {
                for (std::size_t i = 0; i + 1 < d; ++i) {
                    ScalarVector c(d);
                    c[i] = 1;
                    c[i + 1] = -fd[i] * fd[i + 1];
                    rs.cartan_basis.push_back(c);
                    rs.cartan_labels.push_back("E" + std::to_string(i + 1) + "," + std::to_string(i + 1) +
                                               (fd[i] * fd[i + 1] > 0 ? "-" : "+") + "E" + std::to_string(i + 2) +
                                               "," + std::to_string(i + 2));
                }
            }
            for (std::size_t i = 0; i + 1 < d; ++i) {
                std::vector<int> c(d, 0);
                c[i] = 1;
                c[i + 1] = -1;
                distinguished.push_back(Root{c, 0});
            }
            break;
        }
        case FamilyKind::OSP: {
            const auto nat = natural_weights(f);
            const std::size_t k = static_cast<std::size_t>(f.m / 2);
            const std::size_t n = static_cast<std::size_t>(f.n);
            const std::size_t d = k + n;
            rs.ambient_dim = d;
            rs.even_coords = k;
            // adjoint = super exterior square of V
            for (std::size_t a = 0; a < nat.size(); ++a) {
                for (std::size_t b = a; b < nat.size(); ++b) {
                    if (a == b && nat[a].parity == 0) continue;
                    Root r{add_coords(nat[a].coords, nat[b].coords), (nat[a].parity + nat[b].parity) % 2};
                    if (!r.is_zero()) roots.insert(r);
                }
            }
            ScalarVector fd(d);
            for (std::size_t i = 0; i < d; ++i) fd[i] = i < k ? 1 : -1;
            diag_form(d, fd);
            for (std::size_t i = 0; i < d; ++i) {
                ScalarVector c(d);
                c[i] = 1;
                rs.cartan_basis.push_back(c);
                rs.cartan_labels.push_back(i < k ? "h_eps" + std::to_string(i + 1) : "h_delta" + std::to_string(i - k + 1));
            }
            auto eps = [&](std::size_t i) { return i; };
            auto del = [&](std::size_t j) { return k + j; };
            if (f.m == 2) {
                distinguished.push_back(Root{combo(d, {{eps(0), 1}, {del(0), -1}}), 0});
                for (std::size_t j = 0; j + 1 < n; ++j)
                    distinguished.push_back(Root{combo(d, {{del(j), 1}, {del(j + 1), -1}}), 0});
                distinguished.push_back(Root{unit(d, del(n - 1), 2), 0});
            } else {
                for (std::size_t j = 0; j + 1 < n; ++j)
                    distinguished.push_back(Root{combo(d, {{del(j), 1}, {del(j + 1), -1}}), 0});
                if (k == 0) {
                    distinguished.push_back(Root{unit(d, del(n - 1)), 0});
                } else {
                    distinguished.push_back(Root{combo(d, {{del(n - 1), 1}, {eps(0), -1}}), 0});
                    for (std::size_t i = 0; i + 1 < k; ++i)
                        distinguished.push_back(Root{combo(d, {{eps(i), 1}, {eps(i + 1), -1}}), 0});
                    if (f.m % 2 == 1) distinguished.push_back(Root{unit(d, eps(k - 1)), 0});
                    else distinguished.push_back(Root{combo(d, {{eps(k - 2), 1}, {eps(k - 1), 1}}), 0});
                }
            }
            break;
        }
        case FamilyKind::D21A: {
            const std::size_t d = 3;
            rs.ambient_dim = d;
            for (std::size_t i = 0; i < 3; ++i) {
                roots.insert(Root{unit(d, i, 2), 0});
                roots.insert(Root{unit(d, i, -2), 0});
            }
            for (int s = 0; s < 8; ++s)
                roots.insert(Root{{(s & 1) ? -1 : 1, (s & 2) ? -1 : 1, (s & 4) ? -1 : 1}, 1});
            diag_form(d, {-(1 + f.alpha) / 2, Scalar(1, 2), f.alpha / 2});
            distinguished = {Root{{1, -1, -1}, 1}, Root{{0, 2, 0}, 0}, Root{{0, 0, 2}, 0}};
            break;
        }
        case FamilyKind::F4: {
            // coordinates (delta, eps1, eps2, eps3), doubled
            const std::size_t d = 4;
            rs.ambient_dim = d;
            rs.even_coords = 3;
            roots.insert(Root{{2, 0, 0, 0}, 0});
            roots.insert(Root{{-2, 0, 0, 0}, 0});
            for (std::size_t i = 1; i < 4; ++i) {
                roots.insert(Root{unit(d, i, 2), 0});
                roots.insert(Root{unit(d, i, -2), 0});
                for (std::size_t j = i + 1; j < 4; ++j)
                    for (int si : {-2, 2})
                        for (int sj : {-2, 2}) roots.insert(Root{combo(d, {{i, si}, {j, sj}}), 0});
            }
            for (int s = 0; s < 16; ++s)
                roots.insert(Root{{(s & 1) ? -1 : 1, (s & 2) ? -1 : 1, (s & 4) ? -1 : 1, (s & 8) ? -1 : 1}, 1});
            diag_form(d, {Scalar(-3, 4), Scalar(1, 4), Scalar(1, 4), Scalar(1, 4)});
            distinguished = {Root{{1, -1, -1, -1}, 1}, Root{{0, 0, 0, 2}, 0}, Root{{0, 0, 2, -2}, 0},
                             Root{{0, 2, -2, 0}, 0}};
            break;
        }
        case FamilyKind::G3: {
            // coordinates (eps1, eps2, delta), eps3 = -eps1 - eps2
            const std::size_t d = 3;
            rs.ambient_dim = d;
            rs.even_coords = 2;
            const std::vector<std::vector<int>> eps = {{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}};
            const std::vector<int> delta = {0, 0, 1};
            auto scaled = [](const std::vector<int>& v, int c) {
                auto r = v;
                for (auto& x : r) x *= c;
                return r;
            };
            roots.insert(Root{scaled(delta, 2), 0});
            roots.insert(Root{scaled(delta, -2), 0});
            roots.insert(Root{delta, 1});
            roots.insert(Root{scaled(delta, -1), 1});
            for (std::size_t i = 0; i < 3; ++i) {
                roots.insert(Root{eps[i], 0});
                roots.insert(Root{scaled(eps[i], -1), 0});
                for (std::size_t j = 0; j < 3; ++j)
                    if (i != j) roots.insert(Root{add_coords(eps[i], scaled(eps[j], -1)), 0});
                for (int s : {-1, 1})
                    for (int t : {-1, 1}) roots.insert(Root{add_coords(scaled(eps[i], s), scaled(delta, t)), 1});
            }
            rs.form = {{-2, 1, 0}, {1, -2, 0}, {0, 0, 2}};
            distinguished = {Root{add_coords(delta, eps[2]), 1}, Root{eps[0], 0},
                             Root{add_coords(eps[1], scaled(eps[0], -1)), 0}};
            break;
        }
    }
    rs.roots.assign(roots.begin(), roots.end());
    if (rs.cartan_basis.empty()) {
        // root-data-only exceptional families: h is spanned by the simple coroots
        for (std::size_t i = 0; i < distinguished.size(); ++i) {
            Root b = distinguished[i];
            b.parity = rs.find(b.coords)->parity;
            rs.cartan_basis.push_back(rs.coroot_coords(b));
            rs.cartan_labels.push_back("H" + std::to_string(i + 1));
        }
    }
    return rs;
}

}  // namespace detail

/// Root system and distinguished base (exactly one odd simple root).
inline std::pair<RootSystem, SimpleSystem> root_system(const Family& family) {
    std::vector<Root> dist;
    RootSystem rs = detail::build_root_system(family, dist);
    SimpleSystem sys = make_simple_system(rs, dist);
    return {std::move(rs), std::move(sys)};
}

/// Odd reflection at an isotropic odd simple root.
inline SimpleSystem odd_reflection(const SimpleSystem& system, const RootSystem& rs, std::size_t index) {
    if (index >= system.base.size()) throw InvalidInput("odd reflection index out of range");
    const Root& beta = system.base[index];
    if (beta.parity != 1) throw InvalidInput("odd reflection at an even simple root");
    if (!system.isotropic[index]) throw InvalidInput("odd reflection at a non-isotropic simple root");
    std::vector<Root> next;
    for (std::size_t j = 0; j < system.base.size(); ++j) {
        const Root& b = system.base[j];
        if (j == index) {
            next.push_back(-beta);
        } else if (sgn(rs.pair(beta, b)) == 0 && sgn(rs.pair(b, beta)) == 0) {
            next.push_back(b);
        } else {
            next.push_back(Root{add_coords(beta.coords, b.coords), 0});
        }
    }
    return make_simple_system(rs, std::move(next));
}

struct ConditionReport {
    bool holds = true;
    /// odd simple index -> partner odd positive root alpha' (absent if none)
    std::map<std::size_t, std::optional<Root>> witnesses;
};

/// For every odd simple alpha, looks for an odd positive alpha' with
/// alpha + alpha' a root.
inline ConditionReport check_condition(const SimpleSystem& system, const RootSystem& rs) {
    ConditionReport report;
    for (auto i : system.odd_indices()) {
        const Root& a = system.base[i];
        std::optional<Root> witness;
        for (const auto& p : system.positive) {
            if (p.parity != 1) continue;
            auto sum = rs.find(add_coords(a.coords, p.coords));
            if (!sum) continue;
            if (sum->parity != 0) throw InvariantViolation("sum of two odd roots is odd");
            witness = p;
            break;
        }
        report.witnesses[i] = witness;
        report.holds = report.holds && witness.has_value();
    }
    return report;
}

/// A base satisfying the odd-root witness condition: the distinguished base
/// for type II families and B(0,n), otherwise its reflection at the odd root.
inline SimpleSystem default_good_system(const Family& family) {
    auto [rs, dist] = root_system(family);
    SimpleSystem sys = dist;
    const auto odd = dist.odd_indices();
    if (!family.type_two() && !odd.empty()) {
        if (!dist.isotropic[odd.front()]) throw InvariantViolation("distinguished odd root is not isotropic");
        sys = odd_reflection(dist, rs, odd.front());
    }
    if (!check_condition(sys, rs).holds)
        throw Unsupported(family.name() + " has no simple system satisfying the odd-root condition");
    return sys;
}

/// lambda(H_alpha) for an even simple root given by index into Sigma(g_0).
inline Scalar even_label(const RootSystem& rs, const SimpleSystem& system, const WeightVector& lambda,
                         std::size_t i) {
    return rs.evaluate(lambda, system.even_coroots[i]);
}

/// lambda(H_alpha) for any root, with the coroot normalization of the form.
inline Scalar coroot_value(const RootSystem& rs, const WeightVector& lambda, const Root& alpha) {
    return rs.evaluate(lambda, rs.cartan_coordinates(rs.coroot_coords(alpha)));
}

inline bool lambda_plus_check(const WeightVector& lambda, const RootSystem& rs, const SimpleSystem& system) {
    if (lambda.dim() != rs.rank_h()) throw InvalidInput("weight has the wrong number of coordinates");
    for (std::size_t i = 0; i < system.even_simple.size(); ++i)
        if (!is_natural(even_label(rs, system, lambda, i))) return false;
    return true;
}

/// Cartan coordinates of the elements on which the weight literal grammar
/// reads values: the even simple coroots, then a greedy completion from the
/// Cartan basis.
inline std::vector<ScalarVector> weight_label_functionals(const RootSystem& rs, const SimpleSystem& system) {
    std::vector<ScalarVector> rows = system.even_coroots;
    std::size_t r = rank(rows);
    for (std::size_t i = 0; i < rs.rank_h() && r < rs.rank_h(); ++i) {
        ScalarVector e(rs.rank_h());
        e[i] = 1;
        rows.push_back(e);
        const std::size_t nr = rank(rows);
        if (nr == r) rows.pop_back();
        else r = nr;
    }
    return rows;
}

inline std::vector<std::string> weight_label_names(const RootSystem& rs, const SimpleSystem& system) {
    const auto rows = weight_label_functionals(rs, system);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i < system.even_simple.size()) {
            names.push_back("H_alpha" + std::to_string(i + 1));
        } else {
            for (std::size_t k = 0; k < rows[i].size(); ++k)
                if (sgn(rows[i][k]) != 0) names.push_back(rs.cartan_labels[k]);
        }
    }
    return names;
}

/// Weight with the given values on weight_label_functionals.
inline WeightVector weight_from_labels(const RootSystem& rs, const SimpleSystem& system, const ScalarVector& labels) {
    const auto rows = weight_label_functionals(rs, system);
    if (labels.size() != rows.size())
        throw InvalidInput("weight literal needs " + std::to_string(rows.size()) + " coefficients, got " +
                           std::to_string(labels.size()));
    std::vector<ScalarVector> cols(rs.rank_h(), ScalarVector(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rs.rank_h(); ++c) cols[c][r] = rows[r][c];
    auto x = solve_columns(cols, labels);
    if (!x) throw InvalidInput("inconsistent weight literal");
    return WeightVector(*x);
}

inline ScalarVector weight_labels(const RootSystem& rs, const SimpleSystem& system, const WeightVector& lambda) {
    ScalarVector out;
    for (const auto& row : weight_label_functionals(rs, system)) out.push_back(rs.evaluate(lambda, row));
    return out;
}

// ---------------------------------------------------------------------------
// Weight frontier

namespace detail {

/// Dominance data for Sigma(g_0).
struct EvenWeylData {
    std::vector<WeightVector> roots;     ///< even simple roots as weights
    std::vector<ScalarVector> coroots;   ///< in Cartan coordinates
    const RootSystem* rs = nullptr;

    Scalar label(const WeightVector& mu, std::size_t i) const { return rs->evaluate(mu, coroots[i]); }

    WeightVector reflect(const WeightVector& mu, std::size_t i) const { return mu - label(mu, i) * roots[i]; }

    bool dominant(const WeightVector& mu) const {
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (!is_natural(label(mu, i))) return false;
        return true;
    }

    /// Repeated simple-reflection ascent to the dominant conjugate.
    WeightVector dominant_conjugate(WeightVector mu) const {
        for (;;) {
            bool moved = false;
            for (std::size_t i = 0; i < roots.size(); ++i) {
                if (sgn(label(mu, i)) < 0) {
                    mu = reflect(mu, i);
                    moved = true;
                }
            }
            if (!moved) return mu;
        }
    }
};

inline EvenWeylData even_weyl(const RootSystem& rs, const SimpleSystem& system) {
    EvenWeylData w;
    w.rs = &rs;
    for (std::size_t i = 0; i < system.even_simple.size(); ++i) {
        w.roots.push_back(rs.weight_of(system.even_simple[i]));
        w.coroots.push_back(system.even_coroots[i]);
    }
    return w;
}

/// Nonnegative integer coefficients of d in the given weights, if any.
inline std::optional<std::vector<long>> nonneg_integer_coefficients(const std::vector<WeightVector>& gens,
                                                                   const WeightVector& d) {
    std::vector<ScalarVector> cols;
    for (const auto& g : gens) cols.push_back(g.values);
    if (gens.empty()) {
        if (d.is_zero()) return std::vector<long>{};
        return std::nullopt;
    }
    auto x = solve_columns(cols, d.values);
    if (!x) return std::nullopt;
    std::vector<long> out;
    for (const auto& v : *x) {
        if (!is_natural(v)) return std::nullopt;
        out.push_back(v.get_num().get_si());
    }
    return out;
}

}  // namespace detail

/// Is mu - nu a nonnegative integer combination of the base?
inline bool weight_leq(const RootSystem& rs, const SimpleSystem& system, const WeightVector& nu, const WeightVector& mu) {
    std::vector<WeightVector> gens;
    for (const auto& b : system.base) gens.push_back(rs.weight_of(b));
    return detail::nonneg_integer_coefficients(gens, mu - nu).has_value();
}

/// Candidate weights of a module of highest weight lambda in which each odd
/// positive root occurs at most `odd_multiplicity` times in any PBW monomial.
///
/// mu is kept when both mu and its g_0-dominant conjugate lie in
/// lambda - sigma - Q_0^+ for some odd offset sigma; finite because dominant
/// weights below a fixed weight are bounded by the inverse Cartan matrix.
inline std::vector<WeightVector> weight_frontier(const WeightVector& lambda, const RootSystem& rs,
                                                 const SimpleSystem& system, unsigned odd_multiplicity = 1) {
    if (!lambda_plus_check(lambda, rs, system)) throw InvalidInput("weight is not g_0-dominant integral");
    const auto weyl = detail::even_weyl(rs, system);

    std::vector<WeightVector> odd_pos;
    for (const auto& r : system.positive)
        if (r.parity == 1) odd_pos.push_back(rs.weight_of(r));

    std::set<WeightVector> offsets{WeightVector::zero(rs.rank_h())};
    for (const auto& beta : odd_pos) {
        std::set<WeightVector> next;
        for (const auto& s : offsets)
            for (unsigned k = 0; k <= odd_multiplicity; ++k) next.insert(s + Scalar(k) * beta);
        offsets = std::move(next);
    }
    std::vector<WeightVector> tops;
    for (const auto& s : offsets) tops.push_back(lambda - s);

    // dominant weights below each top
    const std::size_t r0 = weyl.roots.size();
    DenseMatrix a0(r0, ScalarVector(r0));
    for (std::size_t j = 0; j < r0; ++j)
        for (std::size_t i = 0; i < r0; ++i) a0[j][i] = weyl.label(weyl.roots[i], j);

    // coefficients of t - mu in the even simple roots are a0^{-1} applied to its labels
    DenseMatrix a0_inv(r0, ScalarVector(r0));
    {
        std::vector<ScalarVector> cols(r0, ScalarVector(r0));
        for (std::size_t j = 0; j < r0; ++j)
            for (std::size_t i = 0; i < r0; ++i) cols[i][j] = a0[j][i];
        for (std::size_t k = 0; k < r0; ++k) {
            ScalarVector unit(r0);
            unit[k] = 1;
            auto col = solve_columns(cols, unit);
            if (!col) throw InvariantViolation("singular even Cartan matrix");
            for (std::size_t i = 0; i < r0; ++i) a0_inv[i][k] = (*col)[i];
        }
    }
    auto labels_of = [&](const WeightVector& mu) {
        ScalarVector out(r0);
        for (std::size_t j = 0; j < r0; ++j) out[j] = weyl.label(mu, j);
        return out;
    };
    std::vector<ScalarVector> top_labels;
    for (const auto& t : tops) top_labels.push_back(labels_of(t));
    auto in_cone = [&](const WeightVector& mu) {
        const ScalarVector ml = labels_of(mu);
        for (std::size_t ti = 0; ti < tops.size(); ++ti) {
            std::vector<Scalar> c(r0);
            bool ok = true;
            for (std::size_t i = 0; i < r0 && ok; ++i) {
                for (std::size_t j = 0; j < r0; ++j) c[i] += a0_inv[i][j] * (top_labels[ti][j] - ml[j]);
                ok = sgn(c[i]) >= 0 && is_integer(c[i]);
            }
            if (!ok) continue;
            WeightVector rest = tops[ti] - mu;
            for (std::size_t i = 0; i < r0; ++i) rest -= c[i] * weyl.roots[i];
            if (rest == WeightVector::zero(rs.rank_h())) return true;
        }
        return false;
    };
    std::set<WeightVector> dominant;
    for (const auto& top : tops) {
        if (r0 == 0) {
            dominant.insert(top);
            continue;
        }
        ScalarVector labels(r0);
        for (std::size_t j = 0; j < r0; ++j) labels[j] = weyl.label(top, j);
        std::vector<ScalarVector> cols(r0, ScalarVector(r0));
        for (std::size_t j = 0; j < r0; ++j)
            for (std::size_t i = 0; i < r0; ++i) cols[i][j] = a0[j][i];
        auto bound = solve_columns(cols, labels);
        if (!bound) throw InvariantViolation("singular even Cartan matrix");
        std::vector<long> cap(r0);
        bool empty = false;
        for (std::size_t i = 0; i < r0; ++i) {
            Scalar b = (*bound)[i];
            if (sgn(b) < 0) {
                empty = true;
                break;
            }
            mpz_class fl;
            mpz_fdiv_q(fl.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
            cap[i] = fl.get_si();
        }
        if (empty) continue;
        std::vector<long> c(r0, 0);
        for (;;) {
            WeightVector nu = top;
            for (std::size_t i = 0; i < r0; ++i) nu -= Scalar(c[i]) * weyl.roots[i];
            if (weyl.dominant(nu)) dominant.insert(nu);
            std::size_t pos = 0;
            while (pos < r0 && c[pos] == cap[pos]) c[pos++] = 0;
            if (pos == r0) break;
            ++c[pos];
        }
    }

    std::set<WeightVector> result;
    for (const auto& nu : dominant) {
        if (!weight_leq(rs, system, nu, lambda)) continue;
        std::set<WeightVector> orbit{nu};
        std::vector<WeightVector> queue{nu};
        while (!queue.empty()) {
            WeightVector mu = queue.back();
            queue.pop_back();
            for (std::size_t i = 0; i < r0; ++i) {
                WeightVector s = weyl.reflect(mu, i);
                if (orbit.insert(s).second) queue.push_back(s);
            }
        }
        for (const auto& mu : orbit)
            if (in_cone(mu)) result.insert(mu);
    }
    return {result.begin(), result.end()};
}

/// Highest weight of the natural representation with respect to the base.
inline WeightVector natural_highest_weight(const RootSystem& rs, const SimpleSystem& system) {
    const auto nat = natural_representation_weights(rs.family);
    for (const auto& cand : nat) {
        const WeightVector top = rs.weight_of(Root{cand.coords, 0});
        bool highest = true;
        for (const auto& other : nat)
            if (!weight_leq(rs, system, rs.weight_of(Root{other.coords, 0}), top)) {
                highest = false;
                break;
            }
        if (highest) return top;
    }
    throw InvariantViolation("natural representation has no highest weight");
}

inline WeightVector dominant_conjugate(const RootSystem& rs, const SimpleSystem& system, const WeightVector& mu) {
    return detail::even_weyl(rs, system).dominant_conjugate(mu);
}

/// Simple reflections of the even Weyl group applied to mu.
inline std::vector<WeightVector> even_reflections(const RootSystem& rs, const SimpleSystem& system,
                                                  const WeightVector& mu) {
    const auto w = detail::even_weyl(rs, system);
    std::vector<WeightVector> out;
    for (std::size_t i = 0; i < w.roots.size(); ++i) out.push_back(w.reflect(mu, i));
    return out;
}

}  // namespace superweyl
