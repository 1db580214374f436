#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "homprob/rational.hpp"

namespace homprob {

/// Monomial in the fixed alphabet {x, eta, t, dt}.
///
/// x and t are even of degree 0; eta is odd of degree -1; dt is odd of
/// degree +1, so the odd exponents are capped at 1 (eta^2 = dt^2 = 0).
/// The stored normal form is x^a t^b eta^e dt^f with eta to the left of dt;
/// all Koszul signs are counted against that ordering.
struct GradedMonomial {
    unsigned x_pow = 0;
    unsigned t_pow = 0;
    bool eta = false;
    bool dt = false;

    int degree() const { return (dt ? 1 : 0) - (eta ? 1 : 0); }
    int parity() const { return ((eta ? 1 : 0) + (dt ? 1 : 0)) & 1; }

    friend bool operator==(const GradedMonomial&, const GradedMonomial&) = default;

    // canonical order: (degree, x_pow, t_pow, eta, dt) lexicographic
    friend bool operator<(const GradedMonomial& a, const GradedMonomial& b) {
        return std::tuple(a.degree(), a.x_pow, a.t_pow, a.eta, a.dt) <
               std::tuple(b.degree(), b.x_pow, b.t_pow, b.eta, b.dt);
    }
};

/// Product of monomials. Returns the resulting monomial and the Koszul sign,
/// or nullopt when an odd variable squares to zero.
inline std::optional<std::pair<GradedMonomial, int>> monomial_mul(const GradedMonomial& a,
                                                                  const GradedMonomial& b) {
    if ((a.eta && b.eta) || (a.dt && b.dt)) return std::nullopt;
    // moving b's eta left past a's dt costs one sign flip
    int sign = (a.dt && b.eta) ? -1 : 1;
    GradedMonomial m{a.x_pow + b.x_pow, a.t_pow + b.t_pow, a.eta || b.eta, a.dt || b.dt};
    return std::pair{m, sign};
}

/// Sparse polynomial over the graded alphabet with exact rational
/// coefficients. The term map never stores zero coefficients, so equality
/// of term maps is equality of polynomials.
class GradedPoly {
  public:
    std::map<GradedMonomial, Rational> terms;

    GradedPoly() = default;
    explicit GradedPoly(Rational c) {
        if (!c.is_zero()) terms.emplace(GradedMonomial{}, std::move(c));
    }
    GradedPoly(long long c) : GradedPoly(Rational(c)) {}

    static GradedPoly monomial(GradedMonomial m, Rational c = Rational(1)) {
        GradedPoly p;
        if (!c.is_zero()) p.terms.emplace(m, std::move(c));
        return p;
    }
    static GradedPoly x(unsigned k = 1) { return monomial(GradedMonomial{k, 0, false, false}); }
    static GradedPoly t(unsigned k = 1) { return monomial(GradedMonomial{0, k, false, false}); }
    static GradedPoly eta() { return monomial(GradedMonomial{0, 0, true, false}); }
    static GradedPoly dt() { return monomial(GradedMonomial{0, 0, false, true}); }

    bool is_zero() const { return terms.empty(); }

    Rational coeff(const GradedMonomial& m) const {
        auto it = terms.find(m);
        return it == terms.end() ? Rational(0) : it->second;
    }

    /// Coefficient of x^k (the purely even, t-free part).
    Rational x_coeff(unsigned k) const { return coeff(GradedMonomial{k, 0, false, false}); }

    void add_term(const GradedMonomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    GradedPoly& operator+=(const GradedPoly& o) {
        for (const auto& [m, c] : o.terms) add_term(m, c);
        return *this;
    }
    GradedPoly& operator-=(const GradedPoly& o) {
        for (const auto& [m, c] : o.terms) add_term(m, -c);
        return *this;
    }
    GradedPoly operator-() const {
        GradedPoly r;
        for (const auto& [m, c] : terms) r.terms.emplace(m, -c);
        return r;
    }
    friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
    friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }

    friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
        GradedPoly r;
        for (const auto& [ma, ca] : a.terms)
            for (const auto& [mb, cb] : b.terms)
                if (auto prod = monomial_mul(ma, mb))
                    r.add_term(prod->first, prod->second == 1 ? ca * cb : -(ca * cb));
        return r;
    }
    friend GradedPoly operator*(const Rational& c, const GradedPoly& a) {
        GradedPoly r;
        if (c.is_zero()) return r;
        for (const auto& [m, cm] : a.terms) r.terms.emplace(m, c * cm);
        return r;
    }
    GradedPoly& operator*=(const GradedPoly& o) { return *this = *this * o; }

    GradedPoly pow(unsigned e) const {
        GradedPoly r(1);
        GradedPoly base = *this;
        for (; e; e >>= 1) {
            if (e & 1) r *= base;
            base *= base;
        }
        return r;
    }

    friend bool operator==(const GradedPoly& a, const GradedPoly& b) { return a.terms == b.terms; }

    /// Formal partial derivative in x; eta, t, dt ride along untouched.
    GradedPoly d_dx() const {
        GradedPoly r;
        for (const auto& [m, c] : terms)
            if (m.x_pow > 0) {
                GradedMonomial n = m;
                n.x_pow -= 1;
                r.add_term(n, Rational(static_cast<long long>(m.x_pow)) * c);
            }
        return r;
    }

    /// Formal partial derivative in t (no dt is appended here; the signed
    /// de Rham part of the total differential lives in gaussian.hpp).
    GradedPoly d_dt() const {
        GradedPoly r;
        for (const auto& [m, c] : terms)
            if (m.t_pow > 0) {
                GradedMonomial n = m;
                n.t_pow -= 1;
                r.add_term(n, Rational(static_cast<long long>(m.t_pow)) * c);
            }
        return r;
    }

    /// Endpoint evaluation of a homotopy: substitute t = c and dt = 0.
    GradedPoly eval_t(const Rational& c) const {
        GradedPoly r;
        for (const auto& [m, cm] : terms) {
            if (m.dt) continue;
            GradedMonomial n = m;
            n.t_pow = 0;
            r.add_term(n, cm * c.pow(m.t_pow));
        }
        return r;
    }

    std::optional<int> homogeneous_degree() const {
        std::optional<int> d;
        for (const auto& [m, c] : terms) {
            (void)c;
            if (!d)
                d = m.degree();
            else if (*d != m.degree())
                return std::nullopt;
        }
        return terms.empty() ? std::optional<int>(0) : d;
    }

    /// 0 = even, 1 = odd, nullopt = mixed parity.
    std::optional<int> parity() const {
        std::optional<int> p;
        for (const auto& [m, c] : terms) {
            (void)c;
            if (!p)
                p = m.parity();
            else if (*p != m.parity())
                return std::nullopt;
        }
        return terms.empty() ? std::optional<int>(0) : p;
    }

    GradedPoly parity_part(int p) const {
        GradedPoly r;
        for (const auto& [m, c] : terms)
            if (m.parity() == p) r.terms.emplace(m, c);
        return r;
    }

    GradedPoly degree_part(int d) const {
        GradedPoly r;
        for (const auto& [m, c] : terms)
            if (m.degree() == d) r.terms.emplace(m, c);
        return r;
    }

    unsigned max_x_degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : terms) {
            (void)c;
            if (m.x_pow > d) d = m.x_pow;
        }
        return d;
    }

    bool uses_t() const {
        for (const auto& [m, c] : terms) {
            (void)c;
            if (m.t_pow > 0 || m.dt) return true;
        }
        return false;
    }

    bool uses_eta() const {
        for (const auto& [m, c] : terms) {
            (void)c;
            if (m.eta) return true;
        }
        return false;
    }

    /// True if the polynomial lies in the even, t-free subring Q[x].
    bool is_x_polynomial() const {
        for (const auto& [m, c] : terms) {
            (void)c;
            if (m.eta || m.dt || m.t_pow > 0) return false;
        }
        return true;
    }
};

/// Total order on polynomials (term maps compared lexicographically in the
/// canonical monomial order). Used to canonicalize symmetric words.
inline std::strong_ordering poly_compare(const GradedPoly& a, const GradedPoly& b) {
    auto ia = a.terms.begin(), ib = b.terms.begin();
    for (; ia != a.terms.end() && ib != b.terms.end(); ++ia, ++ib) {
        if (ia->first < ib->first) return std::strong_ordering::less;
        if (ib->first < ia->first) return std::strong_ordering::greater;
        if (auto c = ia->second <=> ib->second; c != 0) return c;
    }
    if (ia != a.terms.end()) return std::strong_ordering::greater;
    if (ib != b.terms.end()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

}  // namespace homprob
