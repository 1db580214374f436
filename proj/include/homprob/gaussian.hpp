#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "homprob/chain.hpp"
#include "homprob/graded_poly.hpp"
#include "homprob/poly_io.hpp"
#include "homprob/rational.hpp"
#include "homprob/report.hpp"
#include "homprob/sym.hpp"
#include "homprob/truncated.hpp"

namespace homprob {

/// d(p(x) + q(x) eta) = q'(x) - x q(x). Defined on the t-free polynomial
/// ring; the homotopy-ring extension lives in homotopy_differential.
inline GradedPoly gauss_d(const GradedPoly& v) {
    if (v.uses_t()) throw std::invalid_argument("gauss_d expects a t-free polynomial");
    GradedPoly out;
    for (const auto& [m, c] : v.terms) {
        if (!m.eta) continue;
        if (m.x_pow > 0)
            out.add_term(GradedMonomial{m.x_pow - 1, 0, false, false},
                         Rational(static_cast<long long>(m.x_pow)) * c);
        out.add_term(GradedMonomial{m.x_pow + 1, 0, false, false}, -c);
    }
    return out;
}

/// Exact Gaussian expectation, forced by E(1) = 1 and E vanishing on the
/// image of d: E(x^n) = (n-1) E(x^(n-2)) with E(x) = 0. Even-degree and
/// eta monomials contribute nothing.
inline Rational gauss_E(const GradedPoly& v) {
    if (v.uses_t()) throw std::invalid_argument("gauss_E expects a t-free polynomial");
    unsigned top = v.max_x_degree();
    std::vector<Rational> moment(top + 1);
    moment[0] = Rational(1);
    for (unsigned n = 2; n <= top; ++n)
        moment[n] = Rational(static_cast<long long>(n - 1)) * moment[n - 2];
    Rational out(0);
    for (const auto& [m, c] : v.terms)
        if (!m.eta && !m.dt) out += c * moment[m.x_pow];
    return out;
}

inline LinearOperator gauss_d_operator() {
    return {[](const GradedPoly& v) { return gauss_d(v); }, +1};
}

/// The translation action operator on x-polynomials: f maps to f' - x f.
inline LinearOperator translation_action_operator() {
    return {[](const GradedPoly& f) { return f.d_dx() - GradedPoly::x() * f; }, 0};
}

inline ProbabilitySpace gaussian_space() {
    return {gauss_d_operator(), [](const GradedPoly& v) { return gauss_E(v); }, GradedPoly(1)};
}

/// Total differential on the homotopy ring: the t-free differential acts on
/// the x,eta part, and the t-derivative contributes a dt term with the sign
/// of the x,eta part's parity.
inline GradedPoly homotopy_d(const GradedPoly& v) {
    GradedPoly out;
    for (const auto& [m, c] : v.terms) {
        if (m.eta) {
            if (m.x_pow > 0)
                out.add_term(GradedMonomial{m.x_pow - 1, m.t_pow, false, m.dt},
                             Rational(static_cast<long long>(m.x_pow)) * c);
            out.add_term(GradedMonomial{m.x_pow + 1, m.t_pow, false, m.dt}, -c);
        }
        if (m.t_pow > 0 && !m.dt) {
            Rational coeff = Rational(static_cast<long long>(m.t_pow)) * c;
            out.add_term(GradedMonomial{m.x_pow, m.t_pow - 1, m.eta, true},
                         m.eta ? -coeff : coeff);
        }
    }
    return out;
}

inline LinearOperator homotopy_d_operator() {
    return {[](const GradedPoly& v) { return homotopy_d(v); }, +1};
}

/// Primitive of x^n - E(x^n) with an adjustable summation bound:
/// -eta * sum over j = 1..j_max of x^(n+1-2j) (n-1)!! / (n+1-2j)!!.
inline GradedPoly y_n_with_bound(unsigned n, unsigned j_max) {
    if (n < 1) throw std::out_of_range("y_n needs n >= 1");
    GradedPoly sum;
    BigInt num = double_factorial(static_cast<int>(n) - 1);
    for (unsigned j = 1; j <= j_max; ++j) {
        int e = static_cast<int>(n) + 1 - 2 * static_cast<int>(j);
        if (e < 0) break;
        Rational c(num, double_factorial(e));
        sum += GradedPoly::monomial(GradedMonomial{static_cast<unsigned>(e), 0, false, false}, c);
    }
    return -(sum * GradedPoly::eta());
}

/// The primitive with the bound that makes d(y_n) = x^n - E(x^n) hold for
/// every n: j runs through floor((n+1)/2), so odd n keeps its constant term.
inline GradedPoly y_n(unsigned n) { return y_n_with_bound(n, (n + 1) / 2); }

inline const char* y_n_bound_note() {
    return "y_n sums x-powers n+1-2j for j = 1..floor((n+1)/2); the shorter bound floor(n/2) "
           "drops the constant term and fails d(y_n) = x^n - E(x^n) for odd n, so it is not used";
}

/// Solves d(h) = r for an eta-multiple h, for r in the x-polynomials with
/// E(r) = 0: since r = sum_i r_i (x^i - E(x^i)) under that hypothesis,
/// h = sum_i r_i y_i.
inline GradedPoly solve_h(const GradedPoly& r) {
    if (!r.is_x_polynomial()) throw std::invalid_argument("solve_h expects an x-polynomial");
    Rational er = gauss_E(r);
    if (!er.is_zero())
        throw std::domain_error("solve_h needs E(r) = 0, got E(r) = " + er.to_string());
    GradedPoly h;
    for (unsigned i = 1; i <= r.max_x_degree(); ++i) {
        Rational c = r.x_coeff(i);
        if (!c.is_zero()) h += c * y_n(i);
    }
    return h;
}

struct moment_mismatch_error : std::domain_error {
    unsigned order;
    Rational left, right;
    moment_mismatch_error(unsigned n, Rational l, Rational r)
        : std::domain_error("moment mismatch at order " + std::to_string(n) + ": E(p^n) = " +
                            l.to_string() + ", E(q^n) = " + r.to_string()),
          order(n),
          left(std::move(l)),
          right(std::move(r)) {}
};

struct cumulant_mismatch_error : std::domain_error {
    unsigned order;
    Rational left, right;
    cumulant_mismatch_error(unsigned n, Rational l, Rational r)
        : std::domain_error("cumulant mismatch at order " + std::to_string(n) + ": " +
                            l.to_string() + " vs " + r.to_string()),
          order(n),
          left(std::move(l)),
          right(std::move(r)) {}
};

/// Path component joining p^n to q^n: p^n + t (q^n - p^n) + h(p^n - q^n) dt.
/// Requires the order-n moments of p and q to coincide so that the dt
/// coefficient exists.
inline GradedPoly lambda_n(const GradedPoly& p, const GradedPoly& q, unsigned n) {
    if (!p.is_x_polynomial() || !q.is_x_polynomial())
        throw std::invalid_argument("lambda_n expects x-polynomials");
    if (n < 1) throw std::out_of_range("lambda_n needs n >= 1");
    GradedPoly pn = p.pow(n), qn = q.pow(n);
    Rational ep = gauss_E(pn), eq = gauss_E(qn);
    if (ep != eq) throw moment_mismatch_error(n, ep, eq);
    return pn + GradedPoly::t() * (qn - pn) + solve_h(pn - qn) * GradedPoly::dt();
}

/// Checks that the order-j cumulants of p and q coincide for j = 1..n;
/// throws cumulant_mismatch_error at the first difference.
inline void require_equal_cumulants(const GradedPoly& p, const GradedPoly& q, unsigned n) {
    ProbabilitySpace g = gaussian_space();
    for (unsigned j = 1; j <= n; ++j) {
        Rational kp = total_cumulant(g, std::vector<GradedPoly>(j, p));
        Rational kq = total_cumulant(g, std::vector<GradedPoly>(j, q));
        if (kp != kq) throw cumulant_mismatch_error(j, kp, kq);
    }
}

/// Arity-n component of the transported homotopy: the signed partition sum
/// of products of path components, (-1)^(k-1) (k-1)! Lambda_{b_1} ...
/// Lambda_{b_k} over set partitions with block sizes b_i.
inline GradedPoly big_h_n(const GradedPoly& p, const GradedPoly& q, unsigned n) {
    if (n < 1 || n > kMaxBracketArity)
        throw std::out_of_range("component arity must be between 1 and " +
                                std::to_string(kMaxBracketArity));
    require_equal_cumulants(p, q, n);
    std::vector<GradedPoly> lambda(n + 1);
    for (unsigned j = 1; j <= n; ++j) lambda[j] = lambda_n(p, q, j);
    std::map<std::vector<unsigned>, GradedPoly> memo;
    GradedPoly out;
    for (const auto& pi : partitions_of(n)) {
        std::vector<unsigned> sizes;
        sizes.reserve(pi.blocks.size());
        for (const auto& b : pi.blocks) sizes.push_back(static_cast<unsigned>(b.size()));
        std::sort(sizes.begin(), sizes.end());
        auto it = memo.find(sizes);
        if (it == memo.end()) {
            GradedPoly prod(1);
            for (unsigned s : sizes) prod *= lambda[s];
            it = memo.emplace(sizes, std::move(prod)).first;
        }
        Rational c(factorial(static_cast<unsigned>(pi.blocks.size()) - 1));
        if (pi.blocks.size() % 2 == 0) c = -c;
        out += c * it->second;
    }
    return out;
}

/// Full verification of the explicit homotopy between the strict
/// collections generated by p and q:
///   equal_cumulants  - cumulants of p and q agree through max_order
///   lambda_closed    - every path component is annihilated by the total
///                      differential
///   endpoints_match  - setting t = 0 resp. t = 1 in the transported
///                      components reproduces the components of the two
///                      collections, computed independently through the
///                      coalgebra machinery
///   homotopy_closed  - the transported components are annihilated by the
///                      brackets of the total differential, arity by arity
/// When the cumulant tables differ the remaining checks are skipped.
inline Report verify_homotopy(const GradedPoly& p, const GradedPoly& q, unsigned max_order) {
    if (max_order < 1 || max_order > kMaxBracketArity)
        throw std::out_of_range("max order must be between 1 and " +
                                std::to_string(kMaxBracketArity));
    if (!p.is_x_polynomial() || !q.is_x_polynomial())
        throw std::invalid_argument("verify_homotopy expects x-polynomials");
    Report r;
    r.note(y_n_bound_note());

    ProbabilitySpace g = gaussian_space();
    for (unsigned j = 1; j <= max_order; ++j) {
        Rational kp = total_cumulant(g, std::vector<GradedPoly>(j, p));
        Rational kq = total_cumulant(g, std::vector<GradedPoly>(j, q));
        if (kp != kq) {
            r.add("equal_cumulants", false,
                  "order " + std::to_string(j) + ": " + kp.to_string() + " vs " + kq.to_string());
            return r;
        }
    }
    r.add("equal_cumulants", true, "orders 1.." + std::to_string(max_order));

    std::vector<GradedPoly> lambda(max_order + 1), H(max_order + 1);
    for (unsigned n = 1; n <= max_order; ++n) {
        lambda[n] = lambda_n(p, q, n);
        H[n] = big_h_n(p, q, n);
    }

    bool closed = true;
    std::string cw;
    for (unsigned n = 1; n <= max_order && closed; ++n) {
        GradedPoly dl = homotopy_d(lambda[n]);
        if (!dl.is_zero()) {
            closed = false;
            cw = "component " + std::to_string(n) + " maps to " + print_poly(dl);
        }
    }
    r.add("lambda_closed", closed, cw);

    bool endpoints = true;
    std::string ew;
    for (unsigned n = 1; n <= max_order && endpoints; ++n) {
        SymTensor word = sym_word(std::vector<GradedPoly>(n, p));
        GradedPoly want0 =
            apply_morphism(apply_morphism(word, phi_component), phi_inverse_component)
                .arity_one_part();
        SymTensor wordq = sym_word(std::vector<GradedPoly>(n, q));
        GradedPoly want1 =
            apply_morphism(apply_morphism(wordq, phi_component), phi_inverse_component)
                .arity_one_part();
        if (H[n].eval_t(Rational(0)) != want0 || H[n].eval_t(Rational(1)) != want1) {
            endpoints = false;
            ew = "component " + std::to_string(n);
        }
    }
    r.add("endpoints_match", endpoints, ew);

    LinearOperator D = homotopy_d_operator();
    std::map<std::vector<unsigned>, GradedPoly> bracket_memo;
    bool hclosed = true;
    std::string hw;
    for (unsigned n = 1; n <= max_order && hclosed; ++n) {
        GradedPoly total;
        for (const auto& pi : partitions_of(n)) {
            std::vector<unsigned> sizes;
            sizes.reserve(pi.blocks.size());
            for (const auto& b : pi.blocks) sizes.push_back(static_cast<unsigned>(b.size()));
            std::sort(sizes.begin(), sizes.end());
            auto it = bracket_memo.find(sizes);
            if (it == bracket_memo.end()) {
                std::vector<GradedPoly> args;
                args.reserve(sizes.size());
                for (unsigned s : sizes) args.push_back(H[s]);
                it = bracket_memo.emplace(sizes, transported_bracket(D, args)).first;
            }
            total += it->second;
        }
        if (!total.is_zero()) {
            hclosed = false;
            hw = "arity " + std::to_string(n) + " maps to " + print_poly(total);
        }
    }
    r.add("homotopy_closed", hclosed, hw);

    bool tables = true;
    Collection X = strict_collection({p}), Y = strict_collection({q});
    for (unsigned n = 1; n <= max_order && tables; ++n) {
        std::vector<unsigned> word(n, 0);
        if (joint_cumulant(g, X, word) != joint_cumulant(g, Y, word)) tables = false;
    }
    r.add("joint_cumulants_agree", tables);
    return r;
}

/// The polynomial complex cut to a finite window: x-degrees through D+1 in
/// the even part, through D in the eta part. Products are present exactly
/// when they stay inside the window.
inline TruncatedSpace gaussian_truncated_space(unsigned D) {
    TruncatedSpace s;
    unsigned even = D + 2, odd = D + 1;
    unsigned n = even + odd;
    auto even_idx = [](unsigned k) { return k; };
    auto odd_idx = [&](unsigned k) { return even + k; };
    for (unsigned k = 0; k < even; ++k)
        s.basis.push_back({print_poly(GradedPoly::x(k)), 0});
    for (unsigned k = 0; k < odd; ++k)
        s.basis.push_back({print_poly(GradedPoly::x(k) * GradedPoly::eta()), -1});
    s.unit = 0;
    s.d = Matrix(n, n);
    for (unsigned k = 0; k < odd; ++k) {
        // d(x^k eta) = k x^(k-1) - x^(k+1)
        if (k > 0) s.d.at(even_idx(k - 1), odd_idx(k)) = Rational(static_cast<long long>(k));
        s.d.at(even_idx(k + 1), odd_idx(k)) = Rational(-1);
    }
    s.expectation.assign(n, Rational(0));
    for (unsigned k = 0; k < even; ++k)
        s.expectation[even_idx(k)] = gauss_E(GradedPoly::x(k));
    for (unsigned a = 0; a < even; ++a)
        for (unsigned b = 0; b < even; ++b)
            if (a + b < even) {
                Vec v(n);
                v[even_idx(a + b)] = Rational(1);
                s.product[{even_idx(a), even_idx(b)}] = v;
            }
    for (unsigned a = 0; a < even; ++a)
        for (unsigned b = 0; b < odd; ++b)
            if (a + b < odd) {
                Vec v(n);
                v[odd_idx(a + b)] = Rational(1);
                s.product[{even_idx(a), odd_idx(b)}] = v;
                s.product[{odd_idx(b), even_idx(a)}] = v;
            }
    for (unsigned a = 0; a < odd; ++a)
        for (unsigned b = 0; b < odd; ++b)
            s.product[{odd_idx(a), odd_idx(b)}] = Vec(n);
    return s;
}

struct RemarkEntry {
    std::vector<unsigned> word;  // indices into the pair of generators
    Rational first, second;      // joint cumulant in each collection
    bool consistent = false;     // both double-computations matched
    bool agree = false;          // the two collections match on this word
};

struct RemarkResult {
    std::vector<RemarkEntry> entries;
    std::vector<std::vector<unsigned>> disagreeing_words;
    Report report;
};

/// Expectation transported through the coalgebra machinery, applied to a
/// whole tensor: push through the multiplication morphism, then resolve
/// each word with factorwise expectations and the inverse-morphism
/// coefficient for its length.
inline Rational expectation_transport(const ProbabilitySpace& space, const SymTensor& T) {
    SymTensor U = apply_morphism(T, phi_component);
    Rational total(0);
    for (const auto& [w, c] : U.terms) {
        Rational term = c * Rational(factorial(w.arity() - 1));
        if (w.arity() % 2 == 0) term = -term;
        for (const auto& m : w.factors) {
            term *= space.expectation(GradedPoly::monomial(m));
            if (term.is_zero()) break;
        }
        total += term;
    }
    return total;
}

/// Compares the two-generator collections (x, 1) and (-x, 1): every joint
/// cumulant through the requested order, each entry computed both by the
/// partition formula and through the coalgebra composition, with a verdict
/// on which words (if any) tell the collections apart.
inline RemarkResult remark_experiment(unsigned max_order = 6) {
    if (max_order < 1 || max_order > kMaxHrvArity)
        throw std::out_of_range("remark order must be between 1 and " +
                                std::to_string(kMaxHrvArity));
    RemarkResult out;
    ProbabilitySpace g = gaussian_space();
    Collection X = strict_collection({GradedPoly::x(), GradedPoly(1)});
    Collection Y = strict_collection({-GradedPoly::x(), GradedPoly(1)});

    bool consistent = true, all_agree = true;
    for (unsigned n = 1; n <= max_order; ++n) {
        for (const auto& word : index_multisets(2, n)) {
            RemarkEntry e;
            e.word = word;
            e.first = joint_cumulant(g, X, word);
            e.second = joint_cumulant(g, Y, word);
            Rational fx = expectation_transport(g, collection_value(X, word));
            Rational fy = expectation_transport(g, collection_value(Y, word));
            e.consistent = (e.first == fx) && (e.second == fy);
            e.agree = e.first == e.second;
            if (!e.consistent) consistent = false;
            if (!e.agree) {
                all_agree = false;
                out.disagreeing_words.push_back(word);
            }
            out.entries.push_back(std::move(e));
        }
    }
    out.report.add("routes_consistent", consistent,
                   "each entry computed by the partition formula and by coalgebra composition");
    if (all_agree)
        out.report.note(
            "all joint cumulants through order " + std::to_string(max_order) +
            " agree between the collections (x, 1) and (-x, 1); in particular no order-2 word "
            "distinguishes them");
    else
        out.report.note("collections differ on " + std::to_string(out.disagreeing_words.size()) +
                        " word(s)");
    return out;
}

}  // namespace homprob
