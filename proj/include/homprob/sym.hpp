#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "homprob/chain.hpp"
#include "homprob/graded_poly.hpp"
#include "homprob/partitions.hpp"
#include "homprob/poly_io.hpp"
#include "homprob/rational.hpp"
#include "homprob/report.hpp"

namespace homprob {

inline constexpr unsigned kMaxBracketArity = 8;
inline constexpr unsigned kMaxCumulantArity = 12;

/// Sorts monomials into canonical order in place and returns the sign picked
/// up from transposing odd factors, or 0 when an odd factor repeats (the
/// word vanishes).
inline int canonicalize_word(std::vector<GradedMonomial>& f) {
    int sign = 1;
    for (std::size_t i = 1; i < f.size(); ++i) {
        GradedMonomial key = f[i];
        std::size_t j = i;
        while (j > 0 && key < f[j - 1]) {
            f[j] = f[j - 1];
            if (key.parity() && f[j].parity()) sign = -sign;
            --j;
        }
        f[j] = key;
    }
    for (std::size_t i = 1; i < f.size(); ++i)
        if (f[i].parity() && f[i] == f[i - 1]) return 0;
    return sign;
}

/// Symmetric word: a canonical (sorted) list of monomial factors. Words with
/// a repeated odd factor are zero and never stored.
struct SymWord {
    std::vector<GradedMonomial> factors;

    unsigned arity() const { return static_cast<unsigned>(factors.size()); }

    friend bool operator==(const SymWord&, const SymWord&) = default;
    friend bool operator<(const SymWord& a, const SymWord& b) {
        if (a.factors.size() != b.factors.size()) return a.factors.size() < b.factors.size();
        for (std::size_t i = 0; i < a.factors.size(); ++i) {
            if (a.factors[i] < b.factors[i]) return true;
            if (b.factors[i] < a.factors[i]) return false;
        }
        return false;
    }
};

/// Element of the symmetric coalgebra on the polynomial space: a finite
/// rational combination of symmetric words in monomials.
class SymTensor {
  public:
    std::map<SymWord, Rational> terms;

    bool is_zero() const { return terms.empty(); }

    void add(SymWord w, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms.try_emplace(std::move(w), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    /// Multilinear expansion of coeff * (f_1 (.) ... (.) f_n) into words of
    /// monomials, canonicalizing each resulting word.
    void add_word(const std::vector<GradedPoly>& factors, const Rational& coeff) {
        if (factors.empty()) throw std::invalid_argument("empty symmetric word");
        if (coeff.is_zero()) return;
        std::vector<std::map<GradedMonomial, Rational>::const_iterator> its;
        its.reserve(factors.size());
        for (const auto& f : factors) {
            if (f.is_zero()) return;
            its.push_back(f.terms.begin());
        }
        while (true) {
            std::vector<GradedMonomial> monos;
            monos.reserve(factors.size());
            Rational c = coeff;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                monos.push_back(its[i]->first);
                c *= its[i]->second;
            }
            if (int sign = canonicalize_word(monos); sign != 0)
                add(SymWord{std::move(monos)}, sign < 0 ? -c : c);
            // advance the multi-index
            std::size_t i = factors.size();
            while (i-- > 0) {
                if (++its[i] != factors[i].terms.end()) break;
                its[i] = factors[i].terms.begin();
                if (i == 0) return;
            }
        }
    }

    SymTensor& operator+=(const SymTensor& o) {
        for (const auto& [w, c] : o.terms) add(w, c);
        return *this;
    }
    SymTensor& operator-=(const SymTensor& o) {
        for (const auto& [w, c] : o.terms) add(w, -c);
        return *this;
    }
    friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
    friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
    friend bool operator==(const SymTensor& a, const SymTensor& b) { return a.terms == b.terms; }

    /// Sum of the length-one words, as a polynomial.
    GradedPoly arity_one_part() const {
        GradedPoly p;
        for (const auto& [w, c] : terms)
            if (w.arity() == 1) p.add_term(w.factors[0], c);
        return p;
    }

    SymTensor arity_part(unsigned n) const {
        SymTensor out;
        for (const auto& [w, c] : terms)
            if (w.arity() == n) out.add(w, c);
        return out;
    }

    unsigned max_arity() const {
        unsigned m = 0;
        for (const auto& [w, c] : terms) {
            (void)c;
            if (w.arity() > m) m = w.arity();
        }
        return m;
    }
};

inline SymTensor sym_word(const std::vector<GradedPoly>& factors, Rational coeff = Rational(1)) {
    SymTensor t;
    t.add_word(factors, coeff);
    return t;
}

/// Sign picked up when the factors of a word (given parities, in order) are
/// regrouped into the blocks of a partition, blocks ordered by least element.
inline int koszul_partition_sign(const std::vector<int>& parity, const SetPartition& pi) {
    std::vector<unsigned> seq;
    for (const auto& b : pi.blocks) seq.insert(seq.end(), b.begin(), b.end());
    int sign = 1;
    for (std::size_t a = 0; a < seq.size(); ++a)
        for (std::size_t b = a + 1; b < seq.size(); ++b)
            if (seq[a] > seq[b] && parity[seq[a]] && parity[seq[b]]) sign = -sign;
    return sign;
}

/// Sign picked up by permuting factors: args reordered as a_{perm[0]}, ...
inline int koszul_permutation_sign(const std::vector<int>& parity, const std::vector<unsigned>& perm) {
    int sign = 1;
    for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b] && parity[perm[a]] && parity[perm[b]]) sign = -sign;
    return sign;
}

/// A multilinear symmetric component map: n polynomial arguments to one
/// polynomial. A coalgebra morphism is the family of such components; the
/// full morphism on a word is recovered by summing over set partitions.
using Component = std::function<GradedPoly(const std::vector<GradedPoly>&)>;

/// Component family of the multiplication morphism: a word maps to the
/// product of its factors.
inline GradedPoly phi_component(const std::vector<GradedPoly>& args) {
    GradedPoly p(1);
    for (const auto& a : args) p *= a;
    return p;
}

/// Component family of the inverse of the multiplication morphism:
/// (-1)^(n-1) (n-1)! times the product of the n factors. Composing with
/// phi_component over set partitions gives the identity; the composite's
/// higher components vanish through the alternating-factorial identity.
inline GradedPoly phi_inverse_component(const std::vector<GradedPoly>& args) {
    if (args.size() > kMaxCumulantArity)
        throw std::out_of_range("arity above " + std::to_string(kMaxCumulantArity));
    GradedPoly p = phi_component(args);
    Rational c(BigInt(factorial(static_cast<unsigned>(args.size()) - 1)));
    if (args.size() % 2 == 0) c = -c;
    return c.is_one() ? p : c * p;
}

/// Applies the coalgebra morphism with the given component family to a
/// tensor: each word becomes the signed sum over set partitions of words of
/// block values.
inline SymTensor apply_morphism(const SymTensor& T, const Component& comp) {
    SymTensor out;
    for (const auto& [w, cw] : T.terms) {
        std::vector<int> parity(w.arity());
        for (unsigned i = 0; i < w.arity(); ++i) parity[i] = w.factors[i].parity();
        for (const auto& pi : partitions_of(w.arity())) {
            int sign = koszul_partition_sign(parity, pi);
            std::vector<GradedPoly> values;
            values.reserve(pi.blocks.size());
            bool zero = false;
            for (const auto& block : pi.blocks) {
                std::vector<GradedPoly> args;
                args.reserve(block.size());
                for (unsigned idx : block) args.push_back(GradedPoly::monomial(w.factors[idx]));
                values.push_back(comp(args));
                if (values.back().is_zero()) {
                    zero = true;
                    break;
                }
            }
            if (!zero) out.add_word(values, sign < 0 ? -cw : cw);
        }
    }
    return out;
}

/// Extends an odd operator to the symmetric coalgebra as a coderivation:
/// apply it to each factor in turn, with the sign of the parities passed.
inline SymTensor apply_coderivation(const SymTensor& T, const LinearOperator& d) {
    SymTensor out;
    for (const auto& [w, cw] : T.terms) {
        int prefix = 0;
        for (unsigned i = 0; i < w.arity(); ++i) {
            GradedPoly di = d(GradedPoly::monomial(w.factors[i]));
            if (!di.is_zero()) {
                std::vector<GradedPoly> factors;
                factors.reserve(w.arity());
                for (unsigned j = 0; j < w.arity(); ++j)
                    factors.push_back(j == i ? di : GradedPoly::monomial(w.factors[j]));
                out.add_word(factors, prefix % 2 ? -cw : cw);
            }
            prefix += w.factors[i].parity();
        }
    }
    return out;
}

/// The arity-n bracket of the differential transported through the
/// multiplication morphism: project to words of length one after
/// (inverse morphism) after (coderivation) after (morphism).
inline GradedPoly transported_bracket(const LinearOperator& d, const std::vector<GradedPoly>& args) {
    if (args.empty() || args.size() > kMaxBracketArity)
        throw std::out_of_range("bracket arity must be between 1 and " +
                                std::to_string(kMaxBracketArity));
    SymTensor T = sym_word(args);
    if (T.is_zero()) return {};
    T = apply_morphism(T, phi_component);
    T = apply_coderivation(T, d);
    T = apply_morphism(T, phi_inverse_component);
    return T.arity_one_part();
}

inline GradedPoly transported_bracket(const ProbabilitySpace& space,
                                      const std::vector<GradedPoly>& args) {
    return transported_bracket(space.differential, args);
}

namespace detail {

template <class Expect>
Rational cumulant_partition_sum(const Expect& E, const std::vector<GradedPoly>& args,
                                const std::vector<int>& parity) {
    Rational total(0);
    for (const auto& pi : partitions_of(static_cast<unsigned>(args.size()))) {
        Rational term(BigInt(factorial(static_cast<unsigned>(pi.blocks.size()) - 1)));
        if (pi.blocks.size() % 2 == 0) term = -term;
        if (koszul_partition_sign(parity, pi) < 0) term = -term;
        for (const auto& block : pi.blocks) {
            GradedPoly prod(1);
            for (unsigned idx : block) prod *= args[idx];
            term *= E(prod);
            if (term.is_zero()) break;
        }
        total += term;
    }
    return total;
}

}  // namespace detail

/// Classical joint cumulant: sum over set partitions of
/// (-1)^(k-1) (k-1)! times the product of block-product expectations,
/// with the regrouping sign when arguments are odd. Arguments of mixed
/// parity are split multilinearly first.
inline Rational total_cumulant(const ProbabilitySpace& space, const std::vector<GradedPoly>& args) {
    if (args.empty() || args.size() > kMaxCumulantArity)
        throw std::out_of_range("cumulant arity must be between 1 and " +
                                std::to_string(kMaxCumulantArity));
    std::vector<int> parity(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) {
        auto p = args[i].parity();
        if (!p) {
            // split the first mixed argument and recurse on both parts
            Rational total(0);
            for (int part : {0, 1}) {
                std::vector<GradedPoly> copy = args;
                copy[i] = args[i].parity_part(part);
                if (!copy[i].is_zero()) total += total_cumulant(space, copy);
            }
            return total;
        }
        parity[i] = *p;
    }
    return detail::cumulant_partition_sum(space.expectation, args, parity);
}

/// The same cumulant computed through the generic coalgebra machinery:
/// push the word through the multiplication morphism, take factorwise
/// expectations, and resolve with the inverse-morphism coefficients on the
/// scalar side. Used as an independent cross-check of total_cumulant.
inline Rational total_cumulant_via_transport(const ProbabilitySpace& space,
                                             const std::vector<GradedPoly>& args) {
    if (args.empty() || args.size() > kMaxCumulantArity)
        throw std::out_of_range("cumulant arity must be between 1 and " +
                                std::to_string(kMaxCumulantArity));
    SymTensor T = apply_morphism(sym_word(args), phi_component);
    Rational total(0);
    for (const auto& [w, c] : T.terms) {
        Rational term = c * Rational(BigInt(factorial(w.arity() - 1)));
        if (w.arity() % 2 == 0) term = -term;
        for (const auto& m : w.factors) {
            term *= space.expectation(GradedPoly::monomial(m));
            if (term.is_zero()) break;
        }
        total += term;
    }
    return total;
}

/// Moment of order n from the cumulant sequence (cumulants[j-1] is the order
/// j cumulant): sum over set partitions of the product of block cumulants.
inline Rational moments_from_cumulants(const std::vector<Rational>& cumulants, unsigned n) {
    if (n < 1 || n > kMaxCumulantArity)
        throw std::out_of_range("moment order must be between 1 and " +
                                std::to_string(kMaxCumulantArity));
    if (cumulants.size() < n) throw std::invalid_argument("cumulant sequence too short");
    Rational total(0);
    for (const auto& pi : partitions_of(n)) {
        Rational term(1);
        for (const auto& block : pi.blocks) term *= cumulants[block.size() - 1];
        total += term;
    }
    return total;
}

/// Cumulant of order n of a single scalar variable whose powers have the
/// given moments (moments[j-1] is the order j moment).
inline Rational cumulant_from_moments(const std::vector<Rational>& moments, unsigned n) {
    if (n < 1 || n > kMaxCumulantArity)
        throw std::out_of_range("cumulant order must be between 1 and " +
                                std::to_string(kMaxCumulantArity));
    if (moments.size() < n) throw std::invalid_argument("moment sequence too short");
    Rational total(0);
    for (const auto& pi : partitions_of(n)) {
        Rational term(BigInt(factorial(static_cast<unsigned>(pi.blocks.size()) - 1)));
        if (pi.blocks.size() % 2 == 0) term = -term;
        for (const auto& block : pi.blocks) term *= moments[block.size() - 1];
        total += term;
    }
    return total;
}

inline constexpr unsigned kMaxHrvArity = 6;

/// A collection of homotopy random variables: a degree-zero coalgebra
/// morphism from words in n even source generators into the polynomial
/// space, stored by its components on sorted multisets of generator indices
/// (0-based). Components above max_arity are zero.
struct Collection {
    unsigned nvars = 0;
    unsigned max_arity = 0;
    std::function<GradedPoly(const std::vector<unsigned>&)> component;

    GradedPoly eval(const std::vector<unsigned>& word) const {
        if (word.empty() || word.size() > max_arity) return {};
        return component(word);
    }
};

/// A strict collection: one polynomial per generator, no higher components.
inline Collection strict_collection(std::vector<GradedPoly> values) {
    Collection X;
    X.nvars = static_cast<unsigned>(values.size());
    X.max_arity = 1;
    X.component = [vals = std::move(values)](const std::vector<unsigned>& word) -> GradedPoly {
        return vals.at(word.at(0));
    };
    return X;
}

namespace detail {

inline void multisets_rec(unsigned nvars, unsigned size, unsigned start, std::vector<unsigned>& cur,
                          std::vector<std::vector<unsigned>>& out) {
    if (cur.size() == size) {
        out.push_back(cur);
        return;
    }
    for (unsigned v = start; v < nvars; ++v) {
        cur.push_back(v);
        multisets_rec(nvars, size, v, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

/// All sorted multisets of the given size over {0..nvars-1}.
inline std::vector<std::vector<unsigned>> index_multisets(unsigned nvars, unsigned size) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    detail::multisets_rec(nvars, size, 0, cur, out);
    return out;
}

inline std::string word_label(const std::vector<unsigned>& word) {
    std::string s;
    for (unsigned v : word) {
        if (!s.empty()) s += "(.)";
        s += "e" + std::to_string(v + 1);
    }
    return s;
}

/// Checks that the transported differential annihilates the collection: for
/// every source word up to the arity bound, the signed sum over partitions
/// of brackets of component values must vanish.
inline Report check_hrv(const ProbabilitySpace& space, const Collection& X, unsigned max_arity) {
    Report r;
    if (max_arity > kMaxHrvArity)
        throw std::out_of_range("collection check arity above " + std::to_string(kMaxHrvArity));
    if (X.nvars == 0) {
        r.add("collection_closed", true, "empty collection");
        return r;
    }
    for (unsigned n = 1; n <= max_arity; ++n) {
        for (const auto& word : index_multisets(X.nvars, n)) {
            GradedPoly total;
            for (const auto& pi : partitions_of(n)) {
                std::vector<GradedPoly> values;
                values.reserve(pi.blocks.size());
                bool zero = false;
                for (const auto& block : pi.blocks) {
                    std::vector<unsigned> sub;
                    sub.reserve(block.size());
                    for (unsigned idx : block) sub.push_back(word[idx]);
                    values.push_back(X.eval(sub));
                    if (values.back().is_zero()) {
                        zero = true;
                        break;
                    }
                }
                if (!zero) total += transported_bracket(space, values);
            }
            if (!total.is_zero()) {
                r.add("collection_closed", false,
                      "word " + word_label(word) + " maps to " + print_poly(total));
                return r;
            }
        }
    }
    r.add("collection_closed", true,
          "all words through arity " + std::to_string(max_arity) + " annihilated");
    return r;
}

/// Joint cumulant of the collection at a source word: the corresponding
/// component of the total cumulant composed with the collection, i.e. the
/// partition sum of cumulants of component values.
inline Rational joint_cumulant(const ProbabilitySpace& space, const Collection& X,
                               const std::vector<unsigned>& word) {
    if (word.empty() || word.size() > kMaxCumulantArity)
        throw std::out_of_range("word length must be between 1 and " +
                                std::to_string(kMaxCumulantArity));
    Rational total(0);
    for (const auto& pi : partitions_of(static_cast<unsigned>(word.size()))) {
        std::vector<GradedPoly> values;
        values.reserve(pi.blocks.size());
        bool zero = false;
        for (const auto& block : pi.blocks) {
            std::vector<unsigned> sub;
            sub.reserve(block.size());
            for (unsigned idx : block) sub.push_back(word[idx]);
            values.push_back(X.eval(sub));
            if (values.back().is_zero()) {
                zero = true;
                break;
            }
        }
        if (!zero) total += total_cumulant(space, values);
    }
    return total;
}

/// Full value of the collection on a source word, as a tensor: the signed
/// sum over partitions of words of component values (source generators are
/// even, so no regrouping signs arise).
inline SymTensor collection_value(const Collection& X, const std::vector<unsigned>& word) {
    SymTensor out;
    for (const auto& pi : partitions_of(static_cast<unsigned>(word.size()))) {
        std::vector<GradedPoly> values;
        values.reserve(pi.blocks.size());
        bool zero = false;
        for (const auto& block : pi.blocks) {
            std::vector<unsigned> sub;
            sub.reserve(block.size());
            for (unsigned idx : block) sub.push_back(word[idx]);
            values.push_back(X.eval(sub));
            if (values.back().is_zero()) {
                zero = true;
                break;
            }
        }
        if (!zero) out.add_word(values, Rational(1));
    }
    return out;
}

}  // namespace homprob
