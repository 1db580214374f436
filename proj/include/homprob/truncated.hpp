#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "homprob/linalg.hpp"
#include "homprob/partitions.hpp"
#include "homprob/rational.hpp"
#include "homprob/report.hpp"

namespace homprob {

/// A probability space presented on a finite basis: differential and
/// expectation as exact matrices, product as a partial tensor. Pairs absent
/// from the product map are products that leave the truncation and are
/// treated as undefined rather than silently cut off.
struct TruncatedSpace {
    struct BasisElement {
        std::string label;
        int degree = 0;
    };

    std::vector<BasisElement> basis;
    Matrix d;                                              // degree +1
    std::map<std::pair<unsigned, unsigned>, Vec> product;  // (i,j) -> coordinates of e_i * e_j
    Vec expectation;                                       // row vector
    unsigned unit = 0;

    unsigned dim() const { return static_cast<unsigned>(basis.size()); }

    Vec basis_vec(unsigned i) const {
        Vec v(dim());
        v[i] = Rational(1);
        return v;
    }

    Vec unit_vec() const { return basis_vec(unit); }

    std::optional<Vec> basis_product(unsigned i, unsigned j) const {
        auto it = product.find({i, j});
        if (it == product.end()) return std::nullopt;
        return it->second;
    }

    /// Bilinear extension of the product tensor; nullopt when any needed
    /// basis pair is undefined.
    std::optional<Vec> mul(const Vec& a, const Vec& b) const {
        Vec out(dim());
        for (unsigned i = 0; i < dim(); ++i) {
            if (a[i].is_zero()) continue;
            for (unsigned j = 0; j < dim(); ++j) {
                if (b[j].is_zero()) continue;
                auto p = basis_product(i, j);
                if (!p) return std::nullopt;
                vec_add_scaled(out, a[i] * b[j], *p);
            }
        }
        return out;
    }

    Rational expect(const Vec& v) const { return dot(expectation, v); }

    std::vector<int> degrees() const {
        std::set<int> s;
        for (const auto& b : basis) s.insert(b.degree);
        return {s.begin(), s.end()};
    }

    std::vector<unsigned> degree_indices(int k) const {
        std::vector<unsigned> idx;
        for (unsigned i = 0; i < dim(); ++i)
            if (basis[i].degree == k) idx.push_back(i);
        return idx;
    }

    /// Submatrix of d from degree k into degree k+1.
    Matrix d_block(int k) const {
        auto dom = degree_indices(k);
        auto cod = degree_indices(k + 1);
        Matrix m(static_cast<unsigned>(cod.size()), static_cast<unsigned>(dom.size()));
        for (unsigned j = 0; j < dom.size(); ++j)
            for (unsigned i = 0; i < cod.size(); ++i) m.at(i, j) = d.at(cod[i], dom[j]);
        return m;
    }
};

/// Structural and axiomatic validation: matrix shapes, d squared, the
/// expectation being a unital chain map supported in degree zero, the
/// differential raising degree by one, the unit being closed, and the
/// defined part of the product being degree-additive, graded commutative,
/// unital and associative.
inline Report validate_space(const TruncatedSpace& s) {
    Report r;
    unsigned n = s.dim();
    if (s.d.rows() != n || s.d.cols() != n || s.expectation.size() != n || s.unit >= n) {
        r.add("shape", false, "matrix or vector sizes do not match the basis");
        return r;
    }
    r.add("shape", true);

    bool graded = true;
    std::string witness;
    for (unsigned j = 0; j < n && graded; ++j)
        for (unsigned i = 0; i < n; ++i)
            if (!s.d.at(i, j).is_zero() && s.basis[i].degree != s.basis[j].degree + 1) {
                graded = false;
                witness = "d maps " + s.basis[j].label + " into " + s.basis[i].label;
                break;
            }
    r.add("differential_degree_one", graded, witness);

    r.add("d_squared_zero", (s.d * s.d).is_zero());
    {
        Vec ed(n);
        for (unsigned j = 0; j < n; ++j) ed[j] = dot(s.expectation, s.d.column(j));
        r.add("expectation_chain_map", vec_is_zero(ed));
    }
    r.add("unit_expectation_one", s.expectation[s.unit] == Rational(1),
          "E(unit) = " + s.expectation[s.unit].to_string());
    r.add("unit_closed", vec_is_zero(s.d.column(s.unit)));
    {
        bool ok = true;
        for (unsigned i = 0; i < n; ++i)
            if (s.basis[i].degree != 0 && !s.expectation[i].is_zero()) ok = false;
        r.add("expectation_degree_zero", ok);
    }

    bool unital = true, commutative = true, degree_additive = true, associative = true;
    std::string uw, cw, dw, aw;
    for (const auto& [key, val] : s.product) {
        auto [i, j] = key;
        if (i >= n || j >= n || val.size() != n) {
            r.add("product_shape", false, "bad product entry");
            return r;
        }
        int dsum = s.basis[i].degree + s.basis[j].degree;
        for (unsigned k = 0; k < n; ++k)
            if (!val[k].is_zero() && s.basis[k].degree != dsum && degree_additive) {
                degree_additive = false;
                dw = s.basis[i].label + " * " + s.basis[j].label;
            }
        if (i == s.unit && val != s.basis_vec(j) && unital) {
            unital = false;
            uw = "unit * " + s.basis[j].label;
        }
        auto flip = s.basis_product(j, i);
        if (flip && commutative) {
            int sign = (s.basis[i].degree % 2 != 0 && s.basis[j].degree % 2 != 0) ? -1 : 1;
            Vec expect = sign < 0 ? vec_scale(Rational(-1), *flip) : *flip;
            if (val != expect) {
                commutative = false;
                cw = s.basis[i].label + " * " + s.basis[j].label;
            }
        }
    }
    for (unsigned i = 0; i < n && associative; ++i)
        for (unsigned j = 0; j < n && associative; ++j)
            for (unsigned k = 0; k < n; ++k) {
                auto ij = s.basis_product(i, j);
                auto jk = s.basis_product(j, k);
                if (!ij || !jk) continue;
                auto left = s.mul(*ij, s.basis_vec(k));
                auto right = s.mul(s.basis_vec(i), *jk);
                if (left && right && *left != *right) {
                    associative = false;
                    aw = "(" + s.basis[i].label + " * " + s.basis[j].label + ") * " +
                         s.basis[k].label;
                    break;
                }
            }
    r.add("product_degree_additive", degree_additive, dw);
    r.add("product_unital", unital, uw);
    r.add("product_graded_commutative", commutative, cw);
    r.add("product_associative", associative, aw);
    return r;
}

/// Exact homology dimension per degree: dim ker(d at k) minus rank(d into k).
/// Signed so that inconsistent inputs (d squared nonzero) surface as
/// negative entries instead of wrapping.
inline std::map<int, int> homology_ranks(const TruncatedSpace& s) {
    std::map<int, int> out;
    for (int k : s.degrees()) {
        Matrix out_block = s.d_block(k);
        Matrix in_block = s.d_block(k - 1);
        int dim_k = static_cast<int>(s.degree_indices(k).size());
        int r_out = out_block.cols() ? static_cast<int>(rank(out_block)) : 0;
        int r_in = (in_block.cols() && in_block.rows()) ? static_cast<int>(rank(in_block)) : 0;
        out[k] = dim_k - r_out - r_in;
    }
    return out;
}

/// Joint cumulant of elements of a truncated space by the set-partition
/// formula. Arguments must be supported in degree zero (no regrouping
/// signs). Nullopt when a required product leaves the truncation.
inline std::optional<Rational> space_cumulant(const TruncatedSpace& s,
                                              const std::vector<Vec>& args) {
    if (args.empty() || args.size() > kMaxPartitionSize)
        throw std::out_of_range("cumulant arity must be between 1 and " +
                                std::to_string(kMaxPartitionSize));
    for (const auto& a : args)
        for (unsigned i = 0; i < s.dim(); ++i)
            if (!a[i].is_zero() && s.basis[i].degree != 0)
                throw std::invalid_argument("cumulant arguments must have degree zero");
    Rational total(0);
    for (const auto& pi : partitions_of(static_cast<unsigned>(args.size()))) {
        Rational term(factorial(static_cast<unsigned>(pi.blocks.size()) - 1));
        if (pi.blocks.size() % 2 == 0) term = -term;
        for (const auto& block : pi.blocks) {
            Vec prod = args[block[0]];
            for (std::size_t b = 1; b < block.size(); ++b) {
                auto next = s.mul(prod, args[block[b]]);
                if (!next) return std::nullopt;
                prod = std::move(*next);
            }
            term *= s.expect(prod);
            if (term.is_zero()) break;
        }
        total += term;
    }
    return total;
}

}  // namespace homprob
