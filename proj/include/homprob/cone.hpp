#pragma once

#include <string>
#include <utility>
#include <vector>

#include "homprob/linalg.hpp"
#include "homprob/report.hpp"
#include "homprob/sym.hpp"
#include "homprob/truncated.hpp"

namespace homprob {

/// Splitting of a truncated space: B is the image of d, Bhat a complement of
/// ker d carried isomorphically onto B by d, H a complement of B inside
/// ker d containing the unit; K is the expectation kernel inside H.
struct Decomposition {
    std::vector<Vec> H, B, Bhat, K;
};

/// Greedy pivoting in basis order: Bhat collects the basis vectors whose
/// d-images extend the image span, B their images, H extends B to ker d
/// (unit first, then kernel basis vectors in order). K pairs each H vector
/// other than the unit with h - E(h) * unit.
inline Decomposition decompose(const TruncatedSpace& s) {
    Decomposition out;
    unsigned n = s.dim();
    SpanBuilder image(n);
    for (unsigned j = 0; j < n; ++j) {
        Vec dj = s.d.column(j);
        if (image.add(dj)) {
            out.B.push_back(dj);
            out.Bhat.push_back(s.basis_vec(j));
        }
    }
    SpanBuilder kernel_span(n);
    for (const auto& b : out.B) kernel_span.add(b);
    auto consider = [&](const Vec& v) {
        if (kernel_span.add(v)) out.H.push_back(v);
    };
    consider(s.unit_vec());
    for (const auto& v : nullspace_basis(s.d)) consider(v);
    for (const auto& h : out.H) {
        if (h == s.unit_vec()) continue;
        Vec k = h;
        vec_add_scaled(k, -s.expect(h), s.unit_vec());
        out.K.push_back(std::move(k));
    }
    return out;
}

/// A space together with its embedding into a built cone.
struct ConeResult {
    TruncatedSpace base;
    TruncatedSpace cone;
    Matrix inclusion;  // cone.dim() x base.dim()
    Decomposition decomposition;
};

/// Extends the space by one generator per vector of K, one degree lower,
/// with the differential carrying the generator to its K vector, zero
/// expectation, and products: zero against K, B, Bhat and against each
/// other, identity against the unit. The product against a general basis
/// element scales by that element's unit coordinate in the split basis.
inline ConeResult build_algebraic_cone(const TruncatedSpace& s) {
    ConeResult out;
    out.base = s;
    out.decomposition = decompose(s);
    const auto& K = out.decomposition.K;
    unsigned n = s.dim();
    unsigned m = n + static_cast<unsigned>(K.size());

    TruncatedSpace& c = out.cone;
    c.basis = s.basis;
    for (std::size_t i = 0; i < K.size(); ++i) {
        int deg = 0;
        for (unsigned j = 0; j < n; ++j)
            if (!K[i][j].is_zero()) {
                deg = s.basis[j].degree;
                break;
            }
        c.basis.push_back({"ck" + std::to_string(i + 1), deg - 1});
    }
    c.unit = s.unit;

    c.d = Matrix(m, m);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) c.d.at(i, j) = s.d.at(i, j);
    for (std::size_t i = 0; i < K.size(); ++i)
        for (unsigned r = 0; r < n; ++r) c.d.at(r, n + static_cast<unsigned>(i)) = K[i][r];

    c.expectation = s.expectation;
    c.expectation.resize(m);

    // unit coordinate of each original basis vector in the split basis
    // {unit} + K + B + Bhat
    std::vector<Vec> split;
    split.push_back(s.unit_vec());
    for (const auto& v : K) split.push_back(v);
    for (const auto& v : out.decomposition.B) split.push_back(v);
    for (const auto& v : out.decomposition.Bhat) split.push_back(v);
    Matrix basis_change = Matrix::from_columns(split);
    Vec unit_coord(n);
    for (unsigned j = 0; j < n; ++j) {
        auto sol = solve(basis_change, s.basis_vec(j));
        if (!sol) throw std::logic_error("split basis does not span the space");
        unit_coord[j] = (*sol)[0];
    }

    auto embed = [&](const Vec& v) {
        Vec w = v;
        w.resize(m);
        return w;
    };
    for (const auto& [key, val] : s.product) c.product[key] = embed(val);
    for (std::size_t i = 0; i < K.size(); ++i) {
        unsigned gi = n + static_cast<unsigned>(i);
        for (unsigned j = 0; j < n; ++j) {
            Vec gv(m);
            gv[gi] = unit_coord[j];
            int sign =
                (c.basis[gi].degree % 2 != 0 && s.basis[j].degree % 2 != 0) ? -1 : 1;
            c.product[{gi, j}] = gv;
            c.product[{j, gi}] = sign < 0 ? vec_scale(Rational(-1), gv) : gv;
        }
        for (std::size_t k = 0; k < K.size(); ++k) {
            c.product[{gi, n + static_cast<unsigned>(k)}] = Vec(m);
        }
    }

    out.inclusion = Matrix(m, n);
    for (unsigned i = 0; i < n; ++i) out.inclusion.at(i, i) = Rational(1);
    return out;
}

/// The five cone checks: injective degree-preserving inclusion, the
/// inclusion respecting every product defined in the base, the expectation
/// factoring through the cone, homology concentrated in degree zero with
/// dimension one, and cumulants of the probe elements agreeing in base and
/// cone through the given order.
inline Report verify_cone(const ConeResult& cr, const std::vector<Vec>& probes = {},
                          unsigned max_order = 6) {
    Report r;
    const TruncatedSpace& v = cr.base;
    const TruncatedSpace& c = cr.cone;

    bool degree_ok = true;
    for (unsigned j = 0; j < v.dim(); ++j) {
        Vec img = cr.inclusion.column(j);
        for (unsigned i = 0; i < c.dim(); ++i)
            if (!img[i].is_zero() && c.basis[i].degree != v.basis[j].degree) degree_ok = false;
    }
    r.add("inclusion_injective", rank(cr.inclusion) == v.dim());
    r.add("inclusion_degree_preserving", degree_ok);

    bool algebra = true;
    unsigned defined = 0, total_pairs = v.dim() * v.dim();
    std::string aw;
    for (unsigned i = 0; i < v.dim() && algebra; ++i)
        for (unsigned j = 0; j < v.dim(); ++j) {
            auto pv = v.basis_product(i, j);
            if (!pv) continue;
            ++defined;
            auto pc = c.mul(cr.inclusion.column(i), cr.inclusion.column(j));
            if (!pc || *pc != cr.inclusion * *pv) {
                algebra = false;
                aw = v.basis[i].label + " * " + v.basis[j].label;
                break;
            }
        }
    r.add("inclusion_algebra_map", algebra,
          algebra ? "checked " + std::to_string(defined) + "/" + std::to_string(total_pairs) +
                        " basis pairs (rest leave the truncation)"
                  : aw);

    bool factors = true;
    for (unsigned j = 0; j < v.dim(); ++j)
        if (c.expect(cr.inclusion.column(j)) != v.expectation[j]) factors = false;
    r.add("expectation_factors", factors);

    auto h = homology_ranks(c);
    bool homology_ok = true;
    std::string hw;
    for (const auto& [deg, dim] : h) {
        int want = deg == 0 ? 1 : 0;
        if (dim != want) {
            homology_ok = false;
            hw += "degree " + std::to_string(deg) + " has dimension " + std::to_string(dim) + "; ";
        }
    }
    r.add("homology_point", homology_ok, hw);

    bool cumulants_ok = true;
    std::string cw;
    if (!probes.empty()) {
        std::vector<Vec> embedded;
        embedded.reserve(probes.size());
        for (const auto& p : probes) embedded.push_back(cr.inclusion * p);
        for (unsigned order = 1; order <= max_order && cumulants_ok; ++order) {
            for (const auto& word : index_multisets(static_cast<unsigned>(probes.size()), order)) {
                std::vector<Vec> in_v, in_c;
                for (unsigned idx : word) {
                    in_v.push_back(probes[idx]);
                    in_c.push_back(embedded[idx]);
                }
                auto kv = space_cumulant(v, in_v);
                auto kc = space_cumulant(c, in_c);
                if (!kv || !kc) continue;  // product left the truncation
                if (*kv != *kc) {
                    cumulants_ok = false;
                    cw = "order " + std::to_string(order) + ": " + kv->to_string() + " vs " +
                         kc->to_string();
                    break;
                }
            }
        }
    }
    r.add("cumulants_preserved", cumulants_ok, cw);
    return r;
}

}  // namespace homprob
