#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "homprob/chain.hpp"
#include "homprob/gaussian.hpp"
#include "homprob/graded_poly.hpp"
#include "homprob/linalg.hpp"
#include "homprob/rational.hpp"
#include "homprob/report.hpp"
#include "homprob/truncated.hpp"

namespace homprob {

inline constexpr unsigned kMaxLieDim = 6;

/// Structure constants of a finite-dimensional Lie algebra over the
/// rationals: [e_i, e_j] = sum_k f[i][j][k] e_k, indices 0-based.
struct LieAlgebraData {
    unsigned dim = 0;
    std::vector<std::vector<std::vector<Rational>>> f;

    const Rational& structure(unsigned i, unsigned j, unsigned k) const { return f[i][j][k]; }
};

inline LieAlgebraData make_lie(unsigned dim) {
    if (dim < 1 || dim > kMaxLieDim)
        throw std::out_of_range("Lie dimension must be between 1 and " +
                                std::to_string(kMaxLieDim));
    LieAlgebraData lie;
    lie.dim = dim;
    lie.f.assign(dim, std::vector<std::vector<Rational>>(dim, std::vector<Rational>(dim)));
    return lie;
}

/// so(3): [e_i, e_j] = sum_k epsilon_ijk e_k.
inline LieAlgebraData so3() {
    LieAlgebraData lie = make_lie(3);
    lie.f[0][1][2] = Rational(1);
    lie.f[1][0][2] = Rational(-1);
    lie.f[1][2][0] = Rational(1);
    lie.f[2][1][0] = Rational(-1);
    lie.f[2][0][1] = Rational(1);
    lie.f[0][2][1] = Rational(-1);
    return lie;
}

inline Report validate_lie(const LieAlgebraData& lie) {
    Report r;
    bool shape = lie.dim >= 1 && lie.dim <= kMaxLieDim && lie.f.size() == lie.dim;
    for (const auto& fi : lie.f) {
        if (fi.size() != lie.dim) shape = false;
        for (const auto& fij : fi)
            if (fij.size() != lie.dim) shape = false;
    }
    r.add("structure_shape", shape);
    if (!shape) return r;

    bool anti = true;
    std::string aw;
    for (unsigned i = 0; i < lie.dim && anti; ++i)
        for (unsigned j = 0; j < lie.dim && anti; ++j)
            for (unsigned k = 0; k < lie.dim && anti; ++k)
                if (lie.f[i][j][k] != -lie.f[j][i][k]) {
                    anti = false;
                    aw = "f(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")^" +
                         std::to_string(k + 1) + " = " + lie.f[i][j][k].to_string() +
                         " but f(" + std::to_string(j + 1) + "," + std::to_string(i + 1) + ")^" +
                         std::to_string(k + 1) + " = " + lie.f[j][i][k].to_string();
                }
    r.add("antisymmetric", anti, aw);

    bool jac = true;
    std::string jw;
    for (unsigned i = 0; i < lie.dim && jac; ++i)
        for (unsigned j = i + 1; j < lie.dim && jac; ++j)
            for (unsigned k = j + 1; k < lie.dim && jac; ++k)
                for (unsigned l = 0; l < lie.dim && jac; ++l) {
                    Rational s(0);
                    for (unsigned m = 0; m < lie.dim; ++m)
                        s += lie.f[i][j][m] * lie.f[m][k][l] + lie.f[j][k][m] * lie.f[m][i][l] +
                             lie.f[k][i][m] * lie.f[m][j][l];
                    if (!s.is_zero()) {
                        jac = false;
                        jw = "triple (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             "," + std::to_string(k + 1) + ") component " + std::to_string(l + 1);
                    }
                }
    r.add("jacobi", jac, jw);
    return r;
}

/// One exterior-algebra expansion step shared by the symbolic and matrix
/// differentials. For a generator mask S it lists
///  - action terms: drop eta_i from S with the interior-product sign and
///    apply the i-th action to the coefficient;
///  - structure terms: for i < j in S, drop both (inner indices first),
///    then left-multiply by eta_k weighted by f_ij^k, skipping k already
///    present. The overall structure-term sign is the one that makes the
///    differential square to zero for nonabelian actions; the cross terms
///    between action and structure parts then cancel against the
///    representation property.
struct CEActionTerm {
    unsigned mask;
    int sign;
    unsigned index;
};

struct CEStructureTerm {
    unsigned mask;
    Rational coeff;
};

struct CEExpansion {
    std::vector<CEActionTerm> action;
    std::vector<CEStructureTerm> structure;
};

namespace detail {
inline int bits_below(unsigned mask, unsigned i) {
    return std::popcount(mask & ((1u << i) - 1u));
}
}  // namespace detail

inline CEExpansion ce_expand(const LieAlgebraData& lie, unsigned mask) {
    CEExpansion out;
    for (unsigned i = 0; i < lie.dim; ++i) {
        if (!(mask & (1u << i))) continue;
        int sign = detail::bits_below(mask, i) % 2 ? -1 : 1;
        out.action.push_back({mask & ~(1u << i), sign, i});
    }
    for (unsigned i = 0; i < lie.dim; ++i) {
        if (!(mask & (1u << i))) continue;
        for (unsigned j = i + 1; j < lie.dim; ++j) {
            if (!(mask & (1u << j))) continue;
            int s1 = detail::bits_below(mask, j) % 2 ? -1 : 1;
            unsigned mj = mask & ~(1u << j);
            int s2 = detail::bits_below(mj, i) % 2 ? -1 : 1;
            unsigned rest = mj & ~(1u << i);
            for (unsigned k = 0; k < lie.dim; ++k) {
                const Rational& c = lie.f[i][j][k];
                if (c.is_zero() || (rest & (1u << k))) continue;
                int s3 = detail::bits_below(rest, k) % 2 ? -1 : 1;
                out.structure.push_back(
                    {rest | (1u << k), Rational(-s1 * s2 * s3) * c});
            }
        }
    }
    return out;
}

/// Element of the exterior-algebra complex with symbolic polynomial
/// coefficients: mask of eta generators -> coefficient.
struct CESymbolicElement {
    std::map<unsigned, GradedPoly> comps;

    bool is_zero() const {
        for (const auto& [mask, p] : comps)
            if (!p.is_zero()) return false;
        return true;
    }
    CESymbolicElement& add(unsigned mask, const GradedPoly& p) {
        if (p.is_zero()) return *this;
        auto [it, fresh] = comps.emplace(mask, p);
        if (!fresh) {
            it->second += p;
            if (it->second.is_zero()) comps.erase(it);
        }
        return *this;
    }
    bool operator==(const CESymbolicElement& o) const {
        for (const auto& [mask, p] : comps)
            if (!p.is_zero() && (!o.comps.count(mask) || o.comps.at(mask) != p)) return false;
        for (const auto& [mask, p] : o.comps)
            if (!p.is_zero() && !comps.count(mask)) return false;
        return true;
    }
};

inline CESymbolicElement ce_symbolic_d(const LieAlgebraData& lie,
                                       const std::vector<LinearOperator>& actions,
                                       const CESymbolicElement& v) {
    if (actions.size() != lie.dim)
        throw std::invalid_argument("need one action operator per Lie generator");
    CESymbolicElement out;
    for (const auto& [mask, p] : v.comps) {
        CEExpansion e = ce_expand(lie, mask);
        for (const auto& a : e.action) out.add(a.mask, Rational(a.sign) * actions[a.index](p));
        for (const auto& s : e.structure) out.add(s.mask, s.coeff * p);
    }
    return out;
}

inline std::vector<unsigned> masks_with_popcount(unsigned n, unsigned s) {
    std::vector<unsigned> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask)
        if (static_cast<unsigned>(std::popcount(mask)) == s) out.push_back(mask);
    return out;
}

/// Matrix presentation of the complex. The coefficient module is cut to a
/// window per exterior level: the first dims[s] of the level-0 basis form
/// the level-s basis, with dims[s] <= dims[s-1] so structure terms stay in
/// range and actions that raise the filtration by one step always land
/// inside the next window.
struct CEModel {
    LieAlgebraData lie;
    std::vector<std::string> labels;  // level-0 coefficient basis
    std::vector<unsigned> dims;       // dims[s] for s = 0..lie.dim
    std::vector<Matrix> rho;          // dims[0] x dims[0] each
    Vec expectation;                  // on the level-0 basis
    unsigned unit = 0;

    unsigned level_dim(unsigned s) const {
        return static_cast<unsigned>(masks_with_popcount(lie.dim, s).size()) * dims[s];
    }
};

inline void validate_model_shape(const CEModel& m) {
    if (m.dims.size() != m.lie.dim + 1) throw std::invalid_argument("dims must have n+1 entries");
    if (m.labels.size() != m.dims[0]) throw std::invalid_argument("labels/dims mismatch");
    for (unsigned s = 1; s <= m.lie.dim; ++s)
        if (m.dims[s] > m.dims[s - 1])
            throw std::invalid_argument("level windows must be non-increasing");
    if (m.rho.size() != m.lie.dim) throw std::invalid_argument("need one matrix per generator");
    for (const auto& R : m.rho)
        if (R.rows() != m.dims[0] || R.cols() != m.dims[0])
            throw std::invalid_argument("action matrices must be square on the level-0 basis");
    if (m.expectation.size() != m.dims[0])
        throw std::invalid_argument("expectation must cover the level-0 basis");
    if (m.unit >= m.dims[0]) throw std::invalid_argument("unit index out of range");
}

/// The degree -s to -s+1 block of the differential, with the level-s and
/// level-(s-1) windows as domain and codomain bases. Throws if an action
/// image escapes the codomain window.
inline Matrix ce_matrix(const CEModel& m, unsigned s) {
    if (s < 1 || s > m.lie.dim) throw std::out_of_range("block index out of range");
    auto dom_masks = masks_with_popcount(m.lie.dim, s);
    auto cod_masks = masks_with_popcount(m.lie.dim, s - 1);
    auto cod_rank = [&](unsigned mask) {
        auto it = std::find(cod_masks.begin(), cod_masks.end(), mask);
        return static_cast<unsigned>(it - cod_masks.begin());
    };
    unsigned dn = m.dims[s], cn = m.dims[s - 1];
    Matrix d(static_cast<unsigned>(cod_masks.size()) * cn,
             static_cast<unsigned>(dom_masks.size()) * dn);
    for (unsigned mi = 0; mi < dom_masks.size(); ++mi) {
        CEExpansion e = ce_expand(m.lie, dom_masks[mi]);
        for (unsigned j = 0; j < dn; ++j) {
            unsigned col = mi * dn + j;
            for (const auto& a : e.action) {
                unsigned base = cod_rank(a.mask) * cn;
                for (unsigned i = 0; i < m.dims[0]; ++i) {
                    const Rational& v = m.rho[a.index].at(i, j);
                    if (v.is_zero()) continue;
                    if (i >= cn)
                        throw std::length_error("action image escapes the level window");
                    d.at(base + i, col) += Rational(a.sign) * v;
                }
            }
            for (const auto& st : e.structure)
                d.at(cod_rank(st.mask) * cn + j, col) += st.coeff;
        }
    }
    return d;
}

/// Commutator identity [rho_i, rho_j] = sum_k f_ij^k rho_k, checked on the
/// columns that survive two applications of the action.
inline Report check_ce_representation(const CEModel& m, unsigned column_window) {
    Report r;
    bool ok = true;
    std::string w;
    unsigned jmax = std::min(column_window, m.dims[0]);
    for (unsigned i = 0; i < m.lie.dim && ok; ++i)
        for (unsigned j = i + 1; j < m.lie.dim && ok; ++j) {
            Matrix lhs = m.rho[i] * m.rho[j];
            Matrix rhs = m.rho[j] * m.rho[i];
            for (unsigned col = 0; col < jmax && ok; ++col)
                for (unsigned row = 0; row < m.dims[0] && ok; ++row) {
                    Rational want(0);
                    for (unsigned k = 0; k < m.lie.dim; ++k)
                        want += m.lie.f[i][j][k] * m.rho[k].at(row, col);
                    if (lhs.at(row, col) - rhs.at(row, col) != want) {
                        ok = false;
                        w = "pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                            ") at entry (" + std::to_string(row) + "," + std::to_string(col) + ")";
                    }
                }
        }
    r.add("representation_property", ok, w);
    return r;
}

inline Report check_ce_representation(const CEModel& m) {
    return check_ce_representation(m, m.lie.dim >= 2 ? m.dims[2] : m.dims[m.lie.dim]);
}

inline Report check_ce_d_squared(const CEModel& m) {
    Report r;
    bool ok = true;
    std::string w;
    for (unsigned s = 2; s <= m.lie.dim && ok; ++s) {
        Matrix prod = ce_matrix(m, s - 1) * ce_matrix(m, s);
        if (!prod.is_zero()) {
            ok = false;
            w = "block " + std::to_string(s) + " composed with block " + std::to_string(s - 1);
        }
    }
    r.add("d_squared_zero", ok, w);
    return r;
}

struct CEHomologyPoint {
    int dim = 0;
    std::vector<Vec> representatives;  // on the level-0 window
};

inline CEHomologyPoint ce_h0(const CEModel& m) {
    CEHomologyPoint out;
    SpanBuilder span(m.dims[0]);
    if (m.lie.dim >= 1) {
        Matrix d1 = ce_matrix(m, 1);
        for (unsigned c = 0; c < d1.cols(); ++c) span.add(d1.column(c));
    }
    out.dim = static_cast<int>(m.dims[0]) - static_cast<int>(span.dim());
    Vec unit(m.dims[0]);
    unit[m.unit] = Rational(1);
    if (span.add(unit)) out.representatives.push_back(unit);
    for (unsigned i = 0; i < m.dims[0]; ++i) {
        Vec e(m.dims[0]);
        e[i] = Rational(1);
        if (span.add(e)) out.representatives.push_back(e);
    }
    return out;
}

/// The three conditions under which the complex presents a one-point space:
/// the expectation annihilates every action image, the degree-0 homology is
/// the line through the unit with expectation one on it, and all negative
/// degrees are exact.
inline Report check_cone_conditions(const CEModel& m) {
    validate_model_shape(m);
    Report r;

    bool ae = true;
    std::string aw;
    for (unsigned i = 0; i < m.lie.dim && ae; ++i)
        for (unsigned j = 0; j < m.dims[1] && ae; ++j) {
            Rational v(0);
            for (unsigned row = 0; row < m.dims[0]; ++row)
                v += m.expectation[row] * m.rho[i].at(row, j);
            if (!v.is_zero()) {
                ae = false;
                aw = "generator " + std::to_string(i + 1) + " on basis column " +
                     std::to_string(j) + " gives " + v.to_string();
            }
        }
    r.add("expectation_kills_action", ae, aw);

    bool ue = m.expectation[m.unit] == Rational(1);
    r.add("unit_expectation_one", ue,
          ue ? "" : "E(unit) = " + m.expectation[m.unit].to_string());

    std::vector<unsigned> ranks(m.lie.dim + 2, 0);
    for (unsigned s = 1; s <= m.lie.dim; ++s) ranks[s] = rank(ce_matrix(m, s));

    int h0 = static_cast<int>(m.dims[0]) - static_cast<int>(ranks[1]);
    bool point = h0 == 1;
    r.add("point_in_degree_zero", point,
          "degree-0 homology has dimension " + std::to_string(h0));

    bool higher = true;
    std::string hw;
    for (unsigned s = 1; s <= m.lie.dim && higher; ++s) {
        int hs = static_cast<int>(m.level_dim(s)) - static_cast<int>(ranks[s]) -
                 static_cast<int>(ranks[s + 1]);
        if (hs != 0) {
            higher = false;
            hw = "degree -" + std::to_string(s) + " homology has dimension " + std::to_string(hs);
        }
    }
    r.add("negative_degrees_exact", higher, hw);
    return r;
}

/// Matrix of f -> f' - x f on the x-power basis x^0..x^(size-1). The last
/// column's x-raise falls outside and is dropped; callers keep their column
/// windows small enough that this never matters.
inline Matrix translation_matrix(unsigned size) {
    Matrix R(size, size);
    for (unsigned j = 0; j < size; ++j) {
        if (j > 0) R.at(j - 1, j) = Rational(static_cast<long long>(j));
        if (j + 1 < size) R.at(j + 1, j) = Rational(-1);
    }
    return R;
}

/// The abelian n-generator model acting on x-polynomials by translation,
/// with level windows x^0..x^(D+n-s) so every block of the differential is
/// exact on its window.
inline CEModel gaussian_translation_model(unsigned n, unsigned D) {
    CEModel m;
    m.lie = make_lie(n);
    m.dims.resize(n + 1);
    for (unsigned s = 0; s <= n; ++s) m.dims[s] = D + (n - s) + 1;
    m.labels.reserve(m.dims[0]);
    for (unsigned k = 0; k < m.dims[0]; ++k) m.labels.push_back(print_poly(GradedPoly::x(k)));
    m.rho.assign(n, translation_matrix(m.dims[0]));
    m.expectation.resize(m.dims[0]);
    for (unsigned k = 0; k < m.dims[0]; ++k) m.expectation[k] = gauss_E(GradedPoly::x(k));
    m.unit = 0;
    return m;
}

/// Model with a matrix action on a finite space: every level keeps the full
/// coefficient basis.
inline CEModel matrix_action_model(const LieAlgebraData& lie, const std::vector<Matrix>& rho,
                                   const std::vector<std::string>& labels, Vec expectation,
                                   unsigned unit) {
    CEModel m;
    m.lie = lie;
    m.labels = labels;
    m.dims.assign(lie.dim + 1, static_cast<unsigned>(labels.size()));
    m.rho = rho;
    m.expectation = std::move(expectation);
    m.unit = unit;
    validate_model_shape(m);
    return m;
}

inline std::vector<Matrix> adjoint_matrices(const LieAlgebraData& lie) {
    std::vector<Matrix> out;
    out.reserve(lie.dim);
    for (unsigned i = 0; i < lie.dim; ++i) {
        Matrix R(lie.dim, lie.dim);
        for (unsigned j = 0; j < lie.dim; ++j)
            for (unsigned k = 0; k < lie.dim; ++k) R.at(k, j) = lie.f[i][j][k];
        out.push_back(std::move(R));
    }
    return out;
}

}  // namespace homprob
