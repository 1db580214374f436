#pragma once

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "homprob/ce.hpp"
#include "homprob/linalg.hpp"
#include "homprob/rational.hpp"
#include "homprob/report.hpp"
#include "homprob/truncated.hpp"

namespace homprob {

/// Schema or parse failure, carrying a JSON-pointer-style location.
struct json_error : std::runtime_error {
    std::string pointer;
    json_error(const std::string& ptr, const std::string& what)
        : std::runtime_error(ptr + ": " + what), pointer(ptr) {}
};

namespace detail {

inline Rational rational_from_json(const nlohmann::json& j, const std::string& ptr) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        try {
            return Rational::from_string(j.get<std::string>());
        } catch (const std::exception& e) {
            throw json_error(ptr, e.what());
        }
    }
    throw json_error(ptr, "expected an integer or a \"p/q\" string");
}

inline const nlohmann::json& field(const nlohmann::json& j, const char* key,
                                   const std::string& ptr) {
    if (!j.is_object()) throw json_error(ptr, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw json_error(ptr + "/" + key, "missing required field");
    return *it;
}

inline Vec vec_from_json(const nlohmann::json& j, const std::string& ptr) {
    if (!j.is_array()) throw json_error(ptr, "expected an array");
    Vec v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(rational_from_json(j[i], ptr + "/" + std::to_string(i)));
    return v;
}

inline Matrix matrix_from_json(const nlohmann::json& j, const std::string& ptr) {
    if (!j.is_array() || j.empty()) throw json_error(ptr, "expected a non-empty array of rows");
    std::vector<Vec> rows;
    rows.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        rows.push_back(vec_from_json(j[i], ptr + "/" + std::to_string(i)));
    Matrix m(static_cast<unsigned>(rows.size()), static_cast<unsigned>(rows[0].size()));
    for (unsigned r = 0; r < m.rows(); ++r) {
        if (rows[r].size() != rows[0].size())
            throw json_error(ptr + "/" + std::to_string(r), "ragged matrix rows");
        for (unsigned c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

}  // namespace detail

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw json_error(path, "cannot open file");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw json_error(path, e.what());
    }
}

inline TruncatedSpace truncated_space_from_json(const nlohmann::json& j) {
    TruncatedSpace s;
    const auto& basis = detail::field(j, "basis", "");
    if (!basis.is_array() || basis.empty())
        throw json_error("/basis", "expected a non-empty array");
    for (std::size_t i = 0; i < basis.size(); ++i) {
        std::string ptr = "/basis/" + std::to_string(i);
        const auto& lab = detail::field(basis[i], "label", ptr);
        const auto& deg = detail::field(basis[i], "degree", ptr);
        if (!lab.is_string()) throw json_error(ptr + "/label", "expected a string");
        if (!deg.is_number_integer()) throw json_error(ptr + "/degree", "expected an integer");
        s.basis.push_back({lab.get<std::string>(), deg.get<int>()});
    }
    unsigned n = s.dim();

    s.d = detail::matrix_from_json(detail::field(j, "d", ""), "/d");
    if (s.d.rows() != n || s.d.cols() != n)
        throw json_error("/d", "expected a " + std::to_string(n) + "x" + std::to_string(n) +
                                   " matrix");

    s.expectation = detail::vec_from_json(detail::field(j, "expectation", ""), "/expectation");
    if (s.expectation.size() != n)
        throw json_error("/expectation", "expected " + std::to_string(n) + " entries");

    const auto& unit = detail::field(j, "unit", "");
    if (!unit.is_number_unsigned() || unit.get<unsigned>() >= n)
        throw json_error("/unit", "expected a basis index below " + std::to_string(n));
    s.unit = unit.get<unsigned>();

    const auto& prod = detail::field(j, "product", "");
    if (!prod.is_object()) throw json_error("/product", "expected an object");
    for (const auto& [key, val] : prod.items()) {
        std::string ptr = "/product/" + key;
        auto comma = key.find(',');
        unsigned a = 0, b = 0;
        try {
            if (comma == std::string::npos) throw std::invalid_argument("no comma");
            a = static_cast<unsigned>(std::stoul(key.substr(0, comma)));
            b = static_cast<unsigned>(std::stoul(key.substr(comma + 1)));
        } catch (const std::exception&) {
            throw json_error(ptr, "key must look like \"i,j\"");
        }
        if (a >= n || b >= n) throw json_error(ptr, "basis index out of range");
        Vec v = detail::vec_from_json(val, ptr);
        if (v.size() != n) throw json_error(ptr, "expected " + std::to_string(n) + " entries");
        s.product[{a, b}] = std::move(v);
    }
    return s;
}

inline TruncatedSpace load_truncated_space(const std::string& path) {
    return truncated_space_from_json(load_json_file(path));
}

inline nlohmann::json truncated_space_to_json(const TruncatedSpace& s) {
    nlohmann::json j;
    j["basis"] = nlohmann::json::array();
    for (const auto& b : s.basis) j["basis"].push_back({{"label", b.label}, {"degree", b.degree}});
    auto rat = [](const Rational& r) { return r.to_string(); };
    j["d"] = nlohmann::json::array();
    for (unsigned r = 0; r < s.d.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (unsigned c = 0; c < s.d.cols(); ++c) row.push_back(rat(s.d.at(r, c)));
        j["d"].push_back(std::move(row));
    }
    j["expectation"] = nlohmann::json::array();
    for (const auto& e : s.expectation) j["expectation"].push_back(rat(e));
    j["unit"] = s.unit;
    j["product"] = nlohmann::json::object();
    for (const auto& [key, vec] : s.product) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& e : vec) row.push_back(rat(e));
        j["product"][std::to_string(key.first) + "," + std::to_string(key.second)] =
            std::move(row);
    }
    return j;
}

/// Matrix form of a Lie action: the module basis labels, one matrix per
/// generator, the expectation row, and the unit index.
struct LieActionMatrices {
    std::vector<Matrix> rho;
    std::vector<std::string> labels;
    Vec expectation;
    unsigned unit = 0;
};

struct LieInput {
    LieAlgebraData lie;
    std::optional<std::string> symbolic;
    std::optional<LieActionMatrices> matrices;
};

inline LieInput lie_input_from_json(const nlohmann::json& j) {
    LieInput in;
    const auto& dim = detail::field(j, "dim", "");
    if (!dim.is_number_unsigned() || dim.get<unsigned>() < 1 ||
        dim.get<unsigned>() > kMaxLieDim)
        throw json_error("/dim", "expected an integer between 1 and " +
                                     std::to_string(kMaxLieDim));
    in.lie = make_lie(dim.get<unsigned>());
    unsigned n = in.lie.dim;

    const auto& f = detail::field(j, "f", "");
    if (!f.is_array()) throw json_error("/f", "expected an array of [i, j, k, coeff] entries");
    for (std::size_t t = 0; t < f.size(); ++t) {
        std::string ptr = "/f/" + std::to_string(t);
        const auto& e = f[t];
        if (!e.is_array() || e.size() != 4)
            throw json_error(ptr, "expected [i, j, k, coeff] with 1-based indices");
        unsigned idx[3];
        for (int c = 0; c < 3; ++c) {
            if (!e[c].is_number_unsigned() || e[c].get<unsigned>() < 1 ||
                e[c].get<unsigned>() > n)
                throw json_error(ptr + "/" + std::to_string(c),
                                 "expected an index between 1 and " + std::to_string(n));
            idx[c] = e[c].get<unsigned>() - 1;
        }
        in.lie.f[idx[0]][idx[1]][idx[2]] =
            detail::rational_from_json(e[3], ptr + "/3");
    }

    const auto& action = detail::field(j, "action", "");
    if (!action.is_object()) throw json_error("/action", "expected an object");
    if (action.contains("symbolic")) {
        const auto& sym = action["symbolic"];
        if (!sym.is_string()) throw json_error("/action/symbolic", "expected a string");
        in.symbolic = sym.get<std::string>();
        return in;
    }
    if (!action.contains("matrices"))
        throw json_error("/action", "expected either \"symbolic\" or \"matrices\"");

    LieActionMatrices m;
    const auto& mats = action["matrices"];
    if (!mats.is_array() || mats.size() != n)
        throw json_error("/action/matrices", "expected " + std::to_string(n) + " matrices");
    for (std::size_t i = 0; i < mats.size(); ++i)
        m.rho.push_back(detail::matrix_from_json(mats[i],
                                                 "/action/matrices/" + std::to_string(i)));
    const auto& labels = detail::field(action, "labels", "/action");
    if (!labels.is_array() || labels.empty())
        throw json_error("/action/labels", "expected a non-empty array");
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!labels[i].is_string())
            throw json_error("/action/labels/" + std::to_string(i), "expected a string");
        m.labels.push_back(labels[i].get<std::string>());
    }
    unsigned dimM = static_cast<unsigned>(m.labels.size());
    for (std::size_t i = 0; i < m.rho.size(); ++i)
        if (m.rho[i].rows() != dimM || m.rho[i].cols() != dimM)
            throw json_error("/action/matrices/" + std::to_string(i),
                             "expected a " + std::to_string(dimM) + "x" + std::to_string(dimM) +
                                 " matrix");
    m.expectation =
        detail::vec_from_json(detail::field(action, "expectation", "/action"),
                              "/action/expectation");
    if (m.expectation.size() != dimM)
        throw json_error("/action/expectation", "expected " + std::to_string(dimM) + " entries");
    const auto& unit = detail::field(action, "unit", "/action");
    if (!unit.is_number_unsigned() || unit.get<unsigned>() >= dimM)
        throw json_error("/action/unit", "expected a basis index below " + std::to_string(dimM));
    m.unit = unit.get<unsigned>();
    in.matrices = std::move(m);
    return in;
}

inline LieInput load_lie_input(const std::string& path) {
    return lie_input_from_json(load_json_file(path));
}

/// Turns a loaded Lie input into a matrix complex model. Symbolic actions
/// need the truncation degree; matrix actions ignore it.
inline CEModel make_ce_model(const LieInput& in, unsigned truncation) {
    if (in.symbolic) {
        if (*in.symbolic != "gaussian-translation")
            throw json_error("/action/symbolic", "unknown action \"" + *in.symbolic + "\"");
        for (unsigned i = 0; i < in.lie.dim; ++i)
            for (unsigned j = 0; j < in.lie.dim; ++j)
                for (unsigned k = 0; k < in.lie.dim; ++k)
                    if (!in.lie.f[i][j][k].is_zero())
                        throw json_error("/f",
                                         "the translation action needs zero structure constants");
        return gaussian_translation_model(in.lie.dim, truncation);
    }
    const LieActionMatrices& m = *in.matrices;
    return matrix_action_model(in.lie, m.rho, m.labels, m.expectation, m.unit);
}

inline nlohmann::json report_to_json(const Report& r) {
    nlohmann::json j;
    j["passed"] = r.passed();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : r.checks) {
        nlohmann::json e{{"name", c.name}, {"passed", c.passed}};
        if (!c.detail.empty()) e["detail"] = c.detail;
        j["checks"].push_back(std::move(e));
    }
    j["notes"] = r.notes;
    return j;
}

}  // namespace homprob
