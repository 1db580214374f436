#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "homprob/homprob.hpp"

namespace {

using namespace homprob;
using nlohmann::json;

struct Options {
    std::string expr = "x";
    std::string p, q;
    std::string input;
    std::string output;
    std::string format = "text";
    unsigned max_order = 6;
    unsigned truncation = 8;
    int index = -1;
};

void print_report(const Report& r) { std::cout << r.to_text(); }

int finish(const Report& r, const Options& opt, json payload) {
    if (opt.format == "json") {
        payload["report"] = report_to_json(r);
        std::cout << payload.dump(2) << "\n";
    } else {
        print_report(r);
    }
    return r.passed() ? 0 : 1;
}

int run_moments(const Options& opt) {
    GradedPoly p = parse_poly(opt.expr);
    if (!p.is_x_polynomial())
        throw std::invalid_argument("moments are defined for x-polynomials only");
    json rows = json::array();
    if (opt.format == "text") std::cout << "moments of " << print_poly(p) << "\n";
    for (unsigned n = 1; n <= opt.max_order; ++n) {
        Rational m = gauss_E(p.pow(n));
        if (opt.format == "json")
            rows.push_back({{"order", n}, {"value", m.to_string()}});
        else
            std::cout << "  E(p^" << n << ") = " << m.to_string() << "\n";
    }
    if (opt.format == "json")
        std::cout << json{{"command", "moments"}, {"expr", print_poly(p)}, {"moments", rows}}.dump(2)
                  << "\n";
    return 0;
}

int run_cumulants_symbolic(const Options& opt) {
    GradedPoly p = parse_poly(opt.expr);
    if (!p.is_x_polynomial())
        throw std::invalid_argument("cumulants are defined for x-polynomials only");
    ProbabilitySpace g = gaussian_space();
    Report r;
    json rows = json::array();
    std::string table;
    bool agree = true;
    std::string w;
    for (unsigned n = 1; n <= opt.max_order; ++n) {
        std::vector<GradedPoly> args(n, p);
        Rational k = total_cumulant(g, args);
        Rational k2 = total_cumulant_via_transport(g, args);
        if (k != k2 && agree) {
            agree = false;
            w = "order " + std::to_string(n) + ": " + k.to_string() + " vs " + k2.to_string();
        }
        rows.push_back({{"order", n}, {"value", k.to_string()}});
        table += "  k_" + std::to_string(n) + " = " + k.to_string() + "\n";
    }
    r.add("partition_and_transport_routes_agree", agree, w);
    if (opt.format == "text") std::cout << "cumulants of " << print_poly(p) << "\n" << table;
    return finish(r, opt, {{"command", "cumulants"}, {"expr", print_poly(p)}, {"cumulants", rows}});
}

int run_cumulants_space(const Options& opt) {
    TruncatedSpace s = load_truncated_space(opt.input);
    Report v = validate_space(s);
    if (!v.passed()) return finish(v, opt, {{"command", "cumulants"}, {"input", opt.input}});
    unsigned idx;
    if (opt.index >= 0) {
        idx = static_cast<unsigned>(opt.index);
        if (idx >= s.dim()) throw std::invalid_argument("--index is out of range");
    } else {
        std::optional<unsigned> found;
        for (unsigned i = 0; i < s.dim() && !found; ++i)
            if (s.basis[i].degree == 0 && i != s.unit) found = i;
        if (!found)
            throw std::invalid_argument("no degree-0 basis element besides the unit; use --index");
        idx = *found;
    }
    json rows = json::array();
    if (opt.format == "text")
        std::cout << "cumulants of basis element " << s.basis[idx].label << "\n";
    for (unsigned n = 1; n <= opt.max_order; ++n) {
        auto k = space_cumulant(s, std::vector<Vec>(n, s.basis_vec(idx)));
        std::string shown = k ? k->to_string() : "undefined (product leaves the truncation)";
        rows.push_back({{"order", n}, {"value", k ? json(k->to_string()) : json(nullptr)}});
        if (opt.format == "text") std::cout << "  k_" << n << " = " << shown << "\n";
    }
    if (opt.format == "json")
        std::cout << json{{"command", "cumulants"},
                          {"input", opt.input},
                          {"element", s.basis[idx].label},
                          {"cumulants", rows}}
                         .dump(2)
                  << "\n";
    return 0;
}

int run_homotopy(const Options& opt) {
    GradedPoly p = parse_poly(opt.p), q = parse_poly(opt.q);
    Report r = verify_homotopy(p, q, opt.max_order);
    if (opt.format == "text")
        std::cout << "homotopy between collections generated by " << print_poly(p) << " and "
                  << print_poly(q) << " through order " << opt.max_order << "\n";
    return finish(r, opt,
                  {{"command", "homotopy"},
                   {"p", print_poly(p)},
                   {"q", print_poly(q)},
                   {"max_order", opt.max_order}});
}

int run_ce(const Options& opt) {
    LieInput in = load_lie_input(opt.input);
    Report lie = validate_lie(in.lie);
    if (!lie.passed()) return finish(lie, opt, {{"command", "ce"}, {"input", opt.input}});
    CEModel m = make_ce_model(in, opt.truncation);
    Report r = lie;
    r.merge(check_ce_representation(m));
    r.merge(check_ce_d_squared(m));
    r.merge(check_cone_conditions(m));
    CEHomologyPoint h0 = ce_h0(m);
    if (opt.format == "text")
        std::cout << "complex over a Lie algebra of dimension " << in.lie.dim
                  << ", coefficient window " << m.dims[0] << ", degree-0 homology dimension "
                  << h0.dim << "\n";
    return finish(r, opt,
                  {{"command", "ce"},
                   {"input", opt.input},
                   {"lie_dim", in.lie.dim},
                   {"window", m.dims[0]},
                   {"h0_dim", h0.dim}});
}

int run_cone(const Options& opt) {
    TruncatedSpace s = load_truncated_space(opt.input);
    Report v = validate_space(s);
    if (!v.passed()) return finish(v, opt, {{"command", "cone"}, {"input", opt.input}});
    ConeResult cr = build_algebraic_cone(s);
    std::vector<Vec> probes;
    for (unsigned i = 0; i < s.dim(); ++i)
        if (s.basis[i].degree == 0 && i != s.unit) probes.push_back(s.basis_vec(i));
    Report r = verify_cone(cr, probes, opt.max_order);
    if (!opt.output.empty()) {
        std::ofstream out(opt.output);
        if (!out) throw std::runtime_error("cannot write " + opt.output);
        out << truncated_space_to_json(cr.cone).dump(2) << "\n";
    }
    json ranks = json::object();
    for (const auto& [deg, rk] : homology_ranks(cr.cone))
        ranks[std::to_string(deg)] = rk;
    if (opt.format == "text") {
        std::cout << "cone over a space of dimension " << s.dim() << ": dimension "
                  << cr.cone.dim() << ", " << cr.decomposition.K.size()
                  << " added generators, " << probes.size() << " cumulant probes\n";
        std::cout << "cone homology ranks by degree:";
        for (const auto& [deg, rk] : homology_ranks(cr.cone)) std::cout << " " << deg << ":" << rk;
        std::cout << "\n";
    }
    return finish(r, opt,
                  {{"command", "cone"},
                   {"input", opt.input},
                   {"base_dim", s.dim()},
                   {"cone_dim", cr.cone.dim()},
                   {"added_generators", cr.decomposition.K.size()},
                   {"homology_ranks", ranks}});
}

int run_remark(const Options& opt) {
    RemarkResult res = remark_experiment(opt.max_order);
    json rows = json::array();
    if (opt.format == "text")
        std::cout << "joint cumulants of the reflected pair of collections through order "
                  << opt.max_order << "\n";
    for (const auto& e : res.entries) {
        rows.push_back({{"word", word_label(e.word)},
                        {"first", e.first.to_string()},
                        {"second", e.second.to_string()},
                        {"agree", e.agree}});
        if (opt.format == "text")
            std::cout << "  k[" << word_label(e.word) << "] = " << e.first.to_string() << " | "
                      << e.second.to_string() << (e.agree ? "" : "   <- differ") << "\n";
    }
    return finish(res.report, opt,
                  {{"command", "remark"}, {"max_order", opt.max_order}, {"entries", rows}});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculator for homotopy probability spaces"};
    app.require_subcommand(1);
    Options opt;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* moments = app.add_subcommand("moments", "moment table of an x-polynomial");
    moments->add_option("--expr", opt.expr, "x-polynomial, e.g. 'x^2 - 1'");
    moments->add_option("--max-order", opt.max_order, "largest power")->check(CLI::Range(1, 40));
    add_format(moments);

    CLI::App* cumulants =
        app.add_subcommand("cumulants", "cumulant table, symbolic or from a space file");
    cumulants->add_option("--expr", opt.expr, "x-polynomial (symbolic mode)");
    cumulants->add_option("--input", opt.input, "truncated space JSON file");
    cumulants->add_option("--index", opt.index, "basis element to probe (space mode)");
    cumulants->add_option("--max-order", opt.max_order, "largest order")->check(CLI::Range(1, 12));
    add_format(cumulants);

    CLI::App* homotopy =
        app.add_subcommand("homotopy", "verify the explicit homotopy between two collections");
    homotopy->add_option("--p", opt.p, "first x-polynomial")->required();
    homotopy->add_option("--q", opt.q, "second x-polynomial")->required();
    homotopy->add_option("--max-order", opt.max_order, "largest arity")->check(CLI::Range(1, 8));
    add_format(homotopy);

    CLI::App* ce = app.add_subcommand("ce", "checks for a complex built from a Lie action");
    ce->add_option("--input", opt.input, "Lie algebra JSON file")->required();
    ce->add_option("--truncation", opt.truncation, "coefficient window size")
        ->check(CLI::Range(1, 64));
    add_format(ce);

    CLI::App* cone = app.add_subcommand("cone", "build and verify the cone over a space file");
    cone->add_option("--input", opt.input, "truncated space JSON file")->required();
    cone->add_option("--max-order", opt.max_order, "cumulant probe order")
        ->check(CLI::Range(1, 12));
    cone->add_option("--output", opt.output, "write the cone as JSON to this file");
    add_format(cone);

    CLI::App* remark =
        app.add_subcommand("remark", "joint cumulant tables of the reflected pair");
    remark->add_option("--max-order", opt.max_order, "largest word length")
        ->check(CLI::Range(1, 6));
    add_format(remark);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (moments->parsed()) return run_moments(opt);
        if (cumulants->parsed())
            return opt.input.empty() ? run_cumulants_symbolic(opt) : run_cumulants_space(opt);
        if (homotopy->parsed()) return run_homotopy(opt);
        if (ce->parsed()) return run_ce(opt);
        if (cone->parsed()) return run_cone(opt);
        if (remark->parsed()) return run_remark(opt);
    } catch (const json_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "expression error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
