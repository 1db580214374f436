#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include <json.hpp>

#include "homprob/json_io.hpp"

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(HOMPROB_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
    int status = pclose(pipe);
    if (WIFEXITED(status)) res.code = WEXITSTATUS(status);
    return res;
}

std::string fixture(const std::string& name) {
    return std::string(HOMPROB_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("moments command") {
    RunResult r = run_cli("moments --expr x --max-order 8");
    INFO(r.out);
    CHECK(r.code == 0);
    CHECK(r.out.find("E(p^8) = 105") != std::string::npos);

    r = run_cli("moments --expr 'x^2 - 1' --max-order 2");
    CHECK(r.code == 0);
    CHECK(r.out.find("E(p^1) = 0") != std::string::npos);
    CHECK(r.out.find("E(p^2) = 2") != std::string::npos);

    r = run_cli("moments --expr x --max-order 4 --format json");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["command"] == "moments");
    CHECK(j["moments"][3]["value"] == "3");

    CHECK(run_cli("moments --expr 'x + $'").code == 2);
    CHECK(run_cli("moments --max-order 100").code == 2);
    CHECK(run_cli("moments --expr eta").code == 2);
}

TEST_CASE("cumulants command, symbolic and from a file") {
    RunResult r = run_cli("cumulants --expr x^2 --max-order 4");
    INFO(r.out);
    CHECK(r.code == 0);
    CHECK(r.out.find("k_3 = 8") != std::string::npos);
    CHECK(r.out.find("k_4 = 48") != std::string::npos);
    CHECK(r.out.find("[pass] partition_and_transport_routes_agree") != std::string::npos);

    r = run_cli("cumulants --input " + fixture("two_point_space.json") + " --max-order 3");
    INFO(r.out);
    CHECK(r.code == 0);
    CHECK(r.out.find("k_1 = 1/3") != std::string::npos);
    CHECK(r.out.find("k_2 = 2/9") != std::string::npos);
    CHECK(r.out.find("k_3 = 2/27") != std::string::npos);

    r = run_cli("cumulants --input " + fixture("two_point_space.json") +
                " --max-order 2 --format json");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["element"] == "delta");
    CHECK(j["cumulants"][1]["value"] == "2/9");

    r = run_cli("cumulants --input " + fixture("corrupt/two_point_bad_expectation.json"));
    CHECK(r.code == 2);
    CHECK(r.out.find("/expectation") != std::string::npos);
}

TEST_CASE("homotopy command") {
    RunResult r = run_cli("homotopy --p x --q=-x --max-order 4");
    INFO(r.out);
    CHECK(r.code == 0);
    CHECK(r.out.find("[pass] equal_cumulants") != std::string::npos);
    CHECK(r.out.find("[pass] homotopy_closed") != std::string::npos);
    CHECK(r.out.find("note:") != std::string::npos);

    r = run_cli("homotopy --p x --q x^2 --max-order 3");
    CHECK(r.code == 1);
    CHECK(r.out.find("[FAIL] equal_cumulants") != std::string::npos);

    r = run_cli("homotopy --p x --q=-x --max-order 4 --format json");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["report"]["passed"] == true);

    CHECK(run_cli("homotopy --p x").code == 2);
    CHECK(run_cli("homotopy --p x --q t").code == 2);
}

TEST_CASE("ce command") {
    RunResult r = run_cli("ce --input " + fixture("gaussian_translation.json") +
                          " --truncation 8");
    INFO(r.out);
    CHECK(r.code == 0);
    CHECK(r.out.find("[pass] negative_degrees_exact") != std::string::npos);
    CHECK(r.out.find("degree-0 homology dimension 1") != std::string::npos);

    r = run_cli("ce --input " + fixture("so3_trivial_action.json"));
    INFO(r.out);
    CHECK(r.code == 1);
    CHECK(r.out.find("[FAIL] negative_degrees_exact") != std::string::npos);
    CHECK(r.out.find("degree -3 homology has dimension 1") != std::string::npos);

    r = run_cli("ce --input " + fixture("so3_adjoint_action.json") + " --format json");
    REQUIRE(r.code == 1);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["report"]["passed"] == false);
    bool rep_ok = false, exp_bad = false;
    for (const auto& c : j["report"]["checks"]) {
        if (c["name"] == "representation_property") rep_ok = c["passed"];
        if (c["name"] == "expectation_kills_action") exp_bad = !c["passed"].get<bool>();
    }
    CHECK(rep_ok);
    CHECK(exp_bad);

    r = run_cli("ce --input " + fixture("corrupt/so3_bad_antisym.json"));
    CHECK(r.code == 1);
    CHECK(r.out.find("[FAIL] antisymmetric") != std::string::npos);

    CHECK(run_cli("ce --input " + fixture("no_such_file.json")).code == 2);
}

TEST_CASE("cone command") {
    RunResult r = run_cli("cone --input " + fixture("two_point_space.json") + " --max-order 5");
    INFO(r.out);
    CHECK(r.code == 0);
    CHECK(r.out.find("cone over a space of dimension 2: dimension 3") != std::string::npos);
    CHECK(r.out.find("[pass] cumulants_preserved") != std::string::npos);
    CHECK(r.out.find("[pass] homology_point") != std::string::npos);

    std::string out_path = "cone_cli_roundtrip.json";
    r = run_cli("cone --input " + fixture("three_point_space.json") + " --output " + out_path);
    REQUIRE(r.code == 0);
    homprob::TruncatedSpace cone = homprob::load_truncated_space(out_path);
    CHECK(cone.dim() == 5);
    CHECK(cone.basis[3].label == "ck1");
    CHECK(cone.basis[3].degree == -1);
    std::remove(out_path.c_str());

    r = run_cli("cone --input " + fixture("corrupt/two_point_drifting_unit.json"));
    CHECK(r.code == 1);
    CHECK(r.out.find("[FAIL] unit_expectation_one") != std::string::npos);

    CHECK(run_cli("cone --input " + fixture("no_such_file.json")).code == 2);
}

TEST_CASE("remark command") {
    RunResult r = run_cli("remark --max-order 4");
    INFO(r.out);
    CHECK(r.code == 0);
    CHECK(r.out.find("[pass] routes_consistent") != std::string::npos);
    CHECK(r.out.find("k[e1(.)e1] = 1 | 1") != std::string::npos);
    CHECK(r.out.find("<- differ") == std::string::npos);

    r = run_cli("remark --max-order 3 --format json");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["report"]["passed"] == true);
    CHECK(j["entries"].size() == 2 + 3 + 4);
    for (const auto& e : j["entries"]) CHECK(e["agree"] == true);

    CHECK(run_cli("remark --max-order 9").code == 2);
}

TEST_CASE("top level usage") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
}
