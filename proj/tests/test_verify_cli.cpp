#include "doctest.h"

#include "treeflow/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace treeflow;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(TREEFLOW_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

json load_golden(const std::string& name) {
    std::ifstream in(std::string(TREEFLOW_GOLDEN_DIR) + "/" + name);
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

}  // namespace

TEST_CASE("cli outputs match the pinned golden files") {
    const std::pair<const char*, const char*> cases[] = {
        {"trees --size 4", "trees_size4.json"},
        {"flow --tree \"((()()))\" --class closed", "flow_fork22_closed.json"},
        {"series --name E_t --degree 3", "series_Et_deg3.json"},
        {"series --name Y --degree 4", "series_Y_deg4.json"},
        {"dend --name sD_t --degree 3", "dend_sDt_deg3.json"},
        {"dend --name sF --degree 4", "dend_sF_deg4.json"},
        {"phi --name Crls --degree 4", "phi_Crls_deg4.json"},
        {"idempotent --family D --n 3", "idempotent_D3.json"},
        {"dyck --n 3", "dyck_n3.json"},
    };
    for (const auto& [args, golden] : cases) {
        INFO(args);
        CliResult r = run_cli(args);
        CHECK(r.exit_code == 0);
        CHECK(json::parse(r.out) == load_golden(golden));
    }
}

TEST_CASE("cli json round-trips through the documented encodings") {
    CliResult r = run_cli("flow --tree \"((()()))\"");
    json j = json::parse(r.out);
    CHECK(RootedTree::parse(j["tree"].get<std::string>()) == fork(2, 2));
    // fraction matrix is [b-degree][t-degree] with "p/q" entries
    FlowCalculator calc;
    FlowFraction e = calc.E(fork(2, 2));
    const json& num = j["E"]["num"];
    for (std::size_t i = 0; i < num.size(); ++i)
        for (std::size_t jj = 0; jj < num[i].size(); ++jj)
            CHECK(Rational::parse(num[i][jj].get<std::string>()) ==
                  e.numerator().tcoeff(jj).coeff(i));
    CHECK(j["E"]["pole"].get<unsigned>() == e.pole());
    CliResult d = run_cli("dend --name sZ --degree 3");
    for (const auto& c : json::parse(d.out)["coeffs"])
        CHECK(sZ_coefficient(PBTree::parse(c["pbt"].get<std::string>())) ==
              BPoly([&] {
                  std::vector<Rational> v;
                  for (const auto& s : c["value"]) v.push_back(Rational::parse(s.get<std::string>()));
                  return v;
              }()));
}

TEST_CASE("cli diagnostics and exit codes") {
    CHECK(run_cli("series --name nonsense").exit_code != 0);
    CHECK(run_cli("flow --tree \"((\"").exit_code != 0);
    CHECK(run_cli("dend --name what").exit_code != 0);
    CHECK(run_cli("trees --size 0").exit_code != 0);
    CHECK(run_cli("idempotent --family Q --n 3").exit_code != 0);
    CHECK(run_cli("idempotent --family D --n 99").exit_code != 0);
}

TEST_CASE("cli csv idempotent table") {
    CliResult r = run_cli("idempotent --family F --n 3 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("degree,ribbon,coefficient") == 0);
    CHECK(r.out.find("# verdict: pass") != std::string::npos);
}

TEST_CASE("verify subcommand emits a report and a clean exit") {
    CliResult r = run_cli("verify --theorems --degree 3 --parallel 2");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j.is_array());
    CHECK(j.size() > 5);
    for (const auto& rep : j) {
        CHECK(rep["status"] == "proved-identity-pass");
        CHECK(rep.contains("scope"));
        CHECK(rep.contains("seconds"));
    }
}

TEST_CASE("verify report is deterministic given seed and limits") {
    auto strip_times = [](json j) {
        for (auto& rep : j) rep.erase("seconds");
        return j;
    };
    json a = strip_times(json::parse(run_cli("verify --theorems --degree 3 --seed 9").out));
    json b = strip_times(json::parse(run_cli("verify --theorems --degree 3 --seed 9").out));
    CHECK(a == b);
}

TEST_CASE("check reports classify failures by severity") {
    // proved identity: failure is build-breaking
    CheckReport proved = verify_detail::timed("t", "scope", false, [] {
        return std::pair{false, std::string("w")};
    });
    CHECK(proved.status == CheckStatus::ProvedFail);
    CHECK(any_proved_failure({proved}));
    // conjecture: a counterexample is a reportable result, not a failure
    CheckReport conj = verify_detail::timed("c", "scope", true, [] {
        return std::pair{false, std::string("w")};
    });
    CHECK(conj.status == CheckStatus::ConjectureCounterexample);
    CHECK_FALSE(any_proved_failure({conj}));
    CHECK_FALSE(conj.ok());
    // exceptions surface as failures with the message as witness
    CheckReport boom = verify_detail::timed("b", "scope", false,
                                            []() -> std::pair<bool, std::string> {
                                                throw std::runtime_error("boom");
                                            });
    CHECK(boom.status == CheckStatus::ProvedFail);
    CHECK(boom.witness.find("boom") != std::string::npos);
}

TEST_CASE("fault injection: a corrupted coefficient is caught with its witness") {
    FlowCalculator calc;
    auto good = Et_series(calc, 3);
    auto bad = good;
    // corrupt ca_{2,t}: the master-equation comparison must point at Lnr_2
    FlowFraction wrong = calc.ca_t(2) + FlowFraction(BPoly::monomial(1));
    bad.set(linear_tree(2), wrong);
    auto diff = PreLieSeries<FlowFraction>::first_difference(good, bad);
    CHECK(diff == linear_tree(2).encode());
    // and the identity checker reports it rather than passing silently
    PreLieSeries<FlowFraction> rhs(3);
    for (int n = 1; n <= 3; ++n)
        for (const auto& t : enumerate_rooted_trees(n)) {
            FlowFraction d = calc.D(t);
            FlowFraction over_t = (d - FlowFraction(d.eval_t0())).divided_by_t();
            over_t.scale(BPoly::monomial(1));
            rhs.set(t, d * FlowFraction::inv_one_minus_t(1) + over_t);
        }
    auto report = prelie_detail::compare("master", bad, rhs);
    CHECK_FALSE(report.ok);
    CHECK(report.witness == linear_tree(2).encode());
}

TEST_CASE("full theorem suite and conjecture scan at reduced scale") {
    VerifyOptions opt;
    opt.degree = 4;
    opt.oracle_degree = 4;
    opt.dyck_max = 5;
    opt.fork_max = 6;
    opt.y_max = 5;
    opt.ft_max = 4;
    opt.z_max = 4;
    opt.idempotent_max = 4;
    opt.groupring_max = 4;
    opt.realroot_max = 5;
    opt.random_cases = 20;
    opt.parallel = 2;
    for (const auto& r : run_theorem_suite(opt)) {
        INFO(r.id, " witness ", r.witness);
        CHECK(r.status == CheckStatus::ProvedPass);
    }
    for (const auto& r : run_conjecture_scan(opt)) {
        INFO(r.id, " witness ", r.witness);
        CHECK(r.status == CheckStatus::ConjectureConsistent);
    }
}
