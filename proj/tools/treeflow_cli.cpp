// Command-line front end: every computation of the library as a subcommand
// with JSON/CSV output. Data goes to stdout, diagnostics to stderr.

#include "treeflow/json_io.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace treeflow;

namespace {

struct CliConfig {
    int degree = 5;
    int t_order = 8;
    std::string format = "json";
    unsigned parallel = 0;
    unsigned seed = 12345;
};

FlowClass parse_class(const std::string& s) {
    if (s == "all") return FlowClass::All;
    if (s == "small") return FlowClass::Small;
    if (s == "closed") return FlowClass::Closed;
    if (s == "connected") return FlowClass::Connected;
    if (s == "connected-exit-1") return FlowClass::ConnectedExitOne;
    if (s == "saturated") return FlowClass::Saturated;
    throw CLI::ValidationError("--class", "unknown flow class: " + s);
}

void emit(const json& j, const CliConfig& cfg) {
    if (cfg.format == "pretty")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << j.dump() << "\n";
}

int run_trees(const CliConfig& cfg, int size) {
    json out = json::array();
    for (const auto& t : enumerate_rooted_trees(size))
        out.push_back(json{{"tree", t.encode()},
                           {"aut", t.aut().str()},
                           {"leaves", t.num_leaves()},
                           {"height", t.height()}});
    emit(out, cfg);
    return 0;
}

int run_flow(const CliConfig& cfg, const std::string& enc, const std::string& cls) {
    RootedTree t = RootedTree::parse(enc);
    FlowCalculator calc;
    json out{{"tree", t.encode()},
             {"E", to_json(calc.E(t))},
             {"D", to_json(calc.D(t))},
             {"F", to_json(calc.F(t))},
             {"Es", to_json(calc.saturated(t))},
             {"Ec", to_json(calc.Ec(t))},
             {"valor", valor(t)},
             {"admits_closed_connected", admits_closed_connected(t)}};
    FlowClass fc = parse_class(cls);
    auto counts = flow_slice_counts(t, fc, cfg.t_order);
    json cj = json::array();
    for (const auto& row : counts) cj.push_back(row);
    out["class"] = flow_class_name(fc);
    out["counts"] = cj;
    emit(out, cfg);
    return 0;
}

int run_series(const CliConfig& cfg, const std::string& name) {
    FlowCalculator calc;
    int N = cfg.degree;
    json j;
    if (name == "E_t")
        j = series_to_json(Et_series(calc, N));
    else if (name == "D_t")
        j = series_to_json(Dt_series(calc, N));
    else if (name == "Ec_t")
        j = series_to_json(Ect_series(calc, N));
    else if (name == "E")
        j = series_to_json(E0_series(calc, N));
    else if (name == "D")
        j = series_to_json(D0_series(calc, N));
    else if (name == "Ec")
        j = series_to_json(Ec0_series(calc, N));
    else if (name == "F")
        j = series_to_json(F_series(calc, N));
    else if (name == "Y")
        j = series_to_json(Y_series(calc, N));
    else if (name == "Z")
        j = series_to_json(Z_series(calc, N));
    else if (name == "Crls")
        j = series_to_json(crls_series<Rational>(N));
    else if (name.rfind("H:", 0) == 0)
        j = series_to_json(hk_series(std::stoll(name.substr(2)), N));
    else
        throw UnknownSeriesError("unknown series name: " + name);
    j["name"] = name;
    emit(j, cfg);
    return 0;
}

int run_dend(const CliConfig& cfg, const std::string& name) {
    FlowCalculator calc;
    int N = cfg.degree;
    json j;
    if (name == "sU_t")
        j = series_to_json(sUt_series(calc, N));
    else if (name == "sV_t")
        j = series_to_json(sVt_series(calc, N));
    else if (name == "sD_t")
        j = series_to_json(sDt_series(calc, N));
    else if (name == "sD")
        j = series_to_json(sDt_series(calc, N, false));
    else if (name == "sE_t")
        j = series_to_json(sEt_series(calc, N));
    else if (name == "sEc_t")
        j = series_to_json(sEct_series(calc, N));
    else if (name == "sEc")
        j = series_to_json(sEc_series(calc, N));
    else if (name == "sF")
        j = series_to_json(sF_series(calc, N));
    else if (name == "sF_t")
        j = series_to_json(sFt_series(calc, N));
    else if (name == "sZ")
        j = series_to_json(sZ_series(N));
    else if (name == "R")
        j = series_to_json(right_comb_series<Rational>(N));
    else if (name == "L")
        j = series_to_json(left_comb_series<Rational>(N));
    else
        throw UnknownSeriesError("unknown dendriform series name: " + name);
    j["name"] = name;
    emit(j, cfg);
    return 0;
}

int run_phi(const CliConfig& cfg, const std::string& name) {
    FlowCalculator calc;
    int N = cfg.degree;
    json j;
    if (name == "E_t")
        j = series_to_json(phi(Et_series(calc, N)));
    else if (name == "D_t")
        j = series_to_json(phi(Dt_series(calc, N)));
    else if (name == "Ec_t")
        j = series_to_json(phi(Ect_series(calc, N)));
    else if (name == "E")
        j = series_to_json(phi(E0_series(calc, N)));
    else if (name == "F")
        j = series_to_json(phi(F_series(calc, N)));
    else if (name == "Y")
        j = series_to_json(phi(Y_series(calc, N)));
    else if (name == "Z")
        j = series_to_json(phi(Z_series(calc, N)));
    else if (name == "Crls")
        j = series_to_json(phi(crls_series<Rational>(N)));
    else if (name.rfind("H:", 0) == 0)
        j = series_to_json(phi(hk_series(std::stoll(name.substr(2)), N)));
    else
        throw UnknownSeriesError("unknown series name: " + name);
    j["name"] = "phi(" + name + ")";
    emit(j, cfg);
    return 0;
}

IdempotentFamily parse_family(const std::string& s) {
    if (s == "D") return IdempotentFamily::D;
    if (s == "F") return IdempotentFamily::F;
    if (s == "F_t") return IdempotentFamily::Ft;
    if (s == "Z") return IdempotentFamily::Z;
    throw CLI::ValidationError("--family", "unknown idempotent family: " + s);
}

int run_idempotent(const CliConfig& cfg, const std::string& family_str, int n) {
    if (n < 1 || n > 7) throw InvalidParamsError("idempotent degree must be in 1..7");
    FlowCalculator calc;
    IdempotentFamily family = parse_family(family_str);
    auto x = idempotent_ribbon(family, n, calc);
    auto c = idempotent_scalar(family, n, calc);
    auto checks = quasi_idempotent_check(x, c, family_str + "_" + std::to_string(n));
    bool pass = true;
    for (const auto& ch : checks) pass = pass && ch.ok;
    bool conjectural =
        family == IdempotentFamily::Ft || family == IdempotentFamily::Z;
    if (cfg.format == "csv") {
        std::cout << "degree,ribbon,coefficient\n";
        for (unsigned m = 0; m < (1u << (n - 1)); ++m) {
            std::string w = symfun_detail::mask_to_word(m, n);
            std::cout << n << "," << w << ",\"" << x.coeff(w).str() << "\"\n";
        }
        std::cout << "# verdict: " << (pass ? "pass" : "FAIL") << ", scalar "
                  << c.str() << (conjectural ? " (conjecture)" : "") << "\n";
        return pass ? 0 : 1;
    }
    json table = json::array();
    for (unsigned m = 0; m < (1u << (n - 1)); ++m) {
        std::string w = symfun_detail::mask_to_word(m, n);
        table.push_back(json{{"degree", n}, {"ribbon", w}, {"coefficient", x.coeff(w).str()}});
    }
    json out{{"family", family_str},
             {"n", n},
             {"scalar", to_json(c)},
             {"verdict", pass ? "pass" : "FAIL"},
             {"conjectural", conjectural},
             {"table", table}};
    emit(out, cfg);
    return pass ? 0 : 1;
}

int run_verify(const CliConfig& cfg, bool theorems, bool conjectures) {
    VerifyOptions opt;
    opt.degree = cfg.degree;
    opt.t_order = cfg.t_order;
    opt.seed = cfg.seed;
    opt.parallel = cfg.parallel;
    if (!theorems && !conjectures) theorems = conjectures = true;
    std::vector<CheckReport> reports;
    if (theorems)
        for (auto& r : run_theorem_suite(opt)) reports.push_back(std::move(r));
    if (conjectures)
        for (auto& r : run_conjecture_scan(opt)) reports.push_back(std::move(r));
    std::sort(reports.begin(), reports.end(),
              [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
    json out = json::array();
    for (const auto& r : reports) out.push_back(to_json(r));
    emit(out, cfg);
    for (const auto& r : reports)
        if (!r.ok()) std::cerr << check_status_name(r.status) << ": " << r.id << "\n";
    return any_proved_failure(reports) ? 1 : 0;
}

int run_dyck(const CliConfig& cfg, int n) {
    if (n < 1 || n > 10) throw InvalidParamsError("dyck table bounded to n in 1..10");
    RootedTree t = linear_tree(n);
    json out = json::array();
    for (const auto& f : enumerate_flows(t, FlowClass::Closed, 0)) {
        json row = to_json(f);
        row["path"] = rho(t, f).word();
        out.push_back(row);
    }
    emit(out, cfg);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flow generating functions on rooted trees, Pre-Lie and Dendriform series"};
    app.require_subcommand(1);
    app.fallthrough();

    CliConfig cfg;
    app.add_option("-N,--degree", cfg.degree, "series truncation degree")
        ->envname("TREEFLOW_DEGREE")
        ->check(CLI::Range(1, 12));
    app.add_option("-M,--t-order", cfg.t_order, "t-expansion order")
        ->envname("TREEFLOW_T_ORDER")
        ->check(CLI::Range(2, 64));
    app.add_option("--format", cfg.format, "output format")
        ->envname("TREEFLOW_FORMAT")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.add_option("--parallel", cfg.parallel, "worker threads (0 = hardware)")
        ->envname("TREEFLOW_PARALLEL");
    app.add_option("--seed", cfg.seed, "seed for randomized property checks")
        ->envname("TREEFLOW_SEED");

    int size = 1;
    auto* trees = app.add_subcommand("trees", "enumerate canonical rooted trees");
    trees->add_option("--size", size, "number of vertices")->required()->check(CLI::Range(1, 12));

    std::string tree_enc, flow_class = "all";
    auto* flow = app.add_subcommand("flow", "per-tree flow generating functions");
    flow->add_option("--tree", tree_enc, "nested-parentheses encoding")->required();
    flow->add_option("--class", flow_class,
                     "all|small|closed|connected|connected-exit-1|saturated");

    std::string series_name;
    auto* series = app.add_subcommand("series", "Pre-Lie series dump");
    series->add_option("--name", series_name, "E_t|D_t|Ec_t|E|D|Ec|F|Y|Z|H:k|Crls")->required();

    std::string dend_name;
    auto* dend = app.add_subcommand("dend", "Dendriform series dump");
    dend->add_option("--name", dend_name, "sU_t|sV_t|sD_t|sD|sE_t|sEc_t|sEc|sF|sF_t|sZ|R|L")
        ->required();

    std::string phi_name;
    auto* phic = app.add_subcommand("phi", "dendriform image of a Pre-Lie series");
    phic->add_option("--name", phi_name, "E_t|D_t|Ec_t|E|F|Y|Z|H:k|Crls")->required();

    std::string family;
    int idem_n = 3;
    auto* idem = app.add_subcommand("idempotent", "ribbon table and quasi-idempotency verdict");
    idem->add_option("--family", family, "D|F|F_t|Z")->required();
    idem->add_option("--n", idem_n, "degree")->required();

    bool theorems = false, conjectures = false;
    auto* verify = app.add_subcommand("verify", "run the theorem suite and conjecture scans");
    verify->add_flag("--theorems", theorems, "proved identities only");
    verify->add_flag("--conjectures", conjectures, "conjecture scans only");

    int dyck_n = 3;
    auto* dyck = app.add_subcommand("dyck", "closed flows on Lnr_n vs Dyck paths");
    dyck->add_option("--n", dyck_n, "half-length")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (trees->parsed()) return run_trees(cfg, size);
        if (flow->parsed()) return run_flow(cfg, tree_enc, flow_class);
        if (series->parsed()) return run_series(cfg, series_name);
        if (dend->parsed()) return run_dend(cfg, dend_name);
        if (phic->parsed()) return run_phi(cfg, phi_name);
        if (idem->parsed()) return run_idempotent(cfg, family, idem_n);
        if (verify->parsed()) return run_verify(cfg, theorems, conjectures);
        if (dyck->parsed()) return run_dyck(cfg, dyck_n);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
