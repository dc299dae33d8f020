// nilpact: exact-arithmetic certification of finite class-<=2 nilpotent group
// actions. JSON results go to stdout, a human-readable summary to stderr.
//
// Exit codes: 0 all checks pass, 1 a verification failed, 2 config/parse
// error, 3 coprimality violation, 4 exhaustiveness bound exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nilpact/chern.hpp"
#include "nilpact/errors.hpp"
#include "nilpact/jsonio.hpp"
#include "nilpact/lattice.hpp"
#include "nilpact/pipeline.hpp"
#include "nilpact/theta.hpp"
#include "nilpact/verify.hpp"
#include "nilpact/waring.hpp"

namespace {

using nilpact::jsonio::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCoprimality = 3;
constexpr int kExitBound = 4;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw nilpact::config_error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw nilpact::config_error("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int run_pipeline(const std::string& config_path, const std::string& mode_str) {
    json cfg_json = load_json_file(config_path);
    nilpact::jsonio::PipelineConfig cfg = nilpact::jsonio::parse_config(cfg_json);
    nilpact::pipeline::Mode mode = nilpact::pipeline::parse_mode(mode_str);

    json report = nilpact::pipeline::run(cfg, mode);
    emit(report);
    bool pass = nilpact::pipeline::report_all_pass(report);
    std::cerr << "pipeline: " << cfg.factors.size() << " factor(s), mode " << mode_str << ": "
              << (pass ? "all checks passed" : "FAILED") << "\n";
    return pass ? kExitPass : kExitFail;
}

int run_waring(long long n, long long delta, const std::string& set_str) {
    nilpact::waring::Multiset s;
    std::stringstream ss(set_str);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            s.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            throw nilpact::config_error("waring: bad --set entry '" + tok + "'");
        }
    }
    auto cert = nilpact::waring::waring_extend(n, s, delta);
    json out;
    out["n"] = n;
    out["delta"] = delta;
    out["input_set"] = cert.input_set;
    out["entries"] = nilpact::waring::canonical_display(cert.output.entries, delta);
    out["size"] = cert.output.entries.size();
    out["bound"] = cert.bound.get_str();
    json trace;
    trace["T1"] = cert.t1;
    trace["Pk"] = cert.p_k;
    trace["Tk"] = cert.t_k;
    out["trace"] = trace;
    json checks;
    for (long long k = 1; k <= n; ++k)
        checks["power_sum_mod_" + std::to_string(k)] =
            nilpact::waring::power_sum_mod(cert.output.entries, k, delta);
    checks["pass"] = cert.checks_pass;
    out["checks"] = checks;
    emit(out);
    std::cerr << "waring: |T| = " << cert.output.entries.size() << ", bound " << cert.bound.get_str()
              << ", " << (cert.checks_pass ? "all congruences hold" : "FAILED") << "\n";
    return cert.checks_pass ? kExitPass : kExitFail;
}

nilpact::chern::LineBundleSymbol parse_c1(const std::string& spec, int m) {
    nilpact::chern::EvenClass c(m);
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        auto colon = tok.find(':');
        std::string gens = tok.substr(0, colon);
        long long coeff = 1;
        if (colon != std::string::npos) {
            try {
                coeff = std::stoll(tok.substr(colon + 1));
            } catch (const std::exception&) {
                throw nilpact::config_error("chern: bad coefficient in '" + tok + "'");
            }
        }
        if (gens.size() != 3 || gens[0] != 'e' || !isdigit(gens[1]) || !isdigit(gens[2]))
            throw nilpact::config_error(
                "chern: c1 terms look like e12:1 (two single-digit generator indices)");
        int a = gens[1] - '0', b = gens[2] - '0';
        if (a < 1 || b < 1 || a > m || b > m || a == b)
            throw nilpact::config_error("chern: generator indices out of range in '" + tok + "'");
        c = c.add(nilpact::chern::EvenClass::term(m, {a - 1, b - 1}, nilpact::to_rat(coeff)));
    }
    return nilpact::chern::LineBundleSymbol(c);
}

int run_chern(int m, const std::string& c1_spec, long long d) {
    auto c1 = parse_c1(c1_spec, m);
    auto ad = nilpact::chern::alpha_d(c1, d, m);
    auto plan = nilpact::chern::complement_plan(c1, d, m);

    json out;
    out["dim"] = m;
    out["d"] = d;
    json alpha;
    alpha["powers"] = ad.symbol.powers;
    alpha["rank"] = ad.symbol.powers.size();
    alpha["r2_bound"] = nilpact::chern::r2_bound(m).get_str();
    alpha["divisibility_ok"] = ad.certificate.divisibility_ok;
    out["alpha_d"] = alpha;
    json plan_j;
    plan_j["total_rank"] = plan.total_rank.get_str();
    plan_j["r3_bound"] = nilpact::chern::r3_bound(m).get_str();
    plan_j["pad_lines"] = plan.pad_lines.get_str();
    plan_j["chi_summand_rank"] = plan.chi_summand_rank.get_str();
    plan_j["chi_supplied_by_topology"] = plan.chi_supplied_by_topology;
    plan_j["trivial"] = plan.certificate.trivial;
    out["complement_plan"] = plan_j;
    bool pass = ad.certificate.divisibility_ok && plan.certificate.trivial;
    out["pass"] = pass;
    emit(out);
    std::cerr << "chern: alpha[d] rank " << ad.symbol.powers.size() << ", total rank "
              << plan.total_rank.get_str() << ", " << (pass ? "certified" : "FAILED") << "\n";
    return pass ? kExitPass : kExitFail;
}

int run_theta_check(const std::string& config_path) {
    json j = load_json_file(config_path);
    nilpact::heisenberg::BilinearPairing mu =
        j.contains("extraspecial") ? nilpact::jsonio::parse_extraspecial(j)
                                   : nilpact::jsonio::parse_heisenberg(j);
    auto w = nilpact::theta::parametrise(mu);
    auto check = nilpact::theta::verify_parametrisation(w, mu);

    json out;
    out["admissible_tuple"] = w.delta.entries;
    out["theta_modulus"] = w.group.m();
    auto [deg, ord] = nilpact::theta::mumford_degree(w.delta);
    out["mumford_degree"] = deg.get_str();
    out["mumford_group_order"] = ord.get_str();
    out["pass"] = check.ok;
    if (!check.ok) out["witness"] = check.witness;
    emit(out);
    std::cerr << "theta: delta has " << w.delta.entries.size() << " entries, m = " << w.group.m()
              << ", " << (check.ok ? "parametrisation verified" : "FAILED") << "\n";
    return check.ok ? kExitPass : kExitFail;
}

int run_lattice_check(const std::string& config_path) {
    json j = load_json_file(config_path);
    json out;
    bool pass = true;
    if (j.contains("sublattice")) {
        auto data = nilpact::jsonio::parse_sublattice(j);
        auto rep = nilpact::lattice::validate_data(data);
        json items = json::array();
        for (const auto& item : rep.items) {
            json ji;
            ji["condition"] = item.condition;
            ji["pass"] = item.pass;
            if (!item.witness.empty()) ji["witness"] = item.witness;
            items.push_back(ji);
        }
        out["validation"] = items;
        pass = rep.all_pass;
        if (rep.all_pass) {
            auto action = nilpact::lattice::verify_action_morphisms(data);
            out["action_morphisms"] = action.ok;
            if (!action.ok) out["witness"] = action.witness;
            pass = action.ok;
        }
        out["digest"] = data.digest();
    } else {
        nilpact::heisenberg::BilinearPairing mu =
            j.contains("extraspecial") ? nilpact::jsonio::parse_extraspecial(j)
                                       : nilpact::jsonio::parse_heisenberg(j);
        auto dfh = nilpact::lattice::data_from_heisenberg(mu);
        out["digest"] = dfh.data.digest();
        out["diagram_ok"] = dfh.diagram_ok;
        auto action = nilpact::lattice::verify_action_morphisms(dfh.data);
        out["action_morphisms"] = action.ok;
        if (!action.ok) out["witness"] = action.witness;
        pass = dfh.diagram_ok && action.ok;
    }
    out["pass"] = pass;
    emit(out);
    std::cerr << "lattice: " << (pass ? "data verified" : "FAILED") << "\n";
    return pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact certification pipeline for nilpotent class-2 group actions"};
    app.require_subcommand(1);

    auto* pipeline_cmd = app.add_subcommand("pipeline", "end-to-end pipeline");
    auto* pipeline_run = pipeline_cmd->add_subcommand("run", "run the full chain on a config");
    std::string config_path, mode_str = "both";
    pipeline_run->add_option("--config", config_path, "JSON config file")->required();
    pipeline_run->add_option("--mode", mode_str, "birational|diff|both");

    auto* waring_cmd = app.add_subcommand("waring", "modular Waring constructions");
    auto* waring_solve = waring_cmd->add_subcommand("solve", "build a Waring certificate");
    long long w_n = 0, w_delta = 1;
    std::string w_set;
    waring_solve->add_option("--n", w_n, "degree")->required();
    waring_solve->add_option("--delta", w_delta, "modulus")->required();
    waring_solve->add_option("--set", w_set, "comma-separated multiset S");

    auto* chern_cmd = app.add_subcommand("chern", "Chern character certificates");
    auto* chern_certify = chern_cmd->add_subcommand("certify", "alpha[d] + complement plan");
    int c_dim = 2;
    long long c_d = 1;
    std::string c_c1;
    chern_certify->add_option("--dim", c_dim, "real torus dimension")->required();
    chern_certify->add_option("--c1", c_c1, "first Chern class, e.g. e12:1,e34:1");
    chern_certify->add_option("--d", c_d, "divisor parameter");

    auto* theta_cmd = app.add_subcommand("theta", "theta-group parametrisation");
    auto* theta_check = theta_cmd->add_subcommand("check", "verify the embedding for a config");
    std::string theta_config;
    theta_check->add_option("--config", theta_config, "JSON group config")->required();

    auto* lattice_cmd = app.add_subcommand("lattice", "isotropic sublattice data");
    auto* lattice_check = lattice_cmd->add_subcommand("check", "validate data / build from a group");
    std::string lattice_config;
    lattice_check->add_option("--config", lattice_config, "JSON config")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (pipeline_run->parsed()) return run_pipeline(config_path, mode_str);
        if (waring_solve->parsed()) return run_waring(w_n, w_delta, w_set);
        if (chern_certify->parsed()) return run_chern(c_dim, c_c1, c_d);
        if (theta_check->parsed()) return run_theta_check(theta_config);
        if (lattice_check->parsed()) return run_lattice_check(lattice_config);
        std::cerr << "no subcommand given\n";
        return kExitConfig;
    } catch (const nilpact::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const nilpact::bound_exceeded& e) {
        std::cerr << "bound exceeded: " << e.what() << "\n";
        return kExitBound;
    } catch (const nilpact::precondition_error& e) {
        std::string what = e.what();
        if (what.rfind("coprimality", 0) == 0) {
            std::cerr << "coprimality violation: " << what << "\n";
            return kExitCoprimality;
        }
        std::cerr << "precondition violated: " << what << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}
