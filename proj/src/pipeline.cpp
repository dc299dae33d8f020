#include "nilpact/pipeline.hpp"

#include <algorithm>

#include "nilpact/bounds.hpp"
#include "nilpact/chern.hpp"
#include "nilpact/errors.hpp"
#include "nilpact/verify.hpp"

namespace nilpact::pipeline {

using heisenberg::BilinearPairing;

std::pair<long long, long long> variety_params(long long r) {
    if (r < 0) throw precondition_error("variety_params: r >= 0 required");
    return {r * (r / 2), r};
}

Int stiefel_dim(const Int& k, const Int& t) {
    if (k < 1 || k > t) throw precondition_error("stiefel_dim: 1 <= k <= t required");
    return k * (2 * t - k);
}

Int grassmann_dim(const Int& k, const Int& t) {
    if (k < 1 || k > t) throw precondition_error("grassmann_dim: 1 <= k <= t required");
    return k * (t - k);
}

ManifoldParams manifold_params(long long r, std::size_t menu_cap) {
    if (r < 0) throw precondition_error("manifold_params: r >= 0 required");
    ManifoldParams out;
    out.torus_dim = 2 * r * (r / 2);
    out.t = chern::r3_bound(static_cast<int>(2 * (r / 2)));

    // menu: Stiefel_k(C^t) for 1 <= k <= t and Grassmann_k(C^{t+1}) for
    // 1 <= k <= t + 1
    Int t = out.t;
    for (Int k = 1; k <= t; ++k) {
        if (out.fiber_menu.size() >= menu_cap) {
            out.menu_truncated = true;
            return out;
        }
        out.fiber_menu.push_back(FiberChoice{"stiefel", k, stiefel_dim(k, t)});
    }
    for (Int k = 1; k <= t + 1; ++k) {
        if (out.fiber_menu.size() >= menu_cap) {
            out.menu_truncated = true;
            return out;
        }
        out.fiber_menu.push_back(FiberChoice{"grassmann", k, grassmann_dim(k, t + 1)});
    }
    return out;
}

Mode parse_mode(const std::string& s) {
    if (s == "birational") return Mode::birational;
    if (s == "diff") return Mode::diff;
    if (s == "both") return Mode::both;
    throw config_error("mode must be birational, diff, or both");
}

namespace {

json int_to_json(const Int& v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(v.get_str());
}

json even_class_to_json(const chern::EvenClass& c) {
    json out = json::array();
    for (const auto& [mask, coeff] : c.terms()) {
        json term;
        json gens = json::array();
        std::uint64_t rest = mask;
        while (rest) {
            gens.push_back(__builtin_ctzll(rest) + 1);
            rest &= rest - 1;
        }
        term["generators"] = gens;
        term["coeff"] = rat_to_string(coeff);
        out.push_back(term);
    }
    return out;
}

constexpr std::size_t kWitnessCap = 100;

json multiset_to_json(const waring::Multiset& m) {
    json out = json::array();
    std::size_t count = 0;
    for (long long v : m) {
        if (count++ >= kWitnessCap) {
            out.push_back("...truncated");
            break;
        }
        out.push_back(v);
    }
    return out;
}

json waring_cert_to_json(const waring::WaringCertificate& c) {
    json out;
    out["input_set"] = multiset_to_json(c.input_set);
    out["modulus"] = c.output.modulus;
    out["degree"] = c.output.degree;
    out["entries"] = multiset_to_json(
        waring::canonical_display(c.output.entries, c.output.modulus));
    out["size"] = c.output.entries.size();
    out["bound"] = int_to_json(c.bound);
    json trace;
    trace["T1"] = multiset_to_json(c.t1);
    json pk = json::array(), tk = json::array();
    for (const auto& p : c.p_k) pk.push_back(multiset_to_json(p));
    for (const auto& t : c.t_k) tk.push_back(multiset_to_json(t));
    trace["Pk"] = pk;
    trace["Tk"] = tk;
    out["trace"] = trace;
    out["checks_pass"] = c.checks_pass;
    if (!c.failure.empty()) out["failure"] = c.failure;
    return out;
}

// c1 of the line bundle attached to the data: the integral alternating form
// Im h on a basis of Lambda = Lambda_Re + i*Lambda_Re, as a degree-2 class on
// the 2n-torus.
chern::LineBundleSymbol c1_from_data(const lattice::IsotropicSublatticeData& d) {
    int n = d.n();
    int m = 2 * n;
    std::size_t ncols = n == 0 ? 0 : d.lambda_basis()[0].size();

    // basis of Lambda as lattice vectors: real columns then imaginary columns
    std::vector<lattice::LatticeVec> basis;
    for (std::size_t b = 0; b < ncols && basis.size() < static_cast<std::size_t>(n); ++b) {
        lattice::LatticeVec v = lattice::LatticeVec::zero(n);
        for (int t = 0; t < n; ++t) v.re[t] = d.lambda_basis()[t][b];
        basis.push_back(v);
    }
    for (std::size_t b = 0; b < ncols && basis.size() < static_cast<std::size_t>(m); ++b) {
        lattice::LatticeVec v = lattice::LatticeVec::zero(n);
        for (int t = 0; t < n; ++t) v.im[t] = d.lambda_basis()[t][b];
        basis.push_back(v);
    }

    chern::EvenClass c(m);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            Rat e = d.im_h(basis[a], basis[b]);
            if (!rat_is_integer(e))
                throw precondition_error("c1_from_data: Im h not integral on Lambda");
            if (e != 0) c = c.add(chern::EvenClass::term(m, {a, b}, e));
        }
    return chern::LineBundleSymbol(c);
}

json bundle_cert_to_json(const chern::BundleCertificate& c) {
    json out;
    out["rank"] = int_to_json(c.rank);
    out["d"] = c.d;
    out["ch"] = even_class_to_json(c.ch);
    out["divisibility_ok"] = c.divisibility_ok;
    out["trivial"] = c.trivial;
    if (!c.detail.empty()) out["detail"] = c.detail;
    return out;
}

}  // namespace

json run(const jsonio::PipelineConfig& cfg, Mode mode) {
    json report;
    report["schema_version"] = 1;
    report["mode"] = mode == Mode::birational ? "birational" : (mode == Mode::diff ? "diff" : "both");

    // input summary
    {
        json in;
        in["num_factors"] = cfg.factors.size();
        json fs = json::array();
        for (const auto& mu : cfg.factors) {
            json f;
            f["A"] = mu.A().factors();
            f["B"] = mu.B().factors();
            f["C"] = mu.C().factors();
            f["order"] = mu.heisenberg_order();
            fs.push_back(f);
        }
        in["factors"] = fs;
        if (cfg.char_exclusion) in["char_exclusion"] = *cfg.char_exclusion;
        in["d"] = cfg.d;
        report["input_summary"] = in;
    }

    bool run_theta = mode != Mode::diff;
    bool run_lattice = mode != Mode::birational;

    // coprimality guard first: a violating factor is a config-level error
    if (cfg.char_exclusion) {
        for (const auto& mu : cfg.factors)
            if (mu.heisenberg_order() % *cfg.char_exclusion == 0)
                throw precondition_error("coprimality: char_exclusion divides |H(mu)| = " +
                                         std::to_string(mu.heisenberg_order()));
    }

    verify::PipelineCheckReport chk =
        verify::composed_pipeline_check(cfg.factors, run_theta, run_lattice, cfg.char_exclusion);

    // r: declared rank bound, cross-checked by brute force when feasible
    long long r = -1;
    std::optional<long long> computed_rank;
    {
        long long product_order = 1;
        bool fits = true;
        for (const auto& mu : cfg.factors) {
            product_order *= mu.heisenberg_order();
            if (product_order > 512) {
                fits = false;
                break;
            }
        }
        if (fits) {
            GroupTable total = heisenberg::heisenberg_table(cfg.factors[0]);
            for (std::size_t i = 1; i < cfg.factors.size(); ++i)
                total = direct_product(total, heisenberg::heisenberg_table(cfg.factors[i]));
            computed_rank = finabel::rank_bruteforce(total);
        }
        if (cfg.rank_bound)
            r = *cfg.rank_bound;
        else if (computed_rank)
            r = *computed_rank;
        else
            throw precondition_error(
                "rank bound: supply rank_bound; the product order exceeds the brute-force bound");
    }

    json verification;
    bool all_arrows = true;
    {
        json arrows = json::array();
        for (const auto& a : chk.arrows) {
            json ja;
            ja["arrow"] = a.arrow;
            ja["pass"] = a.pass;
            if (!a.detail.empty()) ja["detail"] = a.detail.substr(0, 400);
            arrows.push_back(ja);
            all_arrows = all_arrows && a.pass;
        }
        verification["arrows"] = arrows;
    }

    // per-factor records
    json per_factor = json::array();
    long long tuple_length_sum = 0;
    {
        std::size_t theta_idx = 0, lattice_idx = 0;
        for (std::size_t fi = 0; fi < cfg.factors.size(); ++fi) {
            const BilinearPairing& mu = cfg.factors[fi];
            json f;
            if (run_theta && theta_idx < chk.tuples.size()) {
                f["admissible_tuple"] = chk.tuples[theta_idx].entries;
                f["theta_modulus"] = chk.theta_moduli[theta_idx];
                tuple_length_sum += static_cast<long long>(chk.tuples[theta_idx].entries.size());
                auto [deg, ord] = theta::mumford_degree(chk.tuples[theta_idx]);
                f["mumford_degree"] = int_to_json(deg);
                f["mumford_group_order"] = int_to_json(ord);
                ++theta_idx;
            } else if (!run_theta) {
                // tuple is still the invariant factors of A
                f["admissible_tuple"] = mu.A().factors();
                tuple_length_sum += static_cast<long long>(mu.A().num_factors());
            }
            if (run_lattice && lattice_idx < chk.lattice_digests.size()) {
                f["lattice_data_digest"] = chk.lattice_digests[lattice_idx];
                ++lattice_idx;
                // chern certificates over the factor's torus
                try {
                    lattice::DataFromHeisenberg dfh = lattice::data_from_heisenberg(mu);
                    int m = 2 * dfh.data.n();
                    chern::LineBundleSymbol c1 = c1_from_data(dfh.data);
                    chern::AlphaDResult ad = chern::alpha_d(c1, cfg.d, m);
                    f["torus_dim"] = m;
                    f["c1"] = even_class_to_json(c1.c1);
                    f["waring_certificate"] = waring_cert_to_json(ad.waring);
                    json cc = bundle_cert_to_json(ad.certificate);
                    cc["alpha_d_rank"] = static_cast<long long>(ad.symbol.powers.size());
                    cc["r2_bound"] = int_to_json(chern::r2_bound(m));
                    f["chern_certificate"] = cc;
                    chern::ComplementPlan plan = chern::complement_plan(c1, cfg.d, m);
                    json pj;
                    pj["total_rank"] = int_to_json(plan.total_rank);
                    pj["r3_bound"] = int_to_json(chern::r3_bound(m));
                    pj["pad_lines"] = int_to_json(plan.pad_lines);
                    pj["chi_summand_rank"] = int_to_json(plan.chi_summand_rank);
                    pj["chi_supplied_by_topology"] = plan.chi_supplied_by_topology;
                    pj["trivial"] = plan.certificate.trivial;
                    f["complement_plan"] = pj;
                    all_arrows = all_arrows && ad.certificate.divisibility_ok &&
                                 plan.certificate.trivial;
                } catch (const std::exception& e) {
                    f["chern_certificate"] = json{{"error", e.what()}};
                    all_arrows = false;
                }
            }
            per_factor.push_back(f);
        }
    }
    report["per_factor"] = per_factor;

    // target-space parameters
    {
        auto [torus_power, proj_dim] = variety_params(r);
        json v;
        v["torus_power"] = torus_power;
        v["projective_dim"] = proj_dim;
        report["variety_params"] = v;

        ManifoldParams mp = manifold_params(r);
        json mj;
        mj["torus_dim"] = mp.torus_dim;
        mj["t"] = int_to_json(mp.t);
        json menu = json::array();
        for (const auto& fc : mp.fiber_menu) {
            json e;
            e["fiber"] = fc.kind;
            e["k"] = int_to_json(fc.k);
            e["dim"] = int_to_json(fc.dim);
            menu.push_back(e);
        }
        if (mp.menu_truncated) menu.push_back("...truncated");
        mj["fiber_menu"] = menu;
        report["manifold_params"] = mj;

        verification["rank_bound_r"] = r;
        if (computed_rank) {
            verification["rank_bruteforce"] = *computed_rank;
            verification["rank_consistent"] = *computed_rank <= r;
            all_arrows = all_arrows && *computed_rank <= r;
        }
        // torus_power = sum of tuple lengths <= r*floor(r/2); factors <= r
        verification["tuple_length_sum"] = tuple_length_sum;
        bool torus_bound = tuple_length_sum <= r * (r / 2);
        bool factor_bound = static_cast<long long>(cfg.factors.size()) <= r;
        verification["torus_power_bound"] = torus_bound;
        verification["factor_count_bound"] = factor_bound;
        all_arrows = all_arrows && torus_bound && factor_bound;
    }

    verification["all_pass"] = all_arrows;
    report["verification"] = verification;
    return report;
}

bool report_all_pass(const json& report) {
    return report.contains("verification") && report["verification"].value("all_pass", false);
}

}  // namespace nilpact::pipeline
