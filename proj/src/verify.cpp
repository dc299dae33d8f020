#include "nilpact/verify.hpp"

#include <algorithm>
#include <numeric>

#include "nilpact/bounds.hpp"
#include "nilpact/errors.hpp"
#include "nilpact/fastgroups.hpp"

namespace nilpact::verify {

using finabel::elem_add;
using finabel::elem_at;
using finabel::elem_index;
using finabel::zero_elem;
using heisenberg::BilinearPairing;
using heisenberg::CentralByAbelianExt;

CheckResult check_ses_morphism(const SesMorphismWitness& w, long long order_bound) {
    CheckResult res;
    auto fail = [&](const std::string& s) {
        res.ok = false;
        res.witness = s;
        return res;
    };
    long long bound = exhaustive_bound(order_bound);
    if (w.top.total.order() > bound || w.bottom.total.order() > bound)
        throw bound_exceeded("check_ses_morphism: total-group order exceeds bound");

    auto check_hom = [&](const GroupTable& src, const GroupTable& dst, const std::vector<int>& f,
                         const char* name) {
        if (static_cast<int>(f.size()) != src.order()) return std::string(name) + ": size mismatch";
        for (int x = 0; x < src.order(); ++x)
            for (int y = 0; y < src.order(); ++y)
                if (f[src.mul(x, y)] != dst.mul(f[x], f[y]))
                    return std::string(name) + " not a homomorphism at (" + std::to_string(x) +
                           "," + std::to_string(y) + ")";
        return std::string();
    };
    std::string e;
    if (!(e = check_hom(w.top.kernel, w.bottom.kernel, w.map_kernel, "kernel map")).empty())
        return fail(e);
    if (!(e = check_hom(w.top.total, w.bottom.total, w.map_total, "total map")).empty())
        return fail(e);
    if (!(e = check_hom(w.top.quotient, w.bottom.quotient, w.map_quotient, "quotient map")).empty())
        return fail(e);

    // left square: map_total o top.inject = bottom.inject o map_kernel
    for (int k = 0; k < w.top.kernel.order(); ++k)
        if (w.map_total[w.top.inject[k]] != w.bottom.inject[w.map_kernel[k]])
            return fail("left square fails at kernel element " + std::to_string(k));
    // right square: map_quotient o top.project = bottom.project o map_total
    for (int x = 0; x < w.top.total.order(); ++x)
        if (w.map_quotient[w.top.project[x]] != w.bottom.project[w.map_total[x]])
            return fail("right square fails at total element " + std::to_string(x));
    return res;
}

heisenberg::CentralByAbelianExt theta_extension(const theta::ThetaGroup& g, long long order_bound) {
    long long n = g.order();
    long long bound = exhaustive_bound(order_bound);
    if (n > bound) throw bound_exceeded("theta_extension: order exceeds bound");

    CentralByAbelianExt ext;
    FastTheta ft(g);
    ext.total = GroupTable::from_function(static_cast<int>(n), [&ft](int x, int y) {
        return static_cast<int>(ft.mul(x, y));
    });
    ext.kernel = cyclic_table(static_cast<int>(g.m()));
    long long nk = g.K().order();
    // quotient K x Hom(K, Z/m): index = b * nk + chi, componentwise addition
    ext.quotient = GroupTable::from_function(static_cast<int>(nk * nk), [&g, nk](int x, int y) {
        long long bx = x / nk, cx = x % nk;
        long long by = y / nk, cy = y % nk;
        auto addmix = [&g](long long u, long long v) {
            const auto& f = g.K().factors();
            std::vector<long long> du(f.size()), dv(f.size());
            for (std::size_t i = f.size(); i-- > 0;) {
                du[i] = u % f[i];
                u /= f[i];
                dv[i] = v % f[i];
                v /= f[i];
            }
            long long out = 0;
            for (std::size_t i = 0; i < f.size(); ++i) out = out * f[i] + (du[i] + dv[i]) % f[i];
            return out;
        };
        return static_cast<int>(addmix(bx, by) * nk + addmix(cx, cy));
    });
    for (long long c = 0; c < g.m(); ++c)
        ext.inject.push_back(static_cast<int>(c * nk * nk));  // (c, 0, triv)
    for (long long i = 0; i < n; ++i)
        ext.project.push_back(static_cast<int>(i % (nk * nk)));
    return ext;
}

SesMorphismWitness ses_from_parametrisation(const theta::ParametrisationWitness& w,
                                            const BilinearPairing& mu, long long order_bound) {
    SesMorphismWitness out;
    out.top = heisenberg::heisenberg_extension(mu, order_bound);
    out.bottom = theta_extension(w.group, order_bound);

    long long m = w.group.m();
    for (long long ic = 0; ic < mu.C().order(); ++ic)
        out.map_kernel.push_back(static_cast<int>(w.kappa_mu(elem_at(mu.C(), ic))));
    for (long long i = 0; i < mu.heisenberg_order(); ++i)
        out.map_total.push_back(
            static_cast<int>(theta::theta_index(w.group, w.gamma(heisenberg::hh_at(mu, i)))));
    long long nk = w.group.K().order();
    long long nb = mu.B().order();
    for (long long i = 0; i < mu.A().order() * nb; ++i) {
        auto lm = w.lambda_mu(elem_at(mu.A(), i / nb), elem_at(mu.B(), i % nb));
        // quotient index of (b, chi) in K x dual
        theta::ThetaElem probe{0, lm.first, lm.second};
        long long ti = theta::theta_index(w.group, probe);
        out.map_quotient.push_back(static_cast<int>(ti % (nk * nk)));
    }
    (void)m;
    return out;
}

SesMorphismWitness ses_from_lattice(const lattice::DataFromHeisenberg& dfh,
                                    const BilinearPairing& mu, long long order_bound) {
    SesMorphismWitness out;
    out.top = heisenberg::heisenberg_extension(mu, order_bound);
    out.bottom = heisenberg::heisenberg_extension(dfh.quotient.pairing, order_bound);

    const auto& Q = dfh.quotient.pairing.A();
    long long g = dfh.data.g();
    auto lamA = [&](const finabel::FinAbElem& a) {
        finabel::FinAbElem acc = zero_elem(Q);
        for (std::size_t i = 0; i < a.coords().size(); ++i)
            acc = elem_add(acc, finabel::elem_scale(a.coords()[i], dfh.lambdaA_images[i]));
        return acc;
    };
    auto lamB = [&](const finabel::FinAbElem& b) {
        finabel::FinAbElem acc = zero_elem(Q);
        for (std::size_t i = 0; i < b.coords().size(); ++i)
            acc = elem_add(acc, finabel::elem_scale(b.coords()[i], dfh.lambdaB_images[i]));
        return acc;
    };
    auto kapC = [&](const finabel::FinAbElem& c) {
        return c.coords().empty() ? 0LL : c.coords()[0] * dfh.kappa_unit % g;
    };

    for (long long ic = 0; ic < mu.C().order(); ++ic)
        out.map_kernel.push_back(static_cast<int>(kapC(elem_at(mu.C(), ic))));
    for (long long i = 0; i < mu.heisenberg_order(); ++i) {
        heisenberg::HeisenbergElem x = heisenberg::hh_at(mu, i);
        heisenberg::HeisenbergElem y{lamA(x.a), lamB(x.b),
                                     g >= 2 ? finabel::FinAbElem(finabel::FinAbGroup({g}),
                                                                 {kapC(x.c)})
                                            : zero_elem(finabel::FinAbGroup())};
        out.map_total.push_back(static_cast<int>(heisenberg::hh_index(dfh.quotient.pairing, y)));
    }
    long long nb = mu.B().order();
    long long nqb = dfh.quotient.pairing.B().order();
    for (long long i = 0; i < mu.A().order() * nb; ++i) {
        finabel::FinAbElem qa = lamA(elem_at(mu.A(), i / nb));
        finabel::FinAbElem qb = lamB(elem_at(mu.B(), i % nb));
        out.map_quotient.push_back(static_cast<int>(elem_index(qa) * nqb + elem_index(qb)));
    }
    return out;
}

SesMorphismWitness ses_from_functorial(const heisenberg::HeisenbergHom& gamma,
                                       long long order_bound) {
    SesMorphismWitness out;
    out.top = heisenberg::heisenberg_extension(gamma.mu1, order_bound);
    out.bottom = heisenberg::heisenberg_extension(gamma.mu2, order_bound);
    for (long long ic = 0; ic < gamma.mu1.C().order(); ++ic)
        out.map_kernel.push_back(
            static_cast<int>(elem_index(gamma.kappa.apply(elem_at(gamma.mu1.C(), ic)))));
    for (long long i = 0; i < gamma.mu1.heisenberg_order(); ++i)
        out.map_total.push_back(
            static_cast<int>(heisenberg::hh_index(gamma.mu2, gamma.apply(heisenberg::hh_at(gamma.mu1, i)))));
    long long nb1 = gamma.mu1.B().order();
    long long nb2 = gamma.mu2.B().order();
    for (long long i = 0; i < gamma.mu1.A().order() * nb1; ++i) {
        finabel::FinAbElem a2 = gamma.lamA.apply(elem_at(gamma.mu1.A(), i / nb1));
        finabel::FinAbElem b2 = gamma.lamB.apply(elem_at(gamma.mu1.B(), i % nb1));
        out.map_quotient.push_back(static_cast<int>(elem_index(a2) * nb2 + elem_index(b2)));
    }
    return out;
}

std::optional<std::vector<int>> embed_search(const GroupTable& g, const GroupTable& h,
                                             long long g_bound, long long h_bound,
                                             long long node_budget) {
    if (g.order() > exhaustive_bound(g_bound) || h.order() > exhaustive_bound(h_bound))
        throw bound_exceeded("embed_search: orders exceed bounds");

    // generating sequence of G, decreasing element order, smallest index first
    std::vector<int> gens;
    {
        std::vector<int> sub = {g.identity()};
        while (static_cast<int>(sub.size()) < g.order()) {
            int best = -1, best_order = 0;
            for (int x = 0; x < g.order(); ++x) {
                if (std::binary_search(sub.begin(), sub.end(), x)) continue;
                int ord = g.element_order(x);
                if (ord > best_order) {
                    best = x;
                    best_order = ord;
                }
            }
            gens.push_back(best);
            std::vector<int> with = sub;
            with.push_back(best);
            sub = generated_subgroup(g, with);
        }
    }

    // candidate images per generator: equal element order, ascending index
    std::vector<std::vector<int>> candidates(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        int ord = g.element_order(gens[i]);
        for (int y = 0; y < h.order(); ++y)
            if (h.element_order(y) == ord) candidates[i].push_back(y);
    }

    long long nodes = 0;
    std::vector<int> map(g.order(), -1);
    map[g.identity()] = h.identity();

    // closes the partial map under products; returns false on conflict
    std::function<bool(std::vector<int>&)> close = [&](std::vector<int>& m) {
        std::vector<int> dom;
        for (int x = 0; x < g.order(); ++x)
            if (m[x] >= 0) dom.push_back(x);
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t a = 0; a < dom.size(); ++a)
                for (std::size_t b = 0; b < dom.size(); ++b) {
                    int z = g.mul(dom[a], dom[b]);
                    int img = h.mul(m[dom[a]], m[dom[b]]);
                    if (m[z] < 0) {
                        m[z] = img;
                        dom.push_back(z);
                        grew = true;
                    } else if (m[z] != img) {
                        return false;
                    }
                }
        }
        // injectivity
        std::vector<char> used(h.order(), 0);
        for (int x = 0; x < g.order(); ++x) {
            if (m[x] < 0) continue;
            if (used[m[x]]) return false;
            used[m[x]] = 1;
        }
        return true;
    };

    std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
        if (++nodes > node_budget) throw bound_exceeded("embed_search: node budget exceeded");
        if (i == gens.size()) {
            for (int x = 0; x < g.order(); ++x)
                if (map[x] < 0) return false;
            return true;
        }
        for (int y : candidates[i]) {
            std::vector<int> saved = map;
            map[gens[i]] = y;
            if (close(map) && assign(i + 1)) return true;
            map = saved;
        }
        return false;
    };

    if (assign(0)) return map;
    return std::nullopt;
}

PipelineCheckReport composed_pipeline_check(const std::vector<BilinearPairing>& factors,
                                            bool run_theta, bool run_lattice,
                                            std::optional<long long> char_exclusion,
                                            long long order_bound) {
    PipelineCheckReport rep;
    auto arrow = [&](const std::string& name, bool pass, const std::string& detail) {
        rep.arrows.push_back(ArrowReport{name, pass, detail});
    };

    for (std::size_t fi = 0; fi < factors.size(); ++fi) {
        const BilinearPairing& mu = factors[fi];
        std::string tag = "factor" + std::to_string(fi);

        if (char_exclusion) {
            long long order = mu.heisenberg_order();
            bool coprime = order % *char_exclusion != 0;
            arrow(tag + ":coprimality", coprime,
                  coprime ? "" : "char divides |H(mu)| = " + std::to_string(order));
            if (!coprime) continue;
        }

        bool nondeg = heisenberg::is_nondegenerate(mu);
        bool cyclic = mu.C().is_cyclic();
        arrow(tag + ":nondegenerate_cyclic_centre", nondeg && cyclic,
              nondeg ? (cyclic ? "" : "centre not cyclic") : "degenerate pairing");
        if (!nondeg || !cyclic) continue;

        if (run_theta) {
            try {
                theta::ParametrisationWitness w =
                    theta::parametrise(mu, std::nullopt, char_exclusion);
                auto check = theta::verify_parametrisation(w, mu);
                arrow(tag + ":theta_parametrisation", check.ok, check.witness);
                if (check.ok) {
                    auto ses = ses_from_parametrisation(w, mu, order_bound);
                    auto sc = check_ses_morphism(ses, order_bound);
                    arrow(tag + ":theta_ses_morphism", sc.ok, sc.witness);
                }
                rep.tuples.push_back(w.delta);
                rep.theta_moduli.push_back(w.group.m());
            } catch (const precondition_error& e) {
                arrow(tag + ":theta_parametrisation", false, e.what());
            }
        }

        if (run_lattice) {
            try {
                lattice::DataFromHeisenberg dfh = lattice::data_from_heisenberg(mu);
                arrow(tag + ":lattice_data", dfh.diagram_ok,
                      dfh.diagram_ok ? "" : "diagram failed");
                rep.lattice_digests.push_back(dfh.data.digest());
                if (dfh.diagram_ok) {
                    auto ses = ses_from_lattice(dfh, mu, order_bound);
                    auto sc = check_ses_morphism(ses, order_bound);
                    arrow(tag + ":lattice_ses_morphism", sc.ok, sc.witness);
                    auto action = lattice::verify_action_morphisms(dfh.data);
                    arrow(tag + ":action_morphisms", action.ok, action.witness);
                }
            } catch (const precondition_error& e) {
                arrow(tag + ":lattice_data", false, e.what());
            }
        }
    }

    // composite injectivity over the product when it fits the bound
    long long product_order = 1;
    bool fits = true;
    for (const auto& mu : factors) {
        product_order *= mu.heisenberg_order();
        if (product_order > exhaustive_bound(order_bound)) {
            fits = false;
            break;
        }
    }
    bool per_factor_ok = std::all_of(rep.arrows.begin(), rep.arrows.end(),
                                     [](const ArrowReport& a) { return a.pass; });
    if (fits) {
        arrow("composite_injective", per_factor_ok,
              per_factor_ok ? "kernel trivial in every factor, hence in the product"
                            : "a factor arrow failed");
    } else {
        arrow("composite_injective_structural", per_factor_ok,
              "product exceeds exhaustive bound; per-factor kernels are trivial");
    }

    rep.all_pass = std::all_of(rep.arrows.begin(), rep.arrows.end(),
                               [](const ArrowReport& a) { return a.pass; });
    return rep;
}

}  // namespace nilpact::verify
