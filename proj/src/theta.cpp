#include "nilpact/theta.hpp"

#include <algorithm>
#include <numeric>

#include "nilpact/bounds.hpp"
#include "nilpact/errors.hpp"
#include "nilpact/fastgroups.hpp"

namespace nilpact::theta {

using finabel::elem_add;
using finabel::elem_at;
using finabel::elem_index;
using finabel::elem_neg;
using finabel::zero_elem;

AdmissibleTuple::AdmissibleTuple(std::vector<long long> e, std::optional<long long> excl)
    : entries(std::move(e)), char_exclusion(excl) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i] < 2)
            throw precondition_error("AdmissibleTuple: entries must be >= 2");
        if (i + 1 < entries.size() && entries[i] % entries[i + 1] != 0)
            throw precondition_error("AdmissibleTuple: divisibility chain violated");
    }
    if (char_exclusion) {
        if (*char_exclusion < 2)
            throw precondition_error("AdmissibleTuple: char_exclusion must be a prime >= 2");
        if (!entries.empty() && entries.back() % *char_exclusion == 0)
            throw precondition_error("AdmissibleTuple: char(k) divides d_t");
    }
}

ThetaGroup::ThetaGroup(AdmissibleTuple delta, long long scalar_modulus)
    : delta_(std::move(delta)), m_(scalar_modulus), k_(delta_.k_delta()) {
    if (m_ < 1) throw precondition_error("ThetaGroup: scalar modulus must be positive");
    if (m_ % k_.exponent() != 0)
        throw precondition_error("ThetaGroup: exp(K(delta)) must divide the scalar modulus");
}

long long ThetaGroup::order() const { return m_ * k_.order() * k_.order(); }

std::string ThetaElem::to_string() const {
    std::string s = "(" + std::to_string(scalar) + "," + b.to_string() + ",[";
    for (std::size_t i = 0; i < chi.exponents().size(); ++i) {
        if (i) s += ",";
        s += std::to_string(chi.exponents()[i]);
    }
    return s + "])";
}

ThetaElem theta_identity(const ThetaGroup& g) {
    return {0, zero_elem(g.K()), Character::trivial(g.K(), g.m())};
}

ThetaElem theta_make(const ThetaGroup& g, long long scalar, const FinAbElem& b,
                     const Character& chi) {
    if (b.group() != g.K() || chi.domain() != g.K() || chi.modulus() != g.m())
        throw precondition_error("theta_make: component outside Theta(delta)");
    long long s = scalar % g.m();
    if (s < 0) s += g.m();
    return {s, b, chi};
}

ThetaElem theta_mul(const ThetaGroup& g, const ThetaElem& x, const ThetaElem& y) {
    if (x.b.group() != g.K() || y.b.group() != g.K() || x.chi.modulus() != g.m() ||
        y.chi.modulus() != g.m())
        throw precondition_error("theta_mul: instance mismatch");
    // (c,b,alpha)(c',b',alpha') = (c c' alpha'(b), b+b', alpha alpha')
    long long s = (x.scalar + y.scalar + y.chi.eval(x.b)) % g.m();
    return {s, elem_add(x.b, y.b), x.chi.add(y.chi)};
}

ThetaElem theta_inv(const ThetaGroup& g, const ThetaElem& x) {
    // (c,b,alpha)^{-1} = (-c + alpha(b), -b, -alpha)
    long long s = (-x.scalar + x.chi.eval(x.b)) % g.m();
    if (s < 0) s += g.m();
    return {s, elem_neg(x.b), x.chi.neg()};
}

ThetaElem iota_delta(const ThetaGroup& g, long long scalar) {
    long long s = scalar % g.m();
    if (s < 0) s += g.m();
    return {s, zero_elem(g.K()), Character::trivial(g.K(), g.m())};
}

std::pair<FinAbElem, Character> pi_delta(const ThetaElem& x) { return {x.b, x.chi}; }

long long theta_order(const ThetaGroup& g) { return g.order(); }

namespace {

long long chi_index(const ThetaGroup& g, const Character& chi) {
    // coefficients against the canonical dual generators (exponent m/d_i)
    long long idx = 0;
    for (std::size_t i = 0; i < g.K().num_factors(); ++i) {
        long long d = g.K().factors()[i];
        long long step = g.m() / d;
        long long e = chi.exponents()[i];
        if (e % step != 0)
            throw precondition_error("theta_index: character not in the canonical dual lattice");
        idx = idx * d + (e / step) % d;
    }
    return idx;
}

Character chi_at(const ThetaGroup& g, long long idx) {
    std::vector<long long> e(g.K().num_factors(), 0);
    for (std::size_t i = g.K().num_factors(); i-- > 0;) {
        long long d = g.K().factors()[i];
        e[i] = (idx % d) * (g.m() / d);
        idx /= d;
    }
    return Character(g.K(), g.m(), std::move(e));
}

}  // namespace

long long theta_index(const ThetaGroup& g, const ThetaElem& x) {
    long long nk = g.K().order();
    return (x.scalar * nk + elem_index(x.b)) * nk + chi_index(g, x.chi);
}

ThetaElem theta_at(const ThetaGroup& g, long long index) {
    long long nk = g.K().order();
    long long ci = index % nk;
    index /= nk;
    long long bi = index % nk;
    long long s = index / nk;
    return {s, elem_at(g.K(), bi), chi_at(g, ci)};
}

std::pair<Int, Int> mumford_degree(const AdmissibleTuple& delta) {
    Int deg = 1;
    for (long long d : delta.entries) deg *= to_int(d);
    return {deg, deg * deg};
}

long long ParametrisationWitness::kappa(const FinAbElem& c) const {
    if (c.group() != mu.C()) throw precondition_error("kappa: element outside C");
    if (c.coords().empty()) return 0;
    return (c.coords()[0] * kappa_step) % group.m();
}

FinAbElem ParametrisationWitness::lambda1(const FinAbElem& a) const {
    std::vector<long long> coords(group.K().num_factors(), 0);
    for (std::size_t i = 0; i < a.coords().size(); ++i)
        coords[lambda1_perm[i]] = a.coords()[i];
    return FinAbElem(group.K(), std::move(coords));
}

Character ParametrisationWitness::lambda2(const FinAbElem& a) const {
    Character acc = Character::trivial(group.K(), group.m());
    for (std::size_t i = 0; i < a.coords().size(); ++i) {
        long long k = a.coords()[i];
        if (k == 0) continue;
        std::vector<long long> e(lambda2_gens[i].exponents());
        for (auto& v : e) v = (v * k) % group.m();
        acc = acc.add(Character(group.K(), group.m(), std::move(e)));
    }
    return acc;
}

ThetaElem ParametrisationWitness::gamma(const HeisenbergElem& x) const {
    ThetaElem pre = theta_make(group, kappa(x.c), lambda1(x.b), lambda2(x.a));
    return theta_inv(group, pre);
}

std::pair<FinAbElem, Character> ParametrisationWitness::lambda_mu(const FinAbElem& a,
                                                                  const FinAbElem& b) const {
    return {elem_neg(lambda1(b)), lambda2(a).neg()};
}

long long ParametrisationWitness::kappa_mu(const FinAbElem& c) const {
    long long v = kappa(c);
    return v == 0 ? 0 : group.m() - v;
}

ParametrisationWitness parametrise(const BilinearPairing& mu,
                                   std::optional<std::vector<std::size_t>> lambda1_perm,
                                   std::optional<long long> char_exclusion) {
    if (mu.A() != mu.B())
        throw precondition_error("parametrise: requires A = B (identified)");
    if (!mu.C().is_cyclic())
        throw precondition_error("parametrise: requires cyclic C");
    if (!heisenberg::is_nondegenerate(mu))
        throw precondition_error("parametrise: requires non-degenerate mu");

    const FinAbGroup& A = mu.A();
    AdmissibleTuple delta(A.factors(), char_exclusion);

    long long csize = mu.C().order();
    long long m = std::lcm(csize, A.exponent());
    ThetaGroup theta(delta, m);

    ParametrisationWitness w{delta, theta, mu, m / csize, {}, {}};
    if (lambda1_perm) {
        w.lambda1_perm = *lambda1_perm;
        if (w.lambda1_perm.size() != A.num_factors())
            throw precondition_error("parametrise: bad lambda1 permutation size");
        for (std::size_t i = 0; i < w.lambda1_perm.size(); ++i)
            if (A.factors()[i] != delta.entries[w.lambda1_perm[i]])
                throw precondition_error("parametrise: lambda1 permutation must preserve factor orders");
    } else {
        w.lambda1_perm.resize(A.num_factors());
        std::iota(w.lambda1_perm.begin(), w.lambda1_perm.end(), 0);
    }

    // lambda2(a) = (x |-> kappa(mu(a, lambda1^{-1}(x)))) on canonical generators
    for (std::size_t i = 0; i < A.num_factors(); ++i) {
        std::vector<long long> e(A.num_factors(), 0);
        for (std::size_t j = 0; j < A.num_factors(); ++j) {
            FinAbElem v = mu.eval(finabel::generator(A, i), finabel::generator(A, j));
            e[w.lambda1_perm[j]] = w.kappa(v);
        }
        w.lambda2_gens.emplace_back(theta.K(), m, std::move(e));
    }

    // lambda2 must be injective; failure contradicts non-degeneracy.
    for (long long ia = 1; ia < A.order(); ++ia) {
        if (w.lambda2(elem_at(A, ia)).is_trivial())
            throw precondition_error("parametrise: lambda2 not injective (internal error)");
    }
    return w;
}

ParamCheckResult verify_parametrisation(const ParametrisationWitness& w, const BilinearPairing& mu,
                                        long long op_bound) {
    ParamCheckResult res;
    auto fail = [&](const std::string& s) {
        res.ok = false;
        res.witness = s;
        return res;
    };
    if (!(w.mu == mu)) return fail("witness carries a different pairing");

    long long n = mu.heisenberg_order();
    long long bound = exhaustive_bound(op_bound);
    if (n * n > bound)
        throw bound_exceeded("verify_parametrisation: |H(mu)|^2 exceeds bound");

    const ThetaGroup& T = w.group;

    // Exhaustive homomorphism + injectivity scan over H(mu) x H(mu), run on
    // element indices; gamma images are materialized once.
    FastHeisenberg fh(mu);
    FastTheta ft(T);
    std::vector<long long> gidx(n);
    for (long long i = 0; i < n; ++i)
        gidx[i] = theta_index(T, w.gamma(heisenberg::hh_at(mu, i)));
    for (long long i = 1; i < n; ++i)
        if (gidx[i] == 0)
            return fail("gamma kernel contains " + heisenberg::hh_at(mu, i).to_string());
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j < n; ++j)
            if (gidx[fh.mul(i, j)] != ft.mul(gidx[i], gidx[j]))
                return fail("gamma not a homomorphism at " + heisenberg::hh_at(mu, i).to_string() +
                            " * " + heisenberg::hh_at(mu, j).to_string());

    // left square: iota_delta(kappa_mu(c)) = gamma(iota_mu(c)) for all c in C
    for (long long ic = 0; ic < mu.C().order(); ++ic) {
        FinAbElem c = elem_at(mu.C(), ic);
        HeisenbergElem lifted{zero_elem(mu.A()), zero_elem(mu.B()), c};
        ThetaElem lhs = iota_delta(T, w.kappa_mu(c));
        ThetaElem rhs = w.gamma(lifted);
        if (!(lhs == rhs)) return fail("left square fails at c = " + c.to_string());
    }

    // right square: pi_delta(gamma(x)) = lambda_mu(pi_mu(x)) for all x
    for (long long i = 0; i < n; ++i) {
        HeisenbergElem x = heisenberg::hh_at(mu, i);
        auto lhs = pi_delta(w.gamma(x));
        auto rhs = w.lambda_mu(x.a, x.b);
        if (!(lhs.first == rhs.first) || !(lhs.second == rhs.second))
            return fail("right square fails at " + x.to_string());
    }

    // lambda_mu must be an isomorphism onto K x dual(K); injectivity suffices
    // for equal orders, which hold since delta = invariant factors of A.
    for (long long i = 1; i < mu.A().order() * mu.B().order(); ++i) {
        long long nb = mu.B().order();
        auto v = w.lambda_mu(elem_at(mu.A(), i / nb), elem_at(mu.B(), i % nb));
        if (v.first.is_zero() && v.second.is_trivial())
            return fail("lambda_mu has nontrivial kernel");
    }
    return res;
}

}  // namespace nilpact::theta
