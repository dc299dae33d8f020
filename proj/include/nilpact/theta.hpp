#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilpact/finabel.hpp"
#include "nilpact/heisenberg.hpp"
#include "nilpact/rational.hpp"

namespace nilpact::theta {

using finabel::Character;
using finabel::FinAbElem;
using finabel::FinAbGroup;
using heisenberg::BilinearPairing;
using heisenberg::HeisenbergElem;

// Divisibility chain d_t | ... | d_1 with every entry >= 2 (all entries are
// forced > 1 once d_t > 1; the empty tuple represents the degree-1 case).
// char_exclusion = p records the requirement char(k) = p does not divide d_t.
struct AdmissibleTuple {
    std::vector<long long> entries;
    std::optional<long long> char_exclusion;

    AdmissibleTuple() = default;
    explicit AdmissibleTuple(std::vector<long long> e,
                             std::optional<long long> excl = std::nullopt);

    FinAbGroup k_delta() const { return FinAbGroup(entries); }
    bool operator==(const AdmissibleTuple& o) const {
        return entries == o.entries && char_exclusion == o.char_exclusion;
    }
};

// Theta group of an admissible tuple with scalars finitized to the m-th roots
// of unity (represented additively as residues mod m). Requires exp(K) | m.
class ThetaGroup {
public:
    ThetaGroup(AdmissibleTuple delta, long long scalar_modulus);

    const AdmissibleTuple& delta() const { return delta_; }
    long long m() const { return m_; }
    const FinAbGroup& K() const { return k_; }
    long long order() const;  // m * |K|^2

    bool operator==(const ThetaGroup& o) const { return delta_ == o.delta_ && m_ == o.m_; }

private:
    AdmissibleTuple delta_;
    long long m_ = 1;
    FinAbGroup k_;
};

struct ThetaElem {
    long long scalar = 0;  // additive exponent mod m
    FinAbElem b;
    Character chi;
    bool operator==(const ThetaElem&) const = default;
    std::string to_string() const;
};

ThetaElem theta_identity(const ThetaGroup& g);
ThetaElem theta_make(const ThetaGroup& g, long long scalar, const FinAbElem& b, const Character& chi);
ThetaElem theta_mul(const ThetaGroup& g, const ThetaElem& x, const ThetaElem& y);
ThetaElem theta_inv(const ThetaGroup& g, const ThetaElem& x);

ThetaElem iota_delta(const ThetaGroup& g, long long scalar);
std::pair<FinAbElem, Character> pi_delta(const ThetaElem& x);

// Enumeration: index runs over scalar, then b, then chi (chi via the
// coefficient tuple against the canonical dual generators).
long long theta_order(const ThetaGroup& g);
long long theta_index(const ThetaGroup& g, const ThetaElem& x);
ThetaElem theta_at(const ThetaGroup& g, long long index);

// (prod d_i, (prod d_i)^2): degree of the associated sheaf and |H(delta)|.
std::pair<Int, Int> mumford_degree(const AdmissibleTuple& delta);

// Witness for the parametrisation embedding H(mu) -> Theta(delta(mu)).
// kappa: C -> Z/m is the canonical embedding (generator of C |-> m/|C|);
// the left vertical map of the commuting diagram is c |-> -kappa(c), which
// carries the inverse convention of the gamma formula.
struct ParametrisationWitness {
    AdmissibleTuple delta;
    ThetaGroup group;
    BilinearPairing mu;
    long long kappa_step = 1;             // kappa(c) = c * kappa_step mod m
    std::vector<std::size_t> lambda1_perm;  // lambda1(g_i) = generator lambda1_perm[i] of K
    std::vector<Character> lambda2_gens;    // lambda2 on the canonical generators of A

    long long kappa(const FinAbElem& c) const;
    FinAbElem lambda1(const FinAbElem& a) const;
    Character lambda2(const FinAbElem& a) const;
    // gamma(a,b,c) = (kappa(c), lambda1(b), lambda2(a))^{-1}
    ThetaElem gamma(const HeisenbergElem& x) const;
    // lambda_mu(a,b) = (lambda1(b), lambda2(a))^{-1}
    std::pair<FinAbElem, Character> lambda_mu(const FinAbElem& a, const FinAbElem& b) const;
    // left vertical map of the diagram
    long long kappa_mu(const FinAbElem& c) const;
};

// Prop: for non-degenerate mu with A = B and cyclic C, delta(mu) is the
// invariant-factor tuple of A and gamma embeds H(mu) into Theta(delta(mu)).
// `lambda1_perm` permutes generators of equal order (used by the uniqueness
// property test); the default is the identity permutation.
ParametrisationWitness parametrise(const BilinearPairing& mu,
                                   std::optional<std::vector<std::size_t>> lambda1_perm = std::nullopt,
                                   std::optional<long long> char_exclusion = std::nullopt);

struct ParamCheckResult {
    bool ok = true;
    std::string witness;
};

// gamma injective homomorphism; iota_delta o kappa_mu = gamma o iota_mu on C;
// pi_delta o gamma = lambda_mu o pi_mu on all of H(mu). Exhaustive.
ParamCheckResult verify_parametrisation(const ParametrisationWitness& w, const BilinearPairing& mu,
                                        long long op_bound = 40000000);

}  // namespace nilpact::theta
