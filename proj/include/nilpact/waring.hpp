#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilpact/rational.hpp"

namespace nilpact::waring {

// Multisets of integers, kept sorted ascending.
using Multiset = std::vector<long long>;

Multiset sorted_multiset(Multiset m);
bool multiset_contains(const Multiset& big, const Multiset& small);
// representatives in (-delta/2, delta/2] for display; multiset semantics intact
Multiset canonical_display(const Multiset& m, long long delta);

// Exact power sum sum_{t in m} t^k.
Int power_sum(const Multiset& m, long long k);
// sum_{t in m} t^k mod delta, in [0, delta).
long long power_sum_mod(const Multiset& m, long long k, long long delta);

// Smallest multiset of residues in [0, m) whose k-th powers sum to -1 mod m,
// by breadth-first search over multiset size with lexicographic tie-break.
// Size <= 4k is asserted; a violation throws (reportable anomaly, the
// Hardy--Littlewood bound would be contradicted).
Multiset negone_powers(long long k, long long m);

struct WaringMultiset {
    Multiset entries;
    long long modulus = 1;
    long long degree = 0;
    bool congruences_hold() const;  // sum t^j = 0 mod modulus for 1 <= j <= degree
};

struct WaringCertificate {
    Multiset input_set;
    WaringMultiset output;
    Int bound;  // R1(n, |S|)
    // construction trace
    Multiset t1;
    std::vector<Multiset> p_k;  // P_2..P_n
    std::vector<Multiset> t_k;  // T_2..T_n
    std::vector<Int> power_sums;  // p_k(T) for k = 1..n, exact
    bool checks_pass = false;
    std::string failure;
};

// The explicit construction: T_1 = S + {-p_1(S)}; T_k = P_k + {1} with
// P_k = negone_powers(k, delta); T = all products over T_1 x ... x T_n.
// Certifies every congruence, S subset T (for n >= 1), the R1 size bound, and
// the multiplicativity identity p_k(T) = prod_j p_k(T_j).
WaringCertificate waring_extend(long long n, const Multiset& s, long long delta);

// (m+1) * prod_{k=2}^n (4k+1); empty product = 1.
Int r1_bound(long long n, long long m);

// Exhaustive smallest superset of S with entries in [-delta, delta] meeting
// all congruences, or nullopt if none within the size cap. Candidate entries
// are ordered by absolute value with the positive sign first.
std::optional<Multiset> waring_minimal(long long n, const Multiset& s, long long delta,
                                       long long size_cap, long long node_budget = 50000000);

}  // namespace nilpact::waring
