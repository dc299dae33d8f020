#include <doctest.h>

#include <functional>

#include "nilpact/errors.hpp"
#include "nilpact/waring.hpp"

using namespace nilpact;
using namespace nilpact::waring;

namespace {

// brute-force smallest multiset of residues in [0,m) whose k-th powers sum to
// -1 mod m, by size then lexicographic order: the independent oracle for the
// BFS implementation
Multiset negone_oracle(long long k, long long m) {
    auto powmod = [&](long long b) {
        long long acc = 1 % m;
        for (long long i = 0; i < k; ++i) acc = acc * b % m;
        return acc;
    };
    for (long long size = 0; size <= 4 * k + 1; ++size) {
        Multiset pick(size, 0);
        std::function<bool(long long, long long, long long)> rec =
            [&](long long pos, long long minv, long long sum) {
                if (pos == size) return sum % m == (m - 1) % m;
                for (long long b = minv; b < m; ++b) {
                    pick[pos] = b;
                    if (rec(pos + 1, b, (sum + powmod(b)) % m)) return true;
                }
                return false;
            };
        if (rec(0, 0, 0)) return pick;
    }
    return {};
}

}  // namespace

TEST_CASE("negone_powers frozen cases") {
    // squares mod 4 lie in {0,1}: three ones are needed for -1
    CHECK(negone_powers(2, 4) == Multiset{1, 1, 1});
    // first powers: a single m-1 does it
    CHECK(negone_powers(1, 5) == Multiset{4});
    // 2^3 = 8 = -1 mod 9
    CHECK(negone_powers(3, 9) == Multiset{2});
    // everything is 0 mod 1
    CHECK(negone_powers(1, 1).empty());
}

TEST_CASE("negone_powers is BFS-minimal and lexicographically smallest") {
    for (long long k = 1; k <= 3; ++k)
        for (long long m = 1; m <= 14; ++m) {
            Multiset got = negone_powers(k, m);
            Multiset expect = negone_oracle(k, m);
            CHECK(got == expect);
            long long sum = 0;
            for (long long b : got) {
                long long p = 1 % m;
                for (long long i = 0; i < k; ++i) p = p * b % m;
                sum = (sum + p) % m;
            }
            CHECK(sum == (m - 1) % m);
            CHECK(static_cast<long long>(got.size()) <= 4 * k);
        }
}

TEST_CASE("waring_extend reproduces the construction trace") {
    // n=2, S={1}, delta=2
    auto cert = waring_extend(2, {1}, 2);
    CHECK(cert.checks_pass);
    CHECK(cert.t1 == Multiset{-1, 1});
    REQUIRE(cert.p_k.size() == 1);
    CHECK(cert.p_k[0] == Multiset{1});
    CHECK(cert.t_k[0] == Multiset{1, 1});
    CHECK(cert.output.entries == Multiset{-1, -1, 1, 1});
    CHECK(power_sum(cert.output.entries, 1) == 0);
    CHECK(power_sum(cert.output.entries, 2) == 4);
    CHECK(cert.bound == 18);

    // n=2, S={2}, delta=3
    cert = waring_extend(2, {2}, 3);
    CHECK(cert.checks_pass);
    CHECK(cert.t1 == Multiset{-2, 2});
    CHECK(cert.p_k[0] == Multiset{1, 1});
    CHECK(cert.t_k[0] == Multiset{1, 1, 1});
    CHECK(cert.output.entries == Multiset{-2, -2, -2, 2, 2, 2});
    CHECK(power_sum(cert.output.entries, 1) == 0);
    CHECK(power_sum(cert.output.entries, 2) == 24);
}

TEST_CASE("waring_extend degenerate cases give the empty multiset") {
    CHECK(waring_extend(0, {1, 2}, 5).output.entries.empty());
    CHECK(waring_extend(3, {}, 5).output.entries.empty());
    CHECK(waring_extend(0, {1, 2}, 5).checks_pass);
}

TEST_CASE("r1_bound") {
    CHECK(r1_bound(2, 1) == 18);
    CHECK(r1_bound(1, 1) == 2);
    CHECK(r1_bound(0, 7) == 8);
}

TEST_CASE("waring_minimal oracle") {
    auto r = waring_minimal(2, {1}, 2, 4);
    REQUIRE(r.has_value());
    CHECK(*r == Multiset{1, 1});

    r = waring_minimal(1, {3}, 5, 2);
    REQUIRE(r.has_value());
    CHECK(*r == Multiset{2, 3});

    // S already satisfying the congruences is returned unchanged
    r = waring_minimal(1, {2, -2}, 7, 3);
    REQUIRE(r.has_value());
    CHECK(*r == Multiset{-2, 2});

    CHECK(!waring_minimal(1, {1}, 7, 1).has_value());
}

TEST_CASE("waring_extend sweep: congruences, containment, bound") {
    for (long long delta = 1; delta <= 10; ++delta)
        for (long long n = 0; n <= 3; ++n)
            for (const Multiset& s :
                 std::vector<Multiset>{{}, {1}, {-2}, {3, 4}, {-5, 5}, {1, 2, 3}}) {
                auto cert = waring_extend(n, s, delta);
                CHECK(cert.checks_pass);
                CHECK(cert.output.congruences_hold());
                if (n >= 1 && !s.empty())
                    CHECK(multiset_contains(cert.output.entries, sorted_multiset(s)));
                CHECK(to_int(static_cast<long long>(cert.output.entries.size())) <=
                      r1_bound(n, static_cast<long long>(s.size())));
                // multiplicativity across levels is re-checked inside, but
                // assert the headline congruence here as well
                for (long long k = 1; k <= n; ++k)
                    CHECK(power_sum_mod(cert.output.entries, k, delta) == 0);
            }
}

TEST_CASE("canonical display uses representatives in (-delta/2, delta/2]") {
    CHECK(canonical_display({4}, 5) == Multiset{-1});
    CHECK(canonical_display({3}, 6) == Multiset{3});
    CHECK(canonical_display({5, 7}, 6) == Multiset{-1, 1});
}
