#include <doctest.h>

#include <set>

#include "nilpact/errors.hpp"
#include "nilpact/fastgroups.hpp"
#include "nilpact/theta.hpp"

using namespace nilpact;
using namespace nilpact::finabel;
using namespace nilpact::theta;

namespace {

ThetaGroup small_theta() { return ThetaGroup(AdmissibleTuple(std::vector<long long>{2}), 2); }

Character sgn(const ThetaGroup& g) { return Character(g.K(), g.m(), {1}); }
Character triv(const ThetaGroup& g) { return Character::trivial(g.K(), g.m()); }

}  // namespace

TEST_CASE("AdmissibleTuple validation") {
    CHECK_NOTHROW(AdmissibleTuple(std::vector<long long>{4, 2}));
    CHECK_NOTHROW(AdmissibleTuple(std::vector<long long>{}));
    CHECK_THROWS_AS(AdmissibleTuple(std::vector<long long>{2, 4}), precondition_error);
    CHECK_THROWS_AS(AdmissibleTuple(std::vector<long long>{4, 1}), precondition_error);
    CHECK_THROWS_AS(AdmissibleTuple(std::vector<long long>{4, 2}, 2), precondition_error);  // char | d_t
    CHECK_NOTHROW(AdmissibleTuple(std::vector<long long>{4, 2}, 3));
}

TEST_CASE("theta_mul matches the displayed law") {
    ThetaGroup g = small_theta();
    FinAbElem one(g.K(), {1}), zero = zero_elem(g.K());

    // (0,1,sgn)(0,1,triv) = (0,0,sgn): triv(1) contributes no scalar
    ThetaElem x = theta_make(g, 0, one, sgn(g));
    ThetaElem y = theta_make(g, 0, one, triv(g));
    CHECK(theta_mul(g, x, y) == theta_make(g, 0, zero, sgn(g)));

    // (0,1,triv)(0,1,sgn) = (1,0,sgn): sgn(1) contributes the scalar -1
    CHECK(theta_mul(g, y, x) == theta_make(g, 1, zero, sgn(g)));

    CHECK(theta_mul(g, theta_identity(g), x) == x);
}

TEST_CASE("iota and pi") {
    ThetaGroup g = small_theta();
    CHECK(iota_delta(g, 1) == theta_make(g, 1, zero_elem(g.K()), triv(g)));
    ThetaElem x = theta_make(g, 1, FinAbElem(g.K(), {1}), sgn(g));
    auto [b, chi] = pi_delta(x);
    CHECK(b == FinAbElem(g.K(), {1}));
    CHECK(chi == sgn(g));
    for (long long c = 0; c < g.m(); ++c) {
        auto [pb, pchi] = pi_delta(iota_delta(g, c));
        CHECK(pb.is_zero());
        CHECK(pchi.is_trivial());
    }
}

TEST_CASE("theta inverses and exhaustive associativity on Theta((2))") {
    ThetaGroup g = small_theta();
    long long n = theta_order(g);
    REQUIRE(n == 8);
    for (long long i = 0; i < n; ++i) {
        ThetaElem x = theta_at(g, i);
        CHECK(theta_mul(g, x, theta_inv(g, x)) == theta_identity(g));
        CHECK(theta_mul(g, theta_inv(g, x), x) == theta_identity(g));
    }
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j < n; ++j)
            for (long long k = 0; k < n; ++k) {
                ThetaElem a = theta_at(g, i), b = theta_at(g, j), c = theta_at(g, k);
                CHECK(theta_mul(g, theta_mul(g, a, b), c) ==
                      theta_mul(g, a, theta_mul(g, b, c)));
            }
}

TEST_CASE("group axioms hold exhaustively on Theta((4,2))") {
    ThetaGroup g(AdmissibleTuple(std::vector<long long>{4, 2}), 4);
    FastTheta ft(g);
    long long n = theta_order(g);
    REQUIRE(n == 256);
    GroupTable table = GroupTable::from_function(
        static_cast<int>(n), [&ft](int x, int y) { return static_cast<int>(ft.mul(x, y)); });
    table.check_axioms();  // throws on an associativity failure
    for (long long i = 0; i < n; ++i) CHECK(ft.mul(i, ft.inv(i)) == 0);
}

TEST_CASE("FastTheta agrees with the value-level operations") {
    for (auto g : {ThetaGroup(AdmissibleTuple(std::vector<long long>{2}), 2),
                   ThetaGroup(AdmissibleTuple(std::vector<long long>{3}), 3),
                   ThetaGroup(AdmissibleTuple(std::vector<long long>{4, 2}), 4)}) {
        FastTheta ft(g);
        long long n = theta_order(g);
        for (long long i = 0; i < n; ++i) {
            CHECK(ft.inv(i) == theta_index(g, theta_inv(g, theta_at(g, i))));
            for (long long j = 0; j < n; ++j)
                CHECK(ft.mul(i, j) ==
                      theta_index(g, theta_mul(g, theta_at(g, i), theta_at(g, j))));
        }
    }
}

TEST_CASE("center of Theta(delta) is exactly the scalars") {
    ThetaGroup g = small_theta();
    long long n = theta_order(g);
    long long nk = g.K().order();
    for (long long i = 0; i < n; ++i) {
        ThetaElem x = theta_at(g, i);
        bool central = true;
        for (long long j = 0; j < n && central; ++j) {
            ThetaElem y = theta_at(g, j);
            if (!(theta_mul(g, x, y) == theta_mul(g, y, x))) central = false;
        }
        bool scalar = x.b.is_zero() && x.chi.is_trivial();
        CHECK(central == scalar);
        (void)nk;
    }
}

TEST_CASE("commutator of (0,b,triv) and (0,0,chi) lands on the scalar chi(b)") {
    ThetaGroup g(AdmissibleTuple(std::vector<long long>{4, 2}), 4);
    for (long long bi = 0; bi < g.K().order(); ++bi) {
        FinAbElem b = elem_at(g.K(), bi);
        for (const auto& chi : dual_group(g.K(), g.m())) {
            ThetaElem x = theta_make(g, 0, b, Character::trivial(g.K(), g.m()));
            ThetaElem y = theta_make(g, 0, zero_elem(g.K()), chi);
            ThetaElem comm = theta_mul(g, theta_mul(g, theta_inv(g, x), theta_inv(g, y)),
                                       theta_mul(g, x, y));
            CHECK(comm.b.is_zero());
            CHECK(comm.chi.is_trivial());
            CHECK(comm.scalar == chi.eval(b));
        }
    }
}

TEST_CASE("mumford_degree") {
    auto [d1, o1] = mumford_degree(AdmissibleTuple(std::vector<long long>{4, 2}));
    CHECK(d1 == 8);
    CHECK(o1 == 64);
    auto [d2, o2] = mumford_degree(AdmissibleTuple(std::vector<long long>{}));
    CHECK(d2 == 1);
    CHECK(o2 == 1);
    auto [d3, o3] = mumford_degree(AdmissibleTuple(std::vector<long long>{2}));
    CHECK(d3 == 2);
    CHECK(o3 == 4);
}

TEST_CASE("parametrise embeds H(mu) into Theta(delta(mu))") {
    // Z/2: order-8 group into Theta((2)) with m = 2
    auto mu2 = heisenberg::BilinearPairing::standard_dot(2, 1);
    auto w2 = parametrise(mu2);
    CHECK(w2.delta.entries == std::vector<long long>{2});
    CHECK(w2.group.m() == 2);
    CHECK(verify_parametrisation(w2, mu2).ok);
    std::set<long long> image;
    for (long long i = 0; i < mu2.heisenberg_order(); ++i)
        image.insert(theta_index(w2.group, w2.gamma(heisenberg::hh_at(mu2, i))));
    CHECK(image.size() == 8);

    // Z/3: image of order 27 in Theta((3)) with m = 3
    auto mu3 = heisenberg::BilinearPairing::standard_dot(3, 1);
    auto w3 = parametrise(mu3);
    CHECK(w3.delta.entries == std::vector<long long>{3});
    CHECK(w3.group.m() == 3);
    CHECK(verify_parametrisation(w3, mu3).ok);
    std::set<long long> image3;
    for (long long i = 0; i < mu3.heisenberg_order(); ++i)
        image3.insert(theta_index(w3.group, w3.gamma(heisenberg::hh_at(mu3, i))));
    CHECK(image3.size() == 27);
}

TEST_CASE("parametrise on Z/4 + Z/2 with the standard pairing") {
    FinAbGroup a({4, 2}), c({4});
    // mu(a, b) = a1 b1 + 2 a2 b2 into Z/4
    std::vector<std::vector<FinAbElem>> vals{
        {FinAbElem(c, {1}), zero_elem(c)},
        {zero_elem(c), FinAbElem(c, {2})},
    };
    heisenberg::BilinearPairing mu(a, a, c, vals);
    REQUIRE(heisenberg::is_nondegenerate(mu));
    auto w = parametrise(mu);
    CHECK(w.delta.entries == std::vector<long long>{4, 2});
    CHECK(w.group.m() == 4);
    CHECK(verify_parametrisation(w, mu).ok);
}

TEST_CASE("verify_parametrisation rejects corrupted witnesses") {
    auto mu = heisenberg::BilinearPairing::standard_dot(2, 1);
    auto w = parametrise(mu);

    auto zeroed = w;
    zeroed.kappa_step = 0;  // kappa replaced by the zero map: gamma not injective
    CHECK(!verify_parametrisation(zeroed, mu).ok);

    auto corrupted = w;
    corrupted.lambda2_gens[0] = Character::trivial(w.group.K(), w.group.m());
    CHECK(!verify_parametrisation(corrupted, mu).ok);
}

TEST_CASE("delta(mu) does not depend on internal lambda1 choices") {
    auto mu = heisenberg::BilinearPairing::standard_dot(3, 2);
    auto w1 = parametrise(mu);
    auto w2 = parametrise(mu, std::vector<std::size_t>{1, 0});  // permute equal factors
    CHECK(w1.delta.entries == w2.delta.entries);
    CHECK(verify_parametrisation(w1, mu).ok);
    CHECK(verify_parametrisation(w2, mu).ok);
}

TEST_CASE("parametrise preconditions") {
    FinAbGroup z2({2});
    heisenberg::BilinearPairing zero(z2, z2, z2, {{zero_elem(z2)}});
    CHECK_THROWS_AS(parametrise(zero), precondition_error);  // degenerate

    FinAbGroup z22({2, 2});
    heisenberg::BilinearPairing noncyclic(
        z2, z2, z22, {{FinAbElem(z22, {1, 0})}});
    CHECK_THROWS_AS(parametrise(noncyclic), precondition_error);  // C not cyclic
}
