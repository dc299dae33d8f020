#include <doctest.h>

#include <random>

#include "nilpact/errors.hpp"
#include "nilpact/lattice.hpp"

using namespace nilpact;
using namespace nilpact::finabel;
using namespace nilpact::lattice;

namespace {

IsotropicSublatticeData simple_data(long long c, long long H11 = 1) {
    // n = 1, h = (H11/c), Lambda_Re = c Z, Gamma = (1/c) Z
    return IsotropicSublatticeData(1, {{GaussRat::from_int(H11)}}, c, {{c}}, c);
}

LatticeVec lv(long long re, long long im) { return LatticeVec{{re}, {im}}; }

GaussVec gv(const Rat& re, const Rat& im) { return GaussVec{GaussRat(re, im)}; }

}  // namespace

TEST_CASE("validate_data accepts the basic example and the trivial case") {
    CHECK(validate_data(simple_data(2)).all_pass);
    // zero data (trivial case of the construction)
    IsotropicSublatticeData zero(0, {}, 1, {}, 3);
    CHECK(validate_data(zero).all_pass);
}

TEST_CASE("validate_data rejects a wrong sublattice") {
    // Lambda_Re = 3Z against c = 2: pairings live in (3/2) Z
    IsotropicSublatticeData bad(1, {{GaussRat::from_int(1)}}, 2, {{3}}, 2);
    auto rep = validate_data(bad);
    CHECK(!rep.all_pass);
    bool lattice_failed = false;
    for (const auto& item : rep.items)
        if (item.condition == "lattice_pairing_Z" && !item.pass) lattice_failed = true;
    CHECK(lattice_failed);
}

TEST_CASE("validate_data checks conjugate symmetry and isotropy") {
    // imaginary diagonal entry breaks conjugate symmetry
    IsotropicSublatticeData bad(1, {{GaussRat(Rat(0), Rat(1))}}, 2, {{2}}, 2);
    auto rep = validate_data(bad);
    CHECK(!rep.all_pass);
}

TEST_CASE("mu_from_data on the index-2 example") {
    auto qp = mu_from_data(simple_data(2));
    CHECK(qp.pairing.A().factors() == std::vector<long long>{2});
    CHECK(qp.pairing.C().factors() == std::vector<long long>{2});
    FinAbElem one(qp.pairing.A(), {1});
    CHECK(!qp.pairing.eval(one, one).is_zero());
}

TEST_CASE("mu_from_data: zero form gives the zero pairing") {
    IsotropicSublatticeData zero(1, {{GaussRat()}}, 1, {{1}}, 1);
    auto qp = mu_from_data(zero);
    CHECK(qp.pairing.A().is_trivial());
    CHECK(qp.pairing.C().is_trivial());
}

TEST_CASE("mu_from_data of order 3") {
    auto qp = mu_from_data(simple_data(3));
    CHECK(qp.pairing.A().factors() == std::vector<long long>{3});
    FinAbElem one(qp.pairing.A(), {1});
    FinAbElem v = qp.pairing.eval(one, one);
    CHECK(!v.is_zero());
    CHECK(elem_order(v) == 3);
}

TEST_CASE("chi exponents") {
    auto d = simple_data(2);
    CHECK(chi(d, lv(0, 0)).z == GaussRat());
    // l = basis + i basis: exponent +-(1/2) i
    GaussRat z = chi(d, lv(1, 1)).z;
    CHECK(z.re == 0);
    CHECK(abs(z.im) == make_rat(1, 2));
    CHECK(!chi(d, lv(1, 1)).is_trivial());
    // purely real lattice vectors have trivial chi
    CHECK(chi(d, lv(3, 0)).z == GaussRat());
}

TEST_CASE("f_exponent") {
    auto d = simple_data(2);
    CHECK(f_exponent(d, lv(0, 0), gv(0, 0)).z == GaussRat());
    // l = basis, v = basis: h(b,b) + h(b,b)/2 = (3/2) * (1/2)
    CHECK(f_exponent(d, lv(1, 0), gv(1, 0)).z == GaussRat(make_rat(3, 4), Rat(0)));
    // v = 0 reduces to chi + h(l,l)/2
    LatticeVec l = lv(1, 1);
    GaussRat expect = chi(d, l).z + d.h(l, l) / Rat(2);
    CHECK(f_exponent(d, l, gv(0, 0)).z == expect);
}

TEST_CASE("cocycle identities hold over a generating box") {
    for (long long c : {2LL, 3LL}) {
        auto d = simple_data(c);
        for (long long re1 = -2 * c; re1 <= 2 * c; ++re1)
            for (long long im1 = -2 * c; im1 <= 2 * c; ++im1)
                for (long long re2 = -c; re2 <= c; ++re2)
                    for (long long im2 = -c; im2 <= c; ++im2) {
                        auto chk = check_cocycle_identities(d, lv(re1, im1), lv(re2, im2),
                                                            gv(make_rat(1, 2 * c), 0));
                        CHECK(chk.all());
                    }
    }
}

TEST_CASE("cocycle identities are trivially true against l' = 0") {
    auto d = simple_data(5);
    auto chk = check_cocycle_identities(d, lv(3, -2), lv(0, 0), gv(make_rat(1, 10), make_rat(3, 10)));
    CHECK(chk.all());
}

TEST_CASE("corrupted H fails at least one identity with a nonzero witness") {
    // break conjugate symmetry on a 2-dimensional block
    std::vector<std::vector<GaussRat>> H{
        {GaussRat::from_int(1), GaussRat::from_int(1)},
        {GaussRat::from_int(0), GaussRat::from_int(1)},
    };
    IsotropicSublatticeData bad(2, H, 3, {{3, 0}, {0, 3}}, 3);
    bool failed = false;
    GaussRat witness;
    for (long long a = -2; a <= 2 && !failed; ++a)
        for (long long b = -2; b <= 2 && !failed; ++b) {
            LatticeVec l{{a, 1}, {b, 0}};
            LatticeVec lp{{1, -b}, {0, a}};
            auto chk = check_cocycle_identities(bad, l, lp, GaussVec{GaussRat(), GaussRat()});
            if (!chk.all()) {
                failed = true;
                witness = !chk.chi_ok ? chk.chi_diff.z : (!chk.f_ok ? chk.f_diff.z : chk.rho_diff.z);
            }
        }
    CHECK(failed);
    CHECK(!(witness == GaussRat()));
}

TEST_CASE("twisted_compose") {
    auto d = simple_data(2);
    // composing with the identity shift is correction-free
    auto r = twisted_compose({lv(1, 1)}, {lv(0, 0)}, d);
    CHECK(r.correction.is_trivial());
    CHECK(r.composed.shift == lv(1, 1));

    // both shifts in Lambda: correction trivial by lattice integrality
    r = twisted_compose({lv(2, 0)}, {lv(0, 2)}, d);
    CHECK(r.correction.is_trivial());

    // real basis versus imaginary basis: the nontrivial commutator scalar -1
    r = twisted_compose({lv(1, 0)}, {lv(0, 1)}, d);
    CHECK(!r.correction.is_trivial());
    CHECK(r.correction.z == GaussRat(Rat(0), Rat(1)));
}

TEST_CASE("twisted_compose is associative up to corrections in 2iZ") {
    auto d = simple_data(3);
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> pick(-4, 4);
    for (int trial = 0; trial < 40; ++trial) {
        TwistedTranslation t1{lv(pick(rng), pick(rng))};
        TwistedTranslation t2{lv(pick(rng), pick(rng))};
        TwistedTranslation t3{lv(pick(rng), pick(rng))};
        auto left = twisted_compose(t1, t2, d);
        auto left_total = twisted_compose(left.composed, t3, d);
        auto right = twisted_compose(t2, t3, d);
        auto right_total = twisted_compose(t1, right.composed, d);
        CHECK(left_total.composed.shift == right_total.composed.shift);
        ExponentValue lsum{left.correction.z + left_total.correction.z};
        ExponentValue rsum{right.correction.z + right_total.correction.z};
        CHECK(lsum.same_scalar(rsum));
    }
}

TEST_CASE("sign convention coherence: Im h(v, iv') = Im h(v', iv)") {
    auto d = simple_data(3);
    std::mt19937 rng(21);
    std::uniform_int_distribution<int> pick(-5, 5);
    for (int trial = 0; trial < 50; ++trial) {
        GaussVec v{GaussRat(make_rat(pick(rng), 3), make_rat(pick(rng), 2))};
        GaussVec w{GaussRat(make_rat(pick(rng), 2), make_rat(pick(rng), 3))};
        GaussVec iv{v[0] * gauss_i()};
        GaussVec iw{w[0] * gauss_i()};
        CHECK(d.im_h(v, iw) == d.im_h(w, iv));
    }
}

TEST_CASE("verify_action_morphisms on constructed data") {
    CHECK(verify_action_morphisms(simple_data(2)).ok);
    CHECK(verify_action_morphisms(simple_data(3)).ok);
    IsotropicSublatticeData zero(1, {{GaussRat()}}, 1, {{1}}, 1);
    CHECK(verify_action_morphisms(zero).ok);
}

TEST_CASE("hermitian_search on standard pairings") {
    auto mu2 = heisenberg::BilinearPairing::standard_dot(2, 1);
    auto w2 = hermitian_search(mu2);
    REQUIRE(w2.has_value());
    CHECK(w2->c == 2);
    CHECK(w2->table[0][0] == 1);  // h_M(alpha, alpha) = -1 mod 2
    CHECK(elem_order(w2->alpha) == 2);

    auto mu3 = heisenberg::BilinearPairing::standard_dot(3, 1);
    auto w3 = hermitian_search(mu3);
    REQUIRE(w3.has_value());
    CHECK(elem_order(w3->alpha) == 3);
    CHECK((w3->alpha_sign == 1 || w3->alpha_sign == -1));

    FinAbGroup z2({2});
    heisenberg::BilinearPairing zero(z2, z2, z2, {{zero_elem(z2)}});
    CHECK_THROWS_AS(hermitian_search(zero), precondition_error);
}

TEST_CASE("data_from_heisenberg on Z/2") {
    auto mu = heisenberg::BilinearPairing::standard_dot(2, 1);
    auto dfh = data_from_heisenberg(mu);
    CHECK(dfh.diagram_ok);
    CHECK(dfh.data.n() == 1);
    CHECK(dfh.data.g() == 2);
    CHECK(dfh.quotient.pairing.A().order() == 2);  // Lambda_Re has index 2
    CHECK(validate_data(dfh.data).all_pass);
    CHECK(verify_action_morphisms(dfh.data).ok);
}

TEST_CASE("data_from_heisenberg on the trivial group") {
    FinAbGroup trivial;
    FinAbGroup c({4});
    heisenberg::BilinearPairing mu(trivial, trivial, c, {});
    auto dfh = data_from_heisenberg(mu);
    CHECK(dfh.diagram_ok);
    CHECK(dfh.data.n() == 0);
    CHECK(dfh.data.g() == 4);
}

TEST_CASE("data_from_heisenberg on (Z/3)^2") {
    auto mu = heisenberg::BilinearPairing::standard_dot(3, 2);
    auto dfh = data_from_heisenberg(mu);
    CHECK(dfh.diagram_ok);
    CHECK(dfh.data.n() == 2);
    CHECK(dfh.data.g() == 3);
    CHECK(dfh.quotient.pairing.A().factors() == std::vector<long long>{3, 3});
    CHECK(validate_data(dfh.data).all_pass);
    CHECK(verify_action_morphisms(dfh.data).ok);
}

TEST_CASE("mu_from_data is well-defined under lattice shifts by construction") {
    // exercised inside mu_from_data; a corrupted lambda triggers the check
    CHECK_NOTHROW(mu_from_data(simple_data(2)));
    CHECK_NOTHROW(mu_from_data(simple_data(5)));
}
