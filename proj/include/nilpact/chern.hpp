#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nilpact/rational.hpp"
#include "nilpact/waring.hpp"

namespace nilpact::chern {

// Element of the even part of the rational exterior algebra on m degree-1
// generators (the even rational cohomology of an m-torus). Terms are keyed by
// generator subsets as bitmasks; only nonzero coefficients are stored.
class EvenClass {
public:
    EvenClass() = default;
    explicit EvenClass(int n_generators);
    static EvenClass constant(int n_generators, const Rat& c);
    // single term c * e_{i1} ^ ... ^ e_{ik} with 0-based sorted indices
    static EvenClass term(int n_generators, const std::vector<int>& indices, const Rat& c);

    int generators() const { return n_; }
    const std::map<std::uint64_t, Rat>& terms() const { return terms_; }
    Rat coeff(std::uint64_t mask) const;
    Rat constant_coeff() const { return coeff(0); }
    bool is_zero() const { return terms_.empty(); }
    bool supported_only_degree0() const;
    int max_degree() const;  // largest |subset| with nonzero coefficient (0 if zero)
    EvenClass degree_part(int k) const;
    bool is_integral() const;
    // every coefficient in positive degree lies in d*Z
    bool positive_degree_divisible(const Int& d) const;

    EvenClass add(const EvenClass& o) const;
    EvenClass sub(const EvenClass& o) const;
    EvenClass scale(const Rat& s) const;
    EvenClass wedge(const EvenClass& o) const;
    EvenClass wedge_pow(long long k) const;

    bool operator==(const EvenClass&) const = default;
    std::string to_string() const;

private:
    void set_coeff(std::uint64_t mask, const Rat& c);
    int n_ = 0;
    std::map<std::uint64_t, Rat> terms_;
};

// Line bundle symbol: a degree-2 homogeneous integral class (the first Chern
// class), over the m-torus cohomology.
struct LineBundleSymbol {
    EvenClass c1;
    explicit LineBundleSymbol(EvenClass c);  // validates degree-2 + integrality
};

// exp(t*c1) truncated by nilpotency.
EvenClass exp_trunc(const LineBundleSymbol& l, long long t);

// Formal sum of tensor powers of one line bundle plus trivial summands.
struct VirtualBundleSymbol {
    LineBundleSymbol base;
    std::vector<long long> powers;  // multiset of tensor exponents
    long long extra_trivial = 0;
    long long rank() const { return static_cast<long long>(powers.size()) + extra_trivial; }
};

EvenClass ch_virtual(const VirtualBundleSymbol& v);

struct BundleCertificate {
    Int rank = 0;
    EvenClass ch;
    long long d = 1;
    bool divisibility_ok = false;  // ch - rank in d * H_Z
    bool trivial = false;
    std::string detail;
};

struct AlphaDResult {
    VirtualBundleSymbol symbol;
    BundleCertificate certificate;
    waring::WaringCertificate waring;
};

// alpha[d] = sum of alpha^{tensor t} over T \ {1}, with T from the Waring
// construction at n = floor(m/2), S = {1}, modulus n! * d. The certificate
// checks ch(alpha + alpha[d]) - |T| in d * H_Z coefficientwise and the rank
// bound R2(m); both readings of the rank bound are recorded.
AlphaDResult alpha_d(const LineBundleSymbol& c1, long long d, int m);

Int r2_bound(int m);  // R1(floor(m/2), 1) - 1
Int r3_bound(int m);  // 1 + R2(m) + floor(m/2)

// trivial iff ch is concentrated in degree 0 with coefficient = rank and
// rank >= ceil(m/2); otherwise records which hypothesis failed.
BundleCertificate triviality_certificate(const Int& rank, const EvenClass& ch, int m);

struct ComplementPlan {
    AlphaDResult alpha_part;
    EvenClass chi;              // rank(alpha + alpha[d]) - ch(alpha + alpha[d]), in d*H_Z
    Int chi_summand_rank = 0;   // declared rank of the formal alpha_chi summand
    bool chi_supplied_by_topology = true;  // alpha_chi construction out of scope
    Int pad_lines = 0;
    Int total_rank = 0;         // exactly R3(m)
    EvenClass total_ch;
    BundleCertificate certificate;
};

// Assembles alpha + alpha[d] + alpha_chi + trivial padding to rank R3(m) and
// certifies that the total Chern character is concentrated in degree 0.
ComplementPlan complement_plan(const LineBundleSymbol& c1, long long d, int m);

}  // namespace nilpact::chern
