#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilpact/grouptable.hpp"
#include "nilpact/rational.hpp"

namespace nilpact::finabel {

using IntMat = std::vector<std::vector<Int>>;

// Finite abelian group in invariant-factor form: factors d_1 >= d_2 >= ... >= d_t
// with d_{i+1} | d_i and every d_i >= 2. The empty list is the trivial group.
// Matches the admissible-tuple convention d_t | ... | d_1 > 1.
class FinAbGroup {
public:
    FinAbGroup() = default;
    explicit FinAbGroup(std::vector<long long> factors);

    const std::vector<long long>& factors() const { return factors_; }
    std::size_t num_factors() const { return factors_.size(); }
    bool is_trivial() const { return factors_.empty(); }
    bool is_cyclic() const { return factors_.size() <= 1; }
    long long order() const;
    long long exponent() const { return factors_.empty() ? 1 : factors_.front(); }

    bool operator==(const FinAbGroup&) const = default;
    std::string to_string() const;

private:
    std::vector<long long> factors_;
};

class FinAbElem {
public:
    FinAbElem() = default;
    FinAbElem(FinAbGroup group, std::vector<long long> coords);

    const FinAbGroup& group() const { return group_; }
    const std::vector<long long>& coords() const { return coords_; }
    bool is_zero() const;

    bool operator==(const FinAbElem&) const = default;
    std::string to_string() const;

private:
    FinAbGroup group_;
    std::vector<long long> coords_;  // coords[i] in [0, d_i)
};

FinAbElem zero_elem(const FinAbGroup& g);
FinAbElem elem_add(const FinAbElem& x, const FinAbElem& y);
FinAbElem elem_neg(const FinAbElem& x);
FinAbElem elem_sub(const FinAbElem& x, const FinAbElem& y);
FinAbElem elem_scale(long long k, const FinAbElem& x);
FinAbElem generator(const FinAbGroup& g, std::size_t i);
long long elem_order(const FinAbElem& x);

// Mixed-radix enumeration of group elements; index in [0, order()).
long long elem_index(const FinAbElem& x);
FinAbElem elem_at(const FinAbGroup& g, long long index);

// Homomorphism given by the images of the canonical generators.
// Validated on construction: d_i(domain) * images[i] = 0 in the codomain.
class FinAbHom {
public:
    FinAbHom(FinAbGroup domain, FinAbGroup codomain, std::vector<FinAbElem> images);
    static FinAbHom identity(const FinAbGroup& g);

    const FinAbGroup& domain() const { return domain_; }
    const FinAbGroup& codomain() const { return codomain_; }
    const std::vector<FinAbElem>& images() const { return images_; }
    FinAbElem apply(const FinAbElem& x) const;
    bool is_injective() const;   // exhaustive kernel scan
    bool is_surjective() const;  // exhaustive image scan

private:
    FinAbGroup domain_, codomain_;
    std::vector<FinAbElem> images_;
};

// Character of A into the m-th roots of unity, represented additively:
// g |-> sum_i e_i * coords[i] (mod m), with d_i * e_i = 0 (mod m).
class Character {
public:
    Character(FinAbGroup domain, long long modulus, std::vector<long long> exponents);
    static Character trivial(const FinAbGroup& domain, long long modulus);

    const FinAbGroup& domain() const { return domain_; }
    long long modulus() const { return modulus_; }
    const std::vector<long long>& exponents() const { return exponents_; }
    long long eval(const FinAbElem& x) const;
    bool is_trivial() const;

    Character add(const Character& o) const;
    Character neg() const;
    bool operator==(const Character&) const = default;

private:
    FinAbGroup domain_;
    long long modulus_ = 1;
    std::vector<long long> exponents_;
};

// ---------------------------------------------------------------------------
// Smith normal form. U * M * V = D with U, V unimodular and D diagonal with
// d_1 | d_2 | ... (textbook increasing order; invariant factors read off the
// diagonal). Exact big-integer arithmetic throughout.
struct SmithDecomposition {
    IntMat U, V;
    std::vector<Int> diag;  // length min(rows, cols)
    std::size_t rows = 0, cols = 0;
};

SmithDecomposition smith_normal_form(const IntMat& m);

struct CokernelResult {
    bool finite = true;
    FinAbGroup group;  // meaningful only when finite
};

// Invariant factors of coker(M) for an arbitrary integer matrix M presenting
// relations between the canonical generators of Z^rows. Factors are returned
// in decreasing-divisibility order with trivial factors dropped.
CokernelResult smith_invariant_factors(const IntMat& m);

// The quotient Z^n / M*Z^n (columns of M generate the relation lattice),
// with explicit projection and lifting through the SNF transform.
class IntegerQuotient {
public:
    explicit IntegerQuotient(const IntMat& relation_columns);

    const FinAbGroup& group() const { return group_; }
    std::size_t ambient_rank() const { return n_; }
    FinAbElem project(const std::vector<Int>& z) const;
    FinAbElem project_ll(const std::vector<long long>& z) const;
    std::vector<Int> lift(const FinAbElem& x) const;
    bool contains(const std::vector<Int>& z) const;  // z in M*Z^n

private:
    std::size_t n_ = 0;
    FinAbGroup group_;
    std::vector<std::size_t> coord_rows_;  // rows of U giving nontrivial coordinates
    std::vector<Int> coord_mods_;
    IntMat U_, Uinv_;
    std::vector<Int> full_diag_;  // length n_, with 1s for trivial coordinates
};

// Basis (as columns) of the kernel lattice {z : M z = 0 over Z}.
IntMat integer_kernel_basis(const IntMat& m);

// ---------------------------------------------------------------------------

// Generators of Hom(A, Z/m); requires exp(A) | m. The i-th character sends
// the i-th canonical generator to m/d_i and the others to 0.
std::vector<Character> dual_group(const FinAbGroup& a, long long m);

// d(A) for finite abelian A: the number of invariant factors.
std::size_t min_generators(const FinAbGroup& a);

// Rank of an arbitrary finite group given by its multiplication table:
// max over all subgroups H of the minimal generating-set size of H,
// computed by exhaustive subgroup enumeration.
int rank_bruteforce(const GroupTable& g, long long order_bound = 512);

}  // namespace nilpact::finabel
