#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilpact/finabel.hpp"
#include "nilpact/grouptable.hpp"

namespace nilpact::heisenberg {

using finabel::FinAbElem;
using finabel::FinAbGroup;
using finabel::FinAbHom;

// Z-bilinear map mu: A x B -> C stored by its values on canonical generators.
// Values for arbitrary arguments are computed on demand; no full value table
// is materialized.
class BilinearPairing {
public:
    BilinearPairing(FinAbGroup a, FinAbGroup b, FinAbGroup c,
                    std::vector<std::vector<FinAbElem>> generator_values);

    // mu(a_i, b_j) = dot-product pairing into C = Z/p; A = B = (Z/p)^n.
    static BilinearPairing standard_dot(long long p, std::size_t n);

    const FinAbGroup& A() const { return a_; }
    const FinAbGroup& B() const { return b_; }
    const FinAbGroup& C() const { return c_; }
    const std::vector<std::vector<FinAbElem>>& generator_values() const { return values_; }

    FinAbElem eval(const FinAbElem& a, const FinAbElem& b) const;
    long long heisenberg_order() const;  // |A|*|B|*|C|

    bool operator==(const BilinearPairing&) const = default;

private:
    FinAbGroup a_, b_, c_;
    std::vector<std::vector<FinAbElem>> values_;  // values_[i][j] in C
};

struct HeisenbergElem {
    FinAbElem a, b, c;
    bool operator==(const HeisenbergElem&) const = default;
    std::string to_string() const;
};

HeisenbergElem hh_identity(const BilinearPairing& mu);
HeisenbergElem hh_mul(const BilinearPairing& mu, const HeisenbergElem& x, const HeisenbergElem& y);
HeisenbergElem hh_inv(const BilinearPairing& mu, const HeisenbergElem& x);

// Mixed-radix enumeration of H(mu); index runs over a, then b, then c.
long long hh_index(const BilinearPairing& mu, const HeisenbergElem& x);
HeisenbergElem hh_at(const BilinearPairing& mu, long long index);

// Exhaustively computed center; throws bound_exceeded when the commutation
// scan would exceed `op_bound` pairings.
std::vector<HeisenbergElem> center_of(const BilinearPairing& mu, long long op_bound = 1000000);

// mu(a,B)=0 => a=0 and mu(A,b)=0 => b=0.
bool is_nondegenerate(const BilinearPairing& mu);

// Morphism H(mu1) -> H(mu2), (a,b,c) |-> (lamA a, lamB b, kappa c).
struct HeisenbergHom {
    BilinearPairing mu1, mu2;
    FinAbHom lamA, lamB, kappa;
    HeisenbergElem apply(const HeisenbergElem& x) const;
};

// Builds the functorial morphism after checking that the square
// kappa o mu1 = mu2 o (lamA x lamB) commutes on generators, then verifies the
// homomorphism property exhaustively when |H(mu1)|^2 <= op_bound.
HeisenbergHom functorial_map(const FinAbHom& lamA, const FinAbHom& lamB, const FinAbHom& kappa,
                             const BilinearPairing& mu1, const BilinearPairing& mu2,
                             long long op_bound = 1000000);

// true iff [[g,h],k] = 1 for all g,h,k.
bool nilpotency_class_le2(const GroupTable& g, long long order_bound = 4096);

// Central-by-abelian extension record over explicit tables.
struct CentralByAbelianExt {
    GroupTable kernel, total, quotient;
    std::vector<int> inject;   // kernel index -> total index
    std::vector<int> project;  // total index -> quotient index
};

struct ExtCheckResult {
    bool ok = true;
    std::string witness;  // first failure, human-readable
};

// Exactness, centrality of the injected kernel, abelian quotient.
ExtCheckResult verify_extension(const CentralByAbelianExt& ext);

// The extension 1 -> C -> H(mu) -> A x B -> 1 materialized as tables.
CentralByAbelianExt heisenberg_extension(const BilinearPairing& mu, long long order_bound = 4096);

GroupTable heisenberg_table(const BilinearPairing& mu, long long order_bound = 4096);

}  // namespace nilpact::heisenberg
