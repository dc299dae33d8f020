#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilpact/grouptable.hpp"
#include "nilpact/heisenberg.hpp"
#include "nilpact/lattice.hpp"
#include "nilpact/theta.hpp"

namespace nilpact::verify {

// Morphism of short exact sequences over explicit tables: two extension rows
// and three vertical maps (kernel, total, quotient), all element-indexed.
struct SesMorphismWitness {
    heisenberg::CentralByAbelianExt top;
    heisenberg::CentralByAbelianExt bottom;
    std::vector<int> map_kernel;    // top.kernel -> bottom.kernel
    std::vector<int> map_total;     // top.total -> bottom.total
    std::vector<int> map_quotient;  // top.quotient -> bottom.quotient
};

struct CheckResult {
    bool ok = true;
    std::string witness;
};

// Homomorphism property of all three vertical maps and commutativity of both
// squares, exhaustively.
CheckResult check_ses_morphism(const SesMorphismWitness& w, long long order_bound = 4096);

// Witness builders for the three embedding diagrams.
SesMorphismWitness ses_from_parametrisation(const theta::ParametrisationWitness& w,
                                            const heisenberg::BilinearPairing& mu,
                                            long long order_bound = 4096);
SesMorphismWitness ses_from_lattice(const lattice::DataFromHeisenberg& dfh,
                                    const heisenberg::BilinearPairing& mu,
                                    long long order_bound = 4096);
SesMorphismWitness ses_from_functorial(const heisenberg::HeisenbergHom& gamma,
                                       long long order_bound = 4096);

// The theta extension 1 -> Z/m -> Theta(delta) -> K x Hom(K, Z/m) -> 1 as
// explicit tables (scalars first in the kernel enumeration).
heisenberg::CentralByAbelianExt theta_extension(const theta::ThetaGroup& g,
                                                long long order_bound = 4096);

// Injective homomorphism G -> H by backtracking over generator images with
// order-compatibility pruning; generators taken in decreasing element order,
// image candidates in index order.
std::optional<std::vector<int>> embed_search(const GroupTable& g, const GroupTable& h,
                                             long long g_bound = 64, long long h_bound = 4096,
                                             long long node_budget = 20000000);

struct ArrowReport {
    std::string arrow;
    bool pass = false;
    std::string detail;
};

struct PipelineCheckReport {
    std::vector<ArrowReport> arrows;
    bool all_pass = false;
    // per factor, filled when the corresponding path ran
    std::vector<theta::AdmissibleTuple> tuples;
    std::vector<long long> theta_moduli;
    std::vector<std::string> lattice_digests;
};

// Composes the embedding chain factor by factor (the input is already a
// Heisenberg product) and verifies every arrow: non-degeneracy and cyclic
// centre, the theta-group embedding, the sublattice construction with its
// action morphisms, and composite injectivity.
PipelineCheckReport composed_pipeline_check(
    const std::vector<heisenberg::BilinearPairing>& factors, bool run_theta, bool run_lattice,
    std::optional<long long> char_exclusion = std::nullopt, long long order_bound = 4096);

}  // namespace nilpact::verify
