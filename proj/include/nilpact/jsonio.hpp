#pragma once

#include <json.hpp>

#include <optional>
#include <vector>

#include "nilpact/finabel.hpp"
#include "nilpact/heisenberg.hpp"
#include "nilpact/lattice.hpp"
#include "nilpact/theta.hpp"

namespace nilpact::jsonio {

using json = nlohmann::ordered_json;

// {"abelian": [d1, d2, ...]} or a bare array; decreasing-divisibility checked.
finabel::FinAbGroup parse_abelian(const json& j);

// {"A": [..], "B": [..], "C": [..], "matrix": [[..]]}; matrix entries are
// integers (cyclic C) or coordinate arrays.
heisenberg::BilinearPairing parse_heisenberg(const json& j);

// {"p": 3, "n": 1, "exponent": "p"} -> A = B = (Z/p)^n, C = Z/p, dot product.
heisenberg::BilinearPairing parse_extraspecial(const json& j);

// {"entries": [4,2], "char_exclusion": 3}
theta::AdmissibleTuple parse_admissible(const json& j);

// {"n":1,"c":2,"H":[[[1,0]]],"lambda":[[2]],"gamma_denominator":2}
// Gaussian entries: [re, im] with components either integers or "p/q" strings;
// a bare number is a real entry.
lattice::IsotropicSublatticeData parse_sublattice(const json& j);

struct PipelineConfig {
    std::vector<heisenberg::BilinearPairing> factors;
    std::optional<long long> rank_bound;
    std::optional<long long> char_exclusion;
    long long d = 1;  // divisor parameter for the Chern certificates
};

// Top level: {"factors":[...]} plus options, or a single factor fragment.
PipelineConfig parse_config(const json& j);

}  // namespace nilpact::jsonio
