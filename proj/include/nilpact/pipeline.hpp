#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nilpact/jsonio.hpp"
#include "nilpact/rational.hpp"

namespace nilpact::pipeline {

using jsonio::json;

// (r * floor(r/2), r): torus power and projective dimension of the variety.
std::pair<long long, long long> variety_params(long long r);

struct FiberChoice {
    std::string kind;  // "stiefel" or "grassmann"
    Int k;
    Int dim;
};

struct ManifoldParams {
    long long torus_dim = 0;  // 2 r floor(r/2)
    Int t;                    // R3(2 floor(r/2))
    std::vector<FiberChoice> fiber_menu;
    bool menu_truncated = false;
};

ManifoldParams manifold_params(long long r, std::size_t menu_cap = 1000);

// dim Stiefel_k(C^t) = k(2t - k), for 1 <= k <= t.
Int stiefel_dim(const Int& k, const Int& t);
// dim Grassmann_k(C^t) = k(t - k), for 1 <= k <= t.
Int grassmann_dim(const Int& k, const Int& t);

enum class Mode { birational, diff, both };
Mode parse_mode(const std::string& s);

// Deterministic pipeline report; byte-identical across runs for a fixed
// config. Exit-code semantics are owned by the CLI.
json run(const jsonio::PipelineConfig& cfg, Mode mode);

bool report_all_pass(const json& report);

}  // namespace nilpact::pipeline
