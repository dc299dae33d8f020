#pragma once

#include <array>
#include <cstdint>

#include "nilpact/heisenberg.hpp"
#include "nilpact/theta.hpp"

namespace nilpact {

// Index-based multiplication for the exhaustive scans. Element indices agree
// with hh_index / theta_index, so results interoperate with the value types.
// Capacity is fixed; groups in the exhaustive regime have few factors.
constexpr std::size_t kFastMaxFactors = 12;

class FastHeisenberg {
public:
    explicit FastHeisenberg(const heisenberg::BilinearPairing& mu);

    long long order() const { return order_; }
    long long identity() const { return 0; }
    long long mul(long long x, long long y) const;
    long long inv(long long x) const;

private:
    struct Tuple {
        std::array<long long, kFastMaxFactors> v{};
    };
    void decode(long long idx, const std::array<long long, kFastMaxFactors>& d, std::size_t t,
                Tuple& out) const;
    long long mu_eval_c(const Tuple& a, const Tuple& b) const;  // C-index of mu(a,b)

    std::size_t ta_ = 0, tb_ = 0, tc_ = 0;
    std::array<long long, kFastMaxFactors> da_{}, db_{}, dc_{};
    long long na_ = 1, nb_ = 1, nc_ = 1, order_ = 1;
    // mu(a_i, b_j) as C-coordinate tuples
    std::array<std::array<Tuple, kFastMaxFactors>, kFastMaxFactors> val_{};
};

class FastTheta {
public:
    explicit FastTheta(const theta::ThetaGroup& g);

    long long order() const { return order_; }
    long long identity() const { return 0; }
    long long mul(long long x, long long y) const;
    long long inv(long long x) const;

private:
    std::size_t t_ = 0;
    long long m_ = 1, nk_ = 1, order_ = 1;
    std::array<long long, kFastMaxFactors> d_{};
    std::array<long long, kFastMaxFactors> step_{};  // m / d_i
};

}  // namespace nilpact
