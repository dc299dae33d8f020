#include "nilpact/fastgroups.hpp"

#include "nilpact/errors.hpp"

namespace nilpact {

FastHeisenberg::FastHeisenberg(const heisenberg::BilinearPairing& mu) {
    ta_ = mu.A().num_factors();
    tb_ = mu.B().num_factors();
    tc_ = mu.C().num_factors();
    if (ta_ > kFastMaxFactors || tb_ > kFastMaxFactors || tc_ > kFastMaxFactors)
        throw precondition_error("FastHeisenberg: too many invariant factors");
    for (std::size_t i = 0; i < ta_; ++i) da_[i] = mu.A().factors()[i];
    for (std::size_t i = 0; i < tb_; ++i) db_[i] = mu.B().factors()[i];
    for (std::size_t i = 0; i < tc_; ++i) dc_[i] = mu.C().factors()[i];
    na_ = mu.A().order();
    nb_ = mu.B().order();
    nc_ = mu.C().order();
    order_ = na_ * nb_ * nc_;
    for (std::size_t i = 0; i < ta_; ++i)
        for (std::size_t j = 0; j < tb_; ++j) {
            const auto& coords = mu.generator_values()[i][j].coords();
            for (std::size_t k = 0; k < tc_; ++k) val_[i][j].v[k] = coords[k];
        }
}

void FastHeisenberg::decode(long long idx, const std::array<long long, kFastMaxFactors>& d,
                            std::size_t t, Tuple& out) const {
    for (std::size_t i = t; i-- > 0;) {
        out.v[i] = idx % d[i];
        idx /= d[i];
    }
}

long long FastHeisenberg::mu_eval_c(const Tuple& a, const Tuple& b) const {
    // returns the mixed-radix C-index of mu(a,b)
    std::array<long long, kFastMaxFactors> acc{};
    for (std::size_t i = 0; i < ta_; ++i) {
        if (a.v[i] == 0) continue;
        for (std::size_t j = 0; j < tb_; ++j) {
            if (b.v[j] == 0) continue;
            long long f = a.v[i] * b.v[j];
            for (std::size_t k = 0; k < tc_; ++k)
                acc[k] = (acc[k] + f % dc_[k] * val_[i][j].v[k]) % dc_[k];
        }
    }
    long long idx = 0;
    for (std::size_t k = 0; k < tc_; ++k) idx = idx * dc_[k] + acc[k];
    return idx;
}

long long FastHeisenberg::mul(long long x, long long y) const {
    long long xc = x % nc_, yc = y % nc_;
    x /= nc_;
    y /= nc_;
    long long xb = x % nb_, yb = y % nb_;
    long long xa = x / nb_, ya = y / nb_;

    Tuple a1, b2;
    decode(xa, da_, ta_, a1);
    decode(yb, db_, tb_, b2);
    long long muc = mu_eval_c(a1, b2);

    // componentwise sums in mixed radix
    auto add_mixed = [](long long u, long long v, const std::array<long long, kFastMaxFactors>& d,
                        std::size_t t) {
        long long out = 0;
        std::array<long long, kFastMaxFactors> du{}, dv{};
        for (std::size_t i = t; i-- > 0;) {
            du[i] = u % d[i];
            u /= d[i];
            dv[i] = v % d[i];
            v /= d[i];
        }
        for (std::size_t i = 0; i < t; ++i) out = out * d[i] + (du[i] + dv[i]) % d[i];
        return out;
    };
    long long ra = add_mixed(xa, ya, da_, ta_);
    long long rb = add_mixed(xb, yb, db_, tb_);
    long long rc = add_mixed(add_mixed(xc, muc, dc_, tc_), yc, dc_, tc_);
    return (ra * nb_ + rb) * nc_ + rc;
}

long long FastHeisenberg::inv(long long x) const {
    long long xc = x % nc_;
    x /= nc_;
    long long xb = x % nb_;
    long long xa = x / nb_;

    auto neg_mixed = [](long long u, const std::array<long long, kFastMaxFactors>& d, std::size_t t) {
        long long out = 0;
        std::array<long long, kFastMaxFactors> du{};
        for (std::size_t i = t; i-- > 0;) {
            du[i] = u % d[i];
            u /= d[i];
        }
        for (std::size_t i = 0; i < t; ++i) out = out * d[i] + (d[i] - du[i]) % d[i];
        return out;
    };

    Tuple a, b;
    decode(xa, da_, ta_, a);
    decode(xb, db_, tb_, b);
    long long muc = mu_eval_c(a, b);

    // (-a, -b, mu(a,b) - c)
    auto sub_mixed = [](long long u, long long v, const std::array<long long, kFastMaxFactors>& d,
                        std::size_t t) {
        long long out = 0;
        std::array<long long, kFastMaxFactors> du{}, dv{};
        for (std::size_t i = t; i-- > 0;) {
            du[i] = u % d[i];
            u /= d[i];
            dv[i] = v % d[i];
            v /= d[i];
        }
        for (std::size_t i = 0; i < t; ++i) out = out * d[i] + (du[i] - dv[i] + d[i]) % d[i];
        return out;
    };
    return (neg_mixed(xa, da_, ta_) * nb_ + neg_mixed(xb, db_, tb_)) * nc_ +
           sub_mixed(muc, xc, dc_, tc_);
}

FastTheta::FastTheta(const theta::ThetaGroup& g) {
    t_ = g.K().num_factors();
    if (t_ > kFastMaxFactors) throw precondition_error("FastTheta: too many invariant factors");
    m_ = g.m();
    nk_ = g.K().order();
    order_ = g.order();
    for (std::size_t i = 0; i < t_; ++i) {
        d_[i] = g.K().factors()[i];
        step_[i] = m_ / d_[i];
    }
}

long long FastTheta::mul(long long x, long long y) const {
    long long xx = x % nk_, yx = y % nk_;  // character coefficient tuples
    x /= nk_;
    y /= nk_;
    long long xb = x % nk_, yb = y % nk_;
    long long xs = x / nk_, ys = y / nk_;

    std::array<long long, kFastMaxFactors> bx{}, xy{};
    long long tmp = xb;
    for (std::size_t i = t_; i-- > 0;) {
        bx[i] = tmp % d_[i];
        tmp /= d_[i];
    }
    tmp = yx;
    for (std::size_t i = t_; i-- > 0;) {
        xy[i] = tmp % d_[i];
        tmp /= d_[i];
    }
    // alpha'(b) = sum_i (coef'_i * m/d_i) * b_i mod m
    long long evalv = 0;
    for (std::size_t i = 0; i < t_; ++i) evalv = (evalv + xy[i] * step_[i] % m_ * bx[i]) % m_;

    long long s = (xs + ys + evalv) % m_;

    auto add_mixed = [this](long long u, long long v) {
        long long out = 0;
        std::array<long long, kFastMaxFactors> du{}, dv{};
        for (std::size_t i = t_; i-- > 0;) {
            du[i] = u % d_[i];
            u /= d_[i];
            dv[i] = v % d_[i];
            v /= d_[i];
        }
        for (std::size_t i = 0; i < t_; ++i) out = out * d_[i] + (du[i] + dv[i]) % d_[i];
        return out;
    };
    return (s * nk_ + add_mixed(xb, yb)) * nk_ + add_mixed(xx, yx);
}

long long FastTheta::inv(long long x) const {
    long long xx = x % nk_;
    x /= nk_;
    long long xb = x % nk_;
    long long xs = x / nk_;

    std::array<long long, kFastMaxFactors> bd{}, xd{};
    long long tmp = xb;
    for (std::size_t i = t_; i-- > 0;) {
        bd[i] = tmp % d_[i];
        tmp /= d_[i];
    }
    tmp = xx;
    for (std::size_t i = t_; i-- > 0;) {
        xd[i] = tmp % d_[i];
        tmp /= d_[i];
    }
    long long evalv = 0;
    for (std::size_t i = 0; i < t_; ++i) evalv = (evalv + xd[i] * step_[i] % m_ * bd[i]) % m_;
    long long s = ((-xs + evalv) % m_ + m_) % m_;

    long long nb = 0, nx = 0;
    for (std::size_t i = 0; i < t_; ++i) {
        nb = nb * d_[i] + (d_[i] - bd[i]) % d_[i];
        nx = nx * d_[i] + (d_[i] - xd[i]) % d_[i];
    }
    return (s * nk_ + nb) * nk_ + nx;
}

}  // namespace nilpact
