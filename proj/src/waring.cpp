#include "nilpact/waring.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <queue>

#include "nilpact/errors.hpp"

namespace nilpact::waring {

namespace {

long long mod_reduce(long long v, long long m) {
    long long r = v % m;
    return r < 0 ? r + m : r;
}

long long pow_mod(long long base, long long k, long long m) {
    base = mod_reduce(base, m);
    long long acc = 1 % m;
    for (long long i = 0; i < k; ++i) acc = acc * base % m;
    return acc;
}

}  // namespace

Multiset sorted_multiset(Multiset m) {
    std::sort(m.begin(), m.end());
    return m;
}

bool multiset_contains(const Multiset& big, const Multiset& small) {
    std::map<long long, long long> count;
    for (long long v : big) ++count[v];
    for (long long v : small) {
        auto it = count.find(v);
        if (it == count.end() || it->second == 0) return false;
        --it->second;
    }
    return true;
}

Multiset canonical_display(const Multiset& m, long long delta) {
    Multiset out;
    out.reserve(m.size());
    for (long long v : m) {
        long long r = mod_reduce(v, delta);
        if (2 * r > delta) r -= delta;  // representative in (-delta/2, delta/2]
        out.push_back(r);
    }
    return sorted_multiset(std::move(out));
}

namespace {

Int int128_to_mpz(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
    Int out;
    mpz_import(out.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
    if (neg) out = -out;
    return out;
}

}  // namespace

Int power_sum(const Multiset& m, long long k) {
    // 128-bit fast path when |t|^k * |m| provably fits
    long long maxabs = 1;
    for (long long v : m) maxabs = std::max(maxabs, v < 0 ? -v : v);
    double bits = k * std::log2(static_cast<double>(maxabs) + 1) +
                  std::log2(static_cast<double>(m.size()) + 2);
    if (bits < 120) {
        __int128 acc = 0;
        for (long long v : m) {
            __int128 p = 1;
            for (long long i = 0; i < k; ++i) p *= v;
            acc += p;
        }
        return int128_to_mpz(acc);
    }
    Int acc = 0;
    for (long long v : m) {
        Int p, base = to_int(v);
        mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k));
        acc += p;
    }
    return acc;
}

long long power_sum_mod(const Multiset& m, long long k, long long delta) {
    long long acc = 0;
    for (long long v : m) acc = (acc + pow_mod(v, k, delta)) % delta;
    return acc;
}

namespace {

// minimal counts to reach every residue as a sum of k-th powers mod m
std::vector<int> bfs_distances(long long k, long long m, const std::vector<long long>& powers) {
    std::vector<int> dist(m, -1);
    std::queue<long long> q;
    dist[0] = 0;
    q.push(0);
    while (!q.empty()) {
        long long x = q.front();
        q.pop();
        for (long long p : powers) {
            long long y = (x + p) % m;
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                q.push(y);
            }
        }
    }
    return dist;
}

struct NegOneKey {
    long long k, m;
    bool operator<(const NegOneKey& o) const { return k != o.k ? k < o.k : m < o.m; }
};

}  // namespace

Multiset negone_powers(long long k, long long m) {
    if (k < 1 || m < 1) throw precondition_error("negone_powers: k >= 1 and m >= 1 required");

    static std::mutex cache_mutex;
    static std::map<NegOneKey, Multiset> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({k, m});
        if (it != cache.end()) return it->second;
    }

    Multiset result;
    if (m == 1) {
        result = {};  // empty sum is 0 = -1 mod 1
    } else {
        long long target = m - 1;
        // canonical base per power residue: the smallest b in [0,m) with b^k = r
        std::map<long long, long long> base_of;  // residue -> smallest base
        for (long long b = 0; b < m; ++b) {
            long long r = pow_mod(b, k, m);
            if (!base_of.count(r)) base_of[r] = b;
        }
        std::vector<long long> bases, residues;
        for (auto& [r, b] : base_of) {
            bases.push_back(b);
            residues.push_back(r);
        }
        // sort by base value: lexicographic reconstruction walks bases ascending
        std::vector<std::size_t> ord(bases.size());
        for (std::size_t i = 0; i < ord.size(); ++i) ord[i] = i;
        std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
            return bases[a] < bases[b];
        });

        std::vector<int> dist = bfs_distances(k, m, residues);
        if (dist[target] < 0)
            throw precondition_error("negone_powers: -1 not reachable (impossible for k>=1)");
        int total = dist[target];
        if (total > 4 * k)
            throw std::runtime_error("negone_powers: size bound 4k violated for k=" +
                                     std::to_string(k) + ", m=" + std::to_string(m) +
                                     " (anomaly: minimal size " + std::to_string(total) + ")");

        // lexicographically smallest nondecreasing base sequence of length `total`
        std::function<bool(long long, int, std::size_t)> build =
            [&](long long rem, int cnt, std::size_t min_ord) -> bool {
            if (cnt == 0) return rem == 0;
            for (std::size_t oi = min_ord; oi < ord.size(); ++oi) {
                long long b = bases[ord[oi]];
                if (b == 0) continue;  // zero never appears in a minimal multiset
                long long r = residues[ord[oi]];
                long long rem2 = mod_reduce(rem - r, m);
                if (dist[rem2] > cnt - 1) continue;  // admissible pruning
                result.push_back(b);
                if (build(rem2, cnt - 1, oi)) return true;
                result.pop_back();
            }
            return false;
        };
        if (!build(target, total, 0))
            throw std::runtime_error("negone_powers: reconstruction failed (internal error)");
    }

    std::lock_guard<std::mutex> lock(cache_mutex);
    cache[{k, m}] = result;
    return result;
}

bool WaringMultiset::congruences_hold() const {
    for (long long k = 1; k <= degree; ++k)
        if (power_sum_mod(entries, k, modulus) != 0) return false;
    return true;
}

namespace {

WaringCertificate waring_extend_impl(long long n, const Multiset& s, long long delta) {
    WaringCertificate cert;
    cert.input_set = sorted_multiset(s);
    cert.bound = r1_bound(n, static_cast<long long>(s.size()));
    cert.output.modulus = delta;
    cert.output.degree = n;

    if (n == 0 || s.empty()) {
        cert.output.entries = {};
        cert.checks_pass = cert.output.congruences_hold();
        return cert;
    }

    // T_1 = S + {-p_1(S)}
    long long p1 = 0;
    for (long long v : s) p1 += v;
    cert.t1 = cert.input_set;
    cert.t1.push_back(-p1);
    cert.t1 = sorted_multiset(cert.t1);

    std::vector<Multiset> levels{cert.t1};
    for (long long k = 2; k <= n; ++k) {
        Multiset pk = negone_powers(k, delta);
        Multiset tk = pk;
        tk.push_back(1);
        tk = sorted_multiset(tk);
        cert.p_k.push_back(pk);
        cert.t_k.push_back(tk);
        levels.push_back(tk);
    }

    // T = all products t_1 * ... * t_n over the Cartesian product
    Multiset t{1};
    for (const Multiset& lvl : levels) {
        Multiset next;
        next.reserve(t.size() * lvl.size());
        for (long long a : t)
            for (long long b : lvl) next.push_back(a * b);
        t = std::move(next);
    }
    cert.output.entries = sorted_multiset(t);

    // checks
    auto fail = [&](const std::string& f) {
        cert.checks_pass = false;
        cert.failure = f;
        return cert;
    };
    if (!cert.output.congruences_hold()) return fail("congruence failed");
    if (!multiset_contains(cert.output.entries, cert.input_set)) return fail("S not contained in T");
    if (to_int(static_cast<long long>(cert.output.entries.size())) > cert.bound)
        return fail("|T| exceeds R1 bound");
    // multiplicativity p_k(T) = prod_j p_k(T_j), the key identity of the proof
    for (long long k = 1; k <= n; ++k) {
        Int prod = 1;
        for (const Multiset& lvl : levels) prod *= power_sum(lvl, k);
        Int sum = power_sum(cert.output.entries, k);
        if (sum != prod) return fail("multiplicativity failed");
        cert.power_sums.push_back(sum);
    }
    cert.checks_pass = true;
    return cert;
}

}  // namespace

WaringCertificate waring_extend(long long n, const Multiset& s, long long delta) {
    if (n < 0 || delta < 1)
        throw precondition_error("waring_extend: n >= 0 and delta >= 1 required");

    // S = {1} is the Chern-certificate hot path; memoize it.
    bool cacheable = s.size() == 1 && s[0] == 1;
    static std::mutex cache_mutex;
    static std::map<std::pair<long long, long long>, WaringCertificate> cache;
    if (cacheable) {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({n, delta});
        if (it != cache.end()) return it->second;
    }
    WaringCertificate cert = waring_extend_impl(n, s, delta);
    if (cacheable) {
        std::lock_guard<std::mutex> lock(cache_mutex);
        cache[{n, delta}] = cert;
    }
    return cert;
}

Int r1_bound(long long n, long long m) {
    Int acc = to_int(m + 1);
    for (long long k = 2; k <= n; ++k) acc *= to_int(4 * k + 1);
    return acc;
}

namespace {

bool congruences_hold_upto(const Multiset& entries, long long n, long long delta) {
    for (long long k = 1; k <= n; ++k)
        if (power_sum_mod(entries, k, delta) != 0) return false;
    return true;
}

}  // namespace

std::optional<Multiset> waring_minimal(long long n, const Multiset& s, long long delta,
                                       long long size_cap, long long node_budget) {
    if (n < 0 || delta < 1 || size_cap < 0)
        throw precondition_error("waring_minimal: bad arguments");

    // candidate entries ordered by |e|, positive first: 0, 1, -1, 2, -2, ...
    std::vector<long long> candidates;
    candidates.push_back(0);
    for (long long a = 1; a <= delta; ++a) {
        candidates.push_back(a);
        candidates.push_back(-a);
    }

    long long nodes = 0;
    Multiset extra;
    std::function<bool(long long, std::size_t)> search = [&](long long remaining,
                                                             std::size_t min_idx) -> bool {
        if (++nodes > node_budget) throw bound_exceeded("waring_minimal: search budget exceeded");
        if (remaining == 0) {
            Multiset t = s;
            t.insert(t.end(), extra.begin(), extra.end());
            return congruences_hold_upto(t, n, delta);
        }
        for (std::size_t i = min_idx; i < candidates.size(); ++i) {
            extra.push_back(candidates[i]);
            if (search(remaining - 1, i)) return true;
            extra.pop_back();
        }
        return false;
    };

    long long base = static_cast<long long>(s.size());
    for (long long total = base; total <= size_cap; ++total) {
        extra.clear();
        if (search(total - base, 0)) {
            Multiset t = s;
            t.insert(t.end(), extra.begin(), extra.end());
            return sorted_multiset(t);
        }
    }
    return std::nullopt;
}

}  // namespace nilpact::waring
