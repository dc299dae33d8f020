#include "nilpact/grouptable.hpp"

#include <algorithm>
#include <set>

#include "nilpact/errors.hpp"

namespace nilpact {

GroupTable::GroupTable(int order, std::vector<std::uint16_t> table)
    : n_(order), table_(std::move(table)) {
    if (n_ <= 0 || table_.size() != static_cast<std::size_t>(n_) * n_)
        throw precondition_error("GroupTable: table size does not match order");
    for (auto v : table_)
        if (v >= n_) throw precondition_error("GroupTable: entry out of range");

    identity_ = -1;
    for (int e = 0; e < n_; ++e) {
        bool ok = true;
        for (int x = 0; x < n_ && ok; ++x)
            ok = mul(e, x) == x && mul(x, e) == x;
        if (ok) {
            identity_ = e;
            break;
        }
    }
    if (identity_ < 0) throw precondition_error("GroupTable: no identity element");

    inverse_.assign(n_, -1);
    for (int x = 0; x < n_; ++x) {
        for (int y = 0; y < n_; ++y) {
            if (mul(x, y) == identity_ && mul(y, x) == identity_) {
                inverse_[x] = y;
                break;
            }
        }
        if (inverse_[x] < 0) throw precondition_error("GroupTable: missing inverse");
    }
}

GroupTable GroupTable::from_function(int order, const std::function<int(int, int)>& mul) {
    std::vector<std::uint16_t> t(static_cast<std::size_t>(order) * order);
    for (int x = 0; x < order; ++x)
        for (int y = 0; y < order; ++y)
            t[static_cast<std::size_t>(x) * order + y] = static_cast<std::uint16_t>(mul(x, y));
    return GroupTable(order, std::move(t));
}

int GroupTable::element_order(int x) const {
    int ord = 1;
    int cur = x;
    while (cur != identity_) {
        cur = mul(cur, x);
        ++ord;
    }
    return ord;
}

int GroupTable::commutator(int x, int y) const {
    return mul(mul(inverse(x), inverse(y)), mul(x, y));
}

bool GroupTable::is_abelian() const {
    for (int x = 0; x < n_; ++x)
        for (int y = x + 1; y < n_; ++y)
            if (mul(x, y) != mul(y, x)) return false;
    return true;
}

void GroupTable::check_axioms() const {
    for (int x = 0; x < n_; ++x)
        for (int y = 0; y < n_; ++y)
            for (int z = 0; z < n_; ++z)
                if (mul(mul(x, y), z) != mul(x, mul(y, z)))
                    throw precondition_error("GroupTable: associativity fails");
}

std::vector<int> generated_subgroup(const GroupTable& g, const std::vector<int>& gens) {
    std::vector<char> in(g.order(), 0);
    std::vector<int> frontier;
    auto push = [&](int x) {
        if (!in[x]) {
            in[x] = 1;
            frontier.push_back(x);
        }
    };
    push(g.identity());
    for (int x : gens) push(x);
    for (std::size_t i = 0; i < frontier.size(); ++i) {
        for (std::size_t j = 0; j < frontier.size(); ++j) {
            push(g.mul(frontier[i], frontier[j]));
            if (frontier.size() > static_cast<std::size_t>(g.order())) break;
        }
    }
    std::vector<int> out;
    for (int x = 0; x < g.order(); ++x)
        if (in[x]) out.push_back(x);
    return out;
}

GroupTable cyclic_table(int n) {
    return GroupTable::from_function(n, [n](int x, int y) { return (x + y) % n; });
}

GroupTable direct_product(const GroupTable& a, const GroupTable& b) {
    int na = a.order(), nb = b.order();
    return GroupTable::from_function(na * nb, [&, nb](int x, int y) {
        int xa = x / nb, xb = x % nb;
        int ya = y / nb, yb = y % nb;
        return a.mul(xa, ya) * nb + b.mul(xb, yb);
    });
}

GroupTable dihedral_table(int n) {
    // 0..n-1 rotations, n..2n-1 reflections
    return GroupTable::from_function(2 * n, [n](int x, int y) {
        bool rx = x >= n, ry = y >= n;
        int a = x % n, b = y % n;
        if (!rx && !ry) return (a + b) % n;
        if (!rx && ry) return n + (b - a + n) % n;
        if (rx && !ry) return n + (a + b) % n;
        return (b - a + n) % n;
    });
}

GroupTable quaternion8_table() {
    // 1, -1, i, -i, j, -j, k, -k
    auto mulq = [](int x, int y) {
        int sx = x & 1, sy = y & 1;   // sign bits
        int ux = x >> 1, uy = y >> 1; // 0:1 1:i 2:j 3:k
        static const int unit[4][4] = {
            {0, 1, 2, 3},
            {1, 0, 3, 2},
            {2, 3, 0, 1},
            {3, 2, 1, 0},
        };
        static const int sign[4][4] = {
            {0, 0, 0, 0},
            {0, 1, 0, 1},
            {0, 1, 1, 0},
            {0, 0, 1, 1},
        };
        int u = unit[ux][uy];
        int s = sx ^ sy ^ sign[ux][uy];
        return (u << 1) | s;
    };
    return GroupTable::from_function(8, mulq);
}

GroupTable symmetric4_table() {
    // permutations of {0,1,2,3} in lexicographic rank order
    std::vector<std::array<int, 4>> perms;
    std::array<int, 4> p = {0, 1, 2, 3};
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    auto rank = [&](const std::array<int, 4>& q) {
        for (std::size_t i = 0; i < perms.size(); ++i)
            if (perms[i] == q) return static_cast<int>(i);
        return -1;
    };
    return GroupTable::from_function(24, [&](int x, int y) {
        std::array<int, 4> r;
        for (int i = 0; i < 4; ++i) r[i] = perms[x][perms[y][i]];
        return rank(r);
    });
}

GroupTable unitriangular_table(int p) {
    // matrix [[1,a,c],[0,1,b],[0,0,1]], index = (a*p + b)*p + c
    int n = p * p * p;
    return GroupTable::from_function(n, [p](int x, int y) {
        int ax = x / (p * p), bx = (x / p) % p, cx = x % p;
        int ay = y / (p * p), by = (y / p) % p, cy = y % p;
        int a = (ax + ay) % p;
        int b = (bx + by) % p;
        int c = (cx + cy + ax * by) % p;
        return (a * p + b) * p + c;
    });
}

}  // namespace nilpact
