#include "nilpact/heisenberg.hpp"

#include <numeric>

#include "nilpact/bounds.hpp"
#include "nilpact/errors.hpp"

namespace nilpact::heisenberg {

using finabel::elem_add;
using finabel::elem_at;
using finabel::elem_index;
using finabel::elem_neg;
using finabel::elem_scale;
using finabel::elem_sub;
using finabel::zero_elem;

BilinearPairing::BilinearPairing(FinAbGroup a, FinAbGroup b, FinAbGroup c,
                                 std::vector<std::vector<FinAbElem>> generator_values)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), values_(std::move(generator_values)) {
    if (values_.size() != a_.num_factors())
        throw precondition_error("BilinearPairing: one row per generator of A required");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i].size() != b_.num_factors())
            throw precondition_error("BilinearPairing: one column per generator of B required");
        for (std::size_t j = 0; j < values_[i].size(); ++j) {
            const FinAbElem& v = values_[i][j];
            if (v.group() != c_) throw precondition_error("BilinearPairing: value outside C");
            long long g = std::gcd(a_.factors()[i], b_.factors()[j]);
            if (!elem_scale(g, v).is_zero())
                throw precondition_error(
                    "BilinearPairing: order of mu(a_i,b_j) must divide gcd(d_i(A), d_j(B))");
        }
    }
}

BilinearPairing BilinearPairing::standard_dot(long long p, std::size_t n) {
    FinAbGroup a(std::vector<long long>(n, p));
    FinAbGroup c(p >= 2 ? std::vector<long long>{p} : std::vector<long long>{});
    std::vector<std::vector<FinAbElem>> vals(n, std::vector<FinAbElem>(n, zero_elem(c)));
    for (std::size_t i = 0; i < n; ++i) vals[i][i] = FinAbElem(c, {1});
    return BilinearPairing(a, a, c, std::move(vals));
}

FinAbElem BilinearPairing::eval(const FinAbElem& a, const FinAbElem& b) const {
    if (a.group() != a_ || b.group() != b_)
        throw precondition_error("BilinearPairing::eval: element outside A or B");
    FinAbElem acc = zero_elem(c_);
    for (std::size_t i = 0; i < a_.num_factors(); ++i) {
        if (a.coords()[i] == 0) continue;
        for (std::size_t j = 0; j < b_.num_factors(); ++j) {
            if (b.coords()[j] == 0) continue;
            acc = elem_add(acc, elem_scale(a.coords()[i] * b.coords()[j], values_[i][j]));
        }
    }
    return acc;
}

long long BilinearPairing::heisenberg_order() const {
    return a_.order() * b_.order() * c_.order();
}

std::string HeisenbergElem::to_string() const {
    return "(" + a.to_string() + "," + b.to_string() + "," + c.to_string() + ")";
}

HeisenbergElem hh_identity(const BilinearPairing& mu) {
    return {zero_elem(mu.A()), zero_elem(mu.B()), zero_elem(mu.C())};
}

HeisenbergElem hh_mul(const BilinearPairing& mu, const HeisenbergElem& x, const HeisenbergElem& y) {
    if (x.a.group() != mu.A() || y.a.group() != mu.A() || x.b.group() != mu.B() ||
        y.b.group() != mu.B() || x.c.group() != mu.C() || y.c.group() != mu.C())
        throw precondition_error("hh_mul: pairing mismatch");
    // (a,b,c)*(a',b',c') = (a+a', b+b', c + mu(a,b') + c')
    return {elem_add(x.a, y.a), elem_add(x.b, y.b),
            elem_add(elem_add(x.c, mu.eval(x.a, y.b)), y.c)};
}

HeisenbergElem hh_inv(const BilinearPairing& mu, const HeisenbergElem& x) {
    // (a,b,c)^{-1} = (-a, -b, mu(a,b) - c)
    return {elem_neg(x.a), elem_neg(x.b), elem_sub(mu.eval(x.a, x.b), x.c)};
}

long long hh_index(const BilinearPairing& mu, const HeisenbergElem& x) {
    long long ia = elem_index(x.a), ib = elem_index(x.b), ic = elem_index(x.c);
    return (ia * mu.B().order() + ib) * mu.C().order() + ic;
}

HeisenbergElem hh_at(const BilinearPairing& mu, long long index) {
    long long ic = index % mu.C().order();
    index /= mu.C().order();
    long long ib = index % mu.B().order();
    long long ia = index / mu.B().order();
    return {elem_at(mu.A(), ia), elem_at(mu.B(), ib), elem_at(mu.C(), ic)};
}

std::vector<HeisenbergElem> center_of(const BilinearPairing& mu, long long op_bound) {
    long long bound = exhaustive_bound(op_bound);
    long long na = mu.A().order(), nb = mu.B().order();
    long long ops = 0;

    std::vector<HeisenbergElem> center;
    // (a,b,c) is central iff mu(a,b')=mu(a',b) for all a',b'; c is free.
    for (long long ia = 0; ia < na; ++ia) {
        FinAbElem a = elem_at(mu.A(), ia);
        for (long long ib = 0; ib < nb; ++ib) {
            FinAbElem b = elem_at(mu.B(), ib);
            bool central = true;
            for (long long ja = 0; ja < na && central; ++ja) {
                FinAbElem a2 = elem_at(mu.A(), ja);
                for (long long jb = 0; jb < nb && central; ++jb) {
                    FinAbElem b2 = elem_at(mu.B(), jb);
                    ops += 2;
                    if (ops > bound) throw bound_exceeded("center_of: multiplication budget exceeded");
                    if (!(mu.eval(a, b2) == mu.eval(a2, b))) central = false;
                }
            }
            if (central) {
                for (long long ic = 0; ic < mu.C().order(); ++ic)
                    center.push_back({a, b, elem_at(mu.C(), ic)});
            }
        }
    }
    return center;
}

bool is_nondegenerate(const BilinearPairing& mu) {
    for (long long ia = 1; ia < mu.A().order(); ++ia) {
        FinAbElem a = elem_at(mu.A(), ia);
        bool kills_all = true;
        for (std::size_t j = 0; j < mu.B().num_factors() && kills_all; ++j)
            if (!mu.eval(a, finabel::generator(mu.B(), j)).is_zero()) kills_all = false;
        if (kills_all) return false;
    }
    for (long long ib = 1; ib < mu.B().order(); ++ib) {
        FinAbElem b = elem_at(mu.B(), ib);
        bool kills_all = true;
        for (std::size_t i = 0; i < mu.A().num_factors() && kills_all; ++i)
            if (!mu.eval(finabel::generator(mu.A(), i), b).is_zero()) kills_all = false;
        if (kills_all) return false;
    }
    return true;
}

HeisenbergElem HeisenbergHom::apply(const HeisenbergElem& x) const {
    return {lamA.apply(x.a), lamB.apply(x.b), kappa.apply(x.c)};
}

HeisenbergHom functorial_map(const FinAbHom& lamA, const FinAbHom& lamB, const FinAbHom& kappa,
                             const BilinearPairing& mu1, const BilinearPairing& mu2,
                             long long op_bound) {
    if (lamA.domain() != mu1.A() || lamB.domain() != mu1.B() || kappa.domain() != mu1.C() ||
        lamA.codomain() != mu2.A() || lamB.codomain() != mu2.B() || kappa.codomain() != mu2.C())
        throw precondition_error("functorial_map: domain/codomain mismatch");

    // square check on generators: kappa(mu1(a_i,b_j)) = mu2(lamA a_i, lamB b_j)
    for (std::size_t i = 0; i < mu1.A().num_factors(); ++i)
        for (std::size_t j = 0; j < mu1.B().num_factors(); ++j) {
            FinAbElem lhs = kappa.apply(mu1.generator_values()[i][j]);
            FinAbElem rhs = mu2.eval(lamA.images()[i], lamB.images()[j]);
            if (!(lhs == rhs))
                throw precondition_error("functorial_map: square does not commute on generators (" +
                                         std::to_string(i) + "," + std::to_string(j) + ")");
        }

    HeisenbergHom gamma{mu1, mu2, lamA, lamB, kappa};

    long long n = mu1.heisenberg_order();
    long long bound = exhaustive_bound(op_bound);
    if (n * n <= bound) {
        for (long long i = 0; i < n; ++i) {
            HeisenbergElem x = hh_at(mu1, i);
            HeisenbergElem gx = gamma.apply(x);
            for (long long j = 0; j < n; ++j) {
                HeisenbergElem y = hh_at(mu1, j);
                HeisenbergElem lhs = gamma.apply(hh_mul(mu1, x, y));
                HeisenbergElem rhs = hh_mul(mu2, gx, gamma.apply(y));
                if (!(lhs == rhs))
                    throw precondition_error("functorial_map: homomorphism check failed at " +
                                             x.to_string() + " * " + y.to_string());
            }
        }
    }
    return gamma;
}

bool nilpotency_class_le2(const GroupTable& g, long long order_bound) {
    long long bound = exhaustive_bound(order_bound);
    if (g.order() > bound)
        throw bound_exceeded("nilpotency_class_le2: order exceeds bound");
    // [[g,h],k] = 1 for all triples <=> every commutator is central.
    std::vector<char> seen(g.order(), 0);
    for (int x = 0; x < g.order(); ++x)
        for (int y = 0; y < g.order(); ++y) {
            int c = g.commutator(x, y);
            if (seen[c]) continue;
            seen[c] = 1;
            for (int k = 0; k < g.order(); ++k)
                if (g.mul(c, k) != g.mul(k, c)) return false;
        }
    return true;
}

ExtCheckResult verify_extension(const CentralByAbelianExt& ext) {
    const GroupTable& K = ext.kernel;
    const GroupTable& G = ext.total;
    const GroupTable& Q = ext.quotient;
    ExtCheckResult res;
    auto fail = [&](const std::string& w) {
        res.ok = false;
        res.witness = w;
        return res;
    };

    if (static_cast<int>(ext.inject.size()) != K.order() ||
        static_cast<int>(ext.project.size()) != G.order())
        return fail("map sizes do not match group orders");

    // homomorphisms
    for (int x = 0; x < K.order(); ++x)
        for (int y = 0; y < K.order(); ++y)
            if (ext.inject[K.mul(x, y)] != G.mul(ext.inject[x], ext.inject[y]))
                return fail("inject not a homomorphism at (" + std::to_string(x) + "," +
                            std::to_string(y) + ")");
    for (int x = 0; x < G.order(); ++x)
        for (int y = 0; y < G.order(); ++y)
            if (ext.project[G.mul(x, y)] != Q.mul(ext.project[x], ext.project[y]))
                return fail("project not a homomorphism at (" + std::to_string(x) + "," +
                            std::to_string(y) + ")");

    // injectivity / surjectivity
    std::vector<char> hit(G.order(), 0);
    for (int x = 0; x < K.order(); ++x) {
        if (hit[ext.inject[x]]) return fail("inject not injective");
        hit[ext.inject[x]] = 1;
    }
    std::vector<char> onto(Q.order(), 0);
    for (int x = 0; x < G.order(); ++x) onto[ext.project[x]] = 1;
    for (int q = 0; q < Q.order(); ++q)
        if (!onto[q]) return fail("project not surjective; missed " + std::to_string(q));

    // exactness: image(inject) = kernel(project)
    for (int x = 0; x < K.order(); ++x)
        if (ext.project[ext.inject[x]] != Q.identity())
            return fail("project o inject nontrivial at " + std::to_string(x));
    long long ker_size = 0;
    for (int x = 0; x < G.order(); ++x)
        if (ext.project[x] == Q.identity()) ++ker_size;
    if (ker_size != K.order()) return fail("image(inject) != kernel(project)");

    // centrality
    for (int x = 0; x < K.order(); ++x) {
        int ix = ext.inject[x];
        for (int y = 0; y < G.order(); ++y)
            if (G.mul(ix, y) != G.mul(y, ix))
                return fail("injected kernel not central: [" + std::to_string(ix) + "," +
                            std::to_string(y) + "] != 1");
    }

    if (!Q.is_abelian()) return fail("quotient not abelian");
    return res;
}

GroupTable heisenberg_table(const BilinearPairing& mu, long long order_bound) {
    long long n = mu.heisenberg_order();
    long long bound = exhaustive_bound(order_bound);
    if (n > bound) throw bound_exceeded("heisenberg_table: order exceeds bound");
    return GroupTable::from_function(static_cast<int>(n), [&mu](int x, int y) {
        return static_cast<int>(hh_index(mu, hh_mul(mu, hh_at(mu, x), hh_at(mu, y))));
    });
}

CentralByAbelianExt heisenberg_extension(const BilinearPairing& mu, long long order_bound) {
    CentralByAbelianExt ext;
    ext.total = heisenberg_table(mu, order_bound);

    const FinAbGroup& C = mu.C();
    ext.kernel = GroupTable::from_function(
        static_cast<int>(C.order()), [&C](int x, int y) {
            return static_cast<int>(elem_index(elem_add(elem_at(C, x), elem_at(C, y))));
        });

    long long nq = mu.A().order() * mu.B().order();
    ext.quotient = GroupTable::from_function(static_cast<int>(nq), [&mu](int x, int y) {
        long long nb = mu.B().order();
        FinAbElem xa = elem_at(mu.A(), x / nb), xb = elem_at(mu.B(), x % nb);
        FinAbElem ya = elem_at(mu.A(), y / nb), yb = elem_at(mu.B(), y % nb);
        return static_cast<int>(elem_index(elem_add(xa, ya)) * nb +
                                elem_index(elem_add(xb, yb)));
    });

    for (long long ic = 0; ic < C.order(); ++ic) {
        HeisenbergElem e{zero_elem(mu.A()), zero_elem(mu.B()), elem_at(C, ic)};
        ext.inject.push_back(static_cast<int>(hh_index(mu, e)));
    }
    for (long long i = 0; i < mu.heisenberg_order(); ++i) {
        HeisenbergElem e = hh_at(mu, i);
        ext.project.push_back(
            static_cast<int>(elem_index(e.a) * mu.B().order() + elem_index(e.b)));
    }
    return ext;
}

}  // namespace nilpact::heisenberg
