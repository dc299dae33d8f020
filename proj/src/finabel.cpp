#include "nilpact/finabel.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "nilpact/bounds.hpp"
#include "nilpact/errors.hpp"

namespace nilpact::finabel {

namespace {

long long mod_reduce(long long v, long long d) {
    long long r = v % d;
    return r < 0 ? r + d : r;
}

}  // namespace

FinAbGroup::FinAbGroup(std::vector<long long> factors) : factors_(std::move(factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 2) throw precondition_error("FinAbGroup: factors must be >= 2");
        if (i + 1 < factors_.size() && factors_[i] % factors_[i + 1] != 0)
            throw precondition_error("FinAbGroup: divisibility chain violated");
    }
}

long long FinAbGroup::order() const {
    long long o = 1;
    for (long long d : factors_) o *= d;
    return o;
}

std::string FinAbGroup::to_string() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += " x ";
        s += "Z/" + std::to_string(factors_[i]);
    }
    return s;
}

FinAbElem::FinAbElem(FinAbGroup group, std::vector<long long> coords)
    : group_(std::move(group)), coords_(std::move(coords)) {
    if (coords_.size() != group_.num_factors())
        throw precondition_error("FinAbElem: coordinate count mismatch");
    for (std::size_t i = 0; i < coords_.size(); ++i)
        coords_[i] = mod_reduce(coords_[i], group_.factors()[i]);
}

bool FinAbElem::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](long long c) { return c == 0; });
}

std::string FinAbElem::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(coords_[i]);
    }
    return s + ")";
}

FinAbElem zero_elem(const FinAbGroup& g) {
    return FinAbElem(g, std::vector<long long>(g.num_factors(), 0));
}

FinAbElem elem_add(const FinAbElem& x, const FinAbElem& y) {
    if (x.group() != y.group()) throw precondition_error("elem_add: group mismatch");
    std::vector<long long> c(x.coords().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.coords()[i] + y.coords()[i];
    return FinAbElem(x.group(), std::move(c));
}

FinAbElem elem_neg(const FinAbElem& x) {
    std::vector<long long> c(x.coords().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -x.coords()[i];
    return FinAbElem(x.group(), std::move(c));
}

FinAbElem elem_sub(const FinAbElem& x, const FinAbElem& y) {
    return elem_add(x, elem_neg(y));
}

FinAbElem elem_scale(long long k, const FinAbElem& x) {
    std::vector<long long> c(x.coords().size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        long long d = x.group().factors()[i];
        c[i] = mod_reduce(mod_reduce(k, d) * x.coords()[i], d);
    }
    return FinAbElem(x.group(), std::move(c));
}

FinAbElem generator(const FinAbGroup& g, std::size_t i) {
    std::vector<long long> c(g.num_factors(), 0);
    c.at(i) = 1;
    return FinAbElem(g, std::move(c));
}

long long elem_order(const FinAbElem& x) {
    long long o = 1;
    for (std::size_t i = 0; i < x.coords().size(); ++i) {
        long long d = x.group().factors()[i];
        long long c = x.coords()[i];
        long long oi = d / std::gcd(d, c == 0 ? d : c);
        o = std::lcm(o, oi);
    }
    return o;
}

long long elem_index(const FinAbElem& x) {
    long long idx = 0;
    for (std::size_t i = 0; i < x.coords().size(); ++i)
        idx = idx * x.group().factors()[i] + x.coords()[i];
    return idx;
}

FinAbElem elem_at(const FinAbGroup& g, long long index) {
    std::vector<long long> c(g.num_factors(), 0);
    for (std::size_t i = g.num_factors(); i-- > 0;) {
        c[i] = index % g.factors()[i];
        index /= g.factors()[i];
    }
    return FinAbElem(g, std::move(c));
}

FinAbHom::FinAbHom(FinAbGroup domain, FinAbGroup codomain, std::vector<FinAbElem> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
    if (images_.size() != domain_.num_factors())
        throw precondition_error("FinAbHom: one image per canonical generator required");
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (images_[i].group() != codomain_)
            throw precondition_error("FinAbHom: image outside codomain");
        if (!elem_scale(domain_.factors()[i], images_[i]).is_zero())
            throw precondition_error("FinAbHom: order compatibility violated");
    }
}

FinAbHom FinAbHom::identity(const FinAbGroup& g) {
    std::vector<FinAbElem> im;
    for (std::size_t i = 0; i < g.num_factors(); ++i) im.push_back(generator(g, i));
    return FinAbHom(g, g, std::move(im));
}

FinAbElem FinAbHom::apply(const FinAbElem& x) const {
    if (x.group() != domain_) throw precondition_error("FinAbHom: element outside domain");
    FinAbElem acc = zero_elem(codomain_);
    for (std::size_t i = 0; i < images_.size(); ++i)
        acc = elem_add(acc, elem_scale(x.coords()[i], images_[i]));
    return acc;
}

bool FinAbHom::is_injective() const {
    for (long long i = 0; i < domain_.order(); ++i)
        if (apply(elem_at(domain_, i)).is_zero() && i != 0) return false;
    return true;
}

bool FinAbHom::is_surjective() const {
    std::set<long long> image;
    for (long long i = 0; i < domain_.order(); ++i)
        image.insert(elem_index(apply(elem_at(domain_, i))));
    return static_cast<long long>(image.size()) == codomain_.order();
}

Character::Character(FinAbGroup domain, long long modulus, std::vector<long long> exponents)
    : domain_(std::move(domain)), modulus_(modulus), exponents_(std::move(exponents)) {
    if (modulus_ < 1) throw precondition_error("Character: modulus must be positive");
    if (exponents_.size() != domain_.num_factors())
        throw precondition_error("Character: exponent count mismatch");
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        exponents_[i] = mod_reduce(exponents_[i], modulus_);
        if (mod_reduce(domain_.factors()[i] * exponents_[i], modulus_) != 0)
            throw precondition_error("Character: d_i * e_i != 0 (mod m)");
    }
}

Character Character::trivial(const FinAbGroup& domain, long long modulus) {
    return Character(domain, modulus, std::vector<long long>(domain.num_factors(), 0));
}

long long Character::eval(const FinAbElem& x) const {
    if (x.group() != domain_) throw precondition_error("Character: element outside domain");
    long long acc = 0;
    for (std::size_t i = 0; i < exponents_.size(); ++i)
        acc = mod_reduce(acc + exponents_[i] * x.coords()[i], modulus_);
    return acc;
}

bool Character::is_trivial() const {
    return std::all_of(exponents_.begin(), exponents_.end(), [](long long e) { return e == 0; });
}

Character Character::add(const Character& o) const {
    if (domain_ != o.domain_ || modulus_ != o.modulus_)
        throw precondition_error("Character: domain/modulus mismatch");
    std::vector<long long> e(exponents_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = exponents_[i] + o.exponents_[i];
    return Character(domain_, modulus_, std::move(e));
}

Character Character::neg() const {
    std::vector<long long> e(exponents_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = -exponents_[i];
    return Character(domain_, modulus_, std::move(e));
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

IntMat identity_mat(std::size_t n) {
    IntMat u(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
    return u;
}

void row_swap(IntMat& m, std::size_t i, std::size_t j) { std::swap(m[i], m[j]); }

void col_swap(IntMat& m, std::size_t i, std::size_t j) {
    for (auto& row : m) std::swap(row[i], row[j]);
}

// row_i -= q * row_j
void row_sub(IntMat& m, std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t k = 0; k < m[i].size(); ++k) m[i][k] -= q * m[j][k];
}

void col_sub(IntMat& m, std::size_t i, std::size_t j, const Int& q) {
    for (auto& row : m) row[i] -= q * row[j];
}

void row_negate(IntMat& m, std::size_t i) {
    for (auto& v : m[i]) v = -v;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMat& input) {
    std::size_t rows = input.size();
    std::size_t cols = rows ? input[0].size() : 0;
    for (const auto& r : input)
        if (r.size() != cols) throw precondition_error("smith_normal_form: ragged matrix");

    IntMat a = input;
    IntMat u = identity_mat(rows);
    IntMat v = identity_mat(cols);

    std::size_t nmin = std::min(rows, cols);
    for (std::size_t s = 0; s < nmin; ++s) {
        for (;;) {
            // pivot: smallest nonzero absolute value in the trailing block,
            // tie-break lowest row index then lowest column index
            std::size_t pi = s, pj = s;
            Int best = 0;
            for (std::size_t i = s; i < rows; ++i)
                for (std::size_t j = s; j < cols; ++j) {
                    if (a[i][j] == 0) continue;
                    Int av = abs(a[i][j]);
                    if (best == 0 || av < best) {
                        best = av;
                        pi = i;
                        pj = j;
                    }
                }
            if (best == 0) break;  // trailing block is zero
            if (pi != s) {
                row_swap(a, pi, s);
                row_swap(u, pi, s);
            }
            if (pj != s) {
                col_swap(a, pj, s);
                col_swap(v, pj, s);
            }
            if (a[s][s] < 0) {
                row_negate(a, s);
                row_negate(u, s);
            }

            bool clean = true;
            for (std::size_t i = s + 1; i < rows; ++i) {
                if (a[i][s] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][s].get_mpz_t(), a[s][s].get_mpz_t());
                row_sub(a, i, s, q);
                row_sub(u, i, s, q);
                if (a[i][s] != 0) clean = false;
            }
            for (std::size_t j = s + 1; j < cols; ++j) {
                if (a[s][j] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a[s][j].get_mpz_t(), a[s][s].get_mpz_t());
                col_sub(a, j, s, q);
                col_sub(v, j, s, q);
                if (a[s][j] != 0) clean = false;
            }
            if (!clean) continue;

            // divisibility: a[s][s] must divide every later entry
            bool divides_all = true;
            for (std::size_t i = s + 1; i < rows && divides_all; ++i)
                for (std::size_t j = s + 1; j < cols && divides_all; ++j)
                    if (a[i][j] % a[s][s] != 0) {
                        // add row i to row s to pull the bad entry into play
                        row_sub(a, s, i, Int(-1));
                        row_sub(u, s, i, Int(-1));
                        divides_all = false;
                    }
            if (divides_all) break;
        }
    }

    SmithDecomposition out;
    out.rows = rows;
    out.cols = cols;
    out.U = std::move(u);
    out.V = std::move(v);
    out.diag.resize(nmin);
    for (std::size_t i = 0; i < nmin; ++i) out.diag[i] = a[i][i];
    return out;
}

CokernelResult smith_invariant_factors(const IntMat& m) {
    std::size_t rows = m.size();
    SmithDecomposition d = smith_normal_form(m);

    CokernelResult out;
    std::size_t nonzero = 0;
    for (const Int& v : d.diag)
        if (v != 0) ++nonzero;
    if (nonzero < rows) {
        out.finite = false;
        return out;
    }
    std::vector<long long> factors;
    for (const Int& v : d.diag) {
        if (v > 1) {
            if (!v.fits_slong_p())
                throw precondition_error("smith_invariant_factors: factor too large");
            factors.push_back(v.get_si());
        }
    }
    std::reverse(factors.begin(), factors.end());  // decreasing-divisibility order
    out.group = FinAbGroup(std::move(factors));
    return out;
}

IntMat integer_kernel_basis(const IntMat& m) {
    std::size_t cols = m.empty() ? 0 : m[0].size();
    SmithDecomposition d = smith_normal_form(m);
    IntMat basis;  // columns collected as rows first, transposed at the end
    for (std::size_t j = 0; j < cols; ++j) {
        bool in_kernel = j >= d.diag.size() || d.diag[j] == 0;
        if (!in_kernel) continue;
        std::vector<Int> col(cols);
        for (std::size_t i = 0; i < cols; ++i) col[i] = d.V[i][j];
        basis.push_back(std::move(col));
    }
    IntMat out(cols, std::vector<Int>(basis.size(), 0));
    for (std::size_t b = 0; b < basis.size(); ++b)
        for (std::size_t i = 0; i < cols; ++i) out[i][b] = basis[b][i];
    return out;
}

namespace {

IntMat invert_unimodular(const IntMat& u) {
    // Gauss-Jordan over Q stays integral for unimodular input; do it with
    // rationals and check integrality at the end.
    std::size_t n = u.size();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(u[i][j]);
        a[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw precondition_error("invert_unimodular: singular matrix");
        std::swap(a[p], a[c]);
        Rat inv = 1 / a[c][c];
        for (auto& x : a[c]) x *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    IntMat out(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!rat_is_integer(a[i][n + j]))
                throw precondition_error("invert_unimodular: input not unimodular");
            out[i][j] = a[i][n + j].get_num();
        }
    return out;
}

}  // namespace

IntegerQuotient::IntegerQuotient(const IntMat& relation_columns) {
    n_ = relation_columns.size();
    SmithDecomposition d = smith_normal_form(relation_columns);
    full_diag_.assign(n_, 0);
    for (std::size_t i = 0; i < d.diag.size(); ++i) full_diag_[i] = abs(d.diag[i]);
    for (std::size_t i = 0; i < n_; ++i)
        if (full_diag_[i] == 0)
            throw precondition_error("IntegerQuotient: infinite quotient (relation lattice has lower rank)");
    U_ = d.U;
    Uinv_ = invert_unimodular(U_);

    // nontrivial coordinates, reported in decreasing-divisibility order
    std::vector<long long> factors;
    for (std::size_t i = n_; i-- > 0;) {
        if (full_diag_[i] > 1) {
            factors.push_back(full_diag_[i].get_si());
            coord_rows_.push_back(i);
            coord_mods_.push_back(full_diag_[i]);
        }
    }
    group_ = FinAbGroup(std::move(factors));
}

FinAbElem IntegerQuotient::project(const std::vector<Int>& z) const {
    if (z.size() != n_) throw precondition_error("IntegerQuotient::project: bad dimension");
    std::vector<long long> coords(coord_rows_.size());
    for (std::size_t k = 0; k < coord_rows_.size(); ++k) {
        Int acc = 0;
        std::size_t row = coord_rows_[k];
        for (std::size_t j = 0; j < n_; ++j) acc += U_[row][j] * z[j];
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), acc.get_mpz_t(), coord_mods_[k].get_mpz_t());
        coords[k] = r.get_si();
    }
    return FinAbElem(group_, std::move(coords));
}

FinAbElem IntegerQuotient::project_ll(const std::vector<long long>& z) const {
    std::vector<Int> zz;
    zz.reserve(z.size());
    for (long long v : z) zz.push_back(to_int(v));
    return project(zz);
}

std::vector<Int> IntegerQuotient::lift(const FinAbElem& x) const {
    if (x.group() != group_) throw precondition_error("IntegerQuotient::lift: wrong group");
    std::vector<Int> y(n_, 0);
    for (std::size_t k = 0; k < coord_rows_.size(); ++k) y[coord_rows_[k]] = to_int(x.coords()[k]);
    std::vector<Int> z(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) z[i] += Uinv_[i][j] * y[j];
    return z;
}

bool IntegerQuotient::contains(const std::vector<Int>& z) const {
    if (z.size() != n_) throw precondition_error("IntegerQuotient::contains: bad dimension");
    for (std::size_t i = 0; i < n_; ++i) {
        Int acc = 0;
        for (std::size_t j = 0; j < n_; ++j) acc += U_[i][j] * z[j];
        if (!mpz_divisible_p(acc.get_mpz_t(), full_diag_[i].get_mpz_t())) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

std::vector<Character> dual_group(const FinAbGroup& a, long long m) {
    if (m < 1 || m % a.exponent() != 0)
        throw precondition_error("dual_group: exponent of A must divide m");
    std::vector<Character> gens;
    for (std::size_t i = 0; i < a.num_factors(); ++i) {
        std::vector<long long> e(a.num_factors(), 0);
        e[i] = m / a.factors()[i];
        gens.emplace_back(a, m, std::move(e));
    }
    return gens;
}

std::size_t min_generators(const FinAbGroup& a) { return a.num_factors(); }

int rank_bruteforce(const GroupTable& g, long long order_bound) {
    long long bound = exhaustive_bound(order_bound);
    if (g.order() > bound)
        throw bound_exceeded("rank_bruteforce: order " + std::to_string(g.order()) +
                             " exceeds bound " + std::to_string(bound));

    // BFS over subgroups: d(H) = length of the shortest generator chain
    // reaching H. Rank = max over subgroups.
    std::map<std::vector<int>, int> dist;  // element set -> minimal generator count
    std::queue<std::vector<int>> work;
    std::vector<int> trivial = {g.identity()};
    dist[trivial] = 0;
    work.push(trivial);
    int rank = 0;
    while (!work.empty()) {
        std::vector<int> h = work.front();
        work.pop();
        int dh = dist[h];
        rank = std::max(rank, dh);
        if (static_cast<int>(h.size()) == g.order()) continue;
        for (int x = 0; x < g.order(); ++x) {
            if (std::binary_search(h.begin(), h.end(), x)) continue;
            std::vector<int> gens = h;
            gens.push_back(x);
            std::vector<int> h2 = generated_subgroup(g, gens);
            auto it = dist.find(h2);
            if (it == dist.end() || it->second > dh + 1) {
                dist[h2] = dh + 1;
                work.push(h2);
            }
        }
    }
    return rank;
}

}  // namespace nilpact::finabel
