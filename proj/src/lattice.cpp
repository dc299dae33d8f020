#include "nilpact/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "nilpact/bounds.hpp"
#include "nilpact/errors.hpp"

namespace nilpact::lattice {

using finabel::elem_add;
using finabel::elem_at;
using finabel::elem_index;
using finabel::elem_order;
using finabel::elem_scale;
using finabel::zero_elem;
using finabel::FinAbHom;
using finabel::IntMat;

LatticeVec LatticeVec::zero(std::size_t n) {
    return LatticeVec{std::vector<long long>(n, 0), std::vector<long long>(n, 0)};
}

bool LatticeVec::is_zero() const {
    auto z = [](const std::vector<long long>& v) {
        return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
    };
    return z(re) && z(im);
}

LatticeVec LatticeVec::add(const LatticeVec& o) const {
    LatticeVec out = *this;
    for (std::size_t i = 0; i < re.size(); ++i) {
        out.re[i] += o.re[i];
        out.im[i] += o.im[i];
    }
    return out;
}

LatticeVec LatticeVec::neg() const {
    LatticeVec out = *this;
    for (std::size_t i = 0; i < re.size(); ++i) {
        out.re[i] = -out.re[i];
        out.im[i] = -out.im[i];
    }
    return out;
}

std::string LatticeVec::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < re.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(re[i]);
        if (im[i] != 0) s += (im[i] > 0 ? "+" : "") + std::to_string(im[i]) + "i";
    }
    return s + ")";
}

GaussVec to_gauss(const LatticeVec& l) {
    GaussVec v(l.re.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = GaussRat::from_int(l.re[i], l.im[i]);
    return v;
}

GaussVec gauss_add(const GaussVec& a, const GaussVec& b) {
    GaussVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

bool ExponentValue::same_scalar(const ExponentValue& o) const {
    GaussRat d = z - o.z;
    if (d.re != 0) return false;
    Rat half = d.im / 2;
    return rat_is_integer(half);
}

bool ExponentValue::is_trivial() const { return same_scalar(ExponentValue{GaussRat()}); }

IsotropicSublatticeData::IsotropicSublatticeData(int n, std::vector<std::vector<GaussRat>> H,
                                                 long long c,
                                                 std::vector<std::vector<long long>> lambda_basis,
                                                 long long g)
    : n_(n), H_(std::move(H)), c_(c), lambda_(std::move(lambda_basis)), g_(g) {
    if (n_ < 0) throw precondition_error("IsotropicSublatticeData: negative dimension");
    if (c_ < 1 || g_ < 1)
        throw precondition_error("IsotropicSublatticeData: denominators must be positive");
    if (H_.size() != static_cast<std::size_t>(n_))
        throw precondition_error("IsotropicSublatticeData: H must be n x n");
    for (const auto& row : H_)
        if (row.size() != static_cast<std::size_t>(n_))
            throw precondition_error("IsotropicSublatticeData: H must be n x n");
    if (lambda_.size() != static_cast<std::size_t>(n_))
        throw precondition_error("IsotropicSublatticeData: lambda_basis must have n rows");
    for (const auto& row : lambda_)
        if (row.empty() || row.size() != lambda_[0].size())
            throw precondition_error("IsotropicSublatticeData: ragged lambda_basis");
    if (n_ > 0 && lambda_[0].size() < static_cast<std::size_t>(n_))
        throw precondition_error("IsotropicSublatticeData: lambda_basis needs >= n columns");
}

GaussRat IsotropicSublatticeData::h(const GaussVec& v, const GaussVec& w) const {
    if (v.size() != static_cast<std::size_t>(n_) || w.size() != static_cast<std::size_t>(n_))
        throw precondition_error("h: dimension mismatch");
    GaussRat acc;
    for (int j = 0; j < n_; ++j) {
        if (v[j].is_zero()) continue;
        for (int k = 0; k < n_; ++k) {
            if (w[k].is_zero()) continue;
            acc = acc + v[j] * w[k].conj() * H_[j][k];
        }
    }
    return acc / to_rat(c_);
}

Rat IsotropicSublatticeData::im_h(const GaussVec& v, const GaussVec& w) const {
    return h(v, w).im;
}

GaussRat IsotropicSublatticeData::h(const LatticeVec& v, const LatticeVec& w) const {
    return h(to_gauss(v), to_gauss(w));
}

Rat IsotropicSublatticeData::im_h(const LatticeVec& v, const LatticeVec& w) const {
    return h(v, w).im;
}

Rat IsotropicSublatticeData::im_h_re_im(const LatticeVec& l, const LatticeVec& lp) const {
    LatticeVec re_part{l.re, std::vector<long long>(l.re.size(), 0)};
    LatticeVec im_part{std::vector<long long>(lp.re.size(), 0), lp.im};
    return im_h(re_part, im_part);
}

std::string IsotropicSublatticeData::digest() const {
    std::string s = "n=" + std::to_string(n_) + ";c=" + std::to_string(c_) +
                    ";g=" + std::to_string(g_) + ";H=[";
    for (int j = 0; j < n_; ++j) {
        if (j) s += ",";
        s += "[";
        for (int k = 0; k < n_; ++k) {
            if (k) s += ",";
            s += gauss_to_string(H_[j][k]);
        }
        s += "]";
    }
    s += "];lambda=[";
    for (std::size_t j = 0; j < lambda_.size(); ++j) {
        if (j) s += ",";
        s += "[";
        for (std::size_t k = 0; k < lambda_[j].size(); ++k) {
            if (k) s += ",";
            s += std::to_string(lambda_[j][k]);
        }
        s += "]";
    }
    return s + "]";
}

namespace {

GaussVec basis_vec(int n, int j, bool imaginary) {
    GaussVec v(n, GaussRat());
    v[j] = imaginary ? gauss_i() : GaussRat::from_int(1);
    return v;
}

bool h_is_zero(const IsotropicSublatticeData& d) {
    for (const auto& row : d.H())
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

}  // namespace

ValidationReport validate_data(const IsotropicSublatticeData& d) {
    ValidationReport rep;
    int n = d.n();

    // conjugate symmetry H[k][j] = conj(H[j][k])
    {
        ValidationItem item{"conjugate_symmetry", true, ""};
        for (int j = 0; j < n && item.pass; ++j)
            for (int k = 0; k < n && item.pass; ++k)
                if (!(d.H()[k][j] == d.H()[j][k].conj())) {
                    item.pass = false;
                    item.witness = "H[" + std::to_string(k) + "][" + std::to_string(j) +
                                   "] != conj(H[" + std::to_string(j) + "][" + std::to_string(k) +
                                   "])";
                }
        rep.items.push_back(item);
    }

    // isotropy: Im h(L_Re, L_Re) = 0
    {
        ValidationItem item{"isotropic_real_structure", true, ""};
        for (int j = 0; j < n && item.pass; ++j)
            for (int k = 0; k < n && item.pass; ++k) {
                Rat v = d.im_h(basis_vec(n, j, false), basis_vec(n, k, false));
                if (v != 0) {
                    item.pass = false;
                    item.witness = "Im h(e" + std::to_string(j + 1) + ", e" + std::to_string(k + 1) +
                                   ") = " + rat_to_string(v);
                }
            }
        rep.items.push_back(item);
    }

    // lattice rank: Lambda_Re must be a finite-index sublattice
    bool lambda_full_rank = true;
    {
        ValidationItem item{"lambda_full_rank", true, ""};
        if (n > 0) {
            IntMat cols(n, std::vector<Int>(d.lambda_basis()[0].size()));
            for (int j = 0; j < n; ++j)
                for (std::size_t k = 0; k < d.lambda_basis()[j].size(); ++k)
                    cols[j][k] = to_int(d.lambda_basis()[j][k]);
            try {
                finabel::IntegerQuotient q(cols);
                (void)q;
            } catch (const precondition_error&) {
                item.pass = false;
                item.witness = "lambda_basis does not span a finite-index sublattice";
            }
        }
        lambda_full_rank = item.pass;
        rep.items.push_back(item);
    }

    // Im h(L_Re, i*Lambda_Re) = Z when h != 0: integral pairings with gcd 1
    {
        ValidationItem item{"lattice_pairing_Z", true, ""};
        if (!h_is_zero(d) && lambda_full_rank) {
            Int gcd_acc = 0;
            std::size_t cols = d.lambda_basis()[0].size();
            for (int j = 0; j < n && item.pass; ++j)
                for (std::size_t b = 0; b < cols && item.pass; ++b) {
                    GaussVec lam(n);
                    for (int i = 0; i < n; ++i)
                        lam[i] = gauss_i() * to_rat(d.lambda_basis()[i][b]);
                    Rat v = d.im_h(basis_vec(n, j, false), lam);
                    if (!rat_is_integer(v)) {
                        item.pass = false;
                        item.witness = "Im h(e" + std::to_string(j + 1) + ", i*lambda_" +
                                       std::to_string(b + 1) + ") = " + rat_to_string(v) +
                                       " not an integer";
                    } else {
                        Int g;
                        mpz_gcd(g.get_mpz_t(), gcd_acc.get_mpz_t(), v.get_num().get_mpz_t());
                        gcd_acc = g;
                    }
                }
            if (item.pass && gcd_acc != 1) {
                item.pass = false;
                item.witness = "pairing gcd = " + gcd_acc.get_str() + ", expected 1";
            }
        }
        rep.items.push_back(item);
    }

    // Gamma containment: Im h(L_Re, i*L_Re) <= (1/g) Z
    {
        ValidationItem item{"gamma_containment", true, ""};
        for (int j = 0; j < n && item.pass; ++j)
            for (int k = 0; k < n && item.pass; ++k) {
                Rat v = d.im_h(basis_vec(n, j, false), basis_vec(n, k, true));
                Rat scaled = v * to_rat(d.g());
                if (!rat_is_integer(scaled)) {
                    item.pass = false;
                    item.witness = "Im h(e" + std::to_string(j + 1) + ", i*e" +
                                   std::to_string(k + 1) + ") = " + rat_to_string(v) +
                                   " outside (1/g)Z";
                }
            }
        rep.items.push_back(item);
    }

    rep.all_pass = std::all_of(rep.items.begin(), rep.items.end(),
                               [](const ValidationItem& i) { return i.pass; });
    return rep;
}

namespace {

FinAbGroup cyclic_group(long long g) {
    return g >= 2 ? FinAbGroup({g}) : FinAbGroup();
}

FinAbElem gamma_value(const IsotropicSublatticeData& d, const Rat& im_value) {
    // element of Gamma/Z = Z/g represented by im_value in (1/g)Z
    FinAbGroup c = cyclic_group(d.g());
    if (c.is_trivial()) return zero_elem(c);
    Rat scaled = im_value * to_rat(d.g());
    if (!rat_is_integer(scaled))
        throw precondition_error("gamma_value: value outside (1/g)Z");
    Int num = scaled.get_num();
    Int mod;
    Int gg = to_int(d.g());
    mpz_fdiv_r(mod.get_mpz_t(), num.get_mpz_t(), gg.get_mpz_t());
    return FinAbElem(c, {mod.get_si()});
}

IntMat lambda_columns(const IsotropicSublatticeData& d) {
    IntMat cols(d.n(), std::vector<Int>(d.n() == 0 ? 0 : d.lambda_basis()[0].size()));
    for (int j = 0; j < d.n(); ++j)
        for (std::size_t k = 0; k < d.lambda_basis()[j].size(); ++k)
            cols[j][k] = to_int(d.lambda_basis()[j][k]);
    return cols;
}

}  // namespace

QuotientPairing mu_from_data(const IsotropicSublatticeData& d) {
    ValidationReport rep = validate_data(d);
    if (!rep.all_pass) {
        std::string why;
        for (const auto& item : rep.items)
            if (!item.pass) why += item.condition + " (" + item.witness + "); ";
        throw precondition_error("mu_from_data: validation failed: " + why);
    }

    finabel::IntegerQuotient quotient(lambda_columns(d));
    const FinAbGroup& q = quotient.group();
    FinAbGroup c = cyclic_group(d.g());

    std::vector<std::vector<FinAbElem>> values(q.num_factors(),
                                               std::vector<FinAbElem>(q.num_factors(), zero_elem(c)));
    for (std::size_t i = 0; i < q.num_factors(); ++i) {
        std::vector<Int> zi = quotient.lift(finabel::generator(q, i));
        LatticeVec li = LatticeVec::zero(d.n());
        for (int t = 0; t < d.n(); ++t) li.re[t] = zi[t].get_si();
        for (std::size_t j = 0; j < q.num_factors(); ++j) {
            std::vector<Int> zj = quotient.lift(finabel::generator(q, j));
            LatticeVec lj = LatticeVec::zero(d.n());
            for (int t = 0; t < d.n(); ++t) lj.im[t] = zj[t].get_si();
            values[i][j] = gamma_value(d, d.im_h_re_im(li, lj));
        }
    }
    QuotientPairing out{BilinearPairing(q, q, c, std::move(values)), std::move(quotient)};

    // well-definedness under representative shifts, exhaustive over the
    // fundamental domain x lattice generators
    const FinAbGroup& qg = out.quotient.group();
    long long nq = qg.order();
    std::size_t ncols = d.n() == 0 ? 0 : d.lambda_basis()[0].size();
    for (long long xi = 0; xi < nq; ++xi)
        for (long long yi = 0; yi < nq; ++yi) {
            FinAbElem x = elem_at(qg, xi), y = elem_at(qg, yi);
            FinAbElem base = out.pairing.eval(x, y);
            std::vector<Int> zx = out.quotient.lift(x), zy = out.quotient.lift(y);
            for (std::size_t b = 0; b < ncols; ++b) {
                LatticeVec lx = LatticeVec::zero(d.n()), ly = LatticeVec::zero(d.n());
                for (int t = 0; t < d.n(); ++t) {
                    lx.re[t] = zx[t].get_si() + d.lambda_basis()[t][b];
                    ly.im[t] = zy[t].get_si();
                }
                if (!(gamma_value(d, d.im_h_re_im(lx, ly)) == base))
                    throw precondition_error("mu_from_data: not well-defined under real shifts");
                for (int t = 0; t < d.n(); ++t) {
                    lx.re[t] = zx[t].get_si();
                    ly.im[t] = zy[t].get_si() + d.lambda_basis()[t][b];
                }
                if (!(gamma_value(d, d.im_h_re_im(lx, ly)) == base))
                    throw precondition_error("mu_from_data: not well-defined under imaginary shifts");
            }
        }
    return out;
}

ExponentValue chi(const IsotropicSublatticeData& d, const LatticeVec& l) {
    Rat v = d.im_h_re_im(l, l);
    return ExponentValue{GaussRat(Rat(0), v)};
}

ExponentValue f_exponent(const IsotropicSublatticeData& d, const LatticeVec& l, const GaussVec& v) {
    GaussVec lv = to_gauss(l);
    GaussRat z = chi(d, l).z + d.h(v, lv) + d.h(lv, lv) / Rat(2);
    return ExponentValue{z};
}

CocycleCheck check_cocycle_identities(const IsotropicSublatticeData& d, const LatticeVec& l,
                                      const LatticeVec& lp, const GaussVec& v) {
    CocycleCheck out;
    LatticeVec sum = l.add(lp);
    GaussRat two_i = gauss_i() * Rat(2);
    GaussRat cross = two_i * d.im_h_re_im(l, lp);  // 2*pi*i*Im h(l_Re, l'_Im) as exponent

    // chi(l+l') vs chi(l) chi(l') exp(pi i Im h(l',l)) exp(2 pi i Im h(l_Re,l'_Im))
    {
        GaussRat lhs = chi(d, sum).z;
        GaussRat rhs = chi(d, l).z + chi(d, lp).z + gauss_i() * d.im_h(lp, l) + cross;
        out.chi_diff = ExponentValue{lhs - rhs};
        out.chi_ok = out.chi_diff.is_trivial();
    }

    // f(l+l', v) vs f(l, l'+v) f(l', v) exp(2 pi i Im h(l_Re, l'_Im))
    {
        GaussRat lhs = f_exponent(d, sum, v).z;
        GaussVec lpv = gauss_add(to_gauss(lp), v);
        GaussRat rhs = f_exponent(d, l, lpv).z + f_exponent(d, lp, v).z + cross;
        out.f_diff = ExponentValue{lhs - rhs};
        out.f_ok = out.f_diff.is_trivial();
    }

    // rho(l+l') = rho(l) o rho(l') o sigma(-Im h(l_Re, l'_Im)), compared as
    // affine-exponent fiber maps: shift and v-linear part agree by
    // construction; the constant exponents must agree mod 2i.
    {
        GaussVec lg = to_gauss(l), lpg = to_gauss(lp);
        GaussRat lhs_const = chi(d, sum).z + d.h(to_gauss(sum), to_gauss(sum)) / Rat(2);
        GaussRat rhs_const = chi(d, lp).z + d.h(lpg, lpg) / Rat(2)   // rho(l') at v
                             + chi(d, l).z + d.h(lg, lg) / Rat(2)    // rho(l) ...
                             + d.h(lpg, lg)                          // ... evaluated at v + l'
                             + cross;                                // sigma correction
        out.rho_diff = ExponentValue{lhs_const - rhs_const};
        out.rho_ok = out.rho_diff.is_trivial();
    }
    return out;
}

TwistedComposition twisted_compose(const TwistedTranslation& t1, const TwistedTranslation& t2,
                                   const IsotropicSublatticeData& d) {
    TwistedComposition out;
    out.composed.shift = t1.shift.add(t2.shift);
    Rat imv = d.im_h_re_im(t1.shift, t2.shift);
    out.correction = ExponentValue{gauss_i() * Rat(-2) * imv};
    return out;
}

namespace {

// (v,z) -> (v + shift, exp(pi * (cst + h(v, lin))) * z), the concrete form of
// every composite arising from rho_D and sigma_D.
struct FiberMap {
    LatticeVec shift;
    GaussRat cst;
    LatticeVec lin;  // second argument accumulator: v |-> h(v, lin)

    static FiberMap identity(int n) {
        return FiberMap{LatticeVec::zero(n), GaussRat(), LatticeVec::zero(n)};
    }
};

FiberMap rho_map(const IsotropicSublatticeData& d, const LatticeVec& l) {
    GaussVec lg = to_gauss(l);
    return FiberMap{l, chi(d, l).z + d.h(lg, lg) / Rat(2), l};
}

FiberMap sigma_map(const IsotropicSublatticeData& d, const Rat& c) {
    return FiberMap{LatticeVec::zero(d.n()), gauss_i() * Rat(-2) * c, LatticeVec::zero(d.n())};
}

// outer o inner
FiberMap compose(const IsotropicSublatticeData& d, const FiberMap& outer, const FiberMap& inner) {
    FiberMap out;
    out.shift = inner.shift.add(outer.shift);
    out.lin = inner.lin.add(outer.lin);
    out.cst = inner.cst + outer.cst + d.h(to_gauss(inner.shift), to_gauss(outer.lin));
    return out;
}

bool maps_equal_mod_2i(const FiberMap& a, const FiberMap& b) {
    if (!(a.shift == b.shift) || !(a.lin == b.lin)) return false;
    return ExponentValue{a.cst}.same_scalar(ExponentValue{b.cst});
}

}  // namespace

ActionCheckResult verify_action_morphisms(const IsotropicSublatticeData& d, long long op_bound) {
    ActionCheckResult res;
    auto fail = [&](const std::string& w) {
        res.ok = false;
        res.witness = w;
        return res;
    };

    ValidationReport rep = validate_data(d);
    if (!rep.all_pass) return fail("data does not validate");

    int n = d.n();
    // (c) sigma injectivity on Gamma/Z
    for (long long k = 1; k < d.g(); ++k) {
        ExponentValue e{gauss_i() * Rat(-2) * make_rat(k, d.g())};
        if (e.is_trivial()) return fail("sigma not injective at c = " + std::to_string(k) + "/g");
    }
    if (n == 0) return res;

    std::size_t ncols = d.lambda_basis()[0].size();

    // (a) corrections vanish on L_Re + Lambda_Im and Lambda_Re + L_Im
    for (int j = 0; j < n; ++j)
        for (std::size_t b = 0; b < ncols; ++b) {
            LatticeVec e = LatticeVec::zero(n);
            e.re[j] = 1;
            LatticeVec lam = LatticeVec::zero(n);
            for (int t = 0; t < n; ++t) lam.im[t] = d.lambda_basis()[t][b];
            if (!rat_is_integer(d.im_h_re_im(e, lam)))
                return fail("rho on L_Re + Lambda_Im has a nontrivial correction");
            LatticeVec lam_re = LatticeVec::zero(n);
            for (int t = 0; t < n; ++t) lam_re.re[t] = d.lambda_basis()[t][b];
            LatticeVec e_im = LatticeVec::zero(n);
            e_im.im[j] = 1;
            if (!rat_is_integer(d.im_h_re_im(lam_re, e_im)))
                return fail("rho on Lambda_Re + L_Im has a nontrivial correction");
        }

    // (b) quotient-level rho is an injective homomorphism from H(mu_D)
    QuotientPairing qp = mu_from_data(d);
    const BilinearPairing& mu = qp.pairing;
    long long total = mu.heisenberg_order();
    long long bound = exhaustive_bound(op_bound);
    if (total * total > bound)
        throw bound_exceeded("verify_action_morphisms: |H(mu_D)|^2 exceeds bound");

    auto lift_re = [&](const FinAbElem& x) {
        LatticeVec l = LatticeVec::zero(n);
        std::vector<Int> z = qp.quotient.lift(x);
        for (int t = 0; t < n; ++t) l.re[t] = z[t].get_si();
        return l;
    };
    auto lift_im = [&](const FinAbElem& y) {
        LatticeVec l = LatticeVec::zero(n);
        std::vector<Int> z = qp.quotient.lift(y);
        for (int t = 0; t < n; ++t) l.im[t] = z[t].get_si();
        return l;
    };
    auto rho_of = [&](const heisenberg::HeisenbergElem& gelem) {
        // [rho_D(l_Im)] o sigma(c) o [rho_D(l_Re)]
        Rat c = gelem.c.coords().empty() ? Rat(0) : make_rat(gelem.c.coords()[0], d.g());
        FiberMap m = rho_map(d, lift_re(gelem.a));
        m = compose(d, sigma_map(d, c), m);
        m = compose(d, rho_map(d, lift_im(gelem.b)), m);
        return m;
    };
    auto in_lambda = [&](const LatticeVec& l) {
        std::vector<Int> zr(n), zi(n);
        for (int t = 0; t < n; ++t) {
            zr[t] = to_int(l.re[t]);
            zi[t] = to_int(l.im[t]);
        }
        return qp.quotient.contains(zr) && qp.quotient.contains(zi);
    };

    // injectivity: rho(g) descends to the identity only for g = e
    for (long long i = 1; i < total; ++i) {
        heisenberg::HeisenbergElem g = heisenberg::hh_at(mu, i);
        FiberMap m = rho_of(g);
        if (in_lambda(m.shift) && m.lin == m.shift) {
            FiberMap deck = rho_map(d, m.shift);
            if (maps_equal_mod_2i(m, deck))
                return fail("rho not injective: " + g.to_string() + " acts as a deck map");
        }
    }

    for (long long i = 0; i < total; ++i) {
        heisenberg::HeisenbergElem x = heisenberg::hh_at(mu, i);
        FiberMap fx = rho_of(x);
        for (long long j = 0; j < total; ++j) {
            heisenberg::HeisenbergElem y = heisenberg::hh_at(mu, j);
            FiberMap fy = rho_of(y);
            FiberMap lhs = compose(d, fx, fy);  // rho(x) o rho(y)
            FiberMap rhs = rho_of(heisenberg::hh_mul(mu, x, y));
            // equality in the quotient bundle: differ by the deck map of
            // lambda = lhs.shift - rhs.shift in Lambda
            LatticeVec lambda = lhs.shift.add(rhs.shift.neg());
            if (!in_lambda(lambda))
                return fail("rho(x*y) and rho(x)rho(y) differ by a non-lattice shift at " +
                            x.to_string() + ", " + y.to_string());
            FiberMap adjusted = compose(d, rho_map(d, lambda), rhs);
            if (!maps_equal_mod_2i(lhs, adjusted))
                return fail("rho not a homomorphism at " + x.to_string() + ", " + y.to_string());
        }
    }
    return res;
}

// --- construction from a Heisenberg group ---------------------------------

namespace {

// closure of a generating set inside a finite abelian group
std::set<long long> generated_set(const FinAbGroup& a, const std::vector<FinAbElem>& gens) {
    std::set<long long> seen;
    std::vector<FinAbElem> frontier{zero_elem(a)};
    seen.insert(0);
    while (!frontier.empty()) {
        FinAbElem cur = frontier.back();
        frontier.pop_back();
        for (const FinAbElem& g : gens) {
            FinAbElem nxt = elem_add(cur, g);
            if (seen.insert(elem_index(nxt)).second) frontier.push_back(nxt);
        }
    }
    return seen;
}

bool generates(const FinAbGroup& a, const std::vector<FinAbElem>& gens) {
    return static_cast<long long>(generated_set(a, gens).size()) == a.order();
}

long long inverse_unit_mod(long long t, long long c) {
    for (long long u = 1; u < c; ++u)
        if (t * u % c == 1) return u;
    if (c == 1) return 0;
    throw precondition_error("inverse_unit_mod: not a unit");
}

// coordinate of mu(a, b) in the cyclic C scaled into Z/c (values lie in the
// order-c subgroup of C)
long long mu_tilde(const BilinearPairing& mu, long long c, const FinAbElem& a, const FinAbElem& b) {
    FinAbElem v = mu.eval(a, b);
    if (v.coords().empty()) return 0;
    long long csize = mu.C().order();
    long long coord = v.coords()[0];
    long long step = csize / c;
    if (coord % step != 0)
        throw precondition_error("mu_tilde: value outside the order-c subgroup");
    return (coord / step) % c;
}

}  // namespace

std::vector<HermitianWitness> hermitian_candidates(const BilinearPairing& mu,
                                                   long long order_bound,
                                                   std::size_t max_candidates) {
    if (mu.A() != mu.B())
        throw precondition_error("hermitian_candidates: requires A = B");
    if (!mu.C().is_cyclic())
        throw precondition_error("hermitian_candidates: requires cyclic C");
    if (!heisenberg::is_nondegenerate(mu))
        throw precondition_error("hermitian_candidates: requires non-degenerate mu");

    const FinAbGroup& A = mu.A();
    long long bound = exhaustive_bound(order_bound);
    if (A.order() > bound)
        throw bound_exceeded("hermitian_candidates: |A| exceeds bound");

    std::vector<HermitianWitness> out;
    if (A.is_trivial()) {
        out.push_back(HermitianWitness{1, zero_elem(A), {}, {}, 1, +1, {}});
        return out;
    }

    // c = |mu(A,B)|: order of the subgroup of cyclic C generated by the values
    long long csize = mu.C().order();
    long long gcd_coord = csize;
    for (const auto& row : mu.generator_values())
        for (const FinAbElem& v : row)
            if (!v.coords().empty()) gcd_coord = std::gcd(gcd_coord, v.coords()[0]);
    long long c = csize / gcd_coord;
    if (c < 1) c = 1;

    std::size_t ngen = A.num_factors();

    // automorphism candidates psi: B -> A by generator images
    long long enum_budget = exhaustive_bound(2000000);
    long long enum_nodes = 0;
    std::vector<std::vector<FinAbElem>> autos;
    {
        std::vector<FinAbElem> images(ngen, zero_elem(A));
        std::function<void(std::size_t)> rec = [&](std::size_t pos) {
            if (++enum_nodes > enum_budget)
                throw bound_exceeded("hermitian_candidates: enumeration budget exceeded");
            if (pos == ngen) {
                if (generates(A, images)) autos.push_back(images);
                return;
            }
            for (long long i = 0; i < A.order(); ++i) {
                FinAbElem cand = elem_at(A, i);
                if (elem_order(cand) != A.factors()[pos]) continue;
                images[pos] = cand;
                rec(pos + 1);
            }
        };
        rec(0);
    }

    // psi must make nu symmetric: mu~(g_l, psi(g_u)) = mu~(g_u, psi(g_l))
    auto psi_symmetric = [&](const std::vector<FinAbElem>& psi) {
        for (std::size_t l = 0; l < ngen; ++l)
            for (std::size_t u = l + 1; u < ngen; ++u)
                if (mu_tilde(mu, c, finabel::generator(A, l), psi[u]) !=
                    mu_tilde(mu, c, finabel::generator(A, u), psi[l]))
                    return false;
        return true;
    };

    // alpha candidates: elements of order c, ascending element index
    std::vector<FinAbElem> alphas;
    for (long long i = 0; i < A.order(); ++i) {
        FinAbElem a = elem_at(A, i);
        if (elem_order(a) == c) alphas.push_back(a);
    }

    struct Raw {
        HermitianWitness w;
        std::vector<long long> key;  // upper-triangular entries of the table
    };
    std::vector<Raw> raws;

    for (const FinAbElem& alpha : alphas) {
        // extend alpha to minimal generating tuples, lexicographic
        std::vector<std::vector<FinAbElem>> tuples;
        if (ngen == 1) {
            if (generates(A, {alpha})) tuples.push_back({alpha});
        } else {
            std::vector<FinAbElem> cur{alpha};
            std::function<void(std::size_t)> rec = [&](std::size_t pos) {
                if (tuples.size() >= 4) return;  // few extensions suffice per alpha
                if (++enum_nodes > enum_budget)
                    throw bound_exceeded("hermitian_candidates: enumeration budget exceeded");
                if (pos == ngen) {
                    if (generates(A, cur)) tuples.push_back(cur);
                    return;
                }
                for (long long i = 0; i < A.order(); ++i) {
                    cur.push_back(elem_at(A, i));
                    rec(pos + 1);
                    cur.pop_back();
                }
            };
            rec(1);
        }

        for (const auto& s : tuples) {
            for (const auto& psi : autos) {
                if (!psi_symmetric(psi)) continue;
                // psi^{-1} on alpha for the normalization check comes through
                // the full element map
                std::vector<long long> psi_inv_of(A.order(), -1);
                {
                    FinAbHom psih(A, A, psi);
                    bool ok = true;
                    for (long long i = 0; i < A.order() && ok; ++i) {
                        long long img = elem_index(psih.apply(elem_at(A, i)));
                        if (psi_inv_of[img] != -1) ok = false;
                        psi_inv_of[img] = i;
                    }
                    if (!ok) continue;  // not bijective
                }
                auto psi_inv = [&](const FinAbElem& x) {
                    return elem_at(A, psi_inv_of[elem_index(x)]);
                };

                for (long long t = 1; t < std::max<long long>(c, 2); ++t) {
                    if (std::gcd(t, c) != 1) continue;
                    long long tinv = inverse_unit_mod(t, c);
                    // normalization Im h_M(alpha, i*alpha) = +-1
                    long long v = tinv * mu_tilde(mu, c, alpha, psi_inv(alpha)) % c;
                    int sign;
                    if (v == 1 % c)
                        sign = +1;
                    else if (v == (c - 1) % c)
                        sign = -1;
                    else
                        continue;

                    // table r_jk = nu(alpha_j, alpha_k) = -t^{-1} mu~(alpha_j, psi^{-1}(alpha_k))
                    std::size_t nt = s.size();
                    std::vector<std::vector<long long>> table(nt, std::vector<long long>(nt, 0));
                    bool sym_ok = true;
                    for (std::size_t j = 0; j < nt && sym_ok; ++j)
                        for (std::size_t k = 0; k < nt && sym_ok; ++k) {
                            long long val =
                                (c - tinv * mu_tilde(mu, c, s[j], psi_inv(s[k])) % c) % c;
                            table[j][k] = val;
                            if (k < j && table[k][j] != val) sym_ok = false;
                        }
                    if (!sym_ok) continue;

                    HermitianWitness w;
                    w.c = c;
                    w.alpha = alpha;
                    w.gens = s;
                    w.table = table;
                    w.phi_unit = t;
                    w.alpha_sign = sign;
                    w.psi_images = psi;

                    std::vector<long long> key;
                    for (std::size_t j = 0; j < nt; ++j)
                        for (std::size_t k = j; k < nt; ++k) key.push_back(table[j][k]);
                    key.push_back(t);
                    raws.push_back(Raw{std::move(w), std::move(key)});
                }
            }
        }
    }

    std::stable_sort(raws.begin(), raws.end(),
                     [](const Raw& a, const Raw& b) { return a.key < b.key; });
    for (auto& r : raws) {
        out.push_back(std::move(r.w));
        if (out.size() >= max_candidates) break;
    }
    return out;
}

std::optional<HermitianWitness> hermitian_search(const BilinearPairing& mu, long long order_bound) {
    auto all = hermitian_candidates(mu, order_bound, 1);
    if (all.empty()) return std::nullopt;
    return all.front();
}

namespace {

// kernel of Z^n -> A, z |-> sum z_j * s_j, as columns
IntMat relation_lattice(const FinAbGroup& a, const std::vector<FinAbElem>& s) {
    std::size_t t = a.num_factors();
    std::size_t n = s.size();
    IntMat m(t, std::vector<Int>(n + t, 0));
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = to_int(s[j].coords()[i]);
        m[i][n + i] = to_int(-a.factors()[i]);
    }
    IntMat kernel = finabel::integer_kernel_basis(m);  // (n+t) x r
    IntMat cols(n, std::vector<Int>(kernel.empty() ? 0 : kernel[0].size(), 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < cols[i].size(); ++k) cols[i][k] = kernel[i][k];
    return cols;
}

}  // namespace

DataFromHeisenberg data_from_heisenberg(const BilinearPairing& mu, long long order_bound) {
    const FinAbGroup& A = mu.A();
    const FinAbGroup& C = mu.C();
    long long g = C.order();

    if (A.is_trivial()) {
        // the trivial case: 0 = V = V_Re = L_Re = Lambda_Re, Gamma = (1/|C|)Z
        IsotropicSublatticeData data(0, {}, 1, {}, g);
        DataFromHeisenberg out{data, HermitianWitness{1, zero_elem(A), {}, {}, 1, +1, {}},
                               {},   {},
                               1,    mu_from_data(data),
                               true};
        return out;
    }

    auto candidates = hermitian_candidates(mu, order_bound);
    if (candidates.empty())
        throw precondition_error(
            "data_from_heisenberg: no Hermitian witness found (contradicts the cited lemma "
            "for valid inputs)");

    std::string last_reason = "no candidate attempted";
    for (const HermitianWitness& hw : candidates) {
        int n = static_cast<int>(hw.gens.size());

        // H_L: lifts of the table into {0 <= r < c}, real entries
        std::vector<std::vector<GaussRat>> H(n, std::vector<GaussRat>(n, GaussRat()));
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) H[j][k] = GaussRat::from_int(hw.table[j][k]);

        IntMat rel = relation_lattice(A, hw.gens);
        std::vector<std::vector<long long>> lambda(n, std::vector<long long>(rel.empty() ? 0 : rel[0].size(), 0));
        for (int j = 0; j < n; ++j)
            for (std::size_t k = 0; k < lambda[j].size(); ++k) {
                if (!rel[j][k].fits_slong_p()) throw precondition_error("relation basis overflow");
                lambda[j][k] = rel[j][k].get_si();
            }

        IsotropicSublatticeData data(n, H, hw.c, lambda, g);
        if (!validate_data(data).all_pass) {
            last_reason = "candidate data failed validation";
            continue;
        }

        QuotientPairing qp = mu_from_data(data);
        const FinAbGroup& Q = qp.pairing.A();
        if (Q.order() != A.order()) {
            last_reason = "quotient order mismatch";
            continue;
        }

        // pi_L-bar: Q -> A, q |-> sum lift(q)_j * s_j; lambda_D = its inverse
        std::vector<long long> q_to_a(Q.order(), -1);
        std::vector<long long> a_to_q(A.order(), -1);
        bool bijective = true;
        for (long long qi = 0; qi < Q.order() && bijective; ++qi) {
            std::vector<Int> z = qp.quotient.lift(elem_at(Q, qi));
            FinAbElem image = zero_elem(A);
            for (int j = 0; j < n; ++j) {
                Int r = z[j] % to_int(A.exponent());
                image = elem_add(image, elem_scale(r.get_si(), hw.gens[j]));
            }
            long long ai = elem_index(image);
            q_to_a[qi] = ai;
            if (a_to_q[ai] != -1) bijective = false;
            a_to_q[ai] = qi;
        }
        if (!bijective) {
            last_reason = "induced map Q -> A not bijective";
            continue;
        }

        std::vector<FinAbElem> lamA, lamB;
        for (std::size_t i = 0; i < A.num_factors(); ++i) {
            lamA.push_back(elem_at(Q, a_to_q[elem_index(finabel::generator(A, i))]));
            // B-side: b corresponds to i * psi(b)
            FinAbElem psib = hw.psi_images[i];
            lamB.push_back(elem_at(Q, a_to_q[elem_index(psib)]));
        }

        // kappa_D: C -> Z/g with kappa(mu(a,b)) = mu_D(lambdaA a, lambdaB b)
        long long kappa_unit = 1;
        bool kappa_found = true;
        if (g > 1) {
            kappa_found = false;
            for (long long u = 1; u < g && !kappa_found; ++u) {
                if (std::gcd(u, g) != 1) continue;
                bool ok = true;
                for (std::size_t i = 0; i < A.num_factors() && ok; ++i)
                    for (std::size_t j = 0; j < A.num_factors() && ok; ++j) {
                        FinAbElem muv = mu.eval(finabel::generator(A, i), finabel::generator(A, j));
                        long long lhs = muv.coords().empty() ? 0 : muv.coords()[0] * u % g;
                        FinAbElem rhs = qp.pairing.eval(lamA[i], lamB[j]);
                        long long rv = rhs.coords().empty() ? 0 : rhs.coords()[0];
                        if (lhs != rv) ok = false;
                    }
                if (ok) {
                    kappa_found = true;
                    kappa_unit = u;
                }
            }
        }
        if (!kappa_found) {
            last_reason = "no unit realizes kappa_D";
            continue;
        }

        // exhaustive diagram check through the functorial morphism
        FinAbGroup zg = cyclic_group(g);
        std::vector<FinAbElem> kimg;
        for (std::size_t i = 0; i < C.num_factors(); ++i)
            kimg.push_back(zg.is_trivial() ? zero_elem(zg) : FinAbElem(zg, {kappa_unit}));
        FinAbHom lamA_hom(A, Q, lamA);
        FinAbHom lamB_hom(mu.B(), Q, lamB);
        FinAbHom kappa_hom(C, zg, kimg);
        bool diagram_ok = true;
        try {
            heisenberg::HeisenbergHom gammaD =
                heisenberg::functorial_map(lamA_hom, lamB_hom, kappa_hom, mu, qp.pairing);
            // injectivity: trivial kernel
            for (long long i = 1; i < mu.heisenberg_order() && diagram_ok; ++i) {
                heisenberg::HeisenbergElem x = heisenberg::hh_at(mu, i);
                heisenberg::HeisenbergElem gx = gammaD.apply(x);
                if (gx.a.is_zero() && gx.b.is_zero() && gx.c.is_zero()) diagram_ok = false;
            }
        } catch (const precondition_error&) {
            diagram_ok = false;
        }
        if (!diagram_ok) {
            last_reason = "diagram does not commute for this candidate";
            continue;
        }

        return DataFromHeisenberg{data, hw, lamA, lamB, kappa_unit, std::move(qp), true};
    }
    throw precondition_error("data_from_heisenberg: all candidates failed (" + last_reason + ")");
}

}  // namespace nilpact::lattice
