#pragma once

#include <gmpxx.h>

#include <string>

namespace nilpact {

using Int = mpz_class;
using Rat = mpq_class;

// This gmpxx build has no long long overloads; long is 64-bit here, so the
// casts below are lossless.
inline Int to_int(long long v) { return Int(static_cast<long>(v)); }
inline Rat to_rat(long long v) { return Rat(static_cast<long>(v)); }

inline bool rat_is_integer(const Rat& x) { return x.get_den() == 1; }

// canonicalized fraction (the raw two-argument mpq_class ctor does not reduce)
inline Rat make_rat(long long num, long long den) { return to_rat(num) / to_rat(den); }

// x ∈ d·Z for a nonzero integer d.
inline bool rat_divisible(const Rat& x, const Int& d) {
    if (!rat_is_integer(x)) return false;
    return mpz_divisible_p(x.get_num().get_mpz_t(), d.get_mpz_t()) != 0;
}

std::string rat_to_string(const Rat& x);

// Element of Q(i) with exact components. Used both for entries of Hermitian
// matrices and for exponents z representing the scalar exp(π·z).
struct GaussRat {
    Rat re;
    Rat im;

    GaussRat() = default;
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    static GaussRat from_int(long long r, long long i = 0) {
        return GaussRat(to_rat(r), to_rat(i));
    }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    GaussRat conj() const { return GaussRat(re, -im); }

    GaussRat operator+(const GaussRat& o) const { return GaussRat(re + o.re, im + o.im); }
    GaussRat operator-(const GaussRat& o) const { return GaussRat(re - o.re, im - o.im); }
    GaussRat operator-() const { return GaussRat(-re, -im); }
    GaussRat operator*(const GaussRat& o) const {
        return GaussRat(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    GaussRat operator*(const Rat& s) const { return GaussRat(re * s, im * s); }
    GaussRat operator/(const Rat& s) const { return GaussRat(re / s, im / s); }
    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussRat& o) const { return !(*this == o); }
};

inline GaussRat gauss_i() { return GaussRat(Rat(0), Rat(1)); }

std::string gauss_to_string(const GaussRat& z);

}  // namespace nilpact
