#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace stokes::laurent {

/// Exact complex number a + b·i with arbitrary-precision rational parts.
class GaussRational {
public:
    GaussRational() = default;
    GaussRational(long re) : re_(re) {}
    GaussRational(mpq_class re, mpq_class im = 0);

    static GaussRational i() { return GaussRational(0, 1); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussRational operator-() const;
    GaussRational& operator+=(const GaussRational& o);
    GaussRational& operator-=(const GaussRational& o);
    GaussRational& operator*=(const GaussRational& o);

    /// Throws std::domain_error on division by zero.
    GaussRational& operator/=(const GaussRational& o);

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    /// Writes `re/im`; a non-integer part is parenthesized, e.g. `(1/2)/-3`.
    std::string to_string() const;
    static GaussRational parse(const std::string& text);

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

} // namespace stokes::laurent
