#pragma once

#include <complex>
#include <cstdint>
#include <gmpxx.h>
#include <string>

#include "bidisk/errors.hpp"

namespace bidisk {

using Cplx = std::complex<double>;

/// Exact element of Q(i): re + im*i with arbitrary-precision rational parts.
/// Denominators stay positive and fractions stay in lowest terms (GMP
/// canonical form is maintained by every operation).
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long n) : re_(n), im_(0) {}
    GaussianRational(long num, long den) : re_(num, den), im_(0) { re_.canonicalize(); }
    // GMP arithmetic assumes canonical operands, so normalize at the boundary.
    GaussianRational(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) {
        re_.canonicalize();
        im_.canonicalize();
    }

    /// Lossless: every finite double is a dyadic rational.
    static GaussianRational from_double(double re, double im = 0.0) {
        require(std::isfinite(re) && std::isfinite(im), ErrorCode::BadInput,
                "non-finite value cannot become exact");
        return GaussianRational(mpq_class(re), mpq_class(im));
    }

    static GaussianRational i() { return GaussianRational(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    /// Lossy in general (rounds to nearest double).
    Cplx to_complex() const { return Cplx(re_.get_d(), im_.get_d()); }

    GaussianRational conj() const { return GaussianRational(re_, -im_); }

    /// |q|^2 as an exact rational.
    mpq_class norm2() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        require(!o.is_zero(), ErrorCode::DenominatorZero, "division by zero GaussianRational");
        mpq_class n2 = o.norm2();
        mpq_class r = (re_ * o.re_ + im_ * o.im_) / n2;
        mpq_class i = (im_ * o.re_ - re_ * o.im_) / n2;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    /// Max of |numerator|, |denominator| over both components; pivot tie-break metric.
    mpz_class height() const {
        mpz_class h = abs(re_.get_num());
        auto bump = [&h](const mpz_class& v) {
            mpz_class a = abs(v);
            if (a > h) h = a;
        };
        bump(re_.get_den());
        bump(im_.get_num());
        bump(im_.get_den());
        return h;
    }

    /// Wire form: "a/b" when real, otherwise "a/b+c/di" / "a/b-c/di".
    std::string to_string() const {
        auto frac = [](const mpq_class& q) {
            return q.get_num().get_str() + "/" + q.get_den().get_str();
        };
        if (im_ == 0) return frac(re_);
        if (im_ > 0) return frac(re_) + "+" + frac(im_) + "i";
        return frac(re_) + "-" + frac(-im_) + "i";
    }

    static GaussianRational parse(const std::string& text);

private:
    mpq_class re_, im_;
};

namespace detail {
inline mpq_class parse_fraction(const std::string& s) {
    require(!s.empty(), ErrorCode::BadInput, "empty rational literal");
    for (char c : s)
        require((c >= '0' && c <= '9') || c == '/' || c == '-' || c == '+', ErrorCode::BadInput,
                "bad character in rational literal '" + s + "'");
    mpq_class q;
    if (q.set_str(s, 10) != 0) fail(ErrorCode::BadInput, "unparseable rational '" + s + "'");
    require(q.get_den() != 0, ErrorCode::BadInput, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}
}  // namespace detail

inline GaussianRational GaussianRational::parse(const std::string& text) {
    require(!text.empty(), ErrorCode::BadInput, "empty GaussianRational literal");
    if (text.back() != 'i') return GaussianRational(detail::parse_fraction(text), mpq_class(0));
    // Split "re±imi" at the sign that separates the two fractions: the last
    // '+'/'-' that is not the leading sign and does not follow '/'.
    std::string body = text.substr(0, text.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '/' && body[k - 1] != '+' &&
            body[k - 1] != '-') {
            split = k;
            break;
        }
    }
    require(split != std::string::npos, ErrorCode::BadInput,
            "expected re±im i form in '" + text + "'");
    mpq_class re = detail::parse_fraction(body.substr(0, split));
    std::string imtext = body.substr(split);
    if (imtext[0] == '+') imtext = imtext.substr(1);
    mpq_class im = detail::parse_fraction(imtext);
    return GaussianRational(re, im);
}

// ---- scalar field trait helpers (shared by exact and float code paths) ----

inline GaussianRational conj_scalar(const GaussianRational& s) { return s.conj(); }
inline Cplx conj_scalar(const Cplx& s) { return std::conj(s); }

inline bool scalar_is_zero(const GaussianRational& s) { return s.is_zero(); }
inline bool scalar_is_zero(const Cplx& s) { return s == Cplx(0.0, 0.0); }

inline double scalar_abs(const GaussianRational& s) { return std::abs(s.to_complex()); }
inline double scalar_abs(const Cplx& s) { return std::abs(s); }

inline Cplx scalar_to_complex(const GaussianRational& s) { return s.to_complex(); }
inline Cplx scalar_to_complex(const Cplx& s) { return s; }

template <typename S>
struct is_exact_field : std::false_type {};
template <>
struct is_exact_field<GaussianRational> : std::true_type {};

template <typename S>
inline constexpr bool is_exact_field_v = is_exact_field<S>::value;

template <typename S>
S scalar_from_long(long v) {
    if constexpr (is_exact_field_v<S>)
        return GaussianRational(v);
    else
        return Cplx(double(v), 0.0);
}

}  // namespace bidisk
