#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace tamesl2 {

// Exact coefficient: element of Q(i), stored as re + im*i with exact
// rational parts. Plain rationals are the im == 0 subset; arithmetic on
// them never leaves Q.
class Coeff {
public:
    Coeff() : re_(0), im_(0) {}
    Coeff(long n) : re_(n), im_(0) {}
    Coeff(long num, long den) : re_(num, den), im_(0) { re_.canonicalize(); }
    explicit Coeff(const mpq_class& re) : re_(re), im_(0) {}
    Coeff(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) {}

    static Coeff zero() { return Coeff(); }
    static Coeff one() { return Coeff(1); }
    static Coeff i() { return Coeff(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_rational() const { return im_ == 0; }

    Coeff operator-() const { return Coeff(-re_, -im_); }
    Coeff operator+(const Coeff& o) const { return Coeff(re_ + o.re_, im_ + o.im_); }
    Coeff operator-(const Coeff& o) const { return Coeff(re_ - o.re_, im_ - o.im_); }
    Coeff operator*(const Coeff& o) const {
        if (im_ == 0 && o.im_ == 0) return Coeff(mpq_class(re_ * o.re_));
        return Coeff(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
    }
    Coeff inverse() const {
        if (is_zero()) throw std::domain_error("Coeff: inverse of zero");
        mpq_class n = re_ * re_ + im_ * im_;
        return Coeff(mpq_class(re_ / n), mpq_class(-im_ / n));
    }
    Coeff operator/(const Coeff& o) const { return *this * o.inverse(); }
    Coeff& operator+=(const Coeff& o) { re_ += o.re_; im_ += o.im_; return *this; }
    Coeff& operator-=(const Coeff& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    Coeff& operator*=(const Coeff& o) { *this = *this * o; return *this; }

    bool operator==(const Coeff& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const Coeff& o) const { return !(*this == o); }

    Coeff conj() const { return Coeff(re_, mpq_class(-im_)); }

    // a^k for k in Z (k < 0 requires a != 0)
    Coeff pow(long k) const;

    // "n/d" for rationals, "n/d,n'/d'" never: complex values carry both parts.
    std::string str() const;

    // Total order used only for deterministic tie-breaking (not algebraic).
    int cmp_key(const Coeff& o) const {
        if (int c = mpq_cmp(re_.get_mpq_t(), o.re_.get_mpq_t())) return c;
        return mpq_cmp(im_.get_mpq_t(), o.im_.get_mpq_t());
    }

private:
    mpq_class re_, im_;
};

// Parses "a/b" (rational). Throws on malformed input.
mpq_class parse_rational(const std::string& s);
std::string rational_str(const mpq_class& q);

// Exact square root within Q(i), when it exists.
std::optional<mpq_class> rational_sqrt(const mpq_class& q); // q >= 0 only
std::optional<Coeff> coeff_sqrt(const Coeff& z);

} // namespace tamesl2
