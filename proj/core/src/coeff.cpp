#include "tamesl2/coeff.hpp"

namespace tamesl2 {

Coeff Coeff::pow(long k) const {
    if (k == 0) return Coeff::one();
    Coeff base = k > 0 ? *this : inverse();
    unsigned long e = k > 0 ? static_cast<unsigned long>(k) : static_cast<unsigned long>(-k);
    Coeff acc = Coeff::one();
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

std::string rational_str(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string Coeff::str() const {
    if (im_ == 0) return rational_str(re_);
    return rational_str(re_) + "," + rational_str(im_);
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
    if (q < 0) return std::nullopt;
    if (q == 0) return mpq_class(0);
    mpq_class c(q);
    c.canonicalize();
    if (!mpz_perfect_square_p(c.get_num().get_mpz_t())) return std::nullopt;
    if (!mpz_perfect_square_p(c.get_den().get_mpz_t())) return std::nullopt;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), c.get_den().get_mpz_t());
    return mpq_class(n, d);
}

std::optional<Coeff> coeff_sqrt(const Coeff& z) {
    if (z.is_zero()) return Coeff::zero();
    if (z.is_rational()) {
        if (z.re() > 0) {
            if (auto r = rational_sqrt(z.re())) return Coeff(*r);
            return std::nullopt;
        }
        if (auto r = rational_sqrt(mpq_class(-z.re()))) return Coeff(mpq_class(0), *r);
        return std::nullopt;
    }
    // (x + yi)^2 = z: x^2 = (re + |z|)/2, y = im/(2x)
    mpq_class norm = z.re() * z.re() + z.im() * z.im();
    auto n = rational_sqrt(norm);
    if (!n) return std::nullopt;
    mpq_class x2 = (z.re() + *n) / 2;
    auto x = rational_sqrt(x2);
    if (!x || *x == 0) return std::nullopt;
    mpq_class y = z.im() / (2 * (*x));
    Coeff w(*x, y);
    if (w * w == z) return w;
    return std::nullopt;
}

mpq_class parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

} // namespace tamesl2
