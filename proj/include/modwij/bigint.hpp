#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace modwij {

using BigInt = boost::multiprecision::cpp_int;

/// Integer square root by Newton iteration with doubling precision; cost is
/// dominated by one division and one multiplication at full size.
inline BigInt isqrt(const BigInt& n) {
    if (n < 0) throw std::domain_error("isqrt: negative argument");
    if (n == 0) return 0;
    const unsigned long c = (static_cast<unsigned long>(boost::multiprecision::msb(n))) / 2;
    if (c == 0) return 1;  // n in {1, 2, 3}
    BigInt a = 1;
    unsigned long d = 0;
    int cbits = 0;
    while ((c >> cbits) != 0) ++cbits;
    for (int s = cbits - 1; s >= 0; --s) {
        const unsigned long e = d;
        d = c >> s;
        a = (a << (d - e - 1)) + BigInt(n >> (2 * c - e - d + 1)) / a;
    }
    return a * a <= n ? a : a - 1;
}

/// gcd with Euclidean reduction while the operands are large. Boost's gcd is
/// binary and effectively quadratic in bit length; one remainder step
/// collapses the huge-but-degenerate reductions this library produces.
inline BigInt big_gcd(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    if (a < b) a.swap(b);
    while (b != 0 && boost::multiprecision::msb(b) >= 256) {
        a %= b;
        a.swap(b);
    }
    if (b == 0) return a;
    a %= b;
    if (a == 0) return b;
    return boost::multiprecision::gcd(b, a);
}

inline std::uint64_t isqrt64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// Converts num/den to double, scaling both operands down first so that
/// values far beyond double range still divide to a finite quotient.
inline double big_ratio_to_double(BigInt num, BigInt den) {
    if (den == 0) throw std::domain_error("big_ratio_to_double: zero denominator");
    if (num == 0) return 0.0;
    const bool neg = (num < 0) != (den < 0);
    num = boost::multiprecision::abs(num);
    den = boost::multiprecision::abs(den);
    const long bn = static_cast<long>(boost::multiprecision::msb(num));
    const long bd = static_cast<long>(boost::multiprecision::msb(den));
    // Keep ~96 significant bits of each operand.
    const long drop_n = bn - 96, drop_d = bd - 96;
    const long shift = std::max(0L, std::max(drop_n, drop_d));
    if (shift > 0) {
        num >>= shift;
        den >>= shift;
        if (den == 0) return neg ? -HUGE_VAL : HUGE_VAL;
    }
    const double q = num.convert_to<double>() / den.convert_to<double>();
    return neg ? -q : q;
}

/// Exact rational with arbitrary-precision numerator and positive denominator.
/// Normalization (gcd) happens on construction; arithmetic stays exact.
class BigRat {
public:
    BigRat() : num_(0), den_(1) {}
    BigRat(long long v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
    BigRat(BigInt v) : num_(std::move(v)), den_(1) {}  // NOLINT(google-explicit-constructor)
    BigRat(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) throw std::domain_error("BigRat: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        reduce();
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    friend BigRat operator+(const BigRat& a, const BigRat& b) {
        return BigRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend BigRat operator-(const BigRat& a, const BigRat& b) {
        return BigRat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend BigRat operator*(const BigRat& a, const BigRat& b) {
        return BigRat(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend BigRat operator/(const BigRat& a, const BigRat& b) {
        if (b.num_ == 0) throw std::domain_error("BigRat: division by zero");
        return BigRat(a.num_ * b.den_, a.den_ * b.num_);
    }
    BigRat operator-() const { BigRat r; r.num_ = -num_; r.den_ = den_; return r; }

    friend bool operator==(const BigRat& a, const BigRat& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const BigRat& a, const BigRat& b) { return !(a == b); }
    friend bool operator<(const BigRat& a, const BigRat& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator<=(const BigRat& a, const BigRat& b) { return !(b < a); }
    friend bool operator>(const BigRat& a, const BigRat& b) { return b < a; }
    friend bool operator>=(const BigRat& a, const BigRat& b) { return !(a < b); }

    bool is_integer() const { return den_ == 1; }
    double to_double() const { return big_ratio_to_double(num_, den_); }
    std::string str() const {
        return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str();
    }

private:
    void reduce() {
        if (num_ == 0) { den_ = 1; return; }
        BigInt g = big_gcd(num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    BigInt num_;
    BigInt den_;
};

}  // namespace modwij
