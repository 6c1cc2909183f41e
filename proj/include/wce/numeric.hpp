#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wce {

using Integer = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact rational number. Values that fit use a canonical int64 numerator /
/// denominator pair; anything larger is promoted transparently to an
/// arbitrary-precision backend. Representation is unique: the big backend is
/// used only when the reduced value does not fit, so comparison and hashing
/// never need cross-form checks.
class Rational {
  public:
    Rational() noexcept = default;
    Rational(long long n) : n_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(int n) : n_(n) {}        // NOLINT(google-explicit-constructor)
    Rational(unsigned n) : n_(static_cast<long long>(n)) {}  // NOLINT
    Rational(long long n, long long d) { assign_small(n, d); }
    Rational(const Integer& n, const Integer& d) { assign_big(BigRational(n, d)); }
    explicit Rational(const BigRational& v) { assign_big(v); }

    Rational(const Rational& o) : n_(o.n_), d_(o.d_) {
        if (o.big_) big_ = std::make_unique<BigRational>(*o.big_);
    }
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o) {
        if (this != &o) {
            n_ = o.n_;
            d_ = o.d_;
            big_ = o.big_ ? std::make_unique<BigRational>(*o.big_) : nullptr;
        }
        return *this;
    }
    Rational& operator=(Rational&&) noexcept = default;

    bool is_small() const { return !big_; }
    bool is_zero() const { return !big_ && n_ == 0; }

    Integer numerator() const {
        if (big_) return boost::multiprecision::numerator(*big_);
        return Integer(n_);
    }
    Integer denominator() const {
        if (big_) return boost::multiprecision::denominator(*big_);
        return Integer(d_);
    }

    BigRational to_big() const {
        if (big_) return *big_;
        return BigRational(n_, d_);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.is_small() && b.is_small()) {
            // reduce by gcd of denominators first to keep intermediates small
            long long g = std::gcd(a.d_, b.d_);
            __int128 db = b.d_ / g;
            __int128 n = static_cast<__int128>(a.n_) * db +
                         static_cast<__int128>(b.n_) * (a.d_ / g);
            __int128 d = static_cast<__int128>(a.d_) * db;
            return from_i128(n, d);
        }
        return Rational(a.to_big() + b.to_big());
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (a.is_small() && b.is_small()) {
            long long g = std::gcd(a.d_, b.d_);
            __int128 db = b.d_ / g;
            __int128 n = static_cast<__int128>(a.n_) * db -
                         static_cast<__int128>(b.n_) * (a.d_ / g);
            __int128 d = static_cast<__int128>(a.d_) * db;
            return from_i128(n, d);
        }
        return Rational(a.to_big() - b.to_big());
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        if (a.is_small() && b.is_small()) {
            long long g1 = gcd_ll(a.n_, b.d_), g2 = gcd_ll(b.n_, a.d_);
            __int128 n = static_cast<__int128>(a.n_ / g1) * (b.n_ / g2);
            __int128 d = static_cast<__int128>(a.d_ / g2) * (b.d_ / g1);
            return from_i128_coprime(n, d);
        }
        return Rational(a.to_big() * b.to_big());
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        if (a.is_small() && b.is_small()) {
            long long g1 = gcd_ll(a.n_, b.n_), g2 = gcd_ll(b.d_, a.d_);
            __int128 n = static_cast<__int128>(a.n_ / g1) * (b.d_ / g2);
            __int128 d = static_cast<__int128>(a.d_ / g2) * (b.n_ / g1);
            return from_i128_coprime(n, d);
        }
        return Rational(a.to_big() / b.to_big());
    }

    Rational operator-() const {
        if (is_small()) return Rational(-n_, d_);
        return Rational(BigRational(-*big_));
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (a.is_small() != b.is_small()) return false;  // unique representation
        if (a.is_small()) return a.n_ == b.n_ && a.d_ == b.d_;
        return *a.big_ == *b.big_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator==(const Rational& a, long long v) {
        return a.is_small() && a.d_ == 1 && a.n_ == v;
    }
    friend bool operator==(const Rational& a, int v) { return a == static_cast<long long>(v); }
    friend bool operator<(const Rational& a, const Rational& b) {
        if (a.is_small() && b.is_small())
            return static_cast<__int128>(a.n_) * b.d_ < static_cast<__int128>(b.n_) * a.d_;
        return a.to_big() < b.to_big();
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    double to_double() const {
        if (is_small()) return static_cast<double>(n_) / static_cast<double>(d_);
        return big_->convert_to<double>();
    }

    std::string str() const {
        if (denominator() == 1) return numerator().str();
        return numerator().str() + "/" + denominator().str();
    }

  private:
    static long long gcd_ll(long long a, long long b) {
        unsigned long long ua = a < 0 ? static_cast<unsigned long long>(-(a + 1)) + 1 : a;
        unsigned long long ub = b < 0 ? static_cast<unsigned long long>(-(b + 1)) + 1 : b;
        unsigned long long g = std::gcd(ua, ub);
        return g == 0 ? 1 : static_cast<long long>(g);
    }

    static __int128 gcd_i128(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    static constexpr long long kMax = 0x7fffffffffffffffLL;

    static Rational from_i128(__int128 n, __int128 d) {
        __int128 g = gcd_i128(n, d);
        return from_i128_coprime(n / g, d / g);
    }

    static Rational from_i128_coprime(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) return Rational();
        Rational r;
        if (n <= kMax && n >= -static_cast<__int128>(kMax) && d <= kMax) {
            r.n_ = static_cast<long long>(n);
            r.d_ = static_cast<long long>(d);
        } else {
            r.big_ = std::make_unique<BigRational>(i128_to_int(n), i128_to_int(d));
        }
        return r;
    }

    static Integer i128_to_int(__int128 v) {
        bool neg = v < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : v;
        Integer hi = static_cast<std::uint64_t>(u >> 64);
        Integer out = (hi << 64) + static_cast<std::uint64_t>(u);
        return neg ? -out : out;
    }

    void assign_small(long long n, long long d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        long long g = gcd_ll(n, d);
        n_ = n / g;
        d_ = d / g;
    }

    void assign_big(const BigRational& v) {
        // demote when the reduced value fits, keeping representation unique
        const Integer& n = boost::multiprecision::numerator(v);
        const Integer& d = boost::multiprecision::denominator(v);
        if (n >= -Integer(kMax) && n <= Integer(kMax) && d <= Integer(kMax)) {
            n_ = n.convert_to<long long>();
            d_ = d.convert_to<long long>();
            big_.reset();
        } else {
            big_ = std::make_unique<BigRational>(v);
        }
    }

    long long n_ = 0;
    long long d_ = 1;
    std::unique_ptr<BigRational> big_;
};

inline Integer rat_num(const Rational& q) { return q.numerator(); }
inline Integer rat_den(const Rational& q) { return q.denominator(); }
inline double to_double(const Rational& q) { return q.to_double(); }
inline std::string rat_to_string(const Rational& q) { return q.str(); }

/// x(x-1)...(x-k+1)
inline Rational falling_factorial(const Rational& x, unsigned k) {
    Rational r = 1;
    for (unsigned j = 0; j < k; ++j) r *= x - Rational(j);
    return r;
}

/// Binomial coefficient with arbitrary rational upper argument.
inline Rational binomial(const Rational& x, unsigned k) {
    Rational r = falling_factorial(x, k);
    for (unsigned j = 2; j <= k; ++j) r /= Rational(j);
    return r;
}

inline Integer factorial(unsigned n) {
    Integer f = 1;
    for (unsigned j = 2; j <= n; ++j) f *= j;
    return f;
}

/// n!! for n >= -1; (-1)!! = 1 by convention.
inline Integer double_factorial(int n) {
    if (n < -1) throw std::invalid_argument("double_factorial: n < -1");
    Integer f = 1;
    for (int j = n; j > 1; j -= 2) f *= j;
    return f;
}

/// FNV-1a, used for content checksums and hash maps.
inline std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::uint64_t fnv1a(const std::string& s) {
    return fnv1a(1469598103934665603ULL, s.data(), s.size());
}

}  // namespace wce
