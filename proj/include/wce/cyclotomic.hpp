#pragma once

#include "wce/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <vector>

namespace wce {

namespace detail {

// Dense univariate polynomials over Q, little-endian coefficients.
using QPoly = std::vector<Rational>;

inline void qp_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int qp_deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

inline QPoly qp_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) r[i + j] += a[i] * b[j];
    }
    qp_trim(r);
    return r;
}

// Exact division with remainder; divisor must be nonzero.
inline void qp_divmod(QPoly num, const QPoly& den, QPoly& quot, QPoly& rem) {
    quot.assign(num.size(), Rational(0));
    const int dd = qp_deg(den);
    while (qp_deg(num) >= dd && !num.empty()) {
        int k = qp_deg(num) - dd;
        Rational c = num.back() / den.back();
        quot[k] = c;
        for (int i = 0; i <= dd; ++i) num[k + i] -= c * den[i];
        qp_trim(num);
    }
    qp_trim(quot);
    rem = std::move(num);
}

inline unsigned euler_phi(unsigned n) {
    unsigned r = n;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

}  // namespace detail

/// Per-conductor context: the cyclotomic polynomial Phi_N, reduction rows for
/// the power basis, and the table of reduced powers zeta_N^k.
class CycField {
  public:
    explicit CycField(unsigned n) : n_(n), phi_(detail::euler_phi(n)) {
        phi_poly_ = cyclotomic_poly(n);
        build_reduction();
        build_powers();
    }

    unsigned conductor() const { return n_; }
    unsigned degree() const { return phi_; }

    /// x^k mod Phi_N for 0 <= k < N, as a coefficient vector of length <= phi.
    const std::vector<Rational>& power(unsigned k) const { return powers_[k % n_]; }

    /// Reduce a convolution result (length <= 2*phi-1) in place to length phi.
    void reduce(std::vector<Rational>& v) const {
        for (std::size_t k = v.size(); k-- > phi_;) {
            if (v[k] == 0) continue;
            Rational c = std::move(v[k]);
            v[k] = 0;
            const auto& row = red_rows_[k - phi_];
            for (std::size_t j = 0; j < row.size(); ++j)
                if (row[j] != 0) v[j] += c * row[j];
        }
        if (v.size() > phi_) v.resize(phi_);
    }

    const detail::QPoly& modulus() const { return phi_poly_; }

    static std::shared_ptr<const CycField> get(unsigned n) {
        static std::mutex mtx;
        static std::map<unsigned, std::shared_ptr<const CycField>> cache;
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        auto f = std::make_shared<const CycField>(n);
        cache.emplace(n, f);
        return f;
    }

  private:
    static detail::QPoly cyclotomic_poly(unsigned n) {
        // Phi_d = (x^d - 1) / prod_{e|d, e<d} Phi_e, for every divisor d of n.
        std::map<unsigned, detail::QPoly> memo;
        for (unsigned d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            detail::QPoly num(d + 1, Rational(0));
            num[0] = -1;
            num[d] = 1;
            for (unsigned e = 1; e < d; ++e) {
                if (d % e != 0) continue;
                detail::QPoly q, r;
                detail::qp_divmod(num, memo.at(e), q, r);
                if (!r.empty()) throw std::logic_error("cyclotomic polynomial division not exact");
                num = std::move(q);
            }
            memo.emplace(d, std::move(num));
        }
        return memo.at(n);
    }

    void build_reduction() {
        // red_rows_[j] = x^(phi+j) mod Phi, enough rows to reduce products.
        if (phi_ == 0) throw std::logic_error("conductor must be positive");
        std::vector<Rational> r0(phi_);
        for (unsigned j = 0; j < phi_; ++j) r0[j] = -phi_poly_[j];  // Phi is monic
        red_rows_.push_back(r0);
        unsigned rows = std::max<unsigned>(1, phi_ - 1);
        while (red_rows_.size() < rows) {
            const auto& prev = red_rows_.back();
            std::vector<Rational> r(phi_, Rational(0));
            Rational top = prev[phi_ - 1];
            for (unsigned i = phi_ - 1; i >= 1; --i) r[i] = prev[i - 1];
            if (top != 0)
                for (unsigned i = 0; i < phi_; ++i) r[i] += top * r0[i];
            red_rows_.push_back(std::move(r));
        }
    }

    void build_powers() {
        powers_.resize(n_);
        std::vector<Rational> cur(1, Rational(1));
        for (unsigned k = 0; k < n_; ++k) {
            powers_[k] = cur;
            // multiply by x
            std::vector<Rational> nxt(cur.size() + 1, Rational(0));
            for (std::size_t i = 0; i < cur.size(); ++i) nxt[i + 1] = cur[i];
            reduce(nxt);
            while (!nxt.empty() && nxt.back() == 0) nxt.pop_back();
            cur = std::move(nxt);
        }
    }

    unsigned n_;
    unsigned phi_;
    detail::QPoly phi_poly_;
    std::vector<std::vector<Rational>> red_rows_;
    std::vector<std::vector<Rational>> powers_;
};

/// An exact element of Q(zeta_N), reduced modulo Phi_N. Coefficients are
/// stored in the power basis 1, zeta, ..., zeta^(phi(N)-1) with trailing
/// zeros stripped, so equality is plain coefficient comparison.
class Cyc {
  public:
    Cyc() : n_(1) {}
    Cyc(int v) : n_(1) { set_rational(Rational(v)); }  // NOLINT(google-explicit-constructor)
    Cyc(const Rational& v) : n_(1) { set_rational(v); }  // NOLINT(google-explicit-constructor)
    Cyc(unsigned conductor, std::vector<Rational> coeffs) : n_(conductor), c_(std::move(coeffs)) {
        trim();
    }

    static Cyc rational(const Rational& v, unsigned conductor = 1) {
        Cyc x;
        x.n_ = conductor;
        x.set_rational(v);
        return x;
    }

    /// zeta_N^k, reduced canonically.
    static Cyc zeta(unsigned n, long long k) {
        if (n == 0) throw std::invalid_argument("zeta: conductor must be positive");
        long long e = k % static_cast<long long>(n);
        if (e < 0) e += n;
        auto f = CycField::get(n);
        Cyc x(n, f->power(static_cast<unsigned>(e)));
        return x;
    }

    unsigned conductor() const { return n_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1; }

    /// Value as a rational; throws if the element is irrational.
    Rational rational_value() const {
        if (c_.empty()) return Rational(0);
        if (c_.size() != 1) throw std::domain_error("Cyc: not a rational value");
        return c_[0];
    }

    Cyc promoted(unsigned m) const {
        if (m == n_) return *this;
        if (m % n_ != 0) throw std::invalid_argument("Cyc: conductor is not a multiple");
        auto f = CycField::get(m);
        std::vector<Rational> out(f->degree(), Rational(0));
        unsigned step = m / n_;
        for (std::size_t e = 0; e < c_.size(); ++e) {
            if (c_[e] == 0) continue;
            const auto& pw = f->power(static_cast<unsigned>(e) * step);
            for (std::size_t j = 0; j < pw.size(); ++j)
                if (pw[j] != 0) out[j] += c_[e] * pw[j];
        }
        Cyc r(m, std::move(out));
        return r;
    }

    friend Cyc operator+(const Cyc& a, const Cyc& b) {
        auto [x, y] = aligned(a, b);
        if (y.c_.size() > x.c_.size()) x.c_.resize(y.c_.size(), Rational(0));
        for (std::size_t i = 0; i < y.c_.size(); ++i) x.c_[i] += y.c_[i];
        x.trim();
        return x;
    }

    friend Cyc operator-(const Cyc& a, const Cyc& b) {
        auto [x, y] = aligned(a, b);
        if (y.c_.size() > x.c_.size()) x.c_.resize(y.c_.size(), Rational(0));
        for (std::size_t i = 0; i < y.c_.size(); ++i) x.c_[i] -= y.c_[i];
        x.trim();
        return x;
    }

    Cyc operator-() const {
        Cyc r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend Cyc operator*(const Cyc& a, const Cyc& b) {
        if (a.is_zero() || b.is_zero()) return Cyc::rational(0, lcm_cond(a, b));
        auto [x, y] = aligned(a, b);
        // scalar fast path
        if (y.c_.size() == 1) return x.scaled(y.c_[0]);
        if (x.c_.size() == 1) return y.scaled(x.c_[0]);
        std::vector<Rational> conv(x.c_.size() + y.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] == 0) continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j)
                if (y.c_[j] != 0) conv[i + j] += x.c_[i] * y.c_[j];
        }
        CycField::get(x.n_)->reduce(conv);
        Cyc r(x.n_, std::move(conv));
        return r;
    }

    Cyc scaled(const Rational& s) const {
        if (s == 0) return Cyc::rational(0, n_);
        Cyc r = *this;
        for (auto& v : r.c_) v *= s;
        return r;
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// Q[x]/(Phi_N); throws on zero.
    Cyc inverse() const {
        if (is_zero()) throw std::domain_error("Cyc: division by zero");
        if (c_.size() == 1) return Cyc::rational(Rational(1) / c_[0], n_);
        auto f = CycField::get(n_);
        detail::QPoly a(c_.begin(), c_.end());
        detail::qp_trim(a);
        detail::QPoly r0 = f->modulus(), r1 = a;
        detail::QPoly s0 = {}, s1 = {Rational(1)};
        while (!r1.empty()) {
            detail::QPoly q, rem;
            detail::qp_divmod(r0, r1, q, rem);
            detail::QPoly qs = detail::qp_mul(q, s1);
            detail::QPoly s2 = s0;
            if (s2.size() < qs.size()) s2.resize(qs.size(), Rational(0));
            for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
            detail::qp_trim(s2);
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (detail::qp_deg(r0) != 0) throw std::logic_error("Cyc: element not invertible mod Phi_N");
        Rational g = r0[0];
        std::vector<Rational> out(s0.begin(), s0.end());
        for (auto& v : out) v /= g;
        Cyc res(n_, std::move(out));
        return res;
    }

    friend Cyc operator/(const Cyc& a, const Cyc& b) {
        auto [x, y] = aligned(a, b);
        if (y.c_.size() == 1) {
            if (y.c_[0] == 0) throw std::domain_error("Cyc: division by zero");
            return x.scaled(Rational(1) / y.c_[0]);
        }
        return x * y.inverse();
    }

    Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
    Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
    Cyc& operator*=(const Cyc& o) { return *this = *this * o; }
    Cyc& operator/=(const Cyc& o) { return *this = *this / o; }

    friend bool operator==(const Cyc& a, const Cyc& b) {
        if (a.n_ == b.n_) return a.c_ == b.c_;
        auto [x, y] = aligned(a, b);
        return x.c_ == y.c_;
    }
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

    /// Image under the Galois map zeta -> zeta^{-1}.
    Cyc conj() const {
        if (c_.size() <= 1) return *this;
        auto f = CycField::get(n_);
        std::vector<Rational> out(f->degree(), Rational(0));
        for (std::size_t e = 0; e < c_.size(); ++e) {
            if (c_[e] == 0) continue;
            const auto& pw = f->power((n_ - static_cast<unsigned>(e)) % n_);
            for (std::size_t j = 0; j < pw.size(); ++j)
                if (pw[j] != 0) out[j] += c_[e] * pw[j];
        }
        Cyc r(n_, std::move(out));
        return r;
    }

    std::complex<double> to_float() const {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t e = 0; e < c_.size(); ++e) {
            if (c_[e] == 0) continue;
            double arg = 2.0 * M_PI * static_cast<double>(e) / static_cast<double>(n_);
            acc += to_double(c_[e]) * std::complex<double>(std::cos(arg), std::sin(arg));
        }
        return acc;
    }

    Cyc pow(unsigned k) const {
        Cyc acc = Cyc::rational(1, n_);
        Cyc base = *this;
        while (k) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    /// Canonical text form `N;e0:p0/q0,e1:p1/q1,...` listing nonzero
    /// power-basis terms in increasing exponent order.
    std::string to_string() const {
        std::ostringstream os;
        os << n_ << ";";
        bool first = true;
        for (std::size_t e = 0; e < c_.size(); ++e) {
            if (c_[e] == 0) continue;
            if (!first) os << ",";
            first = false;
            os << e << ":" << rat_num(c_[e]).str() << "/" << rat_den(c_[e]).str();
        }
        return os.str();
    }

    static Cyc from_string(const std::string& s) {
        auto semi = s.find(';');
        if (semi == std::string::npos) throw std::invalid_argument("Cyc: bad serialization");
        unsigned n = static_cast<unsigned>(std::stoul(s.substr(0, semi)));
        auto f = CycField::get(n);
        std::vector<Rational> c(f->degree(), Rational(0));
        std::string body = s.substr(semi + 1);
        std::istringstream is(body);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            if (tok.empty()) continue;
            auto colon = tok.find(':');
            auto slash = tok.find('/');
            if (colon == std::string::npos || slash == std::string::npos)
                throw std::invalid_argument("Cyc: bad term");
            unsigned e = static_cast<unsigned>(std::stoul(tok.substr(0, colon)));
            Integer p(tok.substr(colon + 1, slash - colon - 1));
            Integer q(tok.substr(slash + 1));
            if (e >= c.size()) throw std::invalid_argument("Cyc: exponent out of range");
            c[e] = Rational(p, q);
        }
        return Cyc(n, std::move(c));
    }

    /// Human-readable form, e.g. "1/2 + 3/4*z^2" with z = zeta_N.
    std::string pretty() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t e = 0; e < c_.size(); ++e) {
            if (c_[e] == 0) continue;
            if (!first) os << " + ";
            first = false;
            os << rat_to_string(c_[e]);
            if (e >= 1) os << "*z" << n_ << "^" << e;
        }
        return os.str();
    }

  private:
    void set_rational(const Rational& v) {
        c_.clear();
        if (v != 0) c_.push_back(v);
    }

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    static unsigned lcm_cond(const Cyc& a, const Cyc& b) {
        return std::lcm(a.n_, b.n_);
    }

    static std::pair<Cyc, Cyc> aligned(const Cyc& a, const Cyc& b) {
        if (a.n_ == b.n_) return {a, b};
        unsigned m = std::lcm(a.n_, b.n_);
        return {a.promoted(m), b.promoted(m)};
    }

    unsigned n_;
    std::vector<Rational> c_;
};

inline Cyc operator*(const Rational& s, const Cyc& a) { return a.scaled(s); }

/// Square root of an integer inside Q(zeta_N), built from quadratic Gauss
/// sums. Sign convention: positive real part under zeta_N -> exp(2*pi*i/N),
/// or positive imaginary part when purely imaginary. Throws, naming the
/// minimal required conductor, if sqrt(n) does not lie in the field.
inline Cyc sqrt_of_integer(long long n, unsigned conductor) {
    if (n == 0) return Cyc::rational(0, conductor);
    // n = sign * k^2 * m with m squarefree
    long long an = n < 0 ? -n : n;
    long long k = 1, m = 1;
    for (long long p = 2; p * p <= an; ++p) {
        unsigned e = 0;
        while (an % p == 0) {
            an /= p;
            ++e;
        }
        for (unsigned j = 0; j + 1 < e; j += 2) k *= p;
        if (e % 2) m *= p;
    }
    m *= an;
    long long s = n < 0 ? -m : m;
    if (s == 1) return Cyc::rational(Rational(k), conductor);

    long long smod4 = ((s % 4) + 4) % 4;
    long long disc = (smod4 == 1) ? (s < 0 ? -s : s) : 4 * (s < 0 ? -s : s);
    if (conductor % static_cast<unsigned long long>(disc) != 0) {
        throw std::domain_error("sqrt_of_integer: sqrt(" + std::to_string(n) +
                                ") requires conductor divisible by " + std::to_string(disc) +
                                ", got " + std::to_string(conductor));
    }

    auto legendre = [](long long a, long long p) -> int {
        a %= p;
        if (a < 0) a += p;
        if (a == 0) return 0;
        long long r = 1, base = a, e = (p - 1) / 2;
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r == 1 ? 1 : -1;
    };

    Cyc g = Cyc::rational(1, conductor);
    long long rest = m;
    if (rest % 2 == 0) {
        g = g * (Cyc::zeta(conductor, conductor / 8) + Cyc::zeta(conductor, -(long long)(conductor / 8)));
        rest /= 2;
    }
    for (long long p = 3; p <= rest; p += 2) {
        if (rest % p != 0) continue;
        Cyc gp = Cyc::rational(0, conductor);
        for (long long a = 1; a < p; ++a) {
            long long e = a * (conductor / p);
            gp += Cyc::rational(Rational(legendre(a, p)), conductor) * Cyc::zeta(conductor, e);
        }
        g = g * gp;
        rest /= p;
    }

    // g^2 = +-m; fix up to a root of s among {g, i*g} and pick the embedding sign.
    Cyc target = Cyc::rational(Rational(s), conductor);
    Cyc c = g;
    if (c * c != target) {
        if (conductor % 4 != 0)
            throw std::logic_error("sqrt_of_integer: internal phase error");
        c = c * Cyc::zeta(conductor, conductor / 4);
        if (c * c != target) throw std::logic_error("sqrt_of_integer: phase fix failed");
    }
    auto f = c.to_float();
    bool ok = (s > 0) ? f.real() > 0 : f.imag() > 0;
    if (!ok) c = -c;
    Cyc result = c.scaled(Rational(k));
    if (result * result != Cyc::rational(Rational(n), conductor))
        throw std::logic_error("sqrt_of_integer: verification failed");
    return result;
}

/// sqrt(p/q) = sqrt(p*q)/q when it exists in the field.
inline Cyc sqrt_of_rational(const Rational& r, unsigned conductor) {
    Integer pq = rat_num(r) * rat_den(r);
    if (pq < -((Integer(1) << 62)) || pq > (Integer(1) << 62))
        throw std::domain_error("sqrt_of_rational: operand too large");
    Cyc s = sqrt_of_integer(pq.convert_to<long long>(), conductor);
    return s.scaled(Rational(Integer(1), rat_den(r)));
}

}  // namespace wce
