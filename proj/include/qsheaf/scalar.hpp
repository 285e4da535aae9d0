#ifndef QSHEAF_SCALAR_HPP
#define QSHEAF_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qsheaf {

/* The two scalar fields of the toolkit: arbitrary-precision rationals and
   odd prime fields F_p.  Everything downstream is templated on one of them. */

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string rat_to_string(const Rat& q) {
    if (boost::multiprecision::denominator(q) == 1)
        return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

/* F_p element with runtime modulus.  p == 0 marks an integer literal not yet
   attached to a field; mixed operations lift the literal.  This keeps generic
   code free of field-context plumbing (K(0), K(1) just work). */
class Fp {
public:
    Fp() = default;
    Fp(long long v) : lit_(v) {}  // NOLINT: implicit by design, literal lift
    Fp(long long v, std::uint64_t p) : p_(p) { set(v); }

    std::uint64_t modulus() const { return p_; }
    std::uint64_t value() const {
        if (p_ == 0) throw std::logic_error("Fp literal has no modulus");
        return v_;
    }
    long long literal() const { return lit_; }

    bool is_zero() const { return p_ ? v_ == 0 : lit_ == 0; }

    friend Fp operator+(const Fp& a, const Fp& b) {
        auto [x, y, p] = align(a, b);
        if (!p) return Fp(a.lit_ + b.lit_);
        std::uint64_t s = x + y;
        if (s >= p) s -= p;
        return from_raw(s, p);
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        auto [x, y, p] = align(a, b);
        if (!p) return Fp(a.lit_ - b.lit_);
        return from_raw(x >= y ? x - y : x + p - y, p);
    }
    Fp operator-() const {
        if (!p_) return Fp(-lit_);
        return from_raw(v_ ? p_ - v_ : 0, p_);
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        auto [x, y, p] = align(a, b);
        if (!p) return Fp(a.lit_ * b.lit_);
        return from_raw(static_cast<std::uint64_t>(
                            (static_cast<unsigned __int128>(x) * y) % p),
                        p);
    }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    friend bool operator==(const Fp& a, const Fp& b) {
        auto [x, y, p] = align(a, b);
        return p ? x == y : a.lit_ == b.lit_;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    Fp inverse() const {
        if (!p_) {
            if (lit_ == 1) return Fp(1);
            if (lit_ == -1) return Fp(-1);
            throw std::logic_error("Fp: inverse of unattached literal");
        }
        if (v_ == 0) throw std::domain_error("Fp: division by zero");
        // extended Euclid
        std::int64_t t = 0, nt = 1;
        std::int64_t r = static_cast<std::int64_t>(p_),
                     nr = static_cast<std::int64_t>(v_);
        while (nr != 0) {
            std::int64_t q = r / nr;
            t -= q * nt; std::swap(t, nt);
            r -= q * nr; std::swap(r, nr);
        }
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return from_raw(static_cast<std::uint64_t>(t), p_);
    }

    static Fp from_raw(std::uint64_t v, std::uint64_t p) {
        Fp x; x.p_ = p; x.v_ = v; return x;
    }

private:
    void set(long long v) {
        long long m = v % static_cast<long long>(p_);
        if (m < 0) m += static_cast<long long>(p_);
        v_ = static_cast<std::uint64_t>(m);
    }
    // returns (a, b, p) with both lifted to the common modulus (0 = literals)
    static std::tuple<std::uint64_t, std::uint64_t, std::uint64_t> align(
        const Fp& a, const Fp& b) {
        std::uint64_t p = a.p_ ? a.p_ : b.p_;
        if (a.p_ && b.p_ && a.p_ != b.p_)
            throw std::logic_error("Fp: mixed moduli");
        if (!p) return {0, 0, 0};
        return {a.p_ ? a.v_ : Fp(a.lit_, p).v_,
                b.p_ ? b.v_ : Fp(b.lit_, p).v_, p};
    }

    std::uint64_t p_ = 0;
    std::uint64_t v_ = 0;
    long long lit_ = 0;
};

inline bool is_zero(const Rat& x) { return x == 0; }
inline bool is_zero(const Fp& x) { return x.is_zero(); }

// reduction homomorphism; throws on p | denominator
inline Fp reduce_mod(const Rat& q, std::uint64_t p) {
    Int num = boost::multiprecision::numerator(q);
    Int den = boost::multiprecision::denominator(q);
    Int pb(p);
    Int nm = num % pb; if (nm < 0) nm += pb;
    Int dm = den % pb;
    if (dm == 0) throw std::domain_error("reduce_mod: denominator divisible by p");
    Fp n(static_cast<long long>(nm.convert_to<std::int64_t>()), p);
    Fp d(static_cast<long long>(dm.convert_to<std::int64_t>()), p);
    return n / d;
}

inline Rat convert_scalar(const Rat& x, const Rat&) { return x; }
inline Fp convert_scalar(const Rat& x, const Fp& proto) {
    return reduce_mod(x, proto.modulus());
}

}  // namespace qsheaf

#endif
