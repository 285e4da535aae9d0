#ifndef QSHEAF_BIFORM_HPP
#define QSHEAF_BIFORM_HPP

#include "qsheaf/bidegree.hpp"
#include "qsheaf/rng.hpp"
#include "qsheaf/scalar.hpp"

#include <json.hpp>

#include <array>
#include <map>
#include <string>

namespace qsheaf {

/* Bihomogeneous form of bidegree (a,b) >= (0,0) with exact rational
   coefficients.  Coefficient key (i,j) is the monomial
   s0^i s1^(a-i) t0^j t1^(b-j).  The zero form is representable at any legal
   bidegree; zero coefficients are not stored. */
class BiForm {
public:
    BiForm() = default;
    explicit BiForm(Bidegree d);

    static BiForm zero(Bidegree d) { return BiForm(d); }
    static BiForm constant(const Rat& c);
    // monomial s0^i s1^(a-i) t0^j t1^(b-j)
    static BiForm monomial(Bidegree d, int i, int j, const Rat& c = Rat(1));
    // integer coefficients drawn uniformly from [lo, hi]
    static BiForm random(Bidegree d, Rng& rng, int lo = -9, int hi = 9);

    Bidegree degree() const { return deg_; }
    bool is_zero() const { return coeffs_.empty(); }

    const Rat& coeff(int i, int j) const;
    void set_coeff(int i, int j, const Rat& c);
    const std::map<std::pair<int, int>, Rat>& coeffs() const { return coeffs_; }

    BiForm operator+(const BiForm& o) const;
    BiForm operator-(const BiForm& o) const;
    BiForm operator*(const BiForm& o) const;
    BiForm scaled(const Rat& c) const;

    // value at projective coordinates ((s0:s1),(t0:t1)); well defined up to
    // the uniform factor lambda^a mu^b, enough for vanishing and rank tests
    template <class K>
    K eval(const std::array<K, 2>& s, const std::array<K, 2>& t) const {
        K acc(0);
        K proto = s[0];
        for (const auto& [ij, c] : coeffs_) {
            K term = convert_scalar(c, proto);
            term *= pow_k(s[0], ij.first) * pow_k(s[1], deg_.a - ij.first);
            term *= pow_k(t[0], ij.second) * pow_k(t[1], deg_.b - ij.second);
            acc += term;
        }
        return acc;
    }

    // partials with respect to the four coordinates, as forms
    BiForm d_s0() const; BiForm d_s1() const; BiForm d_t0() const; BiForm d_t1() const;

    nlohmann::json to_json() const;
    static BiForm from_json(const nlohmann::json& j);

    friend bool operator==(const BiForm& x, const BiForm& y) {
        return x.deg_ == y.deg_ && x.coeffs_ == y.coeffs_;
    }

private:
    template <class K>
    static K pow_k(const K& x, int n) {
        K r(1);
        for (int k = 0; k < n; ++k) r *= x;
        return r;
    }

    Bidegree deg_;
    std::map<std::pair<int, int>, Rat> coeffs_;
};

}  // namespace qsheaf

#endif
