#include "qsheaf/biform.hpp"

#include <stdexcept>

namespace qsheaf {

namespace {
const Rat kZero(0);
}

BiForm::BiForm(Bidegree d) : deg_(d) {
    if (d.a < 0 || d.b < 0)
        throw std::invalid_argument("BiForm: bidegree must be >= (0,0), got " + d.str());
}

BiForm BiForm::constant(const Rat& c) {
    BiForm f({0, 0});
    f.set_coeff(0, 0, c);
    return f;
}

BiForm BiForm::monomial(Bidegree d, int i, int j, const Rat& c) {
    BiForm f(d);
    f.set_coeff(i, j, c);
    return f;
}

BiForm BiForm::random(Bidegree d, Rng& rng, int lo, int hi) {
    BiForm f(d);
    for (int i = 0; i <= d.a; ++i)
        for (int j = 0; j <= d.b; ++j)
            f.set_coeff(i, j, Rat(rng.uniform(lo, hi)));
    return f;
}

const Rat& BiForm::coeff(int i, int j) const {
    auto it = coeffs_.find({i, j});
    return it == coeffs_.end() ? kZero : it->second;
}

void BiForm::set_coeff(int i, int j, const Rat& c) {
    if (i < 0 || i > deg_.a || j < 0 || j > deg_.b)
        throw std::invalid_argument("BiForm: exponent out of range");
    if (c == 0) coeffs_.erase({i, j});
    else coeffs_[{i, j}] = c;
}

BiForm BiForm::operator+(const BiForm& o) const {
    if (deg_ != o.deg_) throw std::invalid_argument("BiForm+: bidegree mismatch");
    BiForm r = *this;
    for (const auto& [ij, c] : o.coeffs_) r.set_coeff(ij.first, ij.second, r.coeff(ij.first, ij.second) + c);
    return r;
}

BiForm BiForm::operator-(const BiForm& o) const { return *this + o.scaled(Rat(-1)); }

BiForm BiForm::operator*(const BiForm& o) const {
    BiForm r(deg_ + o.deg_);
    for (const auto& [ij, c] : coeffs_)
        for (const auto& [kl, d] : o.coeffs_)
            r.set_coeff(ij.first + kl.first, ij.second + kl.second,
                        r.coeff(ij.first + kl.first, ij.second + kl.second) + c * d);
    return r;
}

BiForm BiForm::scaled(const Rat& c) const {
    BiForm r(deg_);
    if (c == 0) return r;
    for (const auto& [ij, x] : coeffs_) r.coeffs_[ij] = x * c;
    return r;
}

/* Partial derivatives.  In the (i, j) indexing, s0 has exponent i and s1 has
   exponent a-i; the derivative drops the matching total degree by one. */
BiForm BiForm::d_s0() const {
    if (deg_.a == 0) return BiForm({0, deg_.b});
    BiForm r({deg_.a - 1, deg_.b});
    for (const auto& [ij, c] : coeffs_)
        if (ij.first >= 1) r.set_coeff(ij.first - 1, ij.second, r.coeff(ij.first - 1, ij.second) + c * ij.first);
    return r;
}

BiForm BiForm::d_s1() const {
    if (deg_.a == 0) return BiForm({0, deg_.b});
    BiForm r({deg_.a - 1, deg_.b});
    for (const auto& [ij, c] : coeffs_) {
        int e = deg_.a - ij.first;
        if (e >= 1) r.set_coeff(ij.first, ij.second, r.coeff(ij.first, ij.second) + c * e);
    }
    return r;
}

BiForm BiForm::d_t0() const {
    if (deg_.b == 0) return BiForm({deg_.a, 0});
    BiForm r({deg_.a, deg_.b - 1});
    for (const auto& [ij, c] : coeffs_)
        if (ij.second >= 1) r.set_coeff(ij.first, ij.second - 1, r.coeff(ij.first, ij.second - 1) + c * ij.second);
    return r;
}

BiForm BiForm::d_t1() const {
    if (deg_.b == 0) return BiForm({deg_.a, 0});
    BiForm r({deg_.a, deg_.b - 1});
    for (const auto& [ij, c] : coeffs_) {
        int e = deg_.b - ij.second;
        if (e >= 1) r.set_coeff(ij.first, ij.second, r.coeff(ij.first, ij.second) + c * e);
    }
    return r;
}

nlohmann::json BiForm::to_json() const {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [ij, c] : coeffs_)
        coeffs.push_back({ij.first, ij.second, rat_to_string(c)});
    return {{"a", deg_.a}, {"b", deg_.b}, {"coeffs", coeffs}};
}

BiForm BiForm::from_json(const nlohmann::json& j) {
    BiForm f({j.at("a").get<int>(), j.at("b").get<int>()});
    for (const auto& e : j.at("coeffs"))
        f.set_coeff(e.at(0).get<int>(), e.at(1).get<int>(),
                    rat_from_string(e.at(2).get<std::string>()));
    return f;
}

}  // namespace qsheaf
