#include "qsheaf/points.hpp"

#include <functional>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace qsheaf {

namespace {

void check(bool cond, const char* msg) {
    if (!cond) throw std::runtime_error(msg);
}

/* ---- binary forms, used for restrictions to lines and resultants ---- */

// homogeneous form in (x0, x1); c[k] is the coefficient of x0^k x1^(deg-k)
template <class K>
struct BinForm {
    int deg = 0;
    std::vector<K> c;

    static BinForm zero(int d) { return {d, std::vector<K>(d + 1, K(0))}; }
    bool is_zero() const {
        for (const auto& x : c) if (!is_zero_k(x)) return false;
        return true;
    }
    static bool is_zero_k(const K& x) { return qsheaf::is_zero(x); }

    K eval(const K& x0, const K& x1) const {
        // Horner in x0 with a running x1 power; allocation free, this sits in
        // the hot path of the base-locus scans
        K acc = c[static_cast<std::size_t>(deg)];
        K xp(1);
        for (int k = deg - 1; k >= 0; --k) {
            xp *= x1;
            acc = acc * x0 + c[static_cast<std::size_t>(k)] * xp;
        }
        return acc;
    }

    BinForm operator*(const BinForm& o) const {
        BinForm r = zero(deg + o.deg);
        for (int i = 0; i <= deg; ++i) {
            if (is_zero_k(c[i])) continue;
            for (int j = 0; j <= o.deg; ++j) r.c[i + j] += c[i] * o.c[j];
        }
        return r;
    }
    BinForm operator+(const BinForm& o) const {
        BinForm r = *this;
        for (int i = 0; i <= deg; ++i) r.c[i] += o.c[i];
        return r;
    }
    BinForm operator-() const {
        BinForm r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }

    int affine_degree() const {  // degree in x0 with x1 = 1; -1 for the zero form
        for (int k = deg; k >= 0; --k)
            if (!is_zero_k(c[k])) return k;
        return -1;
    }
    int infinity_mult() const {  // multiplicity of the root (1:0)
        int d = affine_degree();
        return d < 0 ? 0 : deg - d;
    }
};

// gcd of the dehomogenizations (x1 = 1), normalized monic; x1-powers tracked by caller
template <class K>
std::vector<K> affine_gcd(std::vector<K> a, std::vector<K> b) {
    auto degree = [](const std::vector<K>& p) {
        for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
            if (!is_zero(p[k])) return k;
        return -1;
    };
    while (degree(b) >= 0) {
        int da = degree(a), db = degree(b);
        if (da < db) { std::swap(a, b); continue; }
        K f = a[da] / b[db];
        for (int k = 0; k <= db; ++k) a[da - db + k] -= f * b[k];
        // keep reducing within the loop; degree(a) dropped
        if (degree(a) < degree(b)) std::swap(a, b);
    }
    int da = degree(a);
    std::vector<K> g(da < 0 ? 1 : da + 1, K(0));
    if (da < 0) return g;
    K inv = K(1) / a[da];
    for (int k = 0; k <= da; ++k) g[k] = a[k] * inv;
    return g;
}

template <class K>
BinForm<K> binform_gcd(const BinForm<K>& f, const BinForm<K>& g) {
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    int inf = std::min(f.infinity_mult(), g.infinity_mult());
    std::vector<K> pa(f.c.begin(), f.c.end()), pb(g.c.begin(), g.c.end());
    auto ga = affine_gcd<K>(pa, pb);
    int da = static_cast<int>(ga.size()) - 1;
    BinForm<K> out = BinForm<K>::zero(da + inf);
    for (int k = 0; k <= da; ++k) out.c[k] = ga[k];
    return out;  // times x1^inf, which the zero-padded high coefficients encode
}

// divide by the linear form vanishing at the projective root (a:b); exact
template <class K>
BinForm<K> binform_div_linear(const BinForm<K>& f, const K& ra, const K& rb) {
    check(f.deg >= 1, "binform_div_linear: degree too small");
    BinForm<K> q = BinForm<K>::zero(f.deg - 1);
    if (is_zero(rb)) {
        // root (1:0): factor is x1, so c[deg] must vanish
        check(is_zero(f.c[f.deg]), "binform_div_linear: (1:0) is not a root");
        for (int k = 0; k <= f.deg - 1; ++k) q.c[k] = f.c[k];
        return q;
    }
    // factor rb*x0 - ra*x1; descending synthetic division
    K prev(0);
    for (int m = f.deg; m >= 1; --m) {
        q.c[m - 1] = (f.c[m] + ra * prev) / rb;
        prev = q.c[m - 1];
    }
    check(qsheaf::is_zero(f.c[0] + ra * prev), "binform_div_linear: not a root");
    return q;
}

/* ---- bihomogeneous forms as coefficient vectors over coh_basis(0, d) ---- */

template <class K>
struct FormVec {
    Bidegree d;
    std::vector<K> c;  // index i*(b+1)+j for s0^i s1^(a-i) t0^j t1^(b-j)

    const K& at(int i, int j) const { return c[static_cast<std::size_t>(i) * (d.b + 1) + j]; }
    K& at(int i, int j) { return c[static_cast<std::size_t>(i) * (d.b + 1) + j]; }

    K eval(const QPoint<K>& p) const {
        K acc(0);
        std::vector<K> ps = powers(p.s, d.a), pt = powers(p.t, d.b);
        for (int i = 0; i <= d.a; ++i)
            for (int j = 0; j <= d.b; ++j)
                if (!is_zero(at(i, j))) acc += at(i, j) * ps[i] * ps[d.a - i + d.a + 1] * pt[j] * pt[d.b - j + d.b + 1];
        return acc;
    }

    // restriction to the line {s = (s0:s1)} as a binary form in t
    BinForm<K> restrict_s(const std::array<K, 2>& s) const {
        BinForm<K> out = BinForm<K>::zero(d.b);
        std::vector<K> p0 = pows(s[0], d.a), p1 = pows(s[1], d.a);
        for (int j = 0; j <= d.b; ++j) {
            K acc(0);
            for (int i = 0; i <= d.a; ++i)
                if (!is_zero(at(i, j))) acc += at(i, j) * p0[i] * p1[d.a - i];
            out.c[j] = acc;
        }
        return out;
    }
    // restriction to {t = (t0:t1)} as a binary form in s
    BinForm<K> restrict_t(const std::array<K, 2>& t) const {
        BinForm<K> out = BinForm<K>::zero(d.a);
        std::vector<K> p0 = pows(t[0], d.b), p1 = pows(t[1], d.b);
        for (int i = 0; i <= d.a; ++i) {
            K acc(0);
            for (int j = 0; j <= d.b; ++j)
                if (!is_zero(at(i, j))) acc += at(i, j) * p0[j] * p1[d.b - j];
            out.c[i] = acc;
        }
        return out;
    }

    FormVec deriv(int var) const {  // 0..3 for s0, s1, t0, t1
        Bidegree nd = var < 2 ? Bidegree{d.a - 1, d.b} : Bidegree{d.a, d.b - 1};
        FormVec out{nd, std::vector<K>(static_cast<std::size_t>(nd.a + 1) * (nd.b + 1), K(0))};
        if (nd.a < 0 || nd.b < 0) return FormVec{{0, 0}, {K(0)}};
        for (int i = 0; i <= d.a; ++i)
            for (int j = 0; j <= d.b; ++j) {
                const K& x = at(i, j);
                if (is_zero(x)) continue;
                switch (var) {
                    case 0: if (i >= 1) out.at(i - 1, j) += x * K(i); break;
                    case 1: if (d.a - i >= 1) out.at(i, j) += x * K(d.a - i); break;
                    case 2: if (j >= 1) out.at(i, j - 1) += x * K(j); break;
                    case 3: if (d.b - j >= 1) out.at(i, j) += x * K(d.b - j); break;
                }
            }
        return out;
    }

private:
    static std::vector<K> pows(const K& x, int n) {
        std::vector<K> p(n + 1, K(1));
        for (int k = 1; k <= n; ++k) p[k] = p[k - 1] * x;
        return p;
    }
    // concatenated power tables for eval(): [x0^0..x0^a, x1^0..x1^a]
    static std::vector<K> powers(const std::array<K, 2>& x, int n) {
        std::vector<K> p(2 * (n + 1), K(1));
        for (int k = 1; k <= n; ++k) {
            p[k] = p[k - 1] * x[0];
            p[n + 1 + k] = p[n + k] * x[1];
        }
        return p;
    }
};

// sections of I_Z(d): the kernel of point evaluation on coefficient vectors
template <class K>
std::vector<FormVec<K>> kernel_forms(const PointSet<K>& z, Bidegree d) {
    std::vector<FormVec<K>> out;
    for (auto& v : eval_matrix(z, d).kernel_basis())
        out.push_back(FormVec<K>{d, std::move(v)});
    return out;
}

// resultant with respect to the t factor: a binary form in s of degree 2ab
template <class K>
BinForm<K> resultant_t(const FormVec<K>& f, const FormVec<K>& g) {
    const int b = f.d.b;
    check(f.d == g.d, "resultant_t: mixed bidegrees");
    // coefficients of t0^j t1^(b-j) as binary s-forms
    auto scoef = [&](const FormVec<K>& h, int j) {
        BinForm<K> out = BinForm<K>::zero(h.d.a);
        for (int i = 0; i <= h.d.a; ++i) out.c[i] = h.at(i, j);
        return out;
    };
    const int n = 2 * b;
    std::vector<std::vector<BinForm<K>>> syl(n, std::vector<BinForm<K>>(n, BinForm<K>::zero(f.d.a)));
    for (int r = 0; r < b; ++r)
        for (int j = 0; j <= b; ++j) {
            syl[r][r + j] = scoef(f, b - j);
            syl[b + r][r + j] = scoef(g, b - j);
        }
    // cofactor expansion; n <= 6 in every use here
    std::function<BinForm<K>(std::vector<std::vector<BinForm<K>>>&)> det =
        [&](std::vector<std::vector<BinForm<K>>>& m) -> BinForm<K> {
        const std::size_t k = m.size();
        if (k == 1) return m[0][0];
        int total_deg = 0;
        for (std::size_t i = 0; i < k; ++i) total_deg += m[i][i].deg;
        BinForm<K> acc = BinForm<K>::zero(total_deg);
        for (std::size_t i = 0; i < k; ++i) {
            if (m[i][0].is_zero()) continue;
            std::vector<std::vector<BinForm<K>>> minor;
            for (std::size_t r = 0; r < k; ++r) {
                if (r == i) continue;
                minor.push_back(std::vector<BinForm<K>>(m[r].begin() + 1, m[r].end()));
            }
            BinForm<K> term = m[i][0] * det(minor);
            if (i % 2) term = -term;
            acc = acc + term;
        }
        return acc;
    };
    return det(syl);
}

// square root mod an odd prime (Tonelli-Shanks); nullopt for non-residues
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p) {
    if (a == 0) return 0;
    auto powmod = [p](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * b) % p);
            b = static_cast<std::uint64_t>((static_cast<unsigned __int128>(b) * b) % p);
            e >>= 1;
        }
        return r;
    };
    if (powmod(a, (p - 1) / 2) != 1) return std::nullopt;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4);
    std::uint64_t q = p - 1, s = 0;
    while (q % 2 == 0) { q /= 2; ++s; }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2) == 1) ++z;
    std::uint64_t m = s, cc = powmod(z, q), t = powmod(a, q), r = powmod(a, (q + 1) / 2);
    while (t != 1) {
        std::uint64_t i = 0, t2 = t;
        while (t2 != 1) {
            t2 = static_cast<std::uint64_t>((static_cast<unsigned __int128>(t2) * t2) % p);
            ++i;
        }
        std::uint64_t b = cc;
        for (std::uint64_t k = 0; k + i + 1 < m; ++k)
            b = static_cast<std::uint64_t>((static_cast<unsigned __int128>(b) * b) % p);
        m = i;
        cc = static_cast<std::uint64_t>((static_cast<unsigned __int128>(b) * b) % p);
        t = static_cast<std::uint64_t>((static_cast<unsigned __int128>(t) * cc) % p);
        r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * b) % p);
    }
    return r;
}

// all F_p-rational roots of a binary form, as projective pairs; linear and
// quadratic forms are solved directly, higher degrees scan the line
std::vector<std::array<Fp, 2>> binform_roots_fp(const BinForm<Fp>& f, std::uint64_t p) {
    std::vector<std::array<Fp, 2>> roots;
    if (f.is_zero()) return roots;
    const Fp one(1, p);
    int da = f.affine_degree();
    if (da == 0) {
        // constant times a power of x1
    } else if (da == 1) {
        roots.push_back({-f.c[0] / f.c[1], one});
    } else if (da == 2) {
        // c2 x^2 + c1 x + c0 = 0 via the discriminant
        Fp a2 = f.c[2], a1 = f.c[1], a0 = f.c[0];
        Fp disc = a1 * a1 - Fp(4) * a2 * a0;
        auto sq = sqrt_mod(disc.value(), p);
        if (sq) {
            Fp root(static_cast<long long>(*sq), p);
            Fp inv2a = Fp(1) / (Fp(2) * a2);
            roots.push_back({(-a1 + root) * inv2a, one});
            if (!root.is_zero()) roots.push_back({(-a1 - root) * inv2a, one});
        }
    } else {
        // raw Horner sweep; this is the hot loop of the base-locus scans
        std::vector<std::uint64_t> cf(static_cast<std::size_t>(da) + 1);
        for (int k = 0; k <= da; ++k) {
            const Fp& x = f.c[static_cast<std::size_t>(k)];
            cf[static_cast<std::size_t>(k)] = x.modulus() ? x.value() : Fp(x.literal(), p).value();
        }
        for (std::uint64_t x = 0; x < p; ++x) {
            std::uint64_t acc = cf[static_cast<std::size_t>(da)];
            for (int k = da - 1; k >= 0; --k)
                acc = static_cast<std::uint64_t>(
                    (static_cast<unsigned __int128>(acc) * x + cf[static_cast<std::size_t>(k)]) % p);
            if (acc == 0) roots.push_back({Fp::from_raw(x, p), one});
        }
    }
    if (f.infinity_mult() > 0) roots.push_back({Fp(1, p), Fp(0, p)});
    return roots;
}

template <class K>
std::vector<std::array<K, 2>> binform_roots(const BinForm<K>& f, std::uint64_t p);

template <>
std::vector<std::array<Fp, 2>> binform_roots<Fp>(const BinForm<Fp>& f, std::uint64_t p) {
    return binform_roots_fp(f, p);
}

template <>
std::vector<std::array<Rat, 2>> binform_roots<Rat>(const BinForm<Rat>& f, std::uint64_t) {
    // rational roots are only ever needed after dividing out known roots down
    // to a linear factor; general rational root extraction is not attempted
    std::vector<std::array<Rat, 2>> roots;
    if (f.deg == 1 && !f.is_zero()) roots.push_back({-f.c[0], f.c[1]});
    return roots;
}

}  // namespace

/* ---- divisors ---- */

template <class K>
std::vector<K> LineDivisor<K>::defining_form() const {
    if (form) return *form;
    // product of the linear forms root1*x0 - root0*x1 per component
    Bidegree d = bidegree();
    FormVec<K> acc{{0, 0}, {K(1)}};
    for (const auto& comp : components) {
        // the line {x = (r0:r1)} is cut by r1*x0 - r0*x1; in the (i,j) coefficient
        // order that is c = {-r0, r1} for either ruling
        FormVec<K> lin = comp.ruling == 0
                             ? FormVec<K>{{1, 0}, {-comp.root[0], comp.root[1]}}
                             : FormVec<K>{{0, 1}, {-comp.root[0], comp.root[1]}};
        FormVec<K> next{acc.d + lin.d,
                        std::vector<K>(static_cast<std::size_t>(acc.d.a + lin.d.a + 1) *
                                           (acc.d.b + lin.d.b + 1),
                                       K(0))};
        for (int i = 0; i <= acc.d.a; ++i)
            for (int j = 0; j <= acc.d.b; ++j) {
                if (is_zero(acc.at(i, j))) continue;
                for (int i2 = 0; i2 <= lin.d.a; ++i2)
                    for (int j2 = 0; j2 <= lin.d.b; ++j2)
                        next.at(i + i2, j + j2) += acc.at(i, j) * lin.at(i2, j2);
            }
        acc = std::move(next);
    }
    check(acc.d == d, "LineDivisor::defining_form: degree bookkeeping");
    return acc.c;
}

/* mult_matrix over an arbitrary field, for the restriction sequences */
namespace {
template <class K>
Matrix<K> mult_matrix_vec(const std::vector<K>& coeffs, Bidegree fdeg, int degree, Bidegree from) {
    const Bidegree to = from + fdeg;
    const auto src = coh_basis(degree, from);
    Matrix<K> m(static_cast<std::size_t>(h_line(degree, to)), src.size());
    for (std::size_t col = 0; col < src.size(); ++col)
        for (int i = 0; i <= fdeg.a; ++i)
            for (int j = 0; j <= fdeg.b; ++j) {
                const K& cf = coeffs[static_cast<std::size_t>(i) * (fdeg.b + 1) + j];
                if (is_zero(cf)) continue;
                std::array<int, 4> e = src[col].e;
                e[0] += i; e[1] += fdeg.a - i; e[2] += j; e[3] += fdeg.b - j;
                if (auto idx = coh_basis_index(degree, to, e)) m.at(*idx, col) += cf;
            }
    return m;
}
}  // namespace

template <class K>
std::array<int, 2> curve_ideal_cohomology(const LineDivisor<K>& d, const PointSet<K>& w, int m, int n) {
    const Bidegree uv = d.bidegree();
    const Bidegree tw{m, n}, sh = tw - uv;
    const std::vector<K> F = d.defining_form();
    int r[3];
    for (int deg = 0; deg < 3; ++deg)
        r[deg] = static_cast<int>(mult_matrix_vec<K>(F, uv, deg, sh).rank());
    check(h_line(1, sh) - r[1] == 0,
          "curve_ideal_cohomology: sections of O_D not induced from Q; unsupported twist");
    int h0_od = h_line(0, tw) - r[0];
    int h1_od = (h_line(1, tw) - r[1]) + (h_line(2, sh) - r[2]);
    check(h_line(2, tw) - r[2] == 0, "curve_ideal_cohomology: H^2 of a curve sheaf must vanish");
    for (const auto& p : w.pts)
        check(d.contains(p), "curve_ideal_cohomology: W must lie on D");
    int rho = static_cast<int>(eval_matrix(w, tw).rank());
    return {h0_od - rho, w.degree() - rho + h1_od};
}

template <class K>
ResidualCheck residual_sequence_check(const PointSet<K>& z, const LineDivisor<K>& d, int m, int n) {
    const Bidegree uv = d.bidegree();
    PointSet<K> res = residual(z, d), cap = intersect_with(z, d);
    auto hz = ideal_cohomology(z, {m, n});
    auto hr = ideal_cohomology(res, {m - uv.a, n - uv.b});
    auto hc = curve_ideal_cohomology(d, cap, m, n);
    ResidualCheck out;
    long long chi_z = hz[0] - hz[1] + hz[2];
    long long chi_r = hr[0] - hr[1] + hr[2];
    long long chi_c = hc[0] - hc[1];
    out.chi_identity = (chi_z == chi_r + chi_c);
    out.h1_total = hz[1];
    out.h1_residual = hr[1];
    out.h1_trace = hc[1];
    out.h1_bound = hz[1] <= hr[1] + hc[1];
    return out;
}

/* ---- global generation of I_Z(d) ---- */

namespace {

// base points of the full system with rational s-coordinate, excluding Z
template <class K>
struct ScanOutcome {
    bool found_point = false;
    QPoint<K> witness;
    bool irrational_pencil = false;  // k = 2 and leftover resultant factor
    bool degenerate = false;         // common one-dimensional component handled by caller
};

bool all_vanish_at(const std::vector<FormVec<Fp>>& forms, const QPoint<Fp>& pt) {
    for (const auto& f : forms)
        if (!f.eval(pt).is_zero()) return false;
    return true;
}

// common rational roots of the restrictions of all forms to the line {s = sigma}
std::vector<std::array<Fp, 2>> common_t_roots(const std::vector<FormVec<Fp>>& forms,
                                              const std::array<Fp, 2>& sigma, std::uint64_t p) {
    BinForm<Fp> g = forms[0].restrict_s(sigma);
    for (std::size_t k = 1; k < forms.size(); ++k)
        g = binform_gcd(g, forms[k].restrict_s(sigma));
    std::vector<std::array<Fp, 2>> out;
    if (g.is_zero()) {
        // every restriction vanishes identically: the whole line is base locus
        for (std::uint64_t x = 0; x <= p; ++x)
            out.push_back(x < p ? std::array<Fp, 2>{Fp::from_raw(x, p), Fp(1, p)}
                                : std::array<Fp, 2>{Fp(1, p), Fp(0, p)});
        return out;
    }
    if (g.affine_degree() <= 0 && g.infinity_mult() == 0) return out;
    return binform_roots_fp(g, p);
}

ScanOutcome<Fp> offz_base_scan(const PointSet<Fp>& z, const std::vector<FormVec<Fp>>& forms,
                               std::uint64_t p, const GgOptions& opts) {
    ScanOutcome<Fp> out;
    auto try_point = [&](const std::array<Fp, 2>& s, const std::array<Fp, 2>& t) {
        QPoint<Fp> pt = QPoint<Fp>::make(s[0], s[1], t[0], t[1]);
        if (!z.contains(pt) && all_vanish_at(forms, pt)) {
            out.found_point = true;
            out.witness = pt;
            return true;
        }
        return false;
    };

    if (p <= opts.full_scan_bound) {
        for (std::uint64_t a = 0; a <= p && !out.found_point; ++a) {
            std::array<Fp, 2> s = a < p ? std::array<Fp, 2>{Fp(1, p), Fp::from_raw(a, p)}
                                        : std::array<Fp, 2>{Fp(0, p), Fp(1, p)};
            for (std::uint64_t b = 0; b <= p; ++b) {
                std::array<Fp, 2> t = b < p ? std::array<Fp, 2>{Fp(1, p), Fp::from_raw(b, p)}
                                            : std::array<Fp, 2>{Fp(0, p), Fp(1, p)};
                if (try_point(s, t)) break;
            }
        }
        return out;
    }

    // resultant-driven: rational base points have s-coordinates among the
    // roots of gcd_k Res_t(f, g_k)
    const FormVec<Fp>& f = forms[0];
    BinForm<Fp> g;
    bool have = false;
    int nonzero_resultants = 0;
    for (std::size_t k = 1; k < forms.size(); ++k) {
        BinForm<Fp> r = resultant_t(f, forms[k]);
        if (r.is_zero()) continue;
        ++nonzero_resultants;
        g = have ? binform_gcd(g, r) : r;
        have = true;
    }
    if (!have) {
        // f shares a component with every other section: sweep the s-lines
        for (std::uint64_t a = 0; a <= p && !out.found_point; ++a) {
            std::array<Fp, 2> s = a < p ? std::array<Fp, 2>{Fp(1, p), Fp::from_raw(a, p)}
                                        : std::array<Fp, 2>{Fp(0, p), Fp(1, p)};
            for (const auto& t : common_t_roots(forms, s, p))
                if (try_point(s, t)) break;
        }
        out.degenerate = !out.found_point;
        return out;
    }

    BinForm<Fp> remaining = g;
    for (const auto& s : binform_roots_fp(g, p)) {
        // strip this rational root (with multiplicity) for the leftover count
        while (remaining.deg >= 1 && remaining.eval(s[0], s[1]).is_zero())
            remaining = binform_div_linear(remaining, s[0], s[1]);
        for (const auto& t : common_t_roots(forms, s, p))
            if (try_point(s, t)) return out;
    }
    if (forms.size() == 2 && remaining.affine_degree() > 0) {
        // a pencil's resultant root is always an honest base point; a leftover
        // irreducible factor certifies base points over the closure
        out.irrational_pencil = true;
    }
    return out;
}

template <class K>
bool gradient_ok_at(const std::vector<FormVec<K>>& forms, const QPoint<K>& pt) {
    // cotangent surjectivity in the affine chart of the normalized point:
    // the differentials along the two affine directions must span K^2
    int svar = is_zero(pt.s[0]) ? 0 : 1;  // vary s0 if point is (0:1), else s1
    int tvar = is_zero(pt.t[0]) ? 2 : 3;
    Matrix<K> jac(2, forms.size());
    for (std::size_t k = 0; k < forms.size(); ++k) {
        jac.at(0, k) = forms[k].deriv(svar).eval(pt);
        jac.at(1, k) = forms[k].deriv(tvar).eval(pt);
    }
    return jac.rank() == 2;
}

// normalized coordinates are (1, x) or (0, 1), so this key is collision free
template <class K>
std::string coord_key(const std::array<K, 2>& x) {
    if (is_zero(x[0])) return "inf";
    if constexpr (std::is_same_v<K, Rat>)
        return rat_to_string(x[1]);
    else
        return std::to_string(x[1].modulus() ? x[1].value()
                                             : static_cast<std::uint64_t>(x[1].literal()));
}

template <class K>
std::optional<GgResult> structural_verdicts(const PointSet<K>& z, Bidegree d,
                                            const std::vector<FormVec<K>>& forms) {
    if (forms.empty())
        return GgResult{GgVerdict::not_gg, "no sections"};
    // a ruling line meeting Z in more points than the restricted degree lies
    // in the base locus
    std::map<std::pair<bool, std::string>, int> fiber_counts;
    for (const auto& p : z.pts) {
        if (++fiber_counts[{false, coord_key<K>(p.s)}] >= d.b + 1)
            return GgResult{GgVerdict::not_gg, "ruling line {s=const} lies in the base locus"};
        if (++fiber_counts[{true, coord_key<K>(p.t)}] >= d.a + 1)
            return GgResult{GgVerdict::not_gg, "ruling line {t=const} lies in the base locus"};
    }
    for (const auto& p : z.pts)
        if (!gradient_ok_at(forms, p))
            return GgResult{GgVerdict::not_gg, "cotangent condition fails at a point of Z"};
    return std::nullopt;
}

GgResult is_gg_ideal_fp(const PointSet<Fp>& z, Bidegree d, std::uint64_t p, const GgOptions& opts) {
    auto forms = kernel_forms(z, d);
    if (auto early = structural_verdicts(z, d, forms)) return *early;
    auto scan = offz_base_scan(z, forms, p, opts);
    if (scan.found_point) return {GgVerdict::not_gg, "base point outside Z"};
    if (scan.irrational_pencil)
        return {GgVerdict::not_gg, "pencil base point over the algebraic closure"};
    if (scan.degenerate)
        return {GgVerdict::inconclusive, "degenerate section pencil"};
    return {GgVerdict::gg_certified, "direct test: cotangent condition + empty off-Z base locus over F_" + std::to_string(p)};
}

std::optional<PointSet<Fp>> reduce_pointset(const PointSet<Rat>& z, std::uint64_t p) {
    PointSet<Fp> out;
    try {
        for (const auto& q : z.pts) {
            QPoint<Fp> r = QPoint<Fp>::make(reduce_mod(q.s[0], p), reduce_mod(q.s[1], p),
                                            reduce_mod(q.t[0], p), reduce_mod(q.t[1], p));
            if (out.contains(r)) return std::nullopt;  // points collide mod p
            out.pts.push_back(r);
        }
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
    return out;
}

}  // namespace

namespace {
std::uint64_t modulus_of(const PointSet<Fp>& z) {
    for (const auto& q : z.pts)
        for (const Fp* x : {&q.s[0], &q.s[1], &q.t[0], &q.t[1]})
            if (x->modulus()) return x->modulus();
    throw std::invalid_argument("PointSet<Fp>: no point carries a modulus");
}
}  // namespace

template <>
GgResult is_gg_ideal<Fp>(const PointSet<Fp>& z, Bidegree d, const GgOptions& opts) {
    if (d.a < 0 || d.b < 0)
        throw std::invalid_argument("is_gg_ideal: bidegree must be >= (0,0)");
    if (!z.pts.empty()) {
        std::uint64_t p = modulus_of(z);
        if (opts.try_regularity_first) {
            auto h10 = ideal_cohomology(z, d - Bidegree{1, 0});
            auto h01 = ideal_cohomology(z, d - Bidegree{0, 1});
            auto h11 = ideal_cohomology(z, d - Bidegree{1, 1});
            if (h10[1] == 0 && h01[1] == 0 && h11[2] == 0)
                return {GgVerdict::gg_certified, "ruling-regularity vanishings"};
        }
        return is_gg_ideal_fp(z, d, p, opts);
    }
    // empty Z: I_Z(d) = O(d), globally generated for d >= 0
    return {GgVerdict::gg_certified, "line bundle O(d), d >= (0,0)"};
}

template <>
GgResult is_gg_ideal<Rat>(const PointSet<Rat>& z, Bidegree d, const GgOptions& opts) {
    if (d.a < 0 || d.b < 0)
        throw std::invalid_argument("is_gg_ideal: bidegree must be >= (0,0)");
    if (z.pts.empty()) return {GgVerdict::gg_certified, "line bundle O(d), d >= (0,0)"};
    if (opts.try_regularity_first) {
        auto h10 = ideal_cohomology(z, d - Bidegree{1, 0});
        auto h01 = ideal_cohomology(z, d - Bidegree{0, 1});
        auto h11 = ideal_cohomology(z, d - Bidegree{1, 1});
        if (h10[1] == 0 && h01[1] == 0 && h11[2] == 0)
            return {GgVerdict::gg_certified, "ruling-regularity vanishings (field independent)"};
    }
    auto forms = kernel_forms(z, d);
    if (auto early = structural_verdicts(z, d, forms)) return *early;

    // certify over several prime reductions with the same section-space rank
    const std::size_t kdim = forms.size();
    std::size_t clean = 0;
    bool obstructed = false;
    for (std::uint64_t p : opts.certification_primes) {
        if (clean >= opts.primes_required) break;
        auto zp = reduce_pointset(z, p);
        if (!zp) continue;
        auto fp_forms = kernel_forms(*zp, d);
        if (fp_forms.size() != kdim) continue;  // bad reduction, rank dropped
        auto scan = offz_base_scan(*zp, fp_forms, p, opts);
        if (scan.found_point || scan.irrational_pencil) { obstructed = true; break; }
        if (scan.degenerate) continue;
        ++clean;
    }
    if (obstructed)
        return {GgVerdict::inconclusive, "base point in a prime reduction; no rational certificate"};
    if (clean >= opts.primes_required)
        return {GgVerdict::gg_certified,
                "direct test: rational cotangent condition + empty off-Z base locus over " +
                    std::to_string(clean) + " prime reductions"};
    return {GgVerdict::inconclusive, "insufficient prime reductions with good behavior"};
}

/* ---- JSON ---- */

nlohmann::json pointset_to_json(const PointSet<Rat>& z) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : z.pts) {
        nlohmann::json s = nlohmann::json::array({rat_to_string(p.s[0]), rat_to_string(p.s[1])});
        nlohmann::json t = nlohmann::json::array({rat_to_string(p.t[0]), rat_to_string(p.t[1])});
        pts.push_back(nlohmann::json::array({s, t}));
    }
    return {{"field", "Q"}, {"points", pts}};
}

nlohmann::json pointset_to_json(const PointSet<Fp>& z, std::uint64_t p) {
    nlohmann::json pts = nlohmann::json::array();
    auto val = [p](const Fp& x) { return x.modulus() ? x.value() : Fp(x.literal(), p).value(); };
    for (const auto& q : z.pts) {
        nlohmann::json s = nlohmann::json::array({val(q.s[0]), val(q.s[1])});
        nlohmann::json t = nlohmann::json::array({val(q.t[0]), val(q.t[1])});
        pts.push_back(nlohmann::json::array({s, t}));
    }
    return {{"field", "Fp:" + std::to_string(p)}, {"points", pts}};
}

PointSet<Rat> pointset_rat_from_json(const nlohmann::json& j) {
    if (j.at("field").get<std::string>() != "Q")
        throw std::invalid_argument("pointset_rat_from_json: field is not Q");
    PointSet<Rat> z;
    for (const auto& p : j.at("points"))
        z.add(QPoint<Rat>::make(rat_from_string(p.at(0).at(0).get<std::string>()),
                                rat_from_string(p.at(0).at(1).get<std::string>()),
                                rat_from_string(p.at(1).at(0).get<std::string>()),
                                rat_from_string(p.at(1).at(1).get<std::string>())));
    return z;
}

PointSet<Fp> pointset_fp_from_json(const nlohmann::json& j, std::uint64_t* p_out) {
    std::string f = j.at("field").get<std::string>();
    if (f.rfind("Fp:", 0) != 0)
        throw std::invalid_argument("pointset_fp_from_json: field is not Fp:<p>");
    std::uint64_t p = std::stoull(f.substr(3));
    if (p_out) *p_out = p;
    PointSet<Fp> z;
    for (const auto& q : j.at("points"))
        z.add(QPoint<Fp>::make(Fp(q.at(0).at(0).get<long long>(), p), Fp(q.at(0).at(1).get<long long>(), p),
                               Fp(q.at(1).at(0).get<long long>(), p), Fp(q.at(1).at(1).get<long long>(), p)));
    return z;
}

/* ---- generators ---- */

namespace {
template <class K>
K field_elem(Rng& rng, std::uint64_t p) {
    if constexpr (std::is_same_v<K, Fp>)
        return Fp(rng.uniform(0, static_cast<std::int64_t>(p) - 1), p);
    else
        return Rat(rng.uniform(-50, 50));
}
}  // namespace

template <class K>
QPoint<K> random_point(Rng& rng, std::uint64_t p) {
    if constexpr (std::is_same_v<K, Fp>) {
        auto coord = [&](std::uint64_t u) {
            return u < p ? std::array<Fp, 2>{Fp(1, p), Fp::from_raw(u, p)}
                         : std::array<Fp, 2>{Fp(0, p), Fp(1, p)};
        };
        auto s = coord(static_cast<std::uint64_t>(rng.uniform(0, static_cast<std::int64_t>(p))));
        auto t = coord(static_cast<std::uint64_t>(rng.uniform(0, static_cast<std::int64_t>(p))));
        return QPoint<Fp>::make(s[0], s[1], t[0], t[1]);
    } else {
        return QPoint<Rat>::make(Rat(1), Rat(rng.uniform(-50, 50)), Rat(1), Rat(rng.uniform(-50, 50)));
    }
}

template <class K>
PointSet<K> random_points(int n, Rng& rng, std::uint64_t p, const GenOptions& opts) {
    PointSet<K> z;
    int guard = 0;
    while (z.degree() < n) {
        if (++guard > 10000) throw std::runtime_error("random_points: rejection limit");
        QPoint<K> q = random_point<K>(rng, p);
        if (z.contains(q)) continue;
        bool ok = true;
        for (const auto& w : z.pts) {
            if (opts.distinct_s && w.s == q.s) ok = false;
            if (opts.distinct_t && w.t == q.t) ok = false;
        }
        if (ok) z.pts.push_back(q);
    }
    return z;
}

template <class K>
PointSet<K> eight_point_ci(Rng& rng, std::uint64_t p) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        Rng sub = rng.fork(static_cast<std::uint64_t>(attempt) + 1);
        PointSet<K> z = random_points<K>(7, sub, p, {true, true});
        auto forms = kernel_forms(z, {2, 2});
        if (forms.size() != 2) continue;
        BinForm<K> r = resultant_t(forms[0], forms[1]);
        if (r.is_zero()) continue;
        bool bad = false;
        for (const auto& q : z.pts) {
            if (!r.eval(q.s[0], q.s[1]).is_zero()) { bad = true; break; }
            r = binform_div_linear(r, q.s[0], q.s[1]);
        }
        if (bad || r.deg != 1) continue;
        auto roots = binform_roots<K>(r, p);
        if (roots.size() != 1) continue;
        const auto& s8 = roots[0];
        BinForm<K> g = binform_gcd(forms[0].restrict_s({s8[0], s8[1]}),
                                   forms[1].restrict_s({s8[0], s8[1]}));
        if (g.affine_degree() + g.infinity_mult() != 1) continue;  // want one simple point
        std::array<K, 2> t8 = g.infinity_mult() == 1 ? std::array<K, 2>{K(1), K(0)}
                                                     : std::array<K, 2>{-g.c[0], g.c[1]};
        QPoint<K> p8 = QPoint<K>::make(s8[0], s8[1], t8[0], t8[1]);
        if (z.contains(p8)) continue;
        z.pts.push_back(p8);
        auto full = kernel_forms(z, {2, 2});
        if (full.size() != 2) continue;
        bool transverse = true;
        for (const auto& q : z.pts)
            if (!gradient_ok_at(full, q)) { transverse = false; break; }
        if (!transverse) continue;
        return z;
    }
    throw std::runtime_error("eight_point_ci: no transverse pencil found");
}

template <class K>
PointSet<K> five_on_twisted_curve(Rng& rng, std::uint64_t p) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        Rng sub = rng.fork(static_cast<std::uint64_t>(attempt) + 101);
        BinForm<K> q0 = BinForm<K>::zero(2), q1 = BinForm<K>::zero(2);
        for (int k = 0; k <= 2; ++k) {
            q0.c[k] = field_elem<K>(sub, p);
            q1.c[k] = field_elem<K>(sub, p);
        }
        // smooth rational normal curve needs q0, q1 coprime
        BinForm<K> g = binform_gcd(q0, q1);
        if (q0.is_zero() || q1.is_zero() || g.affine_degree() + g.infinity_mult() > 0) continue;
        PointSet<K> z;
        int guard = 0;
        while (z.degree() < 5 && guard++ < 500) {
            K t0(1), t1 = field_elem<K>(sub, p);
            K a = q1.eval(t0, t1), b = -q0.eval(t0, t1);
            if (is_zero(a) && is_zero(b)) continue;
            QPoint<K> pt = QPoint<K>::make(a, b, t0, t1);
            if (!z.contains(pt)) z.pts.push_back(pt);
        }
        if (z.degree() == 5) return z;
    }
    throw std::runtime_error("five_on_twisted_curve: generation failed");
}

template <class K>
PointSet<K> six_points_v_condition(Rng& rng, std::uint64_t p) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        Rng sub = rng.fork(static_cast<std::uint64_t>(attempt) + 201);
        PointSet<K> z = random_points<K>(6, sub, p, {true, true});
        if (ideal_cohomology(z, {1, 2})[0] == 0 && ideal_cohomology(z, {2, 1})[0] == 0)
            return z;
    }
    throw std::runtime_error("six_points_v_condition: generation failed");
}

template <class K>
std::pair<PointSet<K>, LineDivisor<K>> two_line_config(int deg_total, int max_per_line,
                                                       Rng& rng, std::uint64_t p) {
    check(deg_total <= 2 * max_per_line, "two_line_config: infeasible degree");
    for (int attempt = 0; attempt < 200; ++attempt) {
        Rng sub = rng.fork(static_cast<std::uint64_t>(attempt) + 301);
        QPoint<K> anchor = random_point<K>(sub, p);
        LineDivisor<K> lines;
        lines.components.push_back({0, anchor.s});
        lines.components.push_back({1, anchor.t});
        int lo = std::max(0, deg_total - max_per_line);
        int hi = std::min(max_per_line, deg_total);
        int n1 = static_cast<int>(sub.uniform(lo, hi));
        PointSet<K> z;
        int guard = 0;
        while (z.degree() < n1 && guard++ < 500) {
            QPoint<K> q = random_point<K>(sub, p);
            QPoint<K> on_l1 = QPoint<K>::make(anchor.s[0], anchor.s[1], q.t[0], q.t[1]);
            if (!z.contains(on_l1) && !(on_l1.t == anchor.t)) z.pts.push_back(on_l1);
        }
        while (z.degree() < deg_total && guard++ < 1000) {
            QPoint<K> q = random_point<K>(sub, p);
            QPoint<K> on_l2 = QPoint<K>::make(q.s[0], q.s[1], anchor.t[0], anchor.t[1]);
            if (!z.contains(on_l2) && !(on_l2.s == anchor.s)) z.pts.push_back(on_l2);
        }
        if (z.degree() == deg_total) return {z, lines};
    }
    throw std::runtime_error("two_line_config: generation failed");
}

/* ---- degree-7 exclusion search ---- */

namespace {

PointSet<Fp> family_instance(const std::string& family, Rng rng, std::uint64_t p) {
    if (family == "random") return random_points<Fp>(7, rng, p);
    if (family == "near_ci") {
        PointSet<Fp> z = eight_point_ci<Fp>(rng, p);
        std::size_t drop = static_cast<std::size_t>(rng.uniform(0, 7));
        return z.without(drop);
    }
    if (family == "ruling_triple") {
        PointSet<Fp> z = random_points<Fp>(4, rng, p, {true, true});
        QPoint<Fp> base = random_point<Fp>(rng, p);
        int guard = 0;
        while (z.degree() < 7 && guard++ < 500) {
            QPoint<Fp> q = random_point<Fp>(rng, p);
            QPoint<Fp> on_line = QPoint<Fp>::make(base.s[0], base.s[1], q.t[0], q.t[1]);
            if (!z.contains(on_line)) z.pts.push_back(on_line);
        }
        check(z.degree() == 7, "ruling_triple generation failed");
        return z;
    }
    if (family == "on_11_curve") {
        for (int attempt = 0; attempt < 200; ++attempt) {
            Rng sub = rng.fork(static_cast<std::uint64_t>(attempt) + 11);
            // f = sum c_ij s_i t_j; smooth iff the 2x2 coefficient matrix is invertible
            std::array<std::array<Fp, 2>, 2> c;
            for (auto& row : c)
                for (auto& x : row) x = field_elem<Fp>(sub, p);
            if ((c[0][0] * c[1][1] - c[0][1] * c[1][0]).is_zero()) continue;
            PointSet<Fp> z;
            int guard = 0;
            while (z.degree() < 7 && guard++ < 500) {
                QPoint<Fp> q = random_point<Fp>(sub, p);
                // solve the linear condition in t at s = q.s
                Fp a = c[0][0] * q.s[0] + c[1][0] * q.s[1];  // coeff of t0
                Fp b = c[0][1] * q.s[0] + c[1][1] * q.s[1];  // coeff of t1
                if (a.is_zero() && b.is_zero()) continue;
                QPoint<Fp> pt = QPoint<Fp>::make(q.s[0], q.s[1], -b, a);
                if (!z.contains(pt)) z.pts.push_back(pt);
            }
            if (z.degree() == 7) return z;
        }
        throw std::runtime_error("on_11_curve generation failed");
    }
    if (family == "on_12_curve") {
        // rational-normal-curve parametrization, seven parameter values
        for (int attempt = 0; attempt < 200; ++attempt) {
            Rng sub = rng.fork(static_cast<std::uint64_t>(attempt) + 12);
            BinForm<Fp> q0 = BinForm<Fp>::zero(2), q1 = BinForm<Fp>::zero(2);
            for (int k = 0; k <= 2; ++k) {
                q0.c[k] = field_elem<Fp>(sub, p);
                q1.c[k] = field_elem<Fp>(sub, p);
            }
            BinForm<Fp> g = binform_gcd(q0, q1);
            if (q0.is_zero() || q1.is_zero() || g.affine_degree() + g.infinity_mult() > 0) continue;
            PointSet<Fp> w;
            int guard = 0;
            while (w.degree() < 7 && guard++ < 500) {
                Fp t0(1, p), t1 = field_elem<Fp>(sub, p);
                Fp a = q1.eval(t0, t1), b = -q0.eval(t0, t1);
                if (a.is_zero() && b.is_zero()) continue;
                QPoint<Fp> pt = QPoint<Fp>::make(a, b, t0, t1);
                if (!w.contains(pt)) w.pts.push_back(pt);
            }
            if (w.degree() == 7) return w;
        }
        throw std::runtime_error("on_12_curve generation failed");
    }
    if (family == "on_22_curve") {
        for (int attempt = 0; attempt < 200; ++attempt) {
            Rng sub = rng.fork(static_cast<std::uint64_t>(attempt) + 22);
            FormVec<Fp> f{{2, 2}, std::vector<Fp>(9)};
            for (auto& x : f.c) x = field_elem<Fp>(sub, p);
            PointSet<Fp> z;
            int guard = 0;
            while (z.degree() < 7 && guard++ < 2000) {
                QPoint<Fp> q = random_point<Fp>(sub, p);
                BinForm<Fp> slice = f.restrict_s(q.s);
                auto roots = binform_roots_fp(slice, p);
                if (roots.empty()) continue;
                auto r = roots[static_cast<std::size_t>(sub.uniform(0, static_cast<std::int64_t>(roots.size()) - 1))];
                QPoint<Fp> pt = QPoint<Fp>::make(q.s[0], q.s[1], r[0], r[1]);
                if (!z.contains(pt)) z.pts.push_back(pt);
            }
            if (z.degree() == 7) return z;
        }
        throw std::runtime_error("on_22_curve generation failed");
    }
    throw std::invalid_argument("unknown length-7 family: " + family);
}

}  // namespace

nlohmann::json Length7Report::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : counterexamples)
        rows.push_back({{"prime", r.prime},
                        {"trial", r.trial},
                        {"family", r.family},
                        {"verdict", r.verdict},
                        {"reason", r.reason},
                        {"points", r.points}});
    nlohmann::json v = nlohmann::json::object(), rs = nlohmann::json::object();
    for (const auto& [k, n] : verdicts) v[k] = n;
    for (const auto& [k, n] : reasons) rs[k] = n;
    return {{"seed", seed},
            {"total", total},
            {"verdicts", v},
            {"reasons", rs},
            {"counterexamples", rows}};
}

void Length7Report::write_jsonl(std::ostream& out) const {
    for (const auto& r : trials)
        out << nlohmann::json{{"seed", seed},       {"prime", r.prime},
                              {"family", r.family}, {"trial", r.trial},
                              {"verdict", r.verdict}, {"reason", r.reason}}
                   .dump()
            << "\n";
}

Length7Report length7_search(long long random_trials_per_prime, std::uint64_t seed, int jobs,
                             std::vector<std::uint64_t> primes, long long structured_per_family,
                             bool record_trials) {
    if (random_trials_per_prime < 1) throw std::invalid_argument("length7_search: trials >= 1 required");
    struct Job {
        std::uint64_t prime;
        std::string family;
        long long trial;
    };
    const std::vector<std::string> structured = {"near_ci", "ruling_triple", "on_11_curve",
                                                 "on_12_curve", "on_22_curve"};
    std::vector<Job> jobs_list;
    for (auto p : primes) {
        for (long long i = 0; i < random_trials_per_prime; ++i) jobs_list.push_back({p, "random", i});
        for (const auto& fam : structured)
            for (long long i = 0; i < structured_per_family; ++i) jobs_list.push_back({p, fam, i});
    }

    struct Partial {
        std::map<std::string, long long> verdicts, reasons;
        std::vector<Length7Report::Row> counterexamples;
        std::vector<Length7Report::Row> trials;
    };
    const int nthreads = std::max(1, jobs);
    std::vector<Partial> parts(static_cast<std::size_t>(nthreads));

    auto verdict_name = [](GgVerdict v) {
        switch (v) {
            case GgVerdict::gg_certified: return "gg_certified";
            case GgVerdict::not_gg: return "not_gg";
            default: return "inconclusive";
        }
    };

    auto run_range = [&](int tid) {
        Partial& out = parts[static_cast<std::size_t>(tid)];
        for (std::size_t k = static_cast<std::size_t>(tid); k < jobs_list.size();
             k += static_cast<std::size_t>(nthreads)) {
            const Job& jb = jobs_list[k];
            Rng rng = Rng(seed).fork(jb.prime).fork(jb.family).fork(static_cast<std::uint64_t>(jb.trial));
            PointSet<Fp> z = family_instance(jb.family, rng, jb.prime);
            GgResult res = is_gg_ideal<Fp>(z, {2, 2});
            out.verdicts[verdict_name(res.verdict)]++;
            out.reasons[res.reason]++;
            if (record_trials)
                out.trials.push_back({jb.prime, jb.trial, jb.family, verdict_name(res.verdict),
                                      res.reason, nlohmann::json()});
            if (res.verdict == GgVerdict::gg_certified)
                out.counterexamples.push_back({jb.prime, jb.trial, jb.family,
                                               verdict_name(res.verdict), res.reason,
                                               pointset_to_json(z, jb.prime)});
        }
    };

    if (nthreads == 1) {
        run_range(0);
    } else {
        std::vector<std::thread> pool;
        for (int tid = 0; tid < nthreads; ++tid) pool.emplace_back(run_range, tid);
        for (auto& th : pool) th.join();
    }

    Length7Report report;
    report.seed = seed;
    report.total = static_cast<long long>(jobs_list.size());
    for (const auto& pt : parts) {
        for (const auto& [k, n] : pt.verdicts) report.verdicts[k] += n;
        for (const auto& [k, n] : pt.reasons) report.reasons[k] += n;
        report.counterexamples.insert(report.counterexamples.end(), pt.counterexamples.begin(),
                                      pt.counterexamples.end());
        report.trials.insert(report.trials.end(), pt.trials.begin(), pt.trials.end());
    }
    auto row_order = [](const Length7Report::Row& a, const Length7Report::Row& b) {
        return std::tie(a.prime, a.family, a.trial) < std::tie(b.prime, b.family, b.trial);
    };
    std::sort(report.counterexamples.begin(), report.counterexamples.end(), row_order);
    std::sort(report.trials.begin(), report.trials.end(), row_order);
    return report;
}

/* explicit instantiations for the two scalar fields */
template struct QPoint<Rat>;
template struct QPoint<Fp>;
template struct PointSet<Rat>;
template struct PointSet<Fp>;
template struct LineDivisor<Rat>;
template struct LineDivisor<Fp>;
template Matrix<Rat> eval_matrix<Rat>(const PointSet<Rat>&, Bidegree);
template Matrix<Fp> eval_matrix<Fp>(const PointSet<Fp>&, Bidegree);
template std::array<int, 3> ideal_cohomology<Rat>(const PointSet<Rat>&, Bidegree);
template std::array<int, 3> ideal_cohomology<Fp>(const PointSet<Fp>&, Bidegree);
template bool cayley_bacharach<Rat>(const PointSet<Rat>&, Bidegree);
template bool cayley_bacharach<Fp>(const PointSet<Fp>&, Bidegree);
template PointSet<Rat> residual<Rat>(const PointSet<Rat>&, const LineDivisor<Rat>&);
template PointSet<Fp> residual<Fp>(const PointSet<Fp>&, const LineDivisor<Fp>&);
template PointSet<Rat> intersect_with<Rat>(const PointSet<Rat>&, const LineDivisor<Rat>&);
template PointSet<Fp> intersect_with<Fp>(const PointSet<Fp>&, const LineDivisor<Fp>&);
template std::array<int, 2> curve_ideal_cohomology<Rat>(const LineDivisor<Rat>&, const PointSet<Rat>&, int, int);
template std::array<int, 2> curve_ideal_cohomology<Fp>(const LineDivisor<Fp>&, const PointSet<Fp>&, int, int);
template ResidualCheck residual_sequence_check<Rat>(const PointSet<Rat>&, const LineDivisor<Rat>&, int, int);
template ResidualCheck residual_sequence_check<Fp>(const PointSet<Fp>&, const LineDivisor<Fp>&, int, int);
template QPoint<Rat> random_point<Rat>(Rng&, std::uint64_t);
template QPoint<Fp> random_point<Fp>(Rng&, std::uint64_t);
template PointSet<Rat> random_points<Rat>(int, Rng&, std::uint64_t, const GenOptions&);
template PointSet<Fp> random_points<Fp>(int, Rng&, std::uint64_t, const GenOptions&);
template PointSet<Rat> eight_point_ci<Rat>(Rng&, std::uint64_t);
template PointSet<Fp> eight_point_ci<Fp>(Rng&, std::uint64_t);
template PointSet<Rat> five_on_twisted_curve<Rat>(Rng&, std::uint64_t);
template PointSet<Fp> five_on_twisted_curve<Fp>(Rng&, std::uint64_t);
template PointSet<Rat> six_points_v_condition<Rat>(Rng&, std::uint64_t);
template PointSet<Fp> six_points_v_condition<Fp>(Rng&, std::uint64_t);
template std::pair<PointSet<Rat>, LineDivisor<Rat>> two_line_config<Rat>(int, int, Rng&, std::uint64_t);
template std::pair<PointSet<Fp>, LineDivisor<Fp>> two_line_config<Fp>(int, int, Rng&, std::uint64_t);

}  // namespace qsheaf
