#ifndef QSHEAF_POINTS_HPP
#define QSHEAF_POINTS_HPP

#include "qsheaf/cox.hpp"
#include "qsheaf/matrix.hpp"
#include "qsheaf/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qsheaf {

/* Reduced zero-dimensional subschemes of Q as lists of distinct rational
   points over the active field (Q or F_p), with the evaluation-matrix side
   of the ideal-sheaf story: h^i(I_Z(a,b)), Cayley-Bacharach, residual
   schemes, and the global-generation verdicts of the c1 = (2,2) analysis. */

template <class K>
struct QPoint {
    std::array<K, 2> s{K(0), K(0)}, t{K(0), K(0)};

    // normalizes the leading nonzero coordinate of each factor to 1
    static QPoint make(K s0, K s1, K t0, K t1) {
        QPoint p;
        p.s = normalize(std::move(s0), std::move(s1), "s");
        p.t = normalize(std::move(t0), std::move(t1), "t");
        return p;
    }
    friend bool operator==(const QPoint& x, const QPoint& y) {
        return x.s == y.s && x.t == y.t;
    }

private:
    // keeps the field context of the inputs (matters for F_p elements)
    static std::array<K, 2> normalize(K x0, K x1, const char* which) {
        if (!is_zero(x0)) return {x0 / x0, x1 / x0};
        if (!is_zero(x1)) return {x1 - x1, x1 / x1};
        throw std::invalid_argument(std::string("QPoint: (0,0) is not a point of P^1 (") + which + ")");
    }
};

template <class K>
struct PointSet {
    std::vector<QPoint<K>> pts;

    int degree() const { return static_cast<int>(pts.size()); }
    bool contains(const QPoint<K>& q) const {
        return std::find(pts.begin(), pts.end(), q) != pts.end();
    }
    void add(QPoint<K> q) {
        if (contains(q)) throw std::invalid_argument("PointSet: points must be pairwise distinct");
        pts.push_back(std::move(q));
    }
    PointSet without(std::size_t i) const {
        PointSet z = *this;
        z.pts.erase(z.pts.begin() + static_cast<std::ptrdiff_t>(i));
        return z;
    }
};

/* monomial evaluation: exponents are >= 0 for H^0 bases */
template <class K>
K eval_monomial(const CohBasisEl& el, const QPoint<K>& p) {
    auto pw = [](const K& x, int n) {
        K r(1);
        for (int i = 0; i < n; ++i) r *= x;
        return r;
    };
    return pw(p.s[0], el.e[0]) * pw(p.s[1], el.e[1]) * pw(p.t[0], el.e[2]) * pw(p.t[1], el.e[3]);
}

// rows = points of Z, columns = monomial basis of H^0(O(d))
template <class K>
Matrix<K> eval_matrix(const PointSet<K>& z, Bidegree d) {
    auto basis = coh_basis(0, d);
    Matrix<K> m(z.pts.size(), basis.size());
    for (std::size_t i = 0; i < z.pts.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            m.at(i, j) = eval_monomial(basis[j], z.pts[i]);
    return m;
}

/* h^i(I_Z(d)) from 0 -> I_Z(d) -> O(d) -> O_Z -> 0:
   h^0 = h^0(O(d)) - rk, h^1 = (deg Z - rk) + h^1(O(d)), h^2 = h^2(O(d)). */
template <class K>
std::array<int, 3> ideal_cohomology(const PointSet<K>& z, Bidegree d) {
    int rk = static_cast<int>(eval_matrix(z, d).rank());
    return {h_line(0, d) - rk, z.degree() - rk + h_line(1, d), h_line(2, d)};
}

/* CB(d): every curve of bidegree d through all but one point of Z contains Z.
   Reduced-scheme form: h^0(I_Z(d)) = h^0(I_{Z minus z}(d)) for every z.
   Vacuously true when d has a negative component (no curves at all). */
template <class K>
bool cayley_bacharach(const PointSet<K>& z, Bidegree d) {
    if (d.a < 0 || d.b < 0) return true;
    std::size_t full = eval_matrix(z, d).rank();
    for (std::size_t i = 0; i < z.pts.size(); ++i)
        if (eval_matrix(z.without(i), d).rank() != full) return false;
    return true;
}

/* Effective divisors for the residual-scheme machinery: unions of ruling
   lines ({s = root} has class (1,0), {t = root} has class (0,1)), or a single
   curve given by one form of pure bidegree. */
template <class K>
struct LineDivisor {
    struct Component {
        int ruling = 0;  // 0: {s = root} in |O(1,0)|; 1: {t = root} in |O(0,1)|
        std::array<K, 2> root{K(1), K(0)};
    };
    std::vector<Component> components;
    // alternative: one form of bidegree `form_degree` with coefficients over
    // coh_basis(0, form_degree)
    std::optional<std::vector<K>> form;
    Bidegree form_degree;

    Bidegree bidegree() const {
        if (form) return form_degree;
        Bidegree d{0, 0};
        for (const auto& c : components) (c.ruling == 0 ? d.a : d.b) += 1;
        return d;
    }

    bool contains(const QPoint<K>& p) const {
        if (form) {
            auto basis = coh_basis(0, form_degree);
            K acc(0);
            for (std::size_t j = 0; j < basis.size(); ++j)
                acc += (*form)[j] * eval_monomial(basis[j], p);
            return is_zero(acc);
        }
        for (const auto& c : components) {
            const auto& coord = c.ruling == 0 ? p.s : p.t;
            // (x0:x1) == (r0:r1) iff x0 r1 - x1 r0 = 0
            if (is_zero(coord[0] * c.root[1] - coord[1] * c.root[0])) return true;
        }
        return false;
    }

    // evaluation vector of the defining form of the divisor over coh_basis(0, bidegree())
    std::vector<K> defining_form() const;
};

// points of Z not lying on D (reduced schemes: residual = complement)
template <class K>
PointSet<K> residual(const PointSet<K>& z, const LineDivisor<K>& d) {
    PointSet<K> out;
    for (const auto& p : z.pts)
        if (!d.contains(p)) out.pts.push_back(p);
    return out;
}

template <class K>
PointSet<K> intersect_with(const PointSet<K>& z, const LineDivisor<K>& d) {
    PointSet<K> out;
    for (const auto& p : z.pts)
        if (d.contains(p)) out.pts.push_back(p);
    return out;
}

/* Checks on the residual exact sequence
   0 -> I_{Res_D(Z)}(m-u, n-v) -> I_Z(m,n) -> I_{Z cap D, D}(m,n) -> 0:
   the chi identity and the h^1 surjectivity bound, on the given instance. */
struct ResidualCheck {
    bool chi_identity = false;
    bool h1_bound = false;
    int h1_total = 0, h1_residual = 0, h1_trace = 0;
    bool ok() const { return chi_identity && h1_bound; }
};

template <class K>
ResidualCheck residual_sequence_check(const PointSet<K>& z, const LineDivisor<K>& d, int m, int n);

// h^i(D, I_{W,D}(m,n)) for W = points on D, via restriction from Q
template <class K>
std::array<int, 2> curve_ideal_cohomology(const LineDivisor<K>& d, const PointSet<K>& w, int m, int n);

/* Global generation of I_Z(d), d >= (0,0).  gg_certified comes from the
   Castelnuovo-Mumford-type vanishings (the ruling-regularity route, field independent
   for rational data) or from the direct test: cotangent surjectivity at each
   z plus an empty off-Z base locus over the active field and, for rational
   input, over the configured certification primes. */
enum class GgVerdict { gg_certified, not_gg, inconclusive };

struct GgOptions {
    std::vector<std::uint64_t> certification_primes{89, 97, 101, 103, 107, 109, 113};
    std::size_t primes_required = 3;
    std::uint64_t full_scan_bound = 101;
    bool try_regularity_first = true;
};

struct GgResult {
    GgVerdict verdict = GgVerdict::inconclusive;
    std::string reason;
};

template <class K>
GgResult is_gg_ideal(const PointSet<K>& z, Bidegree d, const GgOptions& opts = {});
template <> GgResult is_gg_ideal<Rat>(const PointSet<Rat>& z, Bidegree d, const GgOptions& opts);
template <> GgResult is_gg_ideal<Fp>(const PointSet<Fp>& z, Bidegree d, const GgOptions& opts);

/* point-set JSON: {"field":"Q"|"Fp:<p>", "points":[[[s0,s1],[t0,t1]],...]} */
nlohmann::json pointset_to_json(const PointSet<Rat>& z);
nlohmann::json pointset_to_json(const PointSet<Fp>& z, std::uint64_t p);
PointSet<Rat> pointset_rat_from_json(const nlohmann::json& j);
PointSet<Fp> pointset_fp_from_json(const nlohmann::json& j, std::uint64_t* p_out = nullptr);

/* ---- seeded generators ---- */

struct GenOptions {
    bool distinct_s = false;  // at most one point per {s = const} ruling line
    bool distinct_t = false;
};

template <class K> QPoint<K> random_point(Rng& rng, std::uint64_t p = 0);
template <class K>
PointSet<K> random_points(int n, Rng& rng, std::uint64_t p = 0, const GenOptions& = {});

// 8 rational points forming a complete intersection of two (2,2) curves:
// 7 general points plus the eighth base point of their pencil
template <class K> PointSet<K> eight_point_ci(Rng& rng, std::uint64_t p = 0);

// 5 points on a smooth rational curve of bidegree (1,2)
template <class K> PointSet<K> five_on_twisted_curve(Rng& rng, std::uint64_t p = 0);

// 6 points with h^0(I_Z(1,2)) = h^0(I_Z(2,1)) = 0 (the V-condition)
template <class K> PointSet<K> six_points_v_condition(Rng& rng, std::uint64_t p = 0);

// configuration on L1 u L2 for the residual checks; respects the per-line caps
template <class K>
std::pair<PointSet<K>, LineDivisor<K>> two_line_config(int deg_total, int max_per_line,
                                                       Rng& rng, std::uint64_t p = 0);

/* ---- degree-7 exclusion search ---- */

struct Length7Report {
    struct Row {
        std::uint64_t prime = 0;
        long long trial = 0;
        std::string family;
        std::string verdict;
        std::string reason;
        nlohmann::json points;
    };
    long long total = 0;
    std::map<std::string, long long> verdicts;     // verdict -> count
    std::map<std::string, long long> reasons;      // reason -> count
    std::vector<Row> counterexamples;              // gg_certified rows, expected empty
    std::vector<Row> trials;                       // per-trial rows when recorded
    std::uint64_t seed = 0;

    bool clean() const { return counterexamples.empty(); }
    nlohmann::json to_json() const;
    // one JSON object per line: seed, prime, family, trial, verdict, reason
    void write_jsonl(std::ostream& out) const;
};

Length7Report length7_search(long long random_trials_per_prime, std::uint64_t seed,
                             int jobs = 1,
                             std::vector<std::uint64_t> primes = {10007, 31337},
                             long long structured_per_family = 200,
                             bool record_trials = false);

}  // namespace qsheaf

#endif
