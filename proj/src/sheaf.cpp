#include "qsheaf/sheaf.hpp"

#include <algorithm>
#include <stdexcept>

namespace qsheaf {

namespace {

void check(bool cond, const char* msg) {
    if (!cond) throw std::runtime_error(msg);
}

int h_sum(const std::vector<Bidegree>& parts, int degree, Bidegree twist) {
    int n = 0;
    for (auto d : parts) n += h_line(degree, d + twist);
    return n;
}

/* Block-diagonal multiplication by one form on a sum of line bundles,
   H^d(+O(d_i + from)) -> H^d(+O(d_i + from + deg f)). */
Matrix<Rat> blockdiag_mult(const std::vector<Bidegree>& parts, int degree,
                           Bidegree from, const BiForm& f) {
    int rows = 0, cols = 0;
    for (auto d : parts) {
        rows += h_line(degree, d + from + f.degree());
        cols += h_line(degree, d + from);
    }
    Matrix<Rat> m(rows, cols);
    int r0 = 0, c0 = 0;
    for (auto d : parts) {
        Matrix<Rat> blk = mult_matrix(f, degree, d + from);
        m.insert_block(r0, c0, blk);
        r0 += static_cast<int>(blk.rows());
        c0 += static_cast<int>(blk.cols());
    }
    return m;
}

}  // namespace

int SheafHandle::h_left(int degree, int s, int t) const {
    if (!p_.kernel_side()) return h_sum(p_.source().parts, degree, {s, t});
    std::vector<Bidegree> duals;
    for (auto d : p_.target().parts) duals.push_back(-d);
    return h_sum(duals, degree, {s, t});
}

int SheafHandle::h_right(int degree, int s, int t) const {
    if (!p_.kernel_side()) return h_sum(p_.target().parts, degree, {s, t});
    std::vector<Bidegree> duals;
    for (auto d : p_.source().parts) duals.push_back(-d);
    return h_sum(duals, degree, {s, t});
}

Matrix<Rat> SheafHandle::les_map(int degree, int s, int t) const {
    const auto& src = p_.source().parts;
    const auto& tgt = p_.target().parts;
    const Bidegree tw{s, t};
    if (!p_.kernel_side()) {
        // H^d(A(s,t)) -> H^d(B(s,t)), block (i,j) = mult by entry (i,j)
        Matrix<Rat> m(h_sum(tgt, degree, tw), h_sum(src, degree, tw));
        int r0 = 0;
        for (std::size_t i = 0; i < tgt.size(); ++i) {
            int rows = h_line(degree, tgt[i] + tw);
            int c0 = 0;
            for (std::size_t j = 0; j < src.size(); ++j) {
                int cols = h_line(degree, src[j] + tw);
                const BiForm& f = p_.entry(i, j);
                if (!f.is_zero() && rows && cols)
                    m.insert_block(r0, c0, mult_matrix(f, degree, src[j] + tw));
                c0 += cols;
            }
            r0 += rows;
        }
        return m;
    }
    // H^d(B^v(s,t)) -> H^d(A^v(s,t)), block (j,i) = mult by entry (i,j)
    std::vector<Bidegree> bd, ad;
    for (auto d : tgt) bd.push_back(-d);
    for (auto d : src) ad.push_back(-d);
    Matrix<Rat> m(h_sum(ad, degree, tw), h_sum(bd, degree, tw));
    int r0 = 0;
    for (std::size_t j = 0; j < ad.size(); ++j) {
        int rows = h_line(degree, ad[j] + tw);
        int c0 = 0;
        for (std::size_t i = 0; i < bd.size(); ++i) {
            int cols = h_line(degree, bd[i] + tw);
            const BiForm& f = p_.entry(i, j);
            if (!f.is_zero() && rows && cols)
                m.insert_block(r0, c0, mult_matrix(f, degree, bd[i] + tw));
            c0 += cols;
        }
        r0 += rows;
    }
    return m;
}

std::array<int, 3> SheafHandle::cohomology(int s, int t) {
    auto it = cache_.find({s, t});
    if (it != cache_.end()) return it->second;

    int r[3];
    for (int d = 0; d < 3; ++d) r[d] = static_cast<int>(les_map(d, s, t).rank());

    std::array<int, 3> h{};
    if (!p_.kernel_side()) {
        // 0 -> H0A -> H0B -> H0E -> H1A -> H1B -> H1E -> H2A -> H2B -> H2E -> 0
        check(r[0] == h_left(0, s, t), "cohomology: H^0(A) -> H^0(B) not injective; presentation violates the injectivity invariant");
        h[0] = h_right(0, s, t) - r[0] + (h_left(1, s, t) - r[1]);
        h[1] = h_right(1, s, t) - r[1] + (h_left(2, s, t) - r[2]);
        h[2] = h_right(2, s, t) - r[2];
        ChernData c = twist_chern(chern(p_), s, t);
        check(h[0] - h[1] + h[2] == euler_char(c), "cohomology: LES dimensions violate Riemann-Roch");
    } else {
        // 0 -> H0E -> H0Bv -> H0Av -> H1E -> H1Bv -> H1Av -> H2E -> H2Bv -> H2Av -> 0
        h[0] = h_left(0, s, t) - r[0];
        h[1] = h_right(0, s, t) - r[0] + (h_left(1, s, t) - r[1]);
        h[2] = h_right(1, s, t) - r[1] + (h_left(2, s, t) - r[2]);
        check(r[2] == h_right(2, s, t), "cohomology: H^2(B^v) -> H^2(A^v) not surjective");
    }
    cache_[{s, t}] = h;
    return h;
}

bool gg_castelnuovo_mumford(SheafHandle& h) {
    return h.h(1, -1, -1) == 0 && h.h(2, -2, -2) == 0;
}

bool gg_ruling_regularity(SheafHandle& h) {
    return h.h(1, -1, 0) == 0 && h.h(1, 0, -1) == 0 && h.h(2, -1, -1) == 0;
}

bool gg_quotient_route(const Presentation& p) {
    if (p.kernel_side()) return false;
    for (auto d : p.target().parts)
        if (d.a < 0 || d.b < 0) return false;
    return true;
}

bool trivial_factor_test(SheafHandle& h, GgCertified) {
    SheafHandle dual_h(dual(h.presentation()));
    return dual_h.h(0, 0, 0) > 0;
}

bool is_maximal_type_shape(const Presentation& p) {
    if (p.kernel_side() || p.source().size() != 1) return false;
    for (auto d : p.target().parts)
        if (!(d == Bidegree{0, 0})) return false;
    Bidegree a = -p.source().parts[0];
    return a.a >= 0 && a.b >= 0 && h_line(1, -a) == 0;
}

bool indecomposable_maximal_type(SheafHandle& h) {
    if (!is_maximal_type_shape(h.presentation()))
        throw std::invalid_argument("indecomposable_maximal_type: presentation is not of maximal-type shape");
    int r = h.presentation().rank();
    if (h.h(0, 0, 0) != r + 1) return false;
    return !trivial_factor_test(h, GgCertified::yes);
}

std::vector<Bidegree> index_search(SheafHandle& h, Bidegree bound) {
    if (bound.a < 0 || bound.b < 0)
        throw std::invalid_argument("index_search: empty window");
    std::vector<Bidegree> nonzero;
    for (int m = -bound.a; m <= bound.a; ++m)
        for (int n = -bound.b; n <= bound.b; ++n)
            if (h.h(0, -m, -n) != 0) nonzero.push_back({m, n});
    std::vector<Bidegree> maximal;
    for (auto x : nonzero) {
        bool dominated = false;
        for (auto y : nonzero)
            if (!(x == y) && x.leq(y)) { dominated = true; break; }
        if (!dominated) maximal.push_back(x);
    }
    std::sort(maximal.begin(), maximal.end(), BidegreeLess{});
    return maximal;
}

/* ---------- extension machinery ---------- */

namespace {

// echelonized column space with canonical projection onto the complement rows
struct CokerModel {
    std::vector<std::vector<Rat>> echelon;  // columns, each with leading 1 at pivot row
    std::vector<std::size_t> pivot_rows;
    std::vector<std::size_t> coker_rows;
    std::size_t ambient = 0;

    static CokerModel of_columns(const Matrix<Rat>& m) {
        CokerModel c;
        c.ambient = m.rows();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::vector<Rat> v(m.rows());
            for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m.at(i, j);
            c.absorb(std::move(v));
        }
        std::vector<bool> piv(c.ambient, false);
        for (auto r : c.pivot_rows) piv[r] = true;
        for (std::size_t r = 0; r < c.ambient; ++r)
            if (!piv[r]) c.coker_rows.push_back(r);
        return c;
    }

    // reduce v modulo the column space; result is supported on coker rows
    std::vector<Rat> reduce(std::vector<Rat> v) const {
        for (std::size_t k = 0; k < echelon.size(); ++k) {
            const Rat& c = v[pivot_rows[k]];
            if (c == 0) continue;
            Rat f = c;
            for (std::size_t i = 0; i < ambient; ++i) v[i] -= f * echelon[k][i];
        }
        return v;
    }

    std::vector<Rat> project(const std::vector<Rat>& v) const {
        auto red = reduce(v);
        std::vector<Rat> out(coker_rows.size());
        for (std::size_t k = 0; k < coker_rows.size(); ++k) out[k] = red[coker_rows[k]];
        return out;
    }

private:
    void absorb(std::vector<Rat> v) {
        v = reduce(std::move(v));
        std::size_t lead = ambient;
        for (std::size_t i = 0; i < ambient; ++i)
            if (v[i] != 0) { lead = i; break; }
        if (lead == ambient) return;
        Rat inv = Rat(1) / v[lead];
        for (auto& x : v) x *= inv;
        // keep earlier vectors reduced against the new one
        for (std::size_t k = 0; k < echelon.size(); ++k) {
            Rat c = echelon[k][lead];
            if (c == 0) continue;
            for (std::size_t i = 0; i < ambient; ++i) echelon[k][i] -= c * v[i];
        }
        echelon.push_back(std::move(v));
        pivot_rows.push_back(lead);
        // maintain sorted order for determinism of coker_rows only; pivots stay as found
    }
};

// split a vector over +H^0(O(-a_j)) into one BiForm per source summand
std::vector<BiForm> vector_to_row(const std::vector<Rat>& w, const LineBundleSum& source) {
    std::vector<BiForm> row;
    std::size_t off = 0;
    for (auto a : source.parts) {
        Bidegree d = -a;
        auto basis = coh_basis(0, d);
        BiForm f = (d.a >= 0 && d.b >= 0) ? BiForm(d) : BiForm({0, 0});
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (w[off + k] != 0)
                f.set_coeff(basis[k].e[0], basis[k].e[2], f.coeff(basis[k].e[0], basis[k].e[2]) + w[off + k]);
        row.push_back(std::move(f));
        off += basis.size();
    }
    return row;
}

}  // namespace

ExtClassSpace ext1_trivial(const Presentation& p) {
    if (p.kernel_side()) throw std::invalid_argument("ext1_trivial: cokernel-side presentations only");
    SheafHandle dh(dual(p));
    ExtClassSpace e;
    e.v0 = dh.les_map(0, 0, 0);
    Matrix<Rat> v1 = dh.les_map(1, 0, 0);
    int hA0 = dh.h_right(0, 0, 0);
    int r0 = static_cast<int>(e.v0.rank());
    int ker1 = dh.h_left(1, 0, 0) - static_cast<int>(v1.rank());
    e.dim_realizable = hA0 - r0;
    e.dim = e.dim_realizable + ker1;
    e.coker_rows = CokerModel::of_columns(e.v0).coker_rows;
    return e;
}

ExtensionResult extension_by_trivial(const Presentation& p, int k,
                                     const std::vector<std::vector<Rat>>& classes) {
    if (k < 1) throw std::invalid_argument("extension_by_trivial: k >= 1 required");
    if (static_cast<int>(classes.size()) != k)
        throw std::invalid_argument("extension_by_trivial: class count != k");
    ExtClassSpace e = ext1_trivial(p);
    for (const auto& c : classes) {
        if (static_cast<int>(c.size()) != e.dim)
            throw std::invalid_argument("extension_by_trivial: class vector length != h^1(E^v)");
        for (int i = e.dim_realizable; i < e.dim; ++i)
            if (c[i] != 0)
                throw std::invalid_argument(
                    "extension_by_trivial: class has a component mapping into H^1(B^v); "
                    "not realizable as a row over this presentation");
    }

    // independence of the realizable parts
    Matrix<Rat> cls(static_cast<std::size_t>(e.dim_realizable), classes.size());
    for (std::size_t j = 0; j < classes.size(); ++j)
        for (int i = 0; i < e.dim_realizable; ++i) cls.at(i, j) = classes[j][i];
    bool independent = cls.rank() == classes.size();

    LineBundleSum tgt = p.target();
    std::vector<std::vector<BiForm>> m = p.matrix();
    const int hA0 = static_cast<int>(e.v0.rows());
    for (const auto& c : classes) {
        std::vector<Rat> w(static_cast<std::size_t>(hA0), Rat(0));
        for (int i = 0; i < e.dim_realizable; ++i) w[e.coker_rows[i]] = c[i];
        m.push_back(vector_to_row(w, p.source()));
        tgt.parts.push_back({0, 0});
    }
    Presentation out(p.source(), std::move(tgt), std::move(m), p.locally_free(), p.seed());
    ChernData before = chern(p), after = chern(out);
    check(after.r == before.r + k && after.c1 == before.c1 && after.c2 == before.c2,
          "extension_by_trivial: Chern data not preserved");
    return {std::move(out), independent};
}

ExtensionResult extension_by_trivial(const Presentation& p, int k, Rng rng) {
    ExtClassSpace e = ext1_trivial(p);
    if (k > e.dim_realizable)
        throw std::invalid_argument("extension_by_trivial: k exceeds the realizable part of h^1(E^v) = " +
                                    std::to_string(e.dim_realizable));
    for (int attempt = 0; attempt < 16; ++attempt) {
        std::vector<std::vector<Rat>> classes;
        for (int j = 0; j < k; ++j) {
            std::vector<Rat> c(static_cast<std::size_t>(e.dim), Rat(0));
            for (int i = 0; i < e.dim_realizable; ++i) c[i] = Rat(rng.uniform(-9, 9));
            classes.push_back(std::move(c));
        }
        ExtensionResult r = extension_by_trivial(p, k, classes);
        if (r.classes_independent) return r;
    }
    throw std::runtime_error("extension_by_trivial: could not draw independent classes");
}

Presentation extension_of(const Presentation& pq, const Presentation& ps,
                          const std::vector<std::vector<BiForm>>& class_data) {
    if (pq.kernel_side() || ps.kernel_side())
        throw std::invalid_argument("extension_of: cokernel-side presentations only");
    if (!pq.locally_free() || !ps.locally_free())
        throw std::invalid_argument("extension_of: both cokernels must be asserted locally free");
    if (class_data.size() != ps.target().size())
        throw std::invalid_argument("extension_of: class data must have |B_s| rows");
    for (const auto& row : class_data)
        if (row.size() != pq.source().size())
            throw std::invalid_argument("extension_of: class data must have |A_q| columns");

    LineBundleSum src, tgt;
    src.parts = ps.source().parts;
    src.parts.insert(src.parts.end(), pq.source().parts.begin(), pq.source().parts.end());
    tgt.parts = ps.target().parts;
    tgt.parts.insert(tgt.parts.end(), pq.target().parts.begin(), pq.target().parts.end());

    const std::size_t ns = ps.source().size(), nt = ps.target().size();
    std::vector<std::vector<BiForm>> m(tgt.size(), std::vector<BiForm>(src.parts.size(), BiForm({0, 0})));
    for (std::size_t i = 0; i < tgt.size(); ++i)
        for (std::size_t j = 0; j < src.parts.size(); ++j) {
            Bidegree want = tgt.parts[i] - src.parts[j];
            if (want.a >= 0 && want.b >= 0) m[i][j] = BiForm::zero(want);
        }
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < ns; ++j) m[i][j] = ps.entry(i, j);
    for (std::size_t i = 0; i < pq.target().size(); ++i)
        for (std::size_t j = 0; j < pq.source().size(); ++j) m[nt + i][ns + j] = pq.entry(i, j);
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < pq.source().size(); ++j) m[i][ns + j] = class_data[i][j];

    Presentation out(std::move(src), std::move(tgt), std::move(m), true,
                     pq.seed() ^ ps.seed());
    ChernData cq = chern(pq), cs = chern(ps), ce = chern(out);
    check(ce.r == cq.r + cs.r && ce.c1 == cq.c1 + cs.c1 &&
              ce.c2 == cq.c2 + cs.c2 + intersect(cq.c1, cs.c1),
          "extension_of: Chern additivity failed");
    return out;
}

Presentation extension_of_generic(const Presentation& pq, const Presentation& ps, Rng rng) {
    std::vector<std::vector<BiForm>> cd(ps.target().size(),
                                        std::vector<BiForm>(pq.source().size(), BiForm({0, 0})));
    for (std::size_t i = 0; i < ps.target().size(); ++i)
        for (std::size_t j = 0; j < pq.source().size(); ++j) {
            Bidegree want = ps.target().parts[i] - pq.source().parts[j];
            if (want.a >= 0 && want.b >= 0) cd[i][j] = BiForm::random(want, rng);
        }
    return extension_of(pq, ps, cd);
}

bool extension_is_split_class(const Presentation& pq, const Presentation& ps,
                              const std::vector<std::vector<BiForm>>& class_data) {
    CohomologyModel sm(ps);
    // Hom(A_q, S) coordinates of the class data column by column
    std::vector<int> hom_aq_dims;
    std::vector<Rat> target_vec;
    for (std::size_t j = 0; j < pq.source().size(); ++j) {
        Bidegree tw = -pq.source().parts[j];
        TwistModel tm = sm.model(0, tw);
        hom_aq_dims.push_back(tm.dim());
        // section pi(N_j) as a vector over H^0(B_s(tw)), then its model coords
        std::vector<Rat> v;
        for (std::size_t i = 0; i < ps.target().size(); ++i) {
            auto basis = coh_basis(0, ps.target().parts[i] + tw);
            const BiForm& f = class_data[i][j];
            for (const auto& el : basis) {
                Rat c = f.is_zero() ? Rat(0) : f.coeff(el.e[0], el.e[2]);
                v.push_back(c);
            }
        }
        auto coords = sm.project_h0_section(tw, v);
        target_vec.insert(target_vec.end(), coords.begin(), coords.end());
    }
    // map Hom(B_q, S) -> Hom(A_q, S), block (j,i) = mult by (M_q)_{ij}
    int rows = 0, cols = 0;
    for (auto d : hom_aq_dims) rows += d;
    std::vector<int> hom_bq_dims;
    for (std::size_t i = 0; i < pq.target().size(); ++i) {
        hom_bq_dims.push_back(sm.model(0, -pq.target().parts[i]).dim());
        cols += hom_bq_dims.back();
    }
    Matrix<Rat> u(rows, cols);
    int c0 = 0;
    for (std::size_t i = 0; i < pq.target().size(); ++i) {
        int r0 = 0;
        for (std::size_t j = 0; j < pq.source().size(); ++j) {
            const BiForm& f = pq.entry(i, j);
            if (!f.is_zero())
                u.insert_block(r0, c0, sm.induced_mult(0, -pq.target().parts[i], f));
            r0 += hom_aq_dims[j];
        }
        c0 += hom_bq_dims[i];
    }
    return u.in_column_span(target_vec);
}

/* ---------- cohomology with representatives ---------- */

struct CohomologyModel::TwistData {
    TwistModel tm;
    CokerModel coker;                       // of phi_d columns
    std::vector<std::vector<Rat>> kernel;   // RREF kernel basis of phi_{d+1}
    std::vector<std::size_t> free_cols;     // coordinate positions of the kernel basis
};

CohomologyModel::CohomologyModel(Presentation p) : p_(std::move(p)) {
    if (p_.kernel_side())
        throw std::invalid_argument("CohomologyModel: cokernel-side presentations only");
}

CohomologyModel::TwistData& CohomologyModel::data(int degree, Bidegree twist) {
    auto key = std::make_pair(degree, std::make_pair(twist.a, twist.b));
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;

    SheafHandle h(p_);
    auto td = std::make_shared<TwistData>();
    Matrix<Rat> phi_d = h.les_map(degree, twist.a, twist.b);
    td->coker = CokerModel::of_columns(phi_d);
    td->tm.degree = degree;
    td->tm.twist = twist;
    td->tm.dim_coker = static_cast<int>(td->coker.coker_rows.size());
    if (degree < 2) {
        Matrix<Rat> phi_next = h.les_map(degree + 1, twist.a, twist.b);
        auto kb = phi_next.kernel_with_coords();
        td->kernel = std::move(kb.vectors);
        td->free_cols = std::move(kb.free_cols);
    }
    td->tm.dim_ker = static_cast<int>(td->kernel.size());
    auto [h0, h1, h2] = h.cohomology(twist.a, twist.b);
    int want = degree == 0 ? h0 : degree == 1 ? h1 : h2;
    check(td->tm.dim() == want, "CohomologyModel: model dimension != LES dimension");
    cache_[key] = td;
    return *td;
}

TwistModel CohomologyModel::model(int degree, Bidegree twist) {
    return data(degree, twist).tm;
}

std::vector<Rat> CohomologyModel::project_h0_section(Bidegree twist, const std::vector<Rat>& v) {
    TwistData& td = data(0, twist);
    auto coords = td.coker.project(v);
    coords.resize(static_cast<std::size_t>(td.tm.dim()), Rat(0));  // kernel part is zero
    return coords;
}

Matrix<Rat> CohomologyModel::induced_mult(int degree, Bidegree from, const BiForm& f) {
    TwistData& sd = data(degree, from);
    Bidegree to = from + f.degree();
    TwistData& td = data(degree, to);
    Matrix<Rat> out(static_cast<std::size_t>(td.tm.dim()), static_cast<std::size_t>(sd.tm.dim()));
    if (f.is_zero()) return out;
    if (sd.tm.dim_ker > 0 && td.tm.dim_coker > 0)
        throw InterferenceError(
            "induced_mult: connecting-term interference at degree " + std::to_string(degree) +
            ", twist " + from.str() + " -> " + to.str() +
            "; the LES-coordinate model cannot represent this map");

    if (sd.tm.dim_coker > 0 && td.tm.dim_coker > 0) {
        Matrix<Rat> bd = blockdiag_mult(p_.target().parts, degree, from, f);
        for (int k = 0; k < sd.tm.dim_coker; ++k) {
            std::vector<Rat> lift(bd.cols(), Rat(0));
            lift[sd.coker.coker_rows[k]] = Rat(1);
            auto coords = td.coker.project(bd.apply(lift));
            for (int i = 0; i < td.tm.dim_coker; ++i) out.at(i, k) = coords[i];
        }
    }
    if (sd.tm.dim_ker > 0 && td.tm.dim_ker > 0) {
        Matrix<Rat> bd = blockdiag_mult(p_.source().parts, degree + 1, from, f);
        for (int k = 0; k < sd.tm.dim_ker; ++k) {
            auto w = bd.apply(sd.kernel[k]);
            std::vector<Rat> coords(td.kernel.size(), Rat(0));
            for (std::size_t m = 0; m < td.kernel.size(); ++m) coords[m] = w[td.free_cols[m]];
            // the image must be exactly this combination of target kernel vectors
            std::vector<Rat> recon(w.size(), Rat(0));
            for (std::size_t m = 0; m < td.kernel.size(); ++m)
                for (std::size_t i = 0; i < w.size(); ++i)
                    recon[i] += coords[m] * td.kernel[m][i];
            check(recon == w, "induced_mult: multiplication left the kernel");
            for (std::size_t m = 0; m < td.kernel.size(); ++m)
                out.at(td.tm.dim_coker + m, sd.tm.dim_coker + k) = coords[m];
        }
    }
    return out;
}

std::array<int, 3> hom_cohomology(const Presentation& pf, const Presentation& pg,
                                  int s, int t) {
    if (!pf.locally_free())
        throw std::invalid_argument("hom_cohomology: coker(F) must be asserted locally free");
    if (pf.kernel_side() || pg.kernel_side())
        throw std::invalid_argument("hom_cohomology: cokernel-side presentations only");

    CohomologyModel gm(pg);
    const auto& bf = pf.target().parts;
    const auto& af = pf.source().parts;
    const Bidegree tw{s, t};

    int hB[3] = {0, 0, 0}, hA[3] = {0, 0, 0}, rk[3] = {0, 0, 0};
    for (int d = 0; d < 3; ++d) {
        std::vector<int> bdims, adims;
        for (auto b : bf) bdims.push_back(gm.model(d, tw - b).dim());
        for (auto a : af) adims.push_back(gm.model(d, tw - a).dim());
        for (int x : bdims) hB[d] += x;
        for (int x : adims) hA[d] += x;
        Matrix<Rat> u(static_cast<std::size_t>(hA[d]), static_cast<std::size_t>(hB[d]));
        int c0 = 0;
        for (std::size_t i = 0; i < bf.size(); ++i) {
            int r0 = 0;
            for (std::size_t j = 0; j < af.size(); ++j) {
                const BiForm& f = pf.entry(i, j);
                if (!f.is_zero()) u.insert_block(r0, c0, gm.induced_mult(d, tw - bf[i], f));
                r0 += adims[j];
            }
            c0 += bdims[i];
        }
        rk[d] = static_cast<int>(u.rank());
    }

    std::array<int, 3> h{};
    h[0] = hB[0] - rk[0];
    h[1] = (hA[0] - rk[0]) + (hB[1] - rk[1]);
    h[2] = (hA[1] - rk[1]) + (hB[2] - rk[2]);
    check(rk[2] == hA[2], "hom_cohomology: H^2 tail map not surjective");

    ChernData expect = twist_chern(tensor_chern(dual_chern(chern(pf)), chern(pg)), s, t);
    check(h[0] - h[1] + h[2] == euler_char(expect),
          "hom_cohomology: dimensions violate Riemann-Roch for F^v (x) G");
    return h;
}

}  // namespace qsheaf
