#include "support/cech_oracle.hpp"

#include "qsheaf/matrix.hpp"

#include <array>
#include <map>
#include <stdexcept>

namespace qsheaf::testsupport {

namespace {

/* One Laurent multidegree (e0,e1,e2,e3), e0+e1 = a, e2+e3 = b.  Chart
   presence: V0 needs e1 >= 0, V1 needs e0 >= 0 on the s factor (monomial
   regular there), likewise W0/W1 on the t factor.  The cell complex is
   Tot(Cs (x) Ct) with Cs: [V0 (+) V1] -> [V01]. */
struct Cell {
    std::array<int, 4> e;
    bool s0, s1, t0, t1;  // chart presence

    explicit Cell(const std::array<int, 4>& exps)
        : e(exps), s0(exps[1] >= 0), s1(exps[0] >= 0), t0(exps[3] >= 0), t1(exps[2] >= 0) {}

    // T^0 components: (alpha, beta) with alpha in {V0,V1}, beta in {W0,W1}
    std::vector<std::pair<int, int>> t0_components() const {
        std::vector<std::pair<int, int>> out;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                if ((a == 0 ? s0 : s1) && (b == 0 ? t0 : t1)) out.push_back({a, b});
        return out;
    }
    // T^1 components: s-edge x chart beta, then chart alpha x t-edge
    std::vector<std::pair<int, int>> t1_components() const {
        std::vector<std::pair<int, int>> out;
        for (int b = 0; b < 2; ++b)
            if (b == 0 ? t0 : t1) out.push_back({-1, b});
        for (int a = 0; a < 2; ++a)
            if (a == 0 ? s0 : s1) out.push_back({a, -1});
        return out;
    }
    int t2_dim() const { return 1; }

    Matrix<Rat> d0() const {
        auto rows = t1_components();
        auto cols = t0_components();
        Matrix<Rat> m(rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) {
                auto [ra, rb] = rows[i];
                auto [ca, cb] = cols[j];
                if (ra == -1 && rb == cb) m.at(i, j) = Rat(ca == 1 ? 1 : -1);  // u_{1b} - u_{0b}
                if (rb == -1 && ra == ca) m.at(i, j) = Rat(cb == 1 ? 1 : -1);  // u_{a1} - u_{a0}
            }
        return m;
    }

    Matrix<Rat> d1() const {
        auto cols = t1_components();
        Matrix<Rat> m(1, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            auto [a, b] = cols[j];
            if (a == -1) m.at(0, j) = Rat(b == 1 ? 1 : -1);   // dt of the s-edge part
            else m.at(0, j) = Rat(a == 1 ? -1 : 1);           // -ds of the t-edge part
        }
        return m;
    }

    std::array<int, 3> cohomology_dims() const {
        Matrix<Rat> m0 = d0(), m1 = d1();
        int r0 = static_cast<int>(m0.rank()), r1 = static_cast<int>(m1.rank());
        int c0 = static_cast<int>(m0.cols()), c1 = static_cast<int>(m1.cols());
        return {c0 - r0, (c1 - r1) - r0, 1 - r1};
    }
};

int window_for(Bidegree d) { return std::abs(d.a) + std::abs(d.b) + 4; }

/* cochain of fixed total degree: cell exponents -> component vector */
struct Cochain {
    int degree = 0;
    Bidegree bundle;
    std::map<std::array<int, 4>, std::vector<Rat>> cells;

    void add(const std::array<int, 4>& e, std::size_t comp, const Rat& v, std::size_t ncomp) {
        if (v == 0) return;
        auto& vec = cells[e];
        if (vec.empty()) vec.assign(ncomp, Rat(0));
        vec[comp] += v;
    }
};

std::size_t ncomp_of(const Cell& c, int degree) {
    switch (degree) {
        case 0: return c.t0_components().size();
        case 1: return c.t1_components().size();
        default: return 1;
    }
}

/* canonical cocycle of one basis monomial: constant on every present component */
void add_basis_cocycle(Cochain& out, const std::array<int, 4>& e, const Rat& coeff) {
    Cell c(e);
    std::size_t n = ncomp_of(c, out.degree);
    for (std::size_t k = 0; k < n; ++k) out.add(e, k, coeff, n);
}

/* class of a cocycle in one cell: solve  v = lambda * r + d(prev)  where r is
   the canonical basis cocycle of the cell (when the cell carries cohomology) */
Rat reduce_cell(int degree, Bidegree target, const std::array<int, 4>& e,
                const std::vector<Rat>& v) {
    Cell c(e);
    bool carries = coh_basis_index(degree, target, e).has_value();
    std::vector<std::vector<Rat>> gen_cols;
    if (carries) {
        std::vector<Rat> r(ncomp_of(c, degree), Rat(1));
        gen_cols.push_back(r);
    }
    Matrix<Rat> prev = degree == 1 ? c.d0() : degree == 2 ? c.d1() : Matrix<Rat>(v.size(), 0);
    Matrix<Rat> sys(v.size(), gen_cols.size() + prev.cols());
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < gen_cols.size(); ++j) sys.at(i, j) = gen_cols[j][i];
        for (std::size_t j = 0; j < prev.cols(); ++j) sys.at(i, gen_cols.size() + j) = prev.at(i, j);
    }
    auto sol = sys.solve(v);
    if (!sol) throw std::runtime_error("cech oracle: cocycle not reducible, differential bookkeeping broken");
    return carries ? (*sol)[0] : Rat(0);
}

}  // namespace

int cech_h_line(int degree, Bidegree d) {
    if (degree < 0 || degree > 2) throw std::invalid_argument("cech_h_line: degree 0..2");
    const int n = window_for(d);
    long long total = 0;
    for (int e0 = -n; e0 <= n; ++e0)
        for (int e2 = -n; e2 <= n; ++e2) {
            Cell c(std::array<int, 4>{e0, d.a - e0, e2, d.b - e2});
            total += c.cohomology_dims()[static_cast<std::size_t>(degree)];
        }
    return static_cast<int>(total);
}

CohClass cech_mult(const BiForm& f, const CohClass& cls) {
    const Bidegree target = cls.bundle + f.degree();
    const auto src_basis = coh_basis(cls.degree, cls.bundle);
    if (cls.coords.size() != src_basis.size())
        throw std::invalid_argument("cech_mult: coordinate length mismatch");

    // product cochain, cell by cell
    Cochain prod;
    prod.degree = cls.degree;
    prod.bundle = target;
    for (std::size_t k = 0; k < src_basis.size(); ++k) {
        if (cls.coords[k] == 0) continue;
        Cochain base;
        base.degree = cls.degree;
        base.bundle = cls.bundle;
        add_basis_cocycle(base, src_basis[k].e, cls.coords[k]);
        for (const auto& [ij, cf] : f.coeffs()) {
            std::array<int, 4> shift{ij.first, f.degree().a - ij.first, ij.second,
                                     f.degree().b - ij.second};
            for (const auto& [e, comps] : base.cells) {
                std::array<int, 4> e2{e[0] + shift[0], e[1] + shift[1], e[2] + shift[2],
                                      e[3] + shift[3]};
                Cell src_cell(e), dst_cell(e2);
                // map components by chart identity; source-absent ones are zero
                auto src_comps = cls.degree == 0   ? src_cell.t0_components()
                                 : cls.degree == 1 ? src_cell.t1_components()
                                                   : std::vector<std::pair<int, int>>{{-1, -1}};
                auto dst_comps = cls.degree == 0   ? dst_cell.t0_components()
                                 : cls.degree == 1 ? dst_cell.t1_components()
                                                   : std::vector<std::pair<int, int>>{{-1, -1}};
                for (std::size_t si = 0; si < src_comps.size(); ++si) {
                    for (std::size_t di = 0; di < dst_comps.size(); ++di)
                        if (src_comps[si] == dst_comps[di])
                            prod.add(e2, di, comps[si] * cf, dst_comps.size());
                }
            }
        }
    }

    // reduce every cell back to the canonical basis
    CohClass out{cls.degree, target,
                 std::vector<Rat>(static_cast<std::size_t>(h_line(cls.degree, target)), Rat(0))};
    for (const auto& [e, v] : prod.cells) {
        Rat lambda = reduce_cell(cls.degree, target, e, v);
        if (lambda == 0) continue;
        auto idx = coh_basis_index(cls.degree, target, e);
        if (!idx) throw std::runtime_error("cech oracle: nonzero class in a cell outside the basis");
        out.coords[*idx] += lambda;
    }
    return out;
}

}  // namespace qsheaf::testsupport
