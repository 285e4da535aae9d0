#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsheaf/classifier.hpp"
#include "qsheaf/sheaf.hpp"

#include <algorithm>

using namespace qsheaf;

namespace {

constexpr std::uint64_t kSeed = 2024;

/* random injective presentation for the numerics properties */
Presentation random_presentation(Rng& rng) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        int nsrc = static_cast<int>(rng.uniform(0, 2));
        int ntgt = nsrc + static_cast<int>(rng.uniform(1, 3));
        LineBundleSum src, tgt;
        for (int j = 0; j < nsrc; ++j)
            src.parts.push_back({static_cast<int>(rng.uniform(-2, 0)), static_cast<int>(rng.uniform(-2, 0))});
        for (int i = 0; i < ntgt; ++i)
            tgt.parts.push_back({static_cast<int>(rng.uniform(0, 2)), static_cast<int>(rng.uniform(0, 2))});
        std::vector<std::vector<BiForm>> m;
        for (int i = 0; i < ntgt; ++i) {
            std::vector<BiForm> row;
            for (int j = 0; j < nsrc; ++j) {
                Bidegree d = tgt.parts[static_cast<std::size_t>(i)] - src.parts[static_cast<std::size_t>(j)];
                row.push_back(d.a >= 0 && d.b >= 0 ? BiForm::random(d, rng, -5, 5) : BiForm({0, 0}));
            }
            m.push_back(std::move(row));
        }
        Presentation p(src, tgt, std::move(m), false, 0);
        std::array<Rat, 2> s{Rat(3), Rat(1)}, t{Rat(-2), Rat(1)};
        if (p.evaluated<Rat>(s, t).rank() == src.size()) return p;
    }
    throw std::runtime_error("random_presentation: no injective draw");
}

}  // namespace

TEST_CASE("chern of the standard resolutions") {
    ChernData ap = chern(witnesses::a_p(kSeed));
    CHECK(ap.r == 2);
    CHECK(ap.c1 == Bidegree{1, 1});
    CHECK(ap.c2 == 2);

    ChernData mx = chern(witnesses::maximal_type({2, 2}, 2, kSeed));
    CHECK(mx.r == 2);
    CHECK(mx.c1 == Bidegree{2, 2});
    CHECK(mx.c2 == 8);

    ChernData p36 = chern(witnesses::maximal_type({1, 2}, 2, kSeed));
    CHECK(p36.r == 2);
    CHECK(p36.c1 == Bidegree{1, 2});
    CHECK(p36.c2 == 4);
}

TEST_CASE("twist_chern and euler_char formulas") {
    ChernData c{2, {2, 2}, 4};
    ChernData tw = twist_chern(c, -1, -1);
    CHECK(tw.c1 == Bidegree{0, 0});
    CHECK(tw.c2 == 2);  // M(4) is M((0,0),2) after the twist

    CHECK(twist_chern(c, 0, 0) == c);
    CHECK(twist_chern(ChernData{2, {2, 2}, 8}, -1, -1).c2 == 6);

    CHECK(euler_char({2, {2, 2}, 6}) == 4);
    CHECK(euler_char({1, {0, 0}, 0}) == 1);
    CHECK(euler_char({2, {2, 2}, 4}) == 6);
}

TEST_CASE("cohomology of the canonical witnesses at (0,0)") {
    SheafHandle ap(witnesses::a_p(kSeed));
    CHECK(ap.cohomology(0, 0) == std::array<int, 3>{3, 0, 0});

    SheafHandle mx(witnesses::maximal_type({2, 2}, 2, kSeed));
    CHECK(mx.h(0, 0, 0) == 3);  // h^0 = r + 1 for maximal type
    CHECK(mx.h(2, 0, 0) == 0);

    // c2 = 6, index (1,0) witness: h^0(E(-1,0)) = 1
    SheafHandle l433(witnesses::c22_c2_6_idx10(kSeed));
    CHECK(l433.h(0, -1, 0) == 1);
    CHECK(l433.cohomology(0, 0) == std::array<int, 3>{4, 0, 0});
}

TEST_CASE("dual cohomology: the h^1(F^v) ladder") {
    auto h1_dual = [](const Presentation& p) {
        SheafHandle d(dual(p));
        return d.h(1, 0, 0);
    };
    CHECK(h1_dual(witnesses::a_p(kSeed)) == 1);                          // h^1(A^v) = 1
    CHECK(h1_dual(witnesses::maximal_type({1, 2}, 2, kSeed)) == 3);      // maximal (1,2)
    CHECK(h1_dual(witnesses::maximal_type({2, 2}, 2, kSeed)) == 6);      // maximal (2,2)
    CHECK(h1_dual(witnesses::c22_c2_6_idx10(kSeed)) == 4);
    CHECK(h1_dual(witnesses::c12_c2_2(kSeed)) == 1);
    CHECK(h1_dual(witnesses::c12_c2_3(kSeed)) == 2);
    CHECK(h1_dual(witnesses::c22_c2_3(kSeed)) == 1);
    CHECK(h1_dual(witnesses::c22_c2_4_idx11(kSeed)) == 2);
    CHECK(h1_dual(witnesses::m4(kSeed)) == 2);
    CHECK(h1_dual(witnesses::ext_o20_by_o02(kSeed)) == 2);

    // h^1(F(-2,-2)) = 2 for the O(2,0)/O(0,2) extension, and for a rank-2
    // bundle with c1 = (2,2) this is the same as h^1(F^v)
    SheafHandle f(witnesses::ext_o20_by_o02(kSeed));
    CHECK(f.h(1, -2, -2) == 2);
    CHECK(f.h(0, 0, -1) == 2);
}

TEST_CASE("dual of dual and Serre duality at the dimension level") {
    Rng rng(kSeed);
    std::vector<Presentation> ps{witnesses::a_p(kSeed), witnesses::c22_c2_6_idx10(kSeed),
                                 witnesses::maximal_type({2, 2}, 2, kSeed),
                                 witnesses::tp3()};
    for (const auto& p : ps) {
        SheafHandle e(p);
        SheafHandle ev(dual(p));
        SheafHandle evv(dual(dual(p)));
        for (int trial = 0; trial < 6; ++trial) {
            int s = static_cast<int>(rng.uniform(-4, 4));
            int t = static_cast<int>(rng.uniform(-4, 4));
            CHECK(evv.cohomology(s, t) == e.cohomology(s, t));
            auto lhs = e.cohomology(s, t);
            auto rhs = ev.cohomology(-2 - s, -2 - t);
            CHECK(lhs[0] == rhs[2]);
            CHECK(lhs[1] == rhs[1]);
            CHECK(lhs[2] == rhs[0]);
        }
    }
}

TEST_CASE("global generation criteria") {
    // both tests are sufficient conditions only; A_P fails Castelnuovo-Mumford
    // outright since h^1(A_P(-1,-1)) = h^1(A_P^v) = 1, yet passes bm
    SheafHandle ap(witnesses::a_p(kSeed));
    CHECK(ap.h(1, -1, -1) == 1);
    CHECK_FALSE(gg_castelnuovo_mumford(ap));
    CHECK(gg_ruling_regularity(ap));

    SheafHandle o22(witnesses::line_bundle_sum({{2, 2}}));
    CHECK(gg_castelnuovo_mumford(o22));

    SheafHandle om10(witnesses::line_bundle_sum({{-1, 0}}));
    CHECK_FALSE(gg_castelnuovo_mumford(om10));

    // the maximal (2,2) type has h^1(E(-1,0)) = 2 (chi = -2 with no sections),
    // so bm is inconclusive; global generation comes from the quotient route
    SheafHandle mx(witnesses::maximal_type({2, 2}, 2, kSeed));
    CHECK(mx.h(1, -1, 0) == 2);
    CHECK_FALSE(gg_ruling_regularity(mx));
    CHECK(gg_quotient_route(mx.presentation()));

    SheafHandle w(witnesses::w_coker(kSeed));
    CHECK(gg_ruling_regularity(w));

    SheafHandle oq(witnesses::line_bundle_sum({{0, 0}}));
    CHECK(gg_ruling_regularity(oq));

    SheafHandle o0m1(witnesses::line_bundle_sum({{0, -1}}));
    CHECK_FALSE(gg_ruling_regularity(o0m1));
}

TEST_CASE("trivial factor detection") {
    SheafHandle ap(witnesses::a_p(kSeed));
    CHECK_FALSE(trivial_factor_test(ap, GgCertified::yes));

    Presentation with_o = direct_sum(witnesses::a_p(kSeed), witnesses::line_bundle_sum({{0, 0}}));
    SheafHandle apo(with_o);
    CHECK(trivial_factor_test(apo, GgCertified::yes));

    SheafHandle mx(witnesses::maximal_type({2, 2}, 2, kSeed));
    CHECK_FALSE(trivial_factor_test(mx, GgCertified::yes));
}

TEST_CASE("indecomposable_maximal_type") {
    SheafHandle mx22(witnesses::maximal_type({2, 2}, 2, kSeed));
    CHECK(indecomposable_maximal_type(mx22));

    SheafHandle mx124(witnesses::maximal_type({1, 2}, 4, kSeed));
    CHECK(indecomposable_maximal_type(mx124));

    // a dependent row forces an O-factor and kills the test
    Rng rng(kSeed);
    BiForm f = BiForm::random({2, 2}, rng), g = BiForm::random({2, 2}, rng);
    std::vector<std::vector<BiForm>> m{{f}, {g}, {f + g}};
    LineBundleSum src, tgt;
    src.parts = {{-2, -2}};
    tgt.parts = {{0, 0}, {0, 0}, {0, 0}};
    SheafHandle degenerate(Presentation(src, tgt, m, true, 0));
    CHECK_FALSE(indecomposable_maximal_type(degenerate));

    SheafHandle not_shape(witnesses::m4(kSeed));
    CHECK_THROWS(indecomposable_maximal_type(not_shape));
}

TEST_CASE("index search") {
    SheafHandle ap(witnesses::a_p(kSeed));
    auto idx = index_search(ap, {2, 2});
    REQUIRE(idx.size() == 3);  // the diagonal-quotient indices (-1,1), (0,0), (1,-1)
    CHECK(idx[0] == Bidegree{-1, 1});
    CHECK(idx[1] == Bidegree{0, 0});
    CHECK(idx[2] == Bidegree{1, -1});

    SheafHandle split(witnesses::line_bundle_sum({{1, 0}, {0, 1}}));
    auto idx2 = index_search(split, {1, 1});
    REQUIRE(idx2.size() == 2);
    CHECK(idx2[0] == Bidegree{0, 1});
    CHECK(idx2[1] == Bidegree{1, 0});

    SheafHandle l433(witnesses::c22_c2_6_idx10(kSeed));
    auto idx3 = index_search(l433, {2, 2});
    CHECK(std::find(idx3.begin(), idx3.end(), Bidegree{1, 0}) != idx3.end());

    // the non-split O(2,0)/O(0,2) extension keeps (0,2) but trades (2,0) for (1,0)
    SheafHandle l41(witnesses::ext_o20_by_o02(kSeed));
    auto idx4 = index_search(l41, {2, 2});
    CHECK(std::find(idx4.begin(), idx4.end(), Bidegree{0, 2}) != idx4.end());
    CHECK(std::find(idx4.begin(), idx4.end(), Bidegree{1, 0}) != idx4.end());
    CHECK(std::find(idx4.begin(), idx4.end(), Bidegree{2, 0}) == idx4.end());

    CHECK_THROWS(index_search(ap, {-1, 2}));
}

TEST_CASE("euler characteristic cross-check on the c2 = 4 index-(1,0) witness") {
    // chi(2,(2,2),4) = 6 and the witness has no higher cohomology
    SheafHandle h(witnesses::m4(kSeed));
    CHECK(euler_char(chern(h.presentation())) == 6);
    CHECK(h.cohomology(0, 0) == std::array<int, 3>{6, 0, 0});
}

TEST_CASE("stability of a c1 = (0,0) twist via index vanishings") {
    // M(4) member twisted by (-1,-1) sits in M((0,0),2); stability is the
    // three h^0 vanishings
    Presentation tw = witnesses::m4(kSeed).twisted(-1, -1);
    SheafHandle h(tw);
    CHECK(chern(tw).c1 == Bidegree{0, 0});
    CHECK(chern(tw).c2 == 2);
    CHECK(h.h(0, 0, 0) == 0);
    CHECK(h.h(0, -1, 1) == 0);
    CHECK(h.h(0, 1, -1) == 0);
}

TEST_CASE("extension_by_trivial") {
    Presentation ap = witnesses::a_p(kSeed);
    ExtClassSpace e = ext1_trivial(ap);
    CHECK(e.dim == 1);
    CHECK(e.dim_realizable == 1);

    ExtensionResult r = extension_by_trivial(ap, 1, Rng(kSeed).fork("ext"));
    CHECK(r.classes_independent);
    ChernData c = chern(r.presentation);
    CHECK(c.r == 3);
    CHECK(c.c1 == Bidegree{1, 1});
    CHECK(c.c2 == 2);
    SheafHandle h(r.presentation);
    CHECK(h.h(0, 0, 0) == 4);
    CHECK_FALSE(trivial_factor_test(h, GgCertified::yes));

    // the zero class produces a direct factor O_Q
    ExtensionResult z = extension_by_trivial(ap, 1, {std::vector<Rat>{Rat(0)}});
    CHECK_FALSE(z.classes_independent);
    SheafHandle hz(z.presentation);
    CHECK(trivial_factor_test(hz, GgCertified::yes));

    // the maximal (2,2) witness takes 6 independent classes up to rank 8
    Presentation mx = witnesses::maximal_type({2, 2}, 2, kSeed);
    CHECK(ext1_trivial(mx).dim == 6);
    ExtensionResult big = extension_by_trivial(mx, 6, Rng(kSeed).fork("big"));
    CHECK(big.classes_independent);
    SheafHandle hb(big.presentation);
    CHECK(chern(big.presentation).r == 8);
    CHECK(hb.h(0, 0, 0) == 9);
    CHECK_FALSE(trivial_factor_test(hb, GgCertified::yes));
    CHECK(indecomposable_maximal_type(hb));

    // more classes than h^1(E^v) can never be independent
    CHECK_THROWS(extension_by_trivial(mx, 7, Rng(kSeed).fork("over")));
}

TEST_CASE("extension_of: Chern additivity and block structure") {
    Presentation ao = witnesses::a_p(kSeed ^ 0x51u);
    Presentation ap = witnesses::a_p(kSeed);
    Presentation e = extension_of_generic(ap, ao, Rng(kSeed).fork("e"));
    ChernData c = chern(e);
    CHECK(c.r == 4);
    CHECK(c.c1 == Bidegree{2, 2});
    CHECK(c.c2 == 6);  // 2 + 2 + (1,1).(1,1)

    // zero class data gives the direct sum: cohomology is additive
    std::vector<std::vector<BiForm>> zero_cd(3, std::vector<BiForm>{BiForm::zero({1, 1})});
    Presentation sum = extension_of(ap, ao, zero_cd);
    SheafHandle hs(sum), h1(ao), h2(ap);
    for (int s = -2; s <= 1; ++s)
        for (int t = -2; t <= 1; ++t) {
            auto a = hs.cohomology(s, t);
            auto x = h1.cohomology(s, t);
            auto y = h2.cohomology(s, t);
            CHECK(a == std::array<int, 3>{x[0] + y[0], x[1] + y[1], x[2] + y[2]});
        }
    CHECK(extension_is_split_class(ap, ao, zero_cd));

    Presentation t_ap = witnesses::ext_t_ap(kSeed);
    ChernData ct = chern(t_ap);
    CHECK(ct.r == 5);
    CHECK(ct.c1 == Bidegree{2, 2});
    CHECK(ct.c2 == 6);
}

TEST_CASE("hom_cohomology: the section-5 tensor values") {
    Presentation ap = witnesses::a_p(kSeed);
    Presentation ao = witnesses::a_p(kSeed ^ 0x51u);
    Presentation t = witnesses::tp3();

    auto apap = hom_cohomology(ap, ap, 0, 0);
    CHECK(apap[0] == 1);  // A_P is simple
    CHECK(apap[1] == 3);  // identical projection centers
    CHECK(apap[2] == 0);  // the duality step h^2 = h^0(A x A^v(-2,-2)) = 0

    auto aoap = hom_cohomology(ao, ap, 0, 0);
    CHECK(aoap[0] == 0);
    CHECK(aoap[1] == 2);  // distinct projection centers
    CHECK(aoap[2] == 0);

    auto tt = hom_cohomology(t, t, 0, 0);
    CHECK(tt[0] == 1);
    CHECK(tt[1] == 0);   // TP^3(-1)|_Q is rigid

    auto t_ap = hom_cohomology(t, ap, 0, 0);  // A_P (x) T^v
    CHECK(t_ap[0] == 1);
    CHECK(t_ap[1] == 0);

    // A_P^v (x) T: h^0 = 0 by stability; chi = -3 then forces h^1 = 3 (the
    // printed value 4 in the source text is inconsistent with Riemann-Roch)
    auto ap_t = hom_cohomology(ap, t, 0, 0);
    CHECK(ap_t[0] == 0);
    CHECK(ap_t[1] == 3);
    CHECK(ap_t[2] == 0);
    ChernData expect = tensor_chern(dual_chern(chern(ap)), chern(t));
    CHECK(euler_char(expect) == -3);
}

TEST_CASE("hom_cohomology satisfies Serre duality across the two orderings") {
    // (F^v x G)^v (-2,-2) = G^v x F (-2,-2), so
    // h^i(F^v x G (s,t)) = h^{2-i}(G^v x F (-2-s,-2-t))
    Presentation ap = witnesses::a_p(kSeed);
    Presentation ao = witnesses::a_p(kSeed ^ 0x51u);
    Presentation t = witnesses::tp3();
    auto pairs = std::vector<std::pair<const Presentation*, const Presentation*>>{
        {&ap, &ao}, {&ap, &t}, {&t, &ap}, {&t, &t}};
    for (auto [f, g] : pairs)
        for (auto [s, tw] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {-1, -1}}) {
            auto lhs = hom_cohomology(*f, *g, s, tw);
            auto rhs = hom_cohomology(*g, *f, -2 - s, -2 - tw);
            CHECK(lhs[0] == rhs[2]);
            CHECK(lhs[1] == rhs[1]);
            CHECK(lhs[2] == rhs[0]);
        }

    // at the skew twist (-1,1) the source H^0 is pure kernel part and the
    // target pure cokernel part, so the entire map is the connecting term;
    // the model refuses rather than miscomputes
    CHECK_THROWS_AS(hom_cohomology(ap, ao, -1, 1), InterferenceError);
}

TEST_CASE("hom_cohomology against independent routes") {
    Presentation ap = witnesses::a_p(kSeed);
    Presentation t = witnesses::tp3();

    // F^v (x) O = F^v: must agree with the dual handle at every twist
    Presentation triv = witnesses::line_bundle_sum({{0, 0}});
    SheafHandle apd(dual(ap));
    for (int s = -2; s <= 2; ++s)
        for (int tt = -2; tt <= 2; ++tt)
            CHECK(hom_cohomology(ap, triv, s, tt) == apd.cohomology(s, tt));

    // O(a,b)^v (x) G = G(-a,-b)
    Presentation line = witnesses::line_bundle_sum({{1, 1}});
    SheafHandle th(t);
    CHECK(hom_cohomology(line, t, 0, 0) == th.cohomology(-1, -1));
    CHECK(hom_cohomology(line, t, 2, 1) == th.cohomology(1, 0));

    // a couple of twisted runs exercise the chi assertion inside
    for (auto [s, tt] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {-1, -1}, {2, 2}}) {
        auto v = hom_cohomology(ap, t, s, tt);
        CHECK(v[0] >= 0);
    }
}

TEST_CASE("induced multiplication is functorial in the form") {
    // for the representative model, mult by f*g must equal mult by f after
    // mult by g, whenever the three models are interference free
    Rng rng(kSeed ^ 0x77u);
    std::vector<Presentation> gs{witnesses::a_p(kSeed), witnesses::c22_c2_6_idx10(kSeed),
                                 witnesses::ext_o20_by_o02(kSeed)};
    int done = 0;
    for (const auto& g : gs) {
        CohomologyModel m(g);
        for (int trial = 0; trial < 40; ++trial) {
            Bidegree from{static_cast<int>(rng.uniform(-2, 2)), static_cast<int>(rng.uniform(-2, 2))};
            Bidegree d1{static_cast<int>(rng.uniform(0, 1)), static_cast<int>(rng.uniform(0, 1))};
            Bidegree d2{static_cast<int>(rng.uniform(0, 1)), static_cast<int>(rng.uniform(0, 1))};
            int degree = static_cast<int>(rng.uniform(0, 2));
            BiForm f1 = BiForm::random(d1, rng, -4, 4);
            BiForm f2 = BiForm::random(d2, rng, -4, 4);
            try {
                Matrix<Rat> step1 = m.induced_mult(degree, from, f2);
                Matrix<Rat> step2 = m.induced_mult(degree, from + d2, f1);
                Matrix<Rat> direct = m.induced_mult(degree, from, f1 * f2);
                REQUIRE(step2.rows() == direct.rows());
                REQUIRE(step1.cols() == direct.cols());
                for (std::size_t i = 0; i < direct.rows(); ++i)
                    for (std::size_t j = 0; j < direct.cols(); ++j) {
                        Rat acc(0);
                        for (std::size_t k = 0; k < step1.rows(); ++k)
                            acc += step2.at(i, k) * step1.at(k, j);
                        CHECK(acc == direct.at(i, j));
                    }
                ++done;
            } catch (const InterferenceError&) {
                // legal rejection; try another draw
            }
        }
    }
    CHECK(done > 30);
}

TEST_CASE("extension_is_split_class detects composite (split) class data") {
    // class data of the shape G o M_q lifts through B_q, so its extension
    // class vanishes even though the matrix itself is nonzero
    Presentation ap = witnesses::a_p(kSeed);
    Presentation ao = witnesses::a_p(kSeed ^ 0x51u);
    Rng rng(kSeed ^ 0x99u);
    std::vector<std::vector<BiForm>> cd(3, std::vector<BiForm>{BiForm::zero({1, 1})});
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t k = 0; k < 3; ++k) {
            Rat g(rng.uniform(-5, 5));
            cd[i][0] = cd[i][0] + ap.entry(k, 0).scaled(g);
        }
    }
    bool nonzero = false;
    for (const auto& row : cd) nonzero = nonzero || !row[0].is_zero();
    REQUIRE(nonzero);
    CHECK(extension_is_split_class(ap, ao, cd));

    // and a generic class is detected as non-split
    std::vector<std::vector<BiForm>> generic(3, std::vector<BiForm>{BiForm::zero({1, 1})});
    for (auto& row : generic) row[0] = BiForm::random({1, 1}, rng);
    CHECK_FALSE(extension_is_split_class(ap, ao, generic));
}

TEST_CASE("the representative model rejects connecting-term interference") {
    // H^0(A_P(1,-1)) is pure kernel part (one class from H^1(O(0,-2))) while
    // H^0(A_P(1,0)) has a nonzero cokernel part; a multiplication between the
    // two cannot be represented blockwise and must be refused, not miscomputed
    CohomologyModel m(witnesses::a_p(kSeed));
    TwistModel src = m.model(0, {1, -1});
    CHECK(src.dim_coker == 0);
    CHECK(src.dim_ker == 1);
    TwistModel dst = m.model(0, {1, 0});
    CHECK(dst.dim_coker > 0);
    CHECK_THROWS_AS(m.induced_mult(0, {1, -1}, BiForm::monomial({0, 1}, 0, 0)),
                    InterferenceError);
    // the zero form is still fine
    auto z = m.induced_mult(0, {1, -1}, BiForm::zero({0, 1}));
    CHECK(z.rows() == static_cast<std::size_t>(dst.dim()));
}

TEST_CASE("maximal-type section vanishings beyond (1,0)/(0,1)") {
    for (Bidegree c1 : {Bidegree{1, 1}, Bidegree{1, 2}, Bidegree{2, 2}}) {
        SheafHandle h(witnesses::maximal_type(c1, 2, kSeed));
        for (int x = 0; x <= 2; ++x)
            for (int y = 0; y <= 2; ++y) {
                if (x * x + y * y <= 1) continue;
                CHECK(h.h(0, -x, -y) == 0);
            }
    }
}

TEST_CASE("Riemann-Roch and block additivity on random presentations") {
    Rng rng(991);
    for (int trial = 0; trial < 25; ++trial) {
        Presentation p = random_presentation(rng);
        SheafHandle h(p);
        for (int k = 0; k < 3; ++k) {
            int s = static_cast<int>(rng.uniform(-3, 3));
            int t = static_cast<int>(rng.uniform(-3, 3));
            auto v = h.cohomology(s, t);  // the chi identity is asserted inside
            CHECK(v[0] >= 0);
            CHECK(v[1] >= 0);
            CHECK(v[2] >= 0);
        }
    }
    // block-diagonal additivity
    Presentation a = random_presentation(rng), b = random_presentation(rng);
    SheafHandle ha(a), hb(b), hsum(direct_sum(a, b));
    auto x = ha.cohomology(-1, 1), y = hb.cohomology(-1, 1), z = hsum.cohomology(-1, 1);
    CHECK(z == std::array<int, 3>{x[0] + y[0], x[1] + y[1], x[2] + y[2]});
}

TEST_CASE("presentation JSON round trip") {
    Presentation p = witnesses::c22_c2_6_idx10(kSeed);
    Presentation q = Presentation::from_json(p.to_json());
    CHECK(q.to_json() == p.to_json());
    SheafHandle hp(p), hq(q);
    CHECK(hp.cohomology(0, 0) == hq.cohomology(0, 0));

    Presentation d = dual(p);
    Presentation d2 = Presentation::from_json(d.to_json());
    CHECK(d2.kernel_side());
}

TEST_CASE("locally-free spot check refutes the zero column") {
    LineBundleSum src, tgt;
    src.parts = {{-1, -1}};
    tgt.parts = {{0, 0}, {0, 0}, {0, 0}};
    std::vector<std::vector<BiForm>> m{{BiForm::zero({1, 1})}, {BiForm::zero({1, 1})}, {BiForm::zero({1, 1})}};
    Presentation p(src, tgt, std::move(m), true, 0);
    CHECK_FALSE(spot_check_locally_free(p, Rng(1), 10));
}
