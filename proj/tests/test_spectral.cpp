#include <doctest.h>

#include <algorithm>
#include <random>

#include "flagrock/spectral.hpp"

using namespace flagrock;

namespace {

struct Setup {
    ParabolicData pd;
    StructureConstants sc;
    NilpotentAlgebra n;
    SymbolSpace space;
    OrthogonalSequence g;
    Setup(int p, int q, int p1)
        : pd(build_parabolic(p, q, p1)), sc(pd), n(pd, sc), space(n),
          g(strongly_orthogonal_sequence(pd)) {}
    LinearForm canonical(const Quad& w = Quad::sqrt2()) const {
        return canonical_form(g, std::vector<Quad>(g.gamma.size(), w));
    }
    ModelOperator model(const LinearForm& l) const {
        Polarization pol = choose_polarization(bl_and_a(l, n), n, l);
        Representation rep = realize_rep(l, pol, n);
        return rep_laplacian(rep, laplacian_symbol(space), l, sc);
    }
};

}  // namespace

TEST_CASE("oscillator frequencies") {
    Setup s(2, 2, 1);
    RValue r = compute_r(s.canonical(), s.pd, s.sc, {1, 2});
    CHECK(r.squared == Quad(1));
    CHECK(*r.exact == Quad(1));

    RValue zero = compute_r(LinearForm{}, s.pd, s.sc, {1, 2});
    CHECK(zero.squared.is_zero());
    CHECK(*zero.exact == Quad(0));

    RValue two = compute_r(s.canonical(Quad(2)), s.pd, s.sc, {1, 2});
    CHECK(two.squared == Quad(2));
    CHECK(*two.exact == Quad::sqrt2());

    // every weight in Q(sqrt2) keeps r exact: r = xi / sqrt2
    RValue r3 = compute_r(s.canonical(Quad(Rational(3), Rational(1))), s.pd, s.sc, {1, 2});
    CHECK(r3.exact.has_value());
    CHECK(*r3.exact * *r3.exact == r3.squared);
}

TEST_CASE("curvature endomorphism on (2,2,1)") {
    Setup s(2, 2, 1);
    LinearForm l = s.canonical();
    ExtOp m = build_m(l, s.sc, s.space, {1, 2});

    // only the partner b = (1,3) contributes: the coordinate on (2,4) is 0
    // even though N' is nonzero there; frozen matrix: i (e_a i_b - e_b i_a)
    ExtOp expect = (s.space.e_op({1, 2}) * s.space.i_op({1, 3}) -
                    s.space.e_op({1, 3}) * s.space.i_op({1, 2})) *
                   QuadC::i();
    CHECK(m == expect);
    CHECK(m.is_hermitian());
    CHECK(m.is_degree_preserving());
    CHECK(build_m(LinearForm{}, s.sc, s.space, {1, 2}).is_zero());

    // spectrum per degree is contained in {0, +-r} and attains +-r
    auto spectra = curvature_spectra(m, 3);
    bool plus = false, minus = false;
    for (const auto& lst : spectra)
        for (double mu : lst) {
            CHECK(std::min({std::abs(mu), std::abs(mu - 1), std::abs(mu + 1)}) < 1e-12);
            plus = plus || std::abs(mu - 1) < 1e-12;
            minus = minus || std::abs(mu + 1) < 1e-12;
        }
    CHECK(plus);
    CHECK(minus);
}

TEST_CASE("model operator decomposition on (2,2,1)") {
    Setup s(2, 2, 1);
    LinearForm l = s.canonical();
    ModelOperator op = s.model(l);
    CHECK(op.which == Polarization::Case::First);
    CHECK(op.nvars == 2);
    CHECK(op.exact_mode);
    REQUIRE(op.r.size() == 1);
    CHECK(*op.r[0].exact == Quad(1));
    CHECK(op.c_total == build_m(l, s.sc, s.space, {1, 2}));
    CHECK(op.c_total.degree_block(0).is_zero());
    CHECK(op.sum_r() == doctest::Approx(1.0));

    // oscillator and curvature act on different tensor factors: every raw
    // term with derivatives or polynomial part has a scalar exterior
    // coefficient, so the two parts commute on any section
    ModelOperator osc = op, cur = op;
    osc.raw.clear();
    cur.raw.clear();
    for (const auto& [key, ext] : op.raw) {
        if (mi_degree(key.first) + mi_degree(key.second) > 0) osc.raw[key] = ext;
        else cur.raw[key] = ext;
    }
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> coeff(-3, 3);
    ModelSection<QuadC> sec;
    sec.nvars = op.nvars;
    sec.comp.assign(8, {});
    for (int b = 0; b < 8; ++b)
        sec.comp[static_cast<std::size_t>(b)][{coeff(rng) & 1, coeff(rng) & 1}] =
            QuadC(Quad(coeff(rng)), Quad(coeff(rng)));
    ModelSection<QuadC> ab = apply_model(osc, apply_model(cur, sec));
    ModelSection<QuadC> ba = apply_model(cur, apply_model(osc, sec));
    REQUIRE(ab.comp.size() == ba.comp.size());
    for (std::size_t k = 0; k < ab.comp.size(); ++k) CHECK(ab.comp[k] == ba.comp[k]);
}

TEST_CASE("forms with cross terms are rejected") {
    Setup s(3, 2, 1);
    LinearForm l;
    l.set(FrameVector::x({2, 4}), Quad(1));
    l.set(FrameVector::x({3, 4}), Quad(1));
    l.set(FrameVector::x({2, 5}), Quad(1));
    SkewForm sf = bl_and_a(l, s.n);
    REQUIRE(check_hypothesis_h(sf));
    CHECK_THROWS_AS(s.model(l), InvalidFormError);
}

TEST_CASE("ladder recursion on (2,2,1)") {
    Setup s(2, 2, 1);
    LinearForm l = s.canonical();
    ModelOperator op = s.model(l);

    ExtVector wm = build_eigenvector(op, l, s.sc, s.space, -1);
    // frozen: (M - 1) Z_(1,2) = -i Z_(1,3) - Z_(1,2), exterior degree 1
    CHECK(wm[1] == QuadC(Quad(-1)));          // subset {(1,2)}
    CHECK(wm[2] == QuadC(Quad(0), Quad(-1))); // subset {(1,3)}
    for (std::size_t k : {0u, 3u, 4u, 5u, 6u, 7u}) CHECK(wm[k].is_zero());
    ExtVector mw = op.c_total.apply(wm);
    CHECK(ext_is_zero(ext_sub(mw, ext_scale(wm, QuadC(Quad(-1))))));

    ExtVector wp = build_eigenvector(op, l, s.sc, s.space, +1);
    CHECK(ext_is_zero(ext_sub(op.c_total.apply(wp), ext_scale(wp, QuadC(Quad(1))))));
}

TEST_CASE("ladder order independence on multi-root instances") {
    for (auto [p, q, p1] : {std::tuple{3, 2, 2}, {3, 3, 1}}) {
        Setup s(p, q, p1);
        LinearForm l = s.canonical();
        ModelOperator op = s.model(l);
        REQUIRE(op.transverse_roots.size() >= 2);
        std::vector<int> order(op.transverse_roots.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
        ExtVector base = build_eigenvector_ordered(op, l, s.sc, s.space, -1, order);
        do {
            ExtVector perm = build_eigenvector_ordered(op, l, s.sc, s.space, -1, order);
            CHECK(ext_is_zero(ext_sub(base, perm)));
        } while (std::next_permutation(order.begin(), order.end()));

        // products of distinct curvature endomorphisms on the start vector
        // commute as well
        std::vector<ExtOp> ms;
        for (const Root& rho : op.transverse_roots)
            ms.push_back(build_m(l, s.sc, s.space, rho));
        const std::vector<Root>& roots =
            op.which == Polarization::Case::First ? s.pd.delta_u_k : s.pd.delta_u_p;
        int mask = 0;
        for (const Root& r : roots) mask |= 1 << s.space.ext_index(r);
        ExtVector v(static_cast<std::size_t>(1) << s.space.m);
        v[static_cast<std::size_t>(mask)] = QuadC(Quad(1));
        ExtVector fwd = v, rev = v;
        for (std::size_t k = 0; k < ms.size(); ++k) fwd = ms[k].apply(fwd);
        for (std::size_t k = ms.size(); k-- > 0;) rev = ms[k].apply(rev);
        CHECK(ext_is_zero(ext_sub(fwd, rev)));
    }
}

TEST_CASE("curvature identities on the start vector") {
    for (auto [p, q, p1] : {std::tuple{2, 2, 1}, {3, 2, 2}, {3, 1, 1}}) {
        Setup s(p, q, p1);
        LinearForm l = s.canonical();
        ModelOperator op = s.model(l);
        const std::vector<Root>& roots =
            op.which == Polarization::Case::First ? s.pd.delta_u_k : s.pd.delta_u_p;
        int mask = 0;
        for (const Root& r : roots) mask |= 1 << s.space.ext_index(r);
        ExtVector v(static_cast<std::size_t>(1) << s.space.m);
        v[static_cast<std::size_t>(mask)] = QuadC(Quad(1));
        for (std::size_t k = 0; k < op.transverse_roots.size(); ++k) {
            ExtOp m = build_m(l, s.sc, s.space, op.transverse_roots[k]);
            ExtVector m2v = m.apply(m.apply(v));
            QuadC r2(op.r[k].squared);
            CHECK(ext_is_zero(ext_sub(m2v, ext_scale(v, r2))));  // M^2 v = r^2 v
        }
    }
}

TEST_CASE("ladder collapse raises the dedicated error") {
    Setup s(2, 2, 1);
    LinearForm l = s.canonical();
    ModelOperator op = s.model(l);
    // degenerate frequencies: M = 0 and r = 0 annihilate the start vector
    op.r[0] = RValue{Quad(0), Quad(0), 0.0};
    CHECK_THROWS_AS(build_eigenvector(op, LinearForm{}, s.sc, s.space, -1),
                    ZeroCollapseError);
}

TEST_CASE("kernel residuals on (2,2,1)") {
    Setup s(2, 2, 1);
    LinearForm l = s.canonical();
    ModelOperator op = s.model(l);

    ExtVector wm = build_eigenvector(op, l, s.sc, s.space, -1);
    ResidualResult res = kernel_residual(op, wm);
    CHECK(res.exact_zero);
    CHECK(res.norm == 0.0);

    // the +sum r vector instead sees twice the bottom energy
    ExtVector wp = build_eigenvector(op, l, s.sc, s.space, +1);
    ResidualResult bad = kernel_residual(op, wp);
    CHECK(!bad.exact_zero);
    CHECK(bad.norm == doctest::Approx(2.0 * bad.witness_norm).epsilon(1e-9));
}

TEST_CASE("full analysis: main certificate on (2,2,1)") {
    Verdict v = analyze(2, 2, 1);
    CHECK(v.hormander_ok);
    CHECK(v.hypothesis_h);
    CHECK(v.case_name == "first");
    CHECK(v.exact_mode);
    REQUIRE(v.rockland_fails.has_value());
    CHECK(*v.rockland_fails);
    CHECK(!*v.maximal_hypoelliptic);
    REQUIRE(v.witnesses.size() == 2);
    CHECK(v.witnesses[0].degree == 1);  // = s, ladder
    CHECK(v.witnesses[0].construction == "ladder");
    CHECK(v.witnesses[0].residual_exact_zero);
    CHECK(v.witnesses[1].degree == 2);  // = t, duality
    CHECK(v.witnesses[1].construction == "duality");
    CHECK(v.witnesses[1].residual_exact_zero);
    CHECK(v.spectral_hit_degrees == std::vector<int>{1, 2});
    CHECK(v.degree0_min == doctest::Approx(1.0));
}

TEST_CASE("full analysis: second case on (3,1,1)") {
    Verdict v = analyze(3, 1, 1);
    CHECK(v.case_name == "second");
    REQUIRE(v.rockland_fails.has_value());
    CHECK(*v.rockland_fails);
    REQUIRE(v.witnesses.size() == 2);
    CHECK(v.witnesses[0].degree == 1);  // = t via the role-swapped ladder
    CHECK(v.witnesses[1].degree == 2);  // = s via duality
    CHECK(v.witnesses[0].residual_exact_zero);
    CHECK(v.witnesses[1].residual_exact_zero);
}

TEST_CASE("full analysis: degenerate instance") {
    Verdict v = analyze(1, 1, 1);
    CHECK(v.degenerate);
    CHECK(v.case_name == "degenerate");
    CHECK(v.hormander_ok);
    CHECK(!v.rockland_fails.has_value());
    CHECK(v.witnesses.empty());
}

TEST_CASE("homogeneity: scaling the form preserves the verdict") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> num(1, 9), den(1, 9);
    for (int trial = 0; trial < 10; ++trial) {
        Quad c(Rational(num(rng), den(rng)));
        Verdict v = analyze(2, 2, 1, {c * Quad::sqrt2()});
        CHECK(*v.rockland_fails);
        CHECK(v.witnesses[0].residual_exact_zero);
        CHECK(v.witnesses[1].residual_exact_zero);
        CHECK(v.spectral_hit_degrees == std::vector<int>{1, 2});
    }
}

TEST_CASE("float mode: frequencies outside the field still certify") {
    // xi = 1, eta = 2 on the fiber root gives r^2 = 5/2, irrational in
    // Q(sqrt2); the pipeline switches to floating point
    Setup s(2, 2, 1);
    LinearForm l;
    l.set(FrameVector::x({2, 3}), Quad(1));
    l.set(FrameVector::y({2, 3}), Quad(2));
    Verdict v = analyze_with_form(s.pd, l);
    CHECK(!v.exact_mode);
    REQUIRE(v.rockland_fails.has_value());
    CHECK(*v.rockland_fails);
    for (const WitnessRecord& w : v.witnesses) {
        CHECK(!w.residual_exact_zero);
        CHECK(w.residual < 1e-10);
    }
}

TEST_CASE("spectrum cross-check on (2,2,1)") {
    Setup s(2, 2, 1);
    LinearForm l = s.canonical();
    ModelOperator op = s.model(l);
    SpectrumCrossCheck cc = cross_check_spectrum(op, 6, 10);
    REQUIRE(cc.formula.size() == 10);
    REQUIRE(cc.dense.size() == 10);
    CHECK(cc.max_deviation < 1e-8);
    CHECK(cc.zero_in_dense);
    // bottom of the spectrum: 0 with multiplicity 2 (degrees 1 and 2)
    CHECK(cc.formula[0] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(cc.formula[1] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(cc.formula[2] > 0.5);
}
