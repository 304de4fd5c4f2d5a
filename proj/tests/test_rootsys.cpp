#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "flagrock/rootsys.hpp"

using namespace flagrock;

namespace {
std::vector<Root> all_roots(const ParabolicData& pd) {
    std::vector<Root> out;
    for (const Root& r : pd.all_positive_roots()) {
        out.push_back(r);
        out.push_back(-r);
    }
    return out;
}
}  // namespace

TEST_CASE("parabolic partition for (2,2,1)") {
    ParabolicData pd = build_parabolic(2, 2, 1);
    CHECK(pd.delta_u == std::vector<Root>{{1, 2}, {1, 3}, {1, 4}});
    CHECK(pd.delta_u_k == std::vector<Root>{{1, 2}});
    CHECK(pd.delta_u_p == std::vector<Root>{{1, 3}, {1, 4}});
    CHECK(pd.delta_l_p == std::vector<Root>{{2, 3}, {2, 4}});
    CHECK(pd.s == 1);
    CHECK(pd.t == 2);
    CHECK(!pd.degenerate());
}

TEST_CASE("degenerate and second-case instances") {
    ParabolicData pd = build_parabolic(1, 1, 1);
    CHECK(pd.delta_u == std::vector<Root>{{1, 2}});
    CHECK(pd.delta_u_k.empty());
    CHECK(pd.delta_l_p.empty());
    CHECK(pd.s == 0);
    CHECK(pd.t == 1);
    CHECK(pd.degenerate());

    ParabolicData second = build_parabolic(3, 1, 1);
    CHECK(second.s == 2);
    CHECK(second.t == 1);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(build_parabolic(0, 2, 1), InvalidParameterError);
    CHECK_THROWS_AS(build_parabolic(2, 0, 1), InvalidParameterError);
    CHECK_THROWS_AS(build_parabolic(2, 2, 0), InvalidParameterError);
    CHECK_THROWS_AS(build_parabolic(2, 2, 3), InvalidParameterError);
}

TEST_CASE("root subsets partition the positive roots, p+q <= 6") {
    for (int n = 2; n <= 6; ++n)
        for (int p = 1; p < n; ++p)
            for (int p1 = 1; p1 <= p; ++p1) {
                ParabolicData pd = build_parabolic(p, n - p, p1);
                CHECK(pd.s == p1 * pd.p2);
                CHECK(pd.t == p1 * pd.q);
                // brute enumeration of the defining inequalities
                std::set<Root> seen;
                for (const Root& r : pd.all_positive_roots()) {
                    int members = 0;
                    members += pd.in_u_k(r) ? 1 : 0;
                    members += pd.in_u_p(r) ? 1 : 0;
                    members += pd.in_l_p(r) ? 1 : 0;
                    members += pd.in_l_k(r) ? 1 : 0;
                    CHECK(members == 1);  // exactly one home per positive root
                    CHECK(pd.in_u(r) == (pd.in_u_k(r) || pd.in_u_p(r)));
                    bool brute_u = r.i <= p1 && r.j > p1;
                    CHECK(pd.in_u(r) == brute_u);
                    bool brute_lp = r.i > p1 && r.i <= p && r.j > p;
                    CHECK(pd.in_l_p(r) == brute_lp);
                    seen.insert(r);
                }
                CHECK(static_cast<int>(seen.size()) == pd.n * (pd.n - 1) / 2);
            }
}

TEST_CASE("structure constants: values and antisymmetries") {
    ParabolicData pd = build_parabolic(2, 2, 1);
    StructureConstants sc(pd);

    CHECK(sc.n({1, 2}, {2, 3}) == 1);  // [e12, e23] = e13
    CHECK(root_sum(Root{1, 2}, Root{2, 3}) == Root{1, 3});
    CHECK(sc.n({1, 2}, {3, 4}) == 0);  // not a root
    CHECK(!root_sum(Root{1, 2}, Root{3, 4}));

    for (const Root& a : all_roots(pd))
        for (const Root& b : all_roots(pd)) {
            CHECK(sc.n(a, b) == -sc.n(b, a));
            CHECK(sc.n(a, b) == -sc.n(-a, -b));
            if (root_sum(a, b))
                CHECK((sc.n(a, b) == 1 || sc.n(a, b) == -1));
            else
                CHECK(sc.n(a, b) == 0);
        }
}

TEST_CASE("matrix oracle reproduces the bracket normalization") {
    for (auto [p, q, p1] : {std::tuple{2, 2, 1}, {3, 2, 1}, {3, 1, 1}}) {
        ParabolicData pd = build_parabolic(p, q, p1);
        StructureConstants sc(pd);
        MatrixRealization mr = matrix_oracle(pd);
        CHECK_NOTHROW(mr.verify(pd, sc));

        for (const Root& a : all_roots(pd)) {
            CHECK(mr.root_vector(a).commutator(mr.root_vector(-a)) == mr.cartan(a));
            CMatrix h = mr.cartan(Root{1, pd.n});
            CHECK(h.commutator(mr.root_vector(a)) ==
                  mr.root_value(a, h) * mr.root_vector(a));
        }
    }
}

TEST_CASE("oracle Jacobi identity on random triples") {
    ParabolicData pd = build_parabolic(3, 2, 2);
    MatrixRealization mr = matrix_oracle(pd);
    auto roots = all_roots(pd);
    std::mt19937 rng(424242);
    std::uniform_int_distribution<std::size_t> pick(0, roots.size() - 1);
    for (int trial = 0; trial < 50; ++trial) {
        CMatrix a = mr.root_vector(roots[pick(rng)]);
        CMatrix b = mr.root_vector(roots[pick(rng)]);
        CMatrix c = mr.root_vector(roots[pick(rng)]);
        CMatrix jac = a.commutator(b).commutator(c) + b.commutator(c).commutator(a) +
                      c.commutator(a).commutator(b);
        CHECK(jac.is_zero());
    }
}

TEST_CASE("corrupted table is caught by the oracle") {
    ParabolicData pd = build_parabolic(2, 2, 1);
    StructureConstants sc(pd);
    sc.corrupt_for_test();
    MatrixRealization mr = matrix_oracle(pd);
    CHECK_THROWS_AS(mr.verify(pd, sc), InternalConsistencyError);
}
