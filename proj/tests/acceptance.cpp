// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Exercises both the library and the command-line binary.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "flagrock/report.hpp"
#include "flagrock/spectral.hpp"
#include "schema_check.hpp"

using namespace flagrock;

#ifndef FLAGROCK_BIN
#define FLAGROCK_BIN "flagrock"
#endif
#ifndef FLAGROCK_SOURCE_DIR
#define FLAGROCK_SOURCE_DIR "."
#endif

namespace {

int g_failures = 0;

void criterion(int number, const std::string& what, const std::function<void()>& body) {
    auto start = std::chrono::steady_clock::now();
    try {
        body();
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                       .count();
        std::printf("[PASS] criterion %d: %s (%.2f s)\n", number, what.c_str(), s);
    } catch (const std::exception& e) {
        ++g_failures;
        std::printf("[FAIL] criterion %d: %s -- %s\n", number, what.c_str(), e.what());
    }
    std::fflush(stdout);
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

std::vector<std::tuple<int, int, int>> instances(int max_n) {
    std::vector<std::tuple<int, int, int>> out;
    for (int n = 2; n <= max_n; ++n)
        for (int p = 1; p < n; ++p)
            for (int p1 = 1; p1 <= p; ++p1) out.emplace_back(p, n - p, p1);
    return out;
}

nlohmann::json run_cli_analyze(const std::string& args, int expect_exit) {
    std::string path = "acceptance_cli_out.json";
    std::string cmd = std::string(FLAGROCK_BIN) + " analyze " + args +
                      " --format json --output " + path;
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    require(code == expect_exit,
            "exit code " + std::to_string(code) + " != " + std::to_string(expect_exit));
    std::ifstream in(path);
    require(in.good(), "no report written");
    nlohmann::json j = nlohmann::json::parse(in);
    std::remove(path.c_str());
    return j;
}

void check_witnesses(const Verdict& v, int deg_a, int deg_b) {
    require(v.rockland_fails.has_value() && *v.rockland_fails, "rockland_fails != true");
    require(!*v.maximal_hypoelliptic, "maximal_hypoelliptic != false");
    require(v.witnesses.size() == 2, "expected two witnesses");
    require(v.witnesses[0].degree == deg_a && v.witnesses[1].degree == deg_b,
            "witness degrees mismatch");
    for (const WitnessRecord& w : v.witnesses) {
        require(w.residual_exact_zero || w.residual < 1e-10, "residual too large");
    }
}

}  // namespace

int main() {
    criterion(1,
              "main certificate: analyze 2 2 1, witnesses in degrees 1 and 2, "
              "exact zero residual, < 5 s", [] {
        auto start = std::chrono::steady_clock::now();
        Verdict v = analyze(2, 2, 1);
        check_witnesses(v, 1, 2);
        require(v.s == 1 && v.t == 2, "s, t mismatch");
        require(v.exact_mode, "expected exact mode");
        require(v.witnesses[0].residual_exact_zero && v.witnesses[1].residual_exact_zero,
                "expected exact zero residuals");

        nlohmann::json j = run_cli_analyze("2 2 1", 0);
        require(j["verdict"]["rockland_fails"] == true, "cli verdict mismatch");
        require(j["witnesses"][0]["degree"] == 1 && j["witnesses"][1]["degree"] == 2,
                "cli witness degrees mismatch");
        require(j["witnesses"][0]["residual"]["mode"] == "exact", "cli residual mode");

        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                       .count();
        require(s < 5.0, "runtime " + std::to_string(s) + " s exceeds 5 s");
    });

    criterion(2,
              "second case: analyze 3 1 1, degree-t ladder witness and degree-s "
              "duality witness, < 10 s", [] {
        auto start = std::chrono::steady_clock::now();
        Verdict v = analyze(3, 1, 1);
        require(v.case_name == "second", "expected the role-swapped pipeline");
        check_witnesses(v, 1, 2);  // t = 1, s = 2
        require(v.witnesses[0].construction == "ladder" &&
                    v.witnesses[1].construction == "duality",
                "workflow mismatch");

        nlohmann::json j = run_cli_analyze("3 1 1", 0);
        require(j["case"] == "second", "cli case mismatch");
        require(j["verdict"]["rockland_fails"] == true, "cli verdict mismatch");

        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                       .count();
        require(s < 10.0, "runtime " + std::to_string(s) + " s exceeds 10 s");
    });

    criterion(3,
              "oracle equivalence: frame and nilpotent brackets match the "
              "matrix-unit oracle exactly for all p+q <= 6", [] {
        for (auto [p, q, p1] : instances(6)) {
            ParabolicData pd = build_parabolic(p, q, p1);
            StructureConstants sc(pd);
            MatrixRealization mr = matrix_oracle(pd);
            mr.verify(pd, sc);
            FrameVerification fv = verify_frame_relations(pd, sc, mr);
            require(fv.ok, "frame formula mismatch at some pair");
            NilpotentAlgebra n = nilpotentize(pd, sc);
            FrameMatrixCache cache(pd, mr);
            for (const FrameVector& u : n.layer1())
                for (const FrameVector& v : n.layer1())
                    require(n.bracket(u, v) ==
                                frame_bracket(cache, u, v).restricted_to_l_p(pd),
                            "nilpotent bracket != fiber projection");
        }
    });

    criterion(4,
              "bracket-generating condition holds on every instance with p+q <= 6", [] {
        for (auto [p, q, p1] : instances(6)) {
            ParabolicData pd = build_parabolic(p, q, p1);
            StructureConstants sc(pd);
            require(check_hormander(nilpotentize(pd, sc)), "rank condition failed");
        }
    });

    criterion(5,
              "symbol identity: composed laplacian symbol equals its closed "
              "local expression exactly for all p+q <= 6", [] {
        for (auto [p, q, p1] : instances(6)) {
            ParabolicData pd = build_parabolic(p, q, p1);
            StructureConstants sc(pd);
            NilpotentAlgebra n = nilpotentize(pd, sc);
            SymbolSpace space(n);
            require(laplacian_symbol(space) == laplacian_local_transcription(space, sc),
                    "composition != transcription");
        }
    });

    criterion(6,
              "representation soundness: homomorphism and independence hold on "
              "every canonical instance with p+q <= 6", [] {
        for (auto [p, q, p1] : instances(6)) {
            ParabolicData pd = build_parabolic(p, q, p1);
            if (pd.degenerate()) continue;
            StructureConstants sc(pd);
            NilpotentAlgebra n = nilpotentize(pd, sc);
            OrthogonalSequence g = strongly_orthogonal_sequence(pd);
            LinearForm l =
                canonical_form(g, std::vector<Quad>(g.gamma.size(), Quad::sqrt2()));
            Polarization pol = choose_polarization(bl_and_a(l, n), n, l);
            Representation rep = realize_rep(l, pol, n);
            require(check_rep_homomorphism(rep, n), "homomorphism failed");
            require(check_linear_independence_at_zero(rep, n), "independence failed");
        }
    });

    criterion(7,
              "spectral cross-check on (2,2,1): bottom 10 eigenvalues match to "
              "1e-8 and 0 appears exactly at the witness degrees", [] {
        ParabolicData pd = build_parabolic(2, 2, 1);
        StructureConstants sc(pd);
        NilpotentAlgebra n = nilpotentize(pd, sc);
        SymbolSpace space(n);
        OrthogonalSequence g = strongly_orthogonal_sequence(pd);
        LinearForm l = canonical_form(g, {Quad::sqrt2()});
        Polarization pol = choose_polarization(bl_and_a(l, n), n, l);
        Representation rep = realize_rep(l, pol, n);
        ModelOperator op = rep_laplacian(rep, laplacian_symbol(space), l, sc);
        SpectrumCrossCheck cc = cross_check_spectrum(op, 6, 10);
        require(cc.formula.size() == 10 && cc.dense.size() == 10, "need 10 eigenvalues");
        require(cc.max_deviation < 1e-8,
                "deviation " + std::to_string(cc.max_deviation));
        Verdict v = analyze(2, 2, 1);
        require(cc.zero_in_dense == v.rockland_fails.value(), "kernel mismatch");
        // per-degree: -sum r is attained exactly at the witness degrees
        std::vector<int> hits = v.spectral_hit_degrees;
        require(hits == std::vector<int>{1, 2}, "spectral hits != witness degrees");
    });

    criterion(8,
              "degree-0 positivity: bottom of the model spectrum on functions "
              "equals sum r > 0 on every analyzed instance", [] {
        for (auto [p, q, p1] : instances(6)) {
            ParabolicData pd = build_parabolic(p, q, p1);
            if (pd.degenerate()) continue;
            Verdict v = analyze(p, q, p1);
            double sum_r = 0;
            for (const RValue& r : v.r_values) sum_r += r.approx;
            require(v.degree0_min > 0, "degree-0 bottom not positive");
            require(std::abs(v.degree0_min - sum_r) < 1e-12, "bottom != sum r");
            // curvature vanishes on functions: its degree-0 spectrum is {0}
            for (double mu : v.m_spectra[0])
                require(std::abs(mu) < 1e-12, "curvature nonzero on functions");
        }
    });

    criterion(9,
              "structural properties: anticommutation, curvature identities, "
              "order independence, homogeneity (randomized)", [] {
        std::mt19937 rng(20260809);

        // {e_a, i_b} = delta on 100 random vectors over random instances
        std::vector<std::tuple<int, int, int>> pool = {{2, 2, 1}, {3, 2, 2}, {2, 3, 1},
                                                       {3, 3, 1}, {4, 1, 2}};
        std::uniform_int_distribution<std::size_t> pick_inst(0, pool.size() - 1);
        std::uniform_int_distribution<int> coeff(-5, 5);
        for (int trial = 0; trial < 100; ++trial) {
            auto [p, q, p1] = pool[pick_inst(rng)];
            ParabolicData pd = build_parabolic(p, q, p1);
            StructureConstants sc(pd);
            NilpotentAlgebra n = nilpotentize(pd, sc);
            SymbolSpace space(n);
            std::uniform_int_distribution<std::size_t> pick_root(0, pd.delta_u.size() - 1);
            Root a = pd.delta_u[pick_root(rng)], b = pd.delta_u[pick_root(rng)];
            ExtVector v(static_cast<std::size_t>(1) << space.m);
            for (auto& c : v) c = QuadC(Quad(coeff(rng)), Quad(coeff(rng)));
            ExtOp e = space.e_op(a), i = space.i_op(b);
            ExtVector lhs = ext_add(e.apply(i.apply(v)), i.apply(e.apply(v)));
            require(ext_is_zero(ext_sub(lhs, a == b ? v : ExtVector(v.size()))),
                    "anticommutation failed");
        }

        // curvature identities and order independence
        for (auto [p, q, p1] : {std::tuple{2, 2, 1}, {3, 2, 2}, {3, 3, 1}}) {
            ParabolicData pd = build_parabolic(p, q, p1);
            StructureConstants sc(pd);
            NilpotentAlgebra n = nilpotentize(pd, sc);
            SymbolSpace space(n);
            OrthogonalSequence g = strongly_orthogonal_sequence(pd);
            LinearForm l =
                canonical_form(g, std::vector<Quad>(g.gamma.size(), Quad::sqrt2()));
            Polarization pol = choose_polarization(bl_and_a(l, n), n, l);
            Representation rep = realize_rep(l, pol, n);
            ModelOperator op = rep_laplacian(rep, laplacian_symbol(space), l, sc);
            const std::vector<Root>& roots = op.which == Polarization::Case::First
                                                 ? pd.delta_u_k
                                                 : pd.delta_u_p;
            int mask = 0;
            for (const Root& r : roots) mask |= 1 << space.ext_index(r);
            ExtVector v(static_cast<std::size_t>(1) << space.m);
            v[static_cast<std::size_t>(mask)] = QuadC(Quad(1));
            for (std::size_t k = 0; k < op.transverse_roots.size(); ++k) {
                ExtOp m = build_m(l, sc, space, op.transverse_roots[k]);
                require(ext_is_zero(ext_sub(m.apply(m.apply(v)),
                                            ext_scale(v, QuadC(op.r[k].squared)))),
                        "M^2 != r^2 on the start vector");
            }
            if (op.transverse_roots.size() >= 2) {
                std::vector<int> order(op.transverse_roots.size());
                for (std::size_t k = 0; k < order.size(); ++k)
                    order[k] = static_cast<int>(k);
                ExtVector base = build_eigenvector_ordered(op, l, sc, space, -1, order);
                std::reverse(order.begin(), order.end());
                ExtVector rev = build_eigenvector_ordered(op, l, sc, space, -1, order);
                require(ext_is_zero(ext_sub(base, rev)), "order dependence detected");
            }
        }

        // homogeneity: l -> c l for 100 random positive rational c
        std::uniform_int_distribution<int> num(1, 12), den(1, 12);
        for (int trial = 0; trial < 100; ++trial) {
            Quad c(Rational(num(rng), den(rng)));
            Verdict v = analyze(2, 2, 1, {c * Quad::sqrt2()});
            require(v.rockland_fails.value(), "verdict changed under scaling");
            require(v.witnesses.size() == 2 && v.witnesses[0].residual_exact_zero &&
                        v.witnesses[1].residual_exact_zero,
                    "witness residual changed under scaling");
        }
    });

    if (g_failures == 0) {
        std::printf("acceptance: all 9 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return 1;
}
