#include "flagrock/selftest.hpp"

#include <chrono>

#include "flagrock/spectral.hpp"

namespace flagrock {

namespace {

void check_instance(int p, int q, int p1, const std::string& fault) {
    ParabolicData pd = build_parabolic(p, q, p1);
    StructureConstants sc(pd);
    if (fault == "structure-constants") sc.corrupt_for_test();
    MatrixRealization mr = matrix_oracle(pd);
    mr.verify(pd, sc);

    FrameVerification fv = verify_frame_relations(pd, sc, mr);
    if (!fv.ok)
        throw InternalConsistencyError("frame-bracket-formula", fv.diffs.front());

    NilpotentAlgebra n = nilpotentize(pd, sc);
    n.check_jacobi();
    FrameMatrixCache cache(pd, mr);
    for (const FrameVector& u : n.layer1())
        for (const FrameVector& v : n.layer1())
            if (!(n.bracket(u, v) ==
                  frame_bracket(cache, u, v).restricted_to_l_p(pd)))
                throw InternalConsistencyError("nilpotent-projection",
                                               u.str() + "," + v.str());
    if (!check_hormander(n))
        throw InternalConsistencyError("hormander", "bracket map not onto");

    SymbolSpace space(n);
    for (const Root& a : pd.delta_u)
        for (const Root& b : pd.delta_u) {
            ExtOp anti = space.e_op(a) * space.i_op(b) + space.i_op(b) * space.e_op(a);
            ExtOp expect = a == b ? ExtOp::identity(space.m) : ExtOp(space.m);
            if (!(anti == expect))
                throw InternalConsistencyError("exterior-anticommutation",
                                               a.str() + "," + b.str());
        }
    ESymbol lap = laplacian_symbol(space);
    if (!(lap == laplacian_local_transcription(space, sc)))
        throw InternalConsistencyError("symbol-local-identity",
                                       "composition != closed local expression");
    if (!(lap == lap.formal_adjoint()))
        throw InternalConsistencyError("symbol-self-adjoint",
                                       "laplacian symbol not formally self-adjoint");

    if (pd.degenerate()) return;

    OrthogonalSequence g = strongly_orthogonal_sequence(pd);
    LinearForm l = canonical_form(g, std::vector<Quad>(g.gamma.size(), Quad::sqrt2()));
    SkewForm sf = bl_and_a(l, n);
    if (!check_hypothesis_h(sf))
        throw InternalConsistencyError("hypothesis-H", "canonical form fails (H)");
    Polarization pol = choose_polarization(sf, n, l);
    Representation rep = realize_rep(l, pol, n);
    if (!check_rep_homomorphism(rep, n))
        throw InternalConsistencyError("rep-homomorphism", "commutators disagree");
    if (!check_linear_independence_at_zero(rep, n))
        throw InternalConsistencyError("rep-independence", "dependent derivatives");

    // Full pipeline including the witness residual gates.
    Verdict v = analyze(p, q, p1);
    if (!v.rockland_fails || !*v.rockland_fails)
        throw InternalConsistencyError("verdict",
                                       "no kernel witness on a nondegenerate instance");
}

}  // namespace

SelftestResult run_selftest(int max_n, const std::string& fault) {
    SelftestResult res;
    auto start = std::chrono::steady_clock::now();
    auto elapsed = [&start] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    };
    for (int n = 2; n <= max_n; ++n)
        for (int p = 1; p < n; ++p)
            for (int p1 = 1; p1 <= p; ++p1) {
                ++res.instances;
                try {
                    check_instance(p, n - p, p1, fault);
                } catch (const InternalConsistencyError& e) {
                    res.ok = false;
                    res.failed_invariant = e.invariant;
                    res.detail = e.what();
                    res.seconds = elapsed();
                    return res;
                }
            }
    res.seconds = elapsed();
    return res;
}

}  // namespace flagrock
