#include "flagrock/orbit.hpp"

#include <algorithm>

namespace flagrock {

LinearForm canonical_form(const OrthogonalSequence& g, const std::vector<Quad>& weights) {
    if (g.size() == 0)
        throw InvalidFormError("empty strongly orthogonal sequence");
    if (static_cast<int>(weights.size()) != g.size())
        throw InvalidFormError("need one weight per strongly orthogonal root");
    LinearForm l;
    for (int i = 0; i < g.size(); ++i) {
        if (weights[i].sign() <= 0)
            throw InvalidFormError("weights must be positive");
        l.set(FrameVector::x(g.gamma[i]), weights[i]);
    }
    return l;
}

SkewForm bl_and_a(const LinearForm& l, const NilpotentAlgebra& n) {
    const ParabolicData& pd = n.pd();
    SkewForm sf;
    sf.s = pd.s;
    sf.t = pd.t;
    // Basis order: compact horizontal pairs, noncompact horizontal pairs,
    // fiber pairs; (X, Y) per root, roots in lex order.
    for (const Root& r : pd.delta_u_k) {
        sf.basis.push_back(FrameVector::x(r));
        sf.basis.push_back(FrameVector::y(r));
    }
    for (const Root& r : pd.delta_u_p) {
        sf.basis.push_back(FrameVector::x(r));
        sf.basis.push_back(FrameVector::y(r));
    }
    for (const Root& r : pd.delta_l_p) {
        sf.basis.push_back(FrameVector::x(r));
        sf.basis.push_back(FrameVector::y(r));
    }
    const std::size_t dim = sf.basis.size();
    sf.full.assign(dim, std::vector<Quad>(dim, Quad(0)));
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b)
            sf.full[a][b] = l(n.bracket(sf.basis[a], sf.basis[b]));
    sf.a_block.assign(2 * sf.s, std::vector<Quad>(2 * sf.t, Quad(0)));
    for (int a = 0; a < 2 * sf.s; ++a)
        for (int b = 0; b < 2 * sf.t; ++b) sf.a_block[a][b] = sf.full[a][2 * sf.s + b];
    return sf;
}

int SkewForm::rank_full() const { return full.empty() ? 0 : exact_rank(full); }
int SkewForm::rank_a() const { return a_block.empty() ? 0 : exact_rank(a_block); }

bool check_hypothesis_h(const SkewForm& sf) {
    return sf.rank_a() == 2 * std::min(sf.s, sf.t);
}

Polarization choose_polarization(const SkewForm& sf, const NilpotentAlgebra& n,
                                 const LinearForm& l) {
    if (!check_hypothesis_h(sf))
        throw HypothesisFailedError("block A does not have maximal rank");
    const ParabolicData& pd = n.pd();
    Polarization pol;
    pol.which = pd.t >= pd.s ? Polarization::Case::First : Polarization::Case::Second;
    const std::vector<Root>& inside =
        pol.which == Polarization::Case::First ? pd.delta_u_p : pd.delta_u_k;
    const std::vector<Root>& outside =
        pol.which == Polarization::Case::First ? pd.delta_u_k : pd.delta_u_p;
    for (const Root& r : inside) {
        pol.basis.push_back(FrameVector::x(r));
        pol.basis.push_back(FrameVector::y(r));
    }
    for (const Root& r : pd.delta_l_p) {
        pol.basis.push_back(FrameVector::x(r));
        pol.basis.push_back(FrameVector::y(r));
    }
    pol.transverse_roots = outside;
    std::sort(pol.transverse_roots.begin(), pol.transverse_roots.end());
    for (const Root& r : pol.transverse_roots) {
        pol.transverse.push_back(FrameVector::x(r));
        pol.transverse.push_back(FrameVector::y(r));
    }

    // The subalgebra must be abelian and isotropic, with codimension equal
    // to half the rank of B_l.
    for (const FrameVector& h1 : pol.basis)
        for (const FrameVector& h2 : pol.basis) {
            if (!n.bracket(h1, h2).is_zero())
                throw InternalConsistencyError("polarization-abelian",
                                               h1.str() + "," + h2.str());
            if (!l(n.bracket(h1, h2)).is_zero())
                throw InternalConsistencyError("polarization-isotropic",
                                               h1.str() + "," + h2.str());
        }
    const int dim_n = static_cast<int>(n.basis().size());
    const int codim = dim_n - static_cast<int>(pol.basis.size());
    if (2 * codim != sf.rank_full())
        throw InternalConsistencyError("polarization-codim",
                                       "codim != rank(B_l)/2");
    return pol;
}

int Representation::var_index(const FrameVector& v) const {
    for (std::size_t k = 0; k < pol.transverse.size(); ++k)
        if (pol.transverse[k] == v) return static_cast<int>(k);
    return -1;
}

DiffOp Representation::operator()(const FrameCombo& c) const {
    DiffOp out(nvars);
    for (const auto& [v, coef] : c.coeffs) out = out + pi.at(v) * QuadC(coef);
    return out;
}

Representation realize_rep(const LinearForm& l, const Polarization& pol,
                           const NilpotentAlgebra& n) {
    if (!l.fiber_supported(n.pd()))
        throw InvalidFormError(
            "form has horizontal support; only fiber-supported forms are realized");
    Representation rep;
    rep.pol = pol;
    rep.nvars = static_cast<int>(pol.transverse.size());
    const QuadC I = QuadC::i();
    for (const FrameVector& v : n.basis()) {
        int k = rep.var_index(v);
        if (k >= 0) {
            // Transverse direction: plain derivative (the constant i*l(v)
            // vanishes for fiber-supported forms).
            rep.pi[v] = DiffOp::partial(rep.nvars, k) +
                        DiffOp::multiplication(
                            Poly::constant(rep.nvars, I * QuadC(l(v))));
            continue;
        }
        // Everything else acts by multiplication by i times an affine
        // polynomial read off the bracket against the transverse frame.
        Poly poly = Poly::constant(rep.nvars, QuadC(l(v)));
        for (std::size_t m = 0; m < pol.transverse.size(); ++m) {
            Quad coef = l(n.bracket(pol.transverse[m], v));
            if (!coef.is_zero())
                poly = poly + Poly::variable(rep.nvars, static_cast<int>(m), QuadC(coef));
        }
        rep.pi[v] = DiffOp::multiplication(poly * I);
    }
    return rep;
}

bool check_rep_homomorphism(const Representation& rep, const NilpotentAlgebra& n) {
    auto basis = n.basis();
    for (const FrameVector& u : basis)
        for (const FrameVector& v : basis) {
            DiffOp lhs = rep(u).commutator(rep(v));
            DiffOp rhs = rep(n.bracket(u, v));
            if (!(lhs == rhs)) return false;
        }
    return true;
}

bool check_linear_independence_at_zero(const Representation& rep,
                                       const NilpotentAlgebra& n) {
    // Rows: basis vectors of n_0; columns: variables.  Entry = coefficient
    // of d/dvar_k in pi(basis) evaluated at the origin.
    auto basis = n.basis();
    DenseMat<QuadC> m(basis.size(), std::vector<QuadC>(rep.nvars, QuadC()));
    for (std::size_t r = 0; r < basis.size(); ++r)
        for (const auto& [d, p] : rep(basis[r]).terms()) {
            if (mi_degree(d) != 1) continue;
            int k = 0;
            while (d[k] == 0) ++k;
            m[r][k] = p.value_at_zero();
        }
    return exact_rank(m) == rep.nvars;
}

}  // namespace flagrock
