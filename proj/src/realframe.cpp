#include "flagrock/realframe.hpp"

namespace flagrock {

namespace {
const Quad kInvSqrt2(Rational(0), Rational(1, 2));  // sqrt2 / 2 = 1/sqrt2
}

FrameCombo FrameCombo::restricted_to_u(const ParabolicData& pd) const {
    FrameCombo out;
    for (const auto& [v, c] : coeffs)
        if (pd.in_u(v.root)) out.add(v, c);
    return out;
}

FrameCombo FrameCombo::restricted_to_l_p(const ParabolicData& pd) const {
    FrameCombo out;
    for (const auto& [v, c] : coeffs)
        if (pd.in_l_p(v.root)) out.add(v, c);
    return out;
}

std::vector<FrameVector> Frame::all() const {
    std::vector<FrameVector> out = e_block;
    out.insert(out.end(), f_block.begin(), f_block.end());
    return out;
}

Frame build_frame(const ParabolicData& pd) {
    Frame f;
    f.pd = pd;
    for (const Root& r : pd.delta_u) {
        f.e_block.push_back(FrameVector::x(r));
        f.e_block.push_back(FrameVector::y(r));
    }
    for (const Root& r : pd.delta_l_p) {
        f.f_block.push_back(FrameVector::x(r));
        f.f_block.push_back(FrameVector::y(r));
    }
    return f;
}

CMatrix frame_matrix(const ParabolicData& pd, const MatrixRealization& mr,
                     const FrameVector& v) {
    CMatrix ep = mr.root_vector(v.root);
    CMatrix em = mr.root_vector(-v.root);
    bool cpt = pd.compact(v.root);
    CMatrix comb = v.kind == FrameVector::Kind::X
                       ? (cpt ? ep - em : ep + em)
                       : (cpt ? ep + em : ep - em);
    QuadC scale = v.kind == FrameVector::Kind::X ? QuadC(kInvSqrt2)
                                                 : QuadC(Quad(0), -kInvSqrt2);
    return scale * comb;
}

FrameMatrixCache::FrameMatrixCache(const ParabolicData& parabolic,
                                   const MatrixRealization& mr)
    : pd(&parabolic) {
    for (const FrameVector& w : build_frame(parabolic).all())
        mats.emplace_back(w, frame_matrix(parabolic, mr, w));
}

const CMatrix& FrameMatrixCache::of(const FrameVector& v) const {
    for (const auto& [w, m] : mats)
        if (w == v) return m;
    throw Error("vector not in frame: " + v.str());
}

FrameCombo frame_bracket(const FrameMatrixCache& cache, const FrameVector& u,
                         const FrameVector& v) {
    const ParabolicData& pd = *cache.pd;
    CMatrix c = cache.of(u).commutator(cache.of(v));
    FrameCombo combo;
    CMatrix residual = c;
    for (const auto& [w, wm] : cache.mats) {
        QuadC coef = hermitian_inner(c, wm);
        if (!coef.im.is_zero())
            throw InternalConsistencyError("frame-real-expansion",
                                           "complex coefficient on " + w.str());
        if (coef.re.is_zero()) continue;
        combo.add(w, coef.re);
        residual = residual - QuadC(coef.re) * wm;
    }
    // Whatever is left must be an isotropy direction: diagonal or within a
    // block of the partition {1..p1 | p1+1..p | p+1..n}.
    auto block = [&pd](int idx0) { return idx0 < pd.p1 ? 0 : (idx0 < pd.p ? 1 : 2); };
    for (int i = 0; i < residual.dim(); ++i)
        for (int j = 0; j < residual.dim(); ++j) {
            if (i == j || block(i) == block(j)) continue;
            if (!residual.at(i, j).is_zero())
                throw InternalConsistencyError(
                    "frame-expressibility",
                    "[" + u.str() + "," + v.str() + "] leaves the frame span");
        }
    return combo;
}

FrameCombo frame_bracket(const ParabolicData& pd, const MatrixRealization& mr,
                         const FrameVector& u, const FrameVector& v) {
    return frame_bracket(FrameMatrixCache(pd, mr), u, v);
}

FrameCombo bracket_formula(const ParabolicData& pd, const StructureConstants& sc,
                           const FrameVector& u, const FrameVector& v) {
    if (pd.in_u_k(v.root) && pd.in_u_p(u.root)) {
        FrameCombo swapped = bracket_formula(pd, sc, v, u);
        FrameCombo out;
        for (const auto& [w, c] : swapped.coeffs) out.add(w, -c);
        return out;
    }
    if (!pd.in_u_k(u.root) || !pd.in_u_p(v.root))
        throw Error("bracket_formula expects a compact x noncompact pair");

    const Root alpha = u.root, beta = v.root;
    const int n_sum = sc.n(alpha, beta);
    const int n_dif = sc.n(alpha, -beta);

    FrameCombo out;
    auto add_term = [&](const Root& r, FrameVector::Kind kind, Quad coef) {
        if (coef.is_zero()) return;
        Root pos = abs_root(r);
        if (!pd.in_u(pos) && !pd.in_l_p(pos))
            throw InternalConsistencyError("frame-formula-root",
                                           "term root outside frame: " + pos.str());
        out.add(FrameVector(kind, pos), coef);
    };

    const bool ux = u.kind == FrameVector::Kind::X;
    const bool vx = v.kind == FrameVector::Kind::X;

    std::optional<Root> sum = root_sum(alpha, beta);
    std::optional<Root> difference = root_sum(alpha, -beta);

    if (ux && vx) {
        if (sum) add_term(*sum, FrameVector::Kind::X, Quad(n_sum) * kInvSqrt2);
        if (difference) add_term(*difference, FrameVector::Kind::X, Quad(n_dif) * kInvSqrt2);
    } else if (ux && !vx) {
        if (sum) add_term(*sum, FrameVector::Kind::Y, Quad(n_sum) * kInvSqrt2);
        if (difference)
            add_term(*difference, FrameVector::Kind::Y,
                     Quad(-eps_root(*difference) * n_dif) * kInvSqrt2);
    } else if (!ux && vx) {
        if (sum) add_term(*sum, FrameVector::Kind::Y, Quad(n_sum) * kInvSqrt2);
        if (difference)
            add_term(*difference, FrameVector::Kind::Y,
                     Quad(eps_root(*difference) * n_dif) * kInvSqrt2);
    } else {
        if (sum) add_term(*sum, FrameVector::Kind::X, Quad(-n_sum) * kInvSqrt2);
        if (difference) add_term(*difference, FrameVector::Kind::X, Quad(n_dif) * kInvSqrt2);
    }
    return out;
}

FrameVerification verify_frame_relations(const ParabolicData& pd,
                                         const StructureConstants& sc,
                                         const MatrixRealization& mr) {
    FrameVerification res;
    FrameMatrixCache cache(pd, mr);
    Frame fr = build_frame(pd);
    auto vecs = fr.all();
    for (const FrameVector& u : vecs)
        for (const FrameVector& v : vecs) {
            FrameCombo oracle = frame_bracket(cache, u, v);
            bool mixed = (pd.in_u_k(u.root) && pd.in_u_p(v.root)) ||
                         (pd.in_u_p(u.root) && pd.in_u_k(v.root));
            if (mixed) {
                FrameCombo formula = bracket_formula(pd, sc, u, v);
                if (!(formula == oracle)) {
                    res.ok = false;
                    res.diffs.push_back("formula mismatch at [" + u.str() + "," +
                                        v.str() + "]");
                }
            } else if (!oracle.restricted_to_l_p(pd).is_zero()) {
                res.ok = false;
                res.diffs.push_back("unexpected fiber part in [" + u.str() + "," +
                                    v.str() + "]");
            }
        }
    return res;
}

}  // namespace flagrock
