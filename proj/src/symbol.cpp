#include "flagrock/symbol.hpp"

#include <algorithm>

namespace flagrock {

namespace {
const Quad kInvSqrt2(Rational(0), Rational(1, 2));  // 1/sqrt2 = sqrt2/2
}

SymbolSpace::SymbolSpace(const NilpotentAlgebra& algebra) : n(&algebra) {
    for (const FrameVector& v : algebra.layer1()) basis.push_back(v);
    layer1_count = static_cast<int>(basis.size());
    for (const FrameVector& v : algebra.layer2()) basis.push_back(v);
    for (std::size_t k = 0; k < basis.size(); ++k) index[basis[k]] = static_cast<int>(k);
    m = static_cast<int>(algebra.pd().delta_u.size());
}

int SymbolSpace::ext_index(const Root& r) const {
    const auto& du = n->pd().delta_u;
    for (std::size_t k = 0; k < du.size(); ++k)
        if (du[k] == r) return static_cast<int>(k);
    throw Error("root not in Delta(u): " + r.str());
}

void ESymbol::add_normalized(const std::vector<int>& ids, const ExtOp& coeff) {
    if (coeff.is_zero()) return;
    auto [it, fresh] = terms_.emplace(ids, coeff);
    if (!fresh) {
        it->second = it->second + coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void ESymbol::add_term(std::vector<int> ids, const ExtOp& coeff) {
    if (coeff.is_zero()) return;
    if (ids.size() > 2)
        throw Error("symbol degree exceeds 2");
    if (ids.size() < 2 || ids[0] <= ids[1]) {
        add_normalized(ids, coeff);
        return;
    }
    // Reorder a*b with a > b.  Both in layer 1: commuting costs the
    // bracket, which is central, so a*b = b*a + [[a, b]].
    std::vector<int> sorted{ids[1], ids[0]};
    add_normalized(sorted, coeff);
    if (space_->is_layer1(ids[0]) && space_->is_layer1(ids[1])) {
        FrameCombo br =
            space_->n->bracket(space_->basis[ids[0]], space_->basis[ids[1]]);
        for (const auto& [w, c] : br.coeffs)
            add_normalized({space_->index.at(w)}, coeff * QuadC(c));
    }
}

ESymbol ESymbol::operator+(const ESymbol& o) const {
    ESymbol r = *this;
    for (const auto& [ids, op] : o.terms_) r.add_normalized(ids, op);
    return r;
}

ESymbol ESymbol::operator-(const ESymbol& o) const {
    ESymbol r = *this;
    for (const auto& [ids, op] : o.terms_) r.add_normalized(ids, op * QuadC(Quad(-1)));
    return r;
}

ESymbol ESymbol::operator*(const ESymbol& o) const {
    ESymbol r(*space_);
    for (const auto& [ids1, op1] : terms_)
        for (const auto& [ids2, op2] : o.terms_) {
            std::vector<int> ids = ids1;
            ids.insert(ids.end(), ids2.begin(), ids2.end());
            r.add_term(std::move(ids), op1 * op2);
        }
    return r;
}

ESymbol ESymbol::formal_adjoint() const {
    ESymbol r(*space_);
    for (const auto& [ids, op] : terms_) {
        std::vector<int> rev(ids.rbegin(), ids.rend());
        QuadC sign = ids.size() % 2 == 0 ? QuadC(Quad(1)) : QuadC(Quad(-1));
        r.add_term(std::move(rev), op.adjoint() * sign);
    }
    return r;
}

ESymbol ESymbol::restrict_degree(int k) const {
    if (k < 0 || k > space_->m)
        throw InvalidParameterError("exterior degree out of range");
    ESymbol r(*space_);
    for (const auto& [ids, op] : terms_) r.add_normalized(ids, op.degree_block(k));
    return r;
}

ESymbol dolbeault_symbol(const SymbolSpace& space) {
    ESymbol d(space);
    const QuadC I = QuadC::i();
    for (const Root& g : space.n->pd().delta_u) {
        ExtOp e = space.e_op(g);
        d.add_term({space.index.at(FrameVector::x(g))}, e * QuadC(kInvSqrt2));
        d.add_term({space.index.at(FrameVector::y(g))}, e * (I * QuadC(kInvSqrt2)));
    }
    return d;
}

ESymbol adjoint_symbol(const SymbolSpace& space) { return dolbeault_symbol(space).formal_adjoint(); }

ESymbol laplacian_symbol(const SymbolSpace& space) {
    ESymbol d = dolbeault_symbol(space);
    ESymbol ds = d.formal_adjoint();
    return d * ds + ds * d;
}

ESymbol laplacian_local_transcription(const SymbolSpace& space,
                                      const StructureConstants& sc) {
    const ParabolicData& pd = space.n->pd();
    ESymbol out(space);
    const ExtOp id = ExtOp::identity(space.m);
    const QuadC minus_half(Quad(Rational(-1, 2)));
    for (const Root& g : pd.delta_u) {
        int x = space.index.at(FrameVector::x(g));
        int y = space.index.at(FrameVector::y(g));
        out.add_term({x, x}, id * minus_half);
        out.add_term({y, y}, id * minus_half);
    }
    const QuadC I = QuadC::i();
    for (const Root& gt : pd.delta_l_p) {
        ExtOp cx(space.m), cy(space.m);
        for (const Root& a : pd.delta_u_k)
            for (const Root& b : pd.delta_u_p) {
                auto diff = root_sum(a, -b);
                if (!diff || abs_root(*diff) != gt) continue;
                int nprime = sc.n(a, -b);
                if (nprime == 0) continue;
                ExtOp eaib = space.e_op(a) * space.i_op(b);
                ExtOp ebia = space.e_op(b) * space.i_op(a);
                cx = cx + (eaib - ebia) * QuadC(Quad(nprime));
                cy = cy + (eaib + ebia) * (I * QuadC(Quad(eps_root(*diff) * nprime)));
            }
        const QuadC scale(-kInvSqrt2);
        out.add_term({space.index.at(FrameVector::x(gt))}, cx * scale);
        out.add_term({space.index.at(FrameVector::y(gt))}, cy * scale);
    }
    return out;
}

}  // namespace flagrock
