#ifndef FLAGROCK_ORBIT_HPP
#define FLAGROCK_ORBIT_HPP

// Coadjoint-orbit machinery on the nilpotent approximation: linear forms,
// the skew form B_l with its distinguished block A, the rank hypothesis on
// A, the polarization choice, and the induced representation realized by
// first-order differential operators with polynomial coefficients.

#include <map>
#include <vector>

#include "flagrock/diffop.hpp"
#include "flagrock/exactlin.hpp"
#include "flagrock/nilpotent.hpp"

namespace flagrock {

class LinearForm {
public:
    LinearForm() = default;

    void set(const FrameVector& v, const Quad& value) {
        if (value.is_zero()) coords_.erase(v);
        else coords_[v] = value;
    }
    Quad operator()(const FrameVector& v) const {
        auto it = coords_.find(v);
        return it == coords_.end() ? Quad(0) : it->second;
    }
    Quad operator()(const FrameCombo& c) const {
        Quad out(0);
        for (const auto& [v, coef] : c.coeffs) out += coef * (*this)(v);
        return out;
    }
    Quad xi(const Root& r) const { return (*this)(FrameVector::x(r)); }
    Quad eta(const Root& r) const { return (*this)(FrameVector::y(r)); }

    bool is_zero() const { return coords_.empty(); }
    // Supported only on fiber directions (every horizontal coordinate zero).
    bool fiber_supported(const ParabolicData& pd) const {
        for (const auto& [v, c] : coords_)
            if (!pd.in_l_p(v.root) && !c.is_zero()) return false;
        return true;
    }
    LinearForm scaled(const Quad& c) const {
        LinearForm out;
        for (const auto& [v, val] : coords_) out.set(v, c * val);
        return out;
    }
    const std::map<FrameVector, Quad>& coords() const { return coords_; }

private:
    std::map<FrameVector, Quad> coords_;
};

// xi_{gamma_i} = weights[i] > 0 on the strongly orthogonal sequence, zero
// everywhere else.  A is then block-diagonal with invertible 2x2 cells for
// every matched pair, so the rank hypothesis holds automatically.
LinearForm canonical_form(const OrthogonalSequence& g, const std::vector<Quad>& weights);

// B_l(u, v) = l([[u, v]]) over the basis (compact pairs | noncompact pairs
// | fiber pairs); A is the compact-rows x noncompact-columns block.
struct SkewForm {
    std::vector<FrameVector> basis;      // full ordered basis
    DenseMat<Quad> full;                 // B_l over that basis
    DenseMat<Quad> a_block;              // 2s x 2t
    int s = 0, t = 0;

    int rank_full() const;
    int rank_a() const;
};

SkewForm bl_and_a(const LinearForm& l, const NilpotentAlgebra& n);

// (H): the block A has maximal rank 2 min(s, t).
bool check_hypothesis_h(const SkewForm& sf);

struct Polarization {
    enum class Case { First, Second };
    Case which = Case::First;
    std::vector<FrameVector> basis;             // the abelian isotropic subalgebra
    std::vector<FrameVector> transverse;        // frame vectors carrying variables
    std::vector<Root> transverse_roots;         // their roots, lex sorted
};

// First case (t >= s): the subalgebra spanned by the noncompact horizontal
// pairs and the fiber; variables are the compact pairs.  Second case: the
// roles of the two horizontal blocks are switched.  Abelianness, isotropy,
// and codim = rank(B_l)/2 are all checked before returning.
Polarization choose_polarization(const SkewForm& sf, const NilpotentAlgebra& n,
                                 const LinearForm& l);

// The induced representation, realized on Schwartz space over the
// transverse variables (x_r, y_r), one pair per transverse root:
//   pi(v) = d/dvar(v)                                  v transverse,
//   pi(w) = i ( l(w) + sum_v var_v * l([[v, w]]) )     w in the subalgebra.
// This is a Lie algebra homomorphism by construction and agrees with the
// classical induced-representation formulas for fiber-supported forms.
struct Representation {
    Polarization pol;
    std::map<FrameVector, DiffOp> pi;
    int nvars = 0;

    int var_index(const FrameVector& v) const;  // -1 when not transverse
    const DiffOp& operator()(const FrameVector& v) const { return pi.at(v); }
    DiffOp operator()(const FrameCombo& c) const;
};

Representation realize_rep(const LinearForm& l, const Polarization& pol,
                           const NilpotentAlgebra& n);

// pi([[u,v]]) == [pi(u), pi(v)] over every basis pair, exactly.
bool check_rep_homomorphism(const Representation& rep, const NilpotentAlgebra& n);

// The derivative coefficients at the origin, one linear functional per
// variable, must be linearly independent over the basis of n_0.
bool check_linear_independence_at_zero(const Representation& rep,
                                       const NilpotentAlgebra& n);

}  // namespace flagrock

#endif
