#ifndef FLAGROCK_REALFRAME_HPP
#define FLAGROCK_REALFRAME_HPP

// Real orthonormal frame (X_g, Y_g) of the tangent space at the origin of
// G/(L cap K), split into the horizontal block (roots of u) and the fiber
// block (noncompact roots of l).  Frame brackets are computed through the
// matrix oracle and re-expanded in the frame; the closed bracket formulas
// for compact x noncompact pairs are verified against that expansion.

#include <map>
#include <string>
#include <vector>

#include "flagrock/rootsys.hpp"

namespace flagrock {

struct FrameVector {
    enum class Kind { X, Y };
    Kind kind = Kind::X;
    Root root;

    FrameVector() = default;
    FrameVector(Kind k, Root r) : kind(k), root(r) {}
    static FrameVector x(Root r) { return {Kind::X, r}; }
    static FrameVector y(Root r) { return {Kind::Y, r}; }

    bool operator==(const FrameVector& o) const { return kind == o.kind && root == o.root; }
    bool operator<(const FrameVector& o) const {
        return root != o.root ? root < o.root : kind < o.kind;
    }
    std::string str() const {
        return (kind == Kind::X ? "X(" : "Y(") + root.str() + ")";
    }
};

// Real linear combination of frame vectors with coefficients in Q(sqrt2).
struct FrameCombo {
    std::map<FrameVector, Quad> coeffs;

    void add(const FrameVector& v, const Quad& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = coeffs.emplace(v, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) coeffs.erase(it);
        }
    }
    bool is_zero() const { return coeffs.empty(); }
    bool operator==(const FrameCombo& o) const { return coeffs == o.coeffs; }

    FrameCombo restricted_to_u(const ParabolicData& pd) const;    // E-part
    FrameCombo restricted_to_l_p(const ParabolicData& pd) const;  // F-part
};

struct Frame {
    ParabolicData pd;
    std::vector<FrameVector> e_block;  // (X_g, Y_g), g in Delta(u)
    std::vector<FrameVector> f_block;  // (X_g, Y_g), g in Delta(l cap p)

    std::vector<FrameVector> all() const;
};

Frame build_frame(const ParabolicData& pd);

// The frame vector as a literal matrix of the oracle:
//   compact g:     X = (E_g - E_-g)/sqrt2,  Y = -i (E_g + E_-g)/sqrt2
//   noncompact g:  X = (E_g + E_-g)/sqrt2,  Y = -i (E_g - E_-g)/sqrt2
CMatrix frame_matrix(const ParabolicData& pd, const MatrixRealization& mr,
                     const FrameVector& v);

// Precomputed frame matrices, for callers expanding many brackets.
struct FrameMatrixCache {
    FrameMatrixCache(const ParabolicData& pd, const MatrixRealization& mr);
    const ParabolicData* pd;
    std::vector<std::pair<FrameVector, CMatrix>> mats;
    const CMatrix& of(const FrameVector& v) const;
};

// Oracle bracket of two frame vectors, re-expanded in the frame.  The
// residual outside the frame span must lie in l cap k plus the Cartan;
// anything else raises an internal-consistency error.
FrameCombo frame_bracket(const ParabolicData& pd, const MatrixRealization& mr,
                         const FrameVector& u, const FrameVector& v);
FrameCombo frame_bracket(const FrameMatrixCache& cache, const FrameVector& u,
                         const FrameVector& v);

// Closed bracket formulas for alpha in Delta(u cap k), beta in Delta(u cap p):
//   [X_a, X_b] = (N_{a,b} X_{a+b} + N_{a,-b} X_|a-b|) / sqrt2
//   [X_a, Y_b] = (N_{a,b} Y_{a+b} - eps(a-b) N_{a,-b} Y_|a-b|) / sqrt2
//   [Y_a, X_b] = (N_{a,b} Y_{a+b} + eps(a-b) N_{a,-b} Y_|a-b|) / sqrt2
//   [Y_a, Y_b] = -(N_{a,b} X_{a+b} - N_{a,-b} X_|a-b|) / sqrt2
// Terms whose root falls outside the frame (isotropy directions) drop out.
FrameCombo bracket_formula(const ParabolicData& pd, const StructureConstants& sc,
                           const FrameVector& u, const FrameVector& v);

struct FrameVerification {
    bool ok = true;
    std::vector<std::string> diffs;
};

// Checks the closed formulas against the oracle on every compact x
// noncompact pair, and that every other pair of frame vectors brackets
// with zero fiber part.
FrameVerification verify_frame_relations(const ParabolicData& pd,
                                         const StructureConstants& sc,
                                         const MatrixRealization& mr);

}  // namespace flagrock

#endif
