#ifndef FLAGROCK_NILPOTENT_HPP
#define FLAGROCK_NILPOTENT_HPP

// The 2-step nilpotent approximation of the tangent space at the origin:
// layer 1 carries the horizontal frame (roots of u), layer 2 the fiber
// frame (noncompact roots of l), and the bracket is the fiber projection
// of the frame bracket.  Also: the bracket-generating (Hormander) rank
// condition and strongly orthogonal root sequences.

#include <map>
#include <optional>
#include <vector>

#include "flagrock/realframe.hpp"

namespace flagrock {

class NilpotentAlgebra {
public:
    NilpotentAlgebra(const ParabolicData& pd, const StructureConstants& sc);

    const ParabolicData& pd() const { return pd_; }
    const std::vector<FrameVector>& layer1() const { return layer1_; }
    const std::vector<FrameVector>& layer2() const { return layer2_; }
    std::vector<FrameVector> basis() const;

    // [[u, v]]: zero unless both arguments are in layer 1, in which case it
    // is the fiber part of the frame bracket (a layer-2 combination).
    FrameCombo bracket(const FrameVector& u, const FrameVector& v) const;

    // Asserts the Jacobi identity over all basis triples.
    void check_jacobi() const;

private:
    ParabolicData pd_;
    std::vector<FrameVector> layer1_, layer2_;
    std::map<std::pair<FrameVector, FrameVector>, FrameCombo> table_;
};

inline NilpotentAlgebra nilpotentize(const ParabolicData& pd, const StructureConstants& sc) {
    return NilpotentAlgebra(pd, sc);
}

// True iff the induced map wedge^2(layer1) -> layer2 is onto, decided by an
// exact rank computation.
bool check_hormander(const NilpotentAlgebra& n);

// Pairwise strongly orthogonal roots in Delta(l cap p); the anti-diagonal
// construction gives min(p2, q) of them.
struct OrthogonalSequence {
    std::vector<Root> gamma;
    int size() const { return static_cast<int>(gamma.size()); }
};

// Builds the sequence and exhaustively verifies both defining properties
// (strong orthogonality, and the at-most-one-match property below) before
// returning.  Throws when there are no fiber roots.
OrthogonalSequence strongly_orthogonal_sequence(const ParabolicData& pd);

struct UniquenessMatch {
    int gamma_index = -1;
    Root beta;
    int direction = 0;  // alpha + dir * gamma = beta
};

// For each root alpha of u, the (at most one) pair (gamma_i, beta) with
// alpha +- gamma_i = beta in Delta(u).  Records which side of the
// compact/noncompact dichotomy is fully matched.
struct UniquenessReport {
    std::map<Root, std::vector<UniquenessMatch>> matches;
    bool all_compact_matched = false;
    bool all_noncompact_matched = false;

    std::optional<UniquenessMatch> match_of(const Root& alpha) const {
        auto it = matches.find(alpha);
        if (it == matches.end() || it->second.empty()) return std::nullopt;
        return it->second.front();
    }
};

UniquenessReport uniqueness_report(const ParabolicData& pd, const OrthogonalSequence& g);

}  // namespace flagrock

#endif
