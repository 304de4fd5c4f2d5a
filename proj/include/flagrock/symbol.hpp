#ifndef FLAGROCK_SYMBOL_HPP
#define FLAGROCK_SYMBOL_HPP

// Principal symbols of the pulled-back Dolbeault operator, its formal
// adjoint, and their Laplacian, as noncommutative polynomials of degree at
// most 2 over the nilpotent approximation with coefficients in the
// exterior-algebra operators.  Products are normalized to a PBW normal
// order (layer 1 before layer 2, each block in frame order); reordering
// two layer-1 factors costs a layer-2 correction term from the bracket.

#include <map>
#include <vector>

#include "flagrock/extop.hpp"
#include "flagrock/nilpotent.hpp"

namespace flagrock {

// Shared indexing: n_0 basis ids (layer 1 then layer 2) and the exterior
// index of each root of u.
struct SymbolSpace {
    explicit SymbolSpace(const NilpotentAlgebra& algebra);

    const NilpotentAlgebra* n;
    std::vector<FrameVector> basis;          // PBW order
    std::map<FrameVector, int> index;
    int layer1_count = 0;
    int m = 0;  // |Delta(u)|

    bool is_layer1(int id) const { return id < layer1_count; }
    int ext_index(const Root& r) const;      // position of r in Delta(u)
    ExtOp e_op(const Root& r) const { return ExtOp::wedge(m, ext_index(r)); }
    ExtOp i_op(const Root& r) const { return ExtOp::contraction(m, ext_index(r)); }
};

class ESymbol {
public:
    explicit ESymbol(const SymbolSpace& space) : space_(&space) {}

    const SymbolSpace& space() const { return *space_; }
    const std::map<std::vector<int>, ExtOp>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Adds coeff (x) product of the given basis vectors (any order, degree
    // <= 2), normalizing on the way in.
    void add_term(std::vector<int> ids, const ExtOp& coeff);

    ESymbol operator+(const ESymbol& o) const;
    ESymbol operator-(const ESymbol& o) const;
    ESymbol operator*(const ESymbol& o) const;
    bool operator==(const ESymbol& o) const { return terms_ == o.terms_; }

    // Formal adjoint: reverse each monomial, negate per vector-field
    // factor, conjugate-transpose the coefficient.
    ESymbol formal_adjoint() const;

    // Every exterior coefficient replaced by its degree-k diagonal block.
    ESymbol restrict_degree(int k) const;

private:
    void add_normalized(const std::vector<int>& ids, const ExtOp& coeff);

    const SymbolSpace* space_;
    std::map<std::vector<int>, ExtOp> terms_;
};

// d-bar ~ sum_g e_g (X_g + i Y_g)/sqrt2  (the antiholomorphic field in the
// real frame).
ESymbol dolbeault_symbol(const SymbolSpace& space);
// Formal adjoint, = -sum_g i_g (X_g - i Y_g)/sqrt2.
ESymbol adjoint_symbol(const SymbolSpace& space);
// d-bar d-bar* + d-bar* d-bar by noncommutative composition.
ESymbol laplacian_symbol(const SymbolSpace& space);

// The same operator transcribed from its closed local expression:
//   -1/2 sum_{g in u} (X_g^2 + Y_g^2)
//   - sqrt2/2 sum_{g~ fiber} [ (sum* N' (e_a i_b - e_b i_a)) X_g~
//                  + i (sum* eps(a-b) N' (e_a i_b + e_b i_a)) Y_g~ ],
// the starred sums running over compact a, noncompact b, |a-b| = g~.
// Equality with laplacian_symbol is the module's central consistency test.
ESymbol laplacian_local_transcription(const SymbolSpace& space,
                                      const StructureConstants& sc);

}  // namespace flagrock

#endif
