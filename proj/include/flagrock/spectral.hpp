#ifndef FLAGROCK_SPECTRAL_HPP
#define FLAGROCK_SPECTRAL_HPP

// Evaluation of the Laplacian symbol in the induced representation.  On the
// model space (polynomials times a Gaussian) tensor the exterior algebra,
// the operator decomposes as a sum of two-dimensional oscillators D_a plus
// a curvature endomorphism sum M_a of the exterior factor.  The bottom
// oscillator level has energy sum r_a; the ladder (M_a -+ r_a) recursion
// produces exterior eigenvectors with eigenvalue -+ sum r_a, and the
// matching pair is an explicit kernel element: the certificate that the
// operator fails the Rockland condition, hence is not maximal hypoelliptic.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "flagrock/orbit.hpp"
#include "flagrock/symbol.hpp"

namespace flagrock {

// Oscillator frequency r >= 0 with r^2 = sum* N'^2/2 (xi^2 + eta^2), the
// starred sum over partners of the given root across the fiber.
struct RValue {
    Quad squared{0};
    std::optional<Quad> exact;  // engaged when r itself lies in Q(sqrt2)
    double approx = 0.0;
};

RValue compute_r(const LinearForm& l, const ParabolicData& pd,
                 const StructureConstants& sc, const Root& rho);

// The curvature endomorphism attached to a transverse root: per partner
// pair (a compact, b noncompact, |a-b| in the fiber),
//   -(i N'/sqrt2) [ (xi + i eps eta) e_a i_b - (xi - i eps eta) e_b i_a ],
// summed over partners.  Hermitian and degree preserving.
ExtOp build_m(const LinearForm& l, const StructureConstants& sc,
              const SymbolSpace& space, const Root& rho);

// pi_l(laplacian) in fully expanded normal form plus its verified
// oscillator/curvature decomposition.
struct ModelOperator {
    Polarization::Case which = Polarization::Case::First;
    std::vector<Root> transverse_roots;  // lex order, one (x, y) pair each
    int nvars = 0;
    int m = 0;                           // exterior rank |Delta(u)|
    std::vector<RValue> r;               // per transverse root
    ExtOp c_total;                       // sum of curvature endomorphisms
    bool exact_mode = true;              // all r exact in Q(sqrt2)

    // Raw substituted operator: (derivative multi-index, monomial exponent
    // vector) -> exterior coefficient.  Ground truth for residuals.
    std::map<std::pair<MultiIndex, MultiIndex>, ExtOp> raw;

    double sum_r() const;
    Quad sum_r_exact() const;  // valid in exact mode
};

// Substitutes the representation into the symbol and matches the result
// against the oscillator + curvature shape; any structural leftover is an
// error (quadratic cross terms indicate a form the model space cannot
// diagonalize and are reported as an unsupported form).
ModelOperator rep_laplacian(const Representation& rep, const ESymbol& sym,
                            const LinearForm& l, const StructureConstants& sc);

// Ladder recursion from the wedge of all transverse directions:
//   v <- (M_rho + sign * r_rho) v   over the transverse roots in order.
// Returns a simultaneous eigenvector (eigenvalue sign * r_rho for each M);
// verified before returning, throws ZeroCollapseError when the recursion
// degenerates.
ExtVector build_eigenvector(const ModelOperator& op, const LinearForm& l,
                            const StructureConstants& sc, const SymbolSpace& space,
                            int sign);

// Same recursion with the transverse roots visited in a caller-chosen
// order; the result must not depend on it.
ExtVector build_eigenvector_ordered(const ModelOperator& op, const LinearForm& l,
                                    const StructureConstants& sc,
                                    const SymbolSpace& space, int sign,
                                    const std::vector<int>& order);

// Polynomial-times-Gaussian sections of the exterior bundle; the model
// space the operator preserves.
template <class S>
struct ModelSection {
    int nvars = 0;
    std::vector<std::map<MultiIndex, S>> comp;  // one polynomial per subset
};

struct ResidualResult {
    bool exact_zero = false;  // meaningful in exact mode only
    double norm = 0.0;
    double witness_norm = 0.0;
};

// Applies the raw operator to (ground Gaussian) tensor (exterior vector)
// and measures the result.
ResidualResult kernel_residual(const ModelOperator& op, const ExtVector& w);

// Exact application of the raw operator to a polynomial-Gaussian section;
// requires exact mode.  Exposed for consistency tests.
ModelSection<QuadC> apply_model(const ModelOperator& op, const ModelSection<QuadC>& in);

struct WitnessRecord {
    int degree = 0;
    double eigenvalue = 0.0;        // curvature eigenvalue, -sum r
    std::string eigenvalue_exact;   // in exact mode
    bool residual_exact_zero = false;
    double residual = 0.0;
    std::string construction;      // "ladder" or "duality"
};

struct Verdict {
    int p = 0, q = 0, p1 = 0;
    int s = 0, t = 0, dim_e = 0, dim_f = 0;
    bool degenerate = false;
    std::string degenerate_reason;
    bool hormander_ok = false;
    std::vector<Root> gamma;
    std::vector<Quad> weights;
    bool hypothesis_h = false;
    std::string case_name;  // "first" | "second" | "degenerate"
    std::vector<Root> transverse_roots;
    std::vector<RValue> r_values;
    bool exact_mode = false;
    std::vector<std::vector<double>> m_spectra;  // per exterior degree
    std::vector<int> spectral_hit_degrees;       // where -sum r is attained
    std::vector<WitnessRecord> witnesses;
    double degree0_min = 0.0;  // bottom of the model spectrum on functions
    std::optional<bool> rockland_fails;
    std::optional<bool> maximal_hypoelliptic;
};

// Full pipeline for one instance; empty weight list means sqrt2 on every
// strongly orthogonal root (which makes every r rational and the whole
// certificate exact).
Verdict analyze(int p, int q, int p1, const std::vector<Quad>& weights = {});
Verdict analyze_with_form(const ParabolicData& pd, const LinearForm& l);

// Bottom of the model spectrum two ways: the closed composition formula
// sum_a r_a (m_a + n_a + 1) + spec(sum M_a), and a dense eigendecomposition
// over a truncated oscillator-eigenfunction basis assembled from the raw
// operator's matrix elements.
struct SpectrumCrossCheck {
    std::vector<double> formula;
    std::vector<double> dense;
    double max_deviation = 0.0;
    bool zero_in_dense = false;
};

SpectrumCrossCheck cross_check_spectrum(const ModelOperator& op, int max_level = 6,
                                        int count = 10);

// Eigenvalues of the curvature endomorphism restricted to each exterior
// degree (floating point, ascending).
std::vector<std::vector<double>> curvature_spectra(const ExtOp& c, int m);

}  // namespace flagrock

#endif
