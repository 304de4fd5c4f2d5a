#ifndef FLAGROCK_ROOTSYS_HPP
#define FLAGROCK_ROOTSYS_HPP

// Type-A root system of u(p,q) together with the parabolic partition
// attached to L = U(p1) x U(p2, q), normalized root vectors with integral
// structure constants, and an independent matrix-unit realization used as
// a cross-checking oracle throughout the project.

#include <map>
#include <string>
#include <vector>

#include "flagrock/cmatrix.hpp"
#include "flagrock/numeric.hpp"

namespace flagrock {

// The root e_i - e_j of gl(n), 1-based indices, i != j.
struct Root {
    int i = 0;
    int j = 0;

    Root() = default;
    Root(int a, int b) : i(a), j(b) {}

    bool positive() const { return i < j; }
    Root operator-() const { return Root(j, i); }
    bool operator==(const Root& o) const { return i == o.i && j == o.j; }
    bool operator!=(const Root& o) const { return !(*this == o); }
    bool operator<(const Root& o) const { return i != o.i ? i < o.i : j < o.j; }

    std::string str() const { return "e" + std::to_string(i) + "-e" + std::to_string(j); }
};

// Sum of two roots, or nothing when it is not a root.
// (e_a - e_b) + (e_c - e_d) is a root iff b == c or d == a.
std::optional<Root> root_sum(const Root& x, const Root& y);

// |delta|: delta itself when positive, -delta otherwise.
inline Root abs_root(const Root& r) { return r.positive() ? r : -r; }
// epsilon(delta): +1 when positive, -1 otherwise.
inline int eps_root(const Root& r) { return r.positive() ? +1 : -1; }

// Parabolic data for G = U(p,q), L = U(p1) x U(p2,q).  Root sets follow
// the block pattern of the partition {1..p1 | p1+1..p | p+1..p+q}.
struct ParabolicData {
    int p = 0, q = 0, p1 = 0, p2 = 0, n = 0;

    std::vector<Root> delta_u;      // i <= p1 < j
    std::vector<Root> delta_u_k;    // i <= p1 < j <= p   (compact)
    std::vector<Root> delta_u_p;    // i <= p1,  j > p    (noncompact)
    std::vector<Root> delta_l_p;    // p1 < i <= p < j    (fiber directions)
    std::vector<Root> delta_l_k;    // within a block of the partition

    int s = 0;  // |delta_u_k| = p1 * p2
    int t = 0;  // |delta_u_p| = p1 * q

    bool compact(const Root& r) const { return (r.i <= p) == (r.j <= p); }
    bool is_root(const Root& r) const {
        return r.i >= 1 && r.j >= 1 && r.i <= n && r.j <= n && r.i != r.j;
    }
    bool in_u(const Root& r) const { return r.i <= p1 && r.j > p1; }
    bool in_u_k(const Root& r) const { return in_u(r) && r.j <= p; }
    bool in_u_p(const Root& r) const { return in_u(r) && r.j > p; }
    bool in_l_p(const Root& r) const { return r.i > p1 && r.i <= p && r.j > p; }
    bool in_l_k(const Root& r) const;  // same block, either orientation

    std::vector<Root> all_positive_roots() const;

    // No fiber directions: L has compact noncompact-part, the pipeline
    // degenerates and no certificate is attempted.
    bool degenerate() const { return p2 == 0; }
};

ParabolicData build_parabolic(int p, int q, int p1);

// N_{alpha,beta} over all ordered pairs of roots (positive and negative),
// derived from matrix-unit commutators; every nonzero value is +-1.
class StructureConstants {
public:
    explicit StructureConstants(const ParabolicData& pd);

    // 0 when alpha + beta is not a root.
    int n(const Root& alpha, const Root& beta) const;

    // Test hook: flip the sign of one entry (and its antisymmetric mate)
    // so downstream consistency checks can be shown to catch corruption.
    void corrupt_for_test();

private:
    int p_ = 0;
    std::map<std::pair<Root, Root>, int> table_;
};

// Literal matrices: E_alpha = matrix unit e_{ij}, Cartan H_alpha = e_ii - e_jj.
// Together with the trace form B(X,Y) = tr(XY) these satisfy
//   [E_a, E_-a] = H_a,  [E_a, E_b] = N_{a,b} E_{a+b},  N_{a,b} = -N_{-a,-b},
// the basis is orthonormal for <X,Y> = -B(X, theta(sigma(Y))) = tr(X Y*),
// and -theta(sigma(E_a)) = E_{-a}.
class MatrixRealization {
public:
    explicit MatrixRealization(const ParabolicData& pd);

    int dim() const { return n_; }
    CMatrix root_vector(const Root& r) const { return CMatrix::unit(n_, r.i - 1, r.j - 1); }
    CMatrix cartan(const Root& r) const;
    // Cartan involution theta = Ad(diag(I_p, -I_q)).
    CMatrix theta(const CMatrix& m) const;
    // Conjugation fixing u(p,q): sigma(X) = -J X* J.
    CMatrix sigma(const CMatrix& m) const;
    // Value alpha(H) for diagonal H, as the (i,i)-(j,j) difference.
    QuadC root_value(const Root& alpha, const CMatrix& h) const;

    // Checks equations (bracket normalization, involution, orthonormality)
    // against the given table; throws InternalConsistencyError on mismatch.
    void verify(const ParabolicData& pd, const StructureConstants& sc) const;

private:
    int n_ = 0, p_ = 0;
};

inline MatrixRealization matrix_oracle(const ParabolicData& pd) { return MatrixRealization(pd); }

}  // namespace flagrock

#endif
