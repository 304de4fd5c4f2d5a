#ifndef FLAGROCK_EXTOP_HPP
#define FLAGROCK_EXTOP_HPP

// Operators on the exterior algebra over the antiholomorphic directions.
// Basis elements are subsets S of Delta(u) under a fixed root order,
// encoded as bitmasks; wedge and contraction carry the parity sign
// (-1)^{#elements of S preceding the root}.

#include <map>
#include <vector>

#include "flagrock/numeric.hpp"

namespace flagrock {

using ExtVector = std::vector<QuadC>;  // length 2^m

class ExtOp {
public:
    ExtOp() = default;
    explicit ExtOp(int m) : m_(m) {}

    static ExtOp identity(int m) {
        ExtOp e(m);
        for (int s = 0; s < (1 << m); ++s) e.add(s, s, QuadC(Quad(1)));
        return e;
    }
    // Wedge by the k-th basis direction.
    static ExtOp wedge(int m, int k);
    // Contraction by the k-th basis direction (metric adjoint of wedge).
    static ExtOp contraction(int m, int k);

    int m() const { return m_; }
    int dim() const { return 1 << m_; }
    bool is_zero() const { return a_.empty(); }
    const std::map<std::pair<int, int>, QuadC>& entries() const { return a_; }

    void add(int row, int col, const QuadC& v) {
        if (v.is_zero()) return;
        auto [it, fresh] = a_.emplace(std::make_pair(row, col), v);
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) a_.erase(it);
        }
    }
    QuadC at(int row, int col) const {
        auto it = a_.find({row, col});
        return it == a_.end() ? QuadC() : it->second;
    }

    ExtOp operator+(const ExtOp& o) const {
        ExtOp r = *this;
        for (const auto& [rc, v] : o.a_) r.add(rc.first, rc.second, v);
        return r;
    }
    ExtOp operator-(const ExtOp& o) const {
        ExtOp r = *this;
        for (const auto& [rc, v] : o.a_) r.add(rc.first, rc.second, -v);
        return r;
    }
    ExtOp operator*(const ExtOp& o) const {
        ExtOp r(m_);
        // rows of o indexed once so the inner contraction is a range scan
        std::map<int, std::vector<std::pair<int, const QuadC*>>> by_row;
        for (const auto& [rc2, v2] : o.a_) by_row[rc2.first].emplace_back(rc2.second, &v2);
        for (const auto& [rc1, v1] : a_) {
            auto it = by_row.find(rc1.second);
            if (it == by_row.end()) continue;
            for (const auto& [col, v2] : it->second) r.add(rc1.first, col, v1 * *v2);
        }
        return r;
    }
    ExtOp operator*(const QuadC& s) const {
        ExtOp r(m_);
        for (const auto& [rc, v] : a_) r.add(rc.first, rc.second, v * s);
        return r;
    }
    bool operator==(const ExtOp& o) const { return m_ == o.m_ && a_ == o.a_; }

    ExtOp adjoint() const {
        ExtOp r(m_);
        for (const auto& [rc, v] : a_) r.add(rc.second, rc.first, v.conj());
        return r;
    }

    ExtVector apply(const ExtVector& v) const {
        ExtVector out(dim());
        for (const auto& [rc, val] : a_) out[rc.first] += val * v[rc.second];
        return out;
    }

    // Restriction to exterior degree k (both indices of weight k).
    ExtOp degree_block(int k) const;
    bool is_degree_preserving() const;
    bool is_hermitian() const { return *this == adjoint(); }

private:
    int m_ = 0;
    std::map<std::pair<int, int>, QuadC> a_;
};

inline int ext_degree(int mask) { return __builtin_popcount(static_cast<unsigned>(mask)); }

bool ext_is_zero(const ExtVector& v);
ExtVector ext_scale(const ExtVector& v, const QuadC& s);
ExtVector ext_sub(const ExtVector& a, const ExtVector& b);
ExtVector ext_add(const ExtVector& a, const ExtVector& b);
Quad ext_norm2(const ExtVector& v);
// Conjugate-linear Hodge-type duality S -> complement(S) with the sign of
// Z_S wedge Z_{S^c} against the top form; exchanges +lambda and -lambda
// eigenvectors of the curvature endomorphisms between dual degrees.
ExtVector ext_star_conj(const ExtVector& v);

}  // namespace flagrock

#endif
