#ifndef FLAGROCK_CMATRIX_HPP
#define FLAGROCK_CMATRIX_HPP

// Small dense matrices over Q(sqrt2, i), used by the matrix-unit oracle.
// Dimensions never exceed p + q, so plain O(n^3) products are fine.

#include <cassert>
#include <vector>

#include "flagrock/numeric.hpp"

namespace flagrock {

class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}

    static CMatrix unit(int n, int row, int col) {
        CMatrix m(n);
        m.at(row, col) = QuadC(Quad(1));
        return m;
    }

    int dim() const { return n_; }
    QuadC& at(int r, int c) { return a_[static_cast<std::size_t>(r) * n_ + c]; }
    const QuadC& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * n_ + c]; }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!v.is_zero()) return false;
        return true;
    }

    CMatrix operator+(const CMatrix& o) const {
        assert(n_ == o.n_);
        CMatrix r(n_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
        return r;
    }
    CMatrix operator-(const CMatrix& o) const {
        assert(n_ == o.n_);
        CMatrix r(n_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
        return r;
    }
    CMatrix operator-() const {
        CMatrix r(n_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = -a_[k];
        return r;
    }
    CMatrix operator*(const CMatrix& o) const {
        assert(n_ == o.n_);
        CMatrix r(n_);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k) {
                const QuadC& v = at(i, k);
                if (v.is_zero()) continue;
                for (int j = 0; j < n_; ++j) r.at(i, j) += v * o.at(k, j);
            }
        return r;
    }
    friend CMatrix operator*(const QuadC& s, const CMatrix& m) {
        CMatrix r(m.n_);
        for (std::size_t k = 0; k < m.a_.size(); ++k) r.a_[k] = s * m.a_[k];
        return r;
    }
    bool operator==(const CMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

    CMatrix commutator(const CMatrix& o) const { return *this * o - o * *this; }

    // Conjugate transpose.
    CMatrix dagger() const {
        CMatrix r(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r.at(i, j) = at(j, i).conj();
        return r;
    }

    QuadC trace() const {
        QuadC t;
        for (int i = 0; i < n_; ++i) t += at(i, i);
        return t;
    }

private:
    int n_ = 0;
    std::vector<QuadC> a_;
};

// Hermitian pairing <X, Y> = tr(X Y*) = sum_ij X_ij conj(Y_ij); positive
// definite, and the chosen root vectors are orthonormal for it.
inline QuadC hermitian_inner(const CMatrix& x, const CMatrix& y) {
    QuadC out;
    for (int i = 0; i < x.dim(); ++i)
        for (int j = 0; j < x.dim(); ++j) {
            const QuadC& a = x.at(i, j);
            if (a.is_zero()) continue;
            const QuadC& b = y.at(i, j);
            if (b.is_zero()) continue;
            out += a * b.conj();
        }
    return out;
}

}  // namespace flagrock

#endif
