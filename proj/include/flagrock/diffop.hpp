#ifndef FLAGROCK_DIFFOP_HPP
#define FLAGROCK_DIFFOP_HPP

// Polynomial-coefficient differential operators over Q(sqrt2, i) in a fixed
// number of real variables.  Orders stay tiny (the representation is by
// first-order operators, their products are second order), so sparse maps
// keyed by exponent vectors are plenty.

#include <map>
#include <numeric>
#include <vector>

#include "flagrock/numeric.hpp"

namespace flagrock {

using MultiIndex = std::vector<int>;

inline int mi_degree(const MultiIndex& m) { return std::accumulate(m.begin(), m.end(), 0); }

// Sparse polynomial: exponent vector -> coefficient.
class Poly {
public:
    Poly() = default;
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, const QuadC& c) {
        Poly p(nvars);
        p.add(MultiIndex(nvars, 0), c);
        return p;
    }
    static Poly variable(int nvars, int k, const QuadC& c = QuadC(Quad(1))) {
        Poly p(nvars);
        MultiIndex m(nvars, 0);
        m[k] = 1;
        p.add(m, c);
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<MultiIndex, QuadC>& terms() const { return terms_; }

    void add(const MultiIndex& m, const QuadC& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly operator+(const Poly& o) const {
        Poly r = *this;
        for (const auto& [m, c] : o.terms_) r.add(m, c);
        return r;
    }
    Poly operator-(const Poly& o) const {
        Poly r = *this;
        for (const auto& [m, c] : o.terms_) r.add(m, -c);
        return r;
    }
    Poly operator*(const Poly& o) const {
        Poly r(nvars_);
        for (const auto& [m1, c1] : terms_)
            for (const auto& [m2, c2] : o.terms_) {
                MultiIndex m = m1;
                for (std::size_t k = 0; k < m.size(); ++k) m[k] += m2[k];
                r.add(m, c1 * c2);
            }
        return r;
    }
    Poly operator*(const QuadC& s) const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) r.add(m, c * s);
        return r;
    }
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    Poly derivative(int k) const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) {
            if (m[k] == 0) continue;
            MultiIndex d = m;
            d[k] -= 1;
            r.add(d, QuadC(Quad(m[k])) * c);
        }
        return r;
    }

    QuadC value_at_zero() const {
        auto it = terms_.find(MultiIndex(nvars_, 0));
        return it == terms_.end() ? QuadC() : it->second;
    }

private:
    int nvars_ = 0;
    std::map<MultiIndex, QuadC> terms_;
};

// Differential operator: derivative multi-index -> polynomial coefficient,
// in normal form (all derivatives to the right of all multiplications).
class DiffOp {
public:
    DiffOp() = default;
    explicit DiffOp(int nvars) : nvars_(nvars) {}

    static DiffOp multiplication(const Poly& p) {
        DiffOp d(p.nvars());
        d.add(MultiIndex(p.nvars(), 0), p);
        return d;
    }
    static DiffOp partial(int nvars, int k) {
        DiffOp d(nvars);
        MultiIndex m(nvars, 0);
        m[k] = 1;
        d.add(m, Poly::constant(nvars, QuadC(Quad(1))));
        return d;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<MultiIndex, Poly>& terms() const { return terms_; }

    void add(const MultiIndex& d, const Poly& p) {
        if (p.is_zero()) return;
        auto [it, fresh] = terms_.emplace(d, p);
        if (!fresh) {
            it->second = it->second + p;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    DiffOp operator+(const DiffOp& o) const {
        DiffOp r = *this;
        for (const auto& [d, p] : o.terms_) r.add(d, p);
        return r;
    }
    DiffOp operator-(const DiffOp& o) const {
        DiffOp r = *this;
        for (const auto& [d, p] : o.terms_) r.add(d, p * QuadC(Quad(-1)));
        return r;
    }
    DiffOp operator*(const QuadC& s) const {
        DiffOp r(nvars_);
        for (const auto& [d, p] : terms_) r.add(d, p * s);
        return r;
    }

    // Composition with the Leibniz rule:
    //   (P d^a)(R d^b) = sum_{c <= a} binom(a,c) P (d^c R) d^{a-c+b}.
    DiffOp operator*(const DiffOp& o) const;

    DiffOp commutator(const DiffOp& o) const { return *this * o - o * *this; }

    bool operator==(const DiffOp& o) const { return terms_ == o.terms_; }

private:
    void compose_term(const MultiIndex& a, const Poly& p, const MultiIndex& b,
                      const Poly& r, DiffOp& out) const;

    int nvars_ = 0;
    std::map<MultiIndex, Poly> terms_;
};

}  // namespace flagrock

#endif
