#include "flagrock/diffop.hpp"

namespace flagrock {

namespace {

// Enumerates c <= a coordinatewise, calling f(c, binom(a,c)).
template <class F>
void for_each_sub_index(const MultiIndex& a, F&& f) {
    MultiIndex c(a.size(), 0);
    Rational coef;
    auto binom = [](int n, int k) {
        Rational r(1);
        for (int i = 0; i < k; ++i) r *= Rational(n - i, i + 1);
        return r;
    };
    // Degrees here are at most 2, so plain odometer enumeration is cheap.
    while (true) {
        coef = 1;
        for (std::size_t k = 0; k < a.size(); ++k) coef *= binom(a[k], c[k]);
        f(c, coef);
        std::size_t k = 0;
        while (k < a.size() && c[k] == a[k]) c[k++] = 0;
        if (k == a.size()) break;
        ++c[k];
    }
}

}  // namespace

void DiffOp::compose_term(const MultiIndex& a, const Poly& p, const MultiIndex& b,
                          const Poly& r, DiffOp& out) const {
    for_each_sub_index(a, [&](const MultiIndex& c, const Rational& binom) {
        Poly rc = r;
        for (std::size_t k = 0; k < c.size(); ++k)
            for (int rep = 0; rep < c[k]; ++rep) rc = rc.derivative(static_cast<int>(k));
        if (rc.is_zero()) return;
        MultiIndex d(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) d[k] = a[k] - c[k] + b[k];
        out.add(d, p * rc * QuadC(Quad(binom)));
    });
}

DiffOp DiffOp::operator*(const DiffOp& o) const {
    DiffOp out(nvars_);
    for (const auto& [a, p] : terms_)
        for (const auto& [b, r] : o.terms_) compose_term(a, p, b, r, out);
    return out;
}

}  // namespace flagrock
