#include "flagrock/extop.hpp"

namespace flagrock {

namespace {
int parity_sign(int mask, int k) {
    int below = mask & ((1 << k) - 1);
    return ext_degree(below) % 2 == 0 ? +1 : -1;
}
}  // namespace

ExtOp ExtOp::wedge(int m, int k) {
    ExtOp e(m);
    for (int s = 0; s < (1 << m); ++s) {
        if (s & (1 << k)) continue;
        e.add(s | (1 << k), s, QuadC(Quad(parity_sign(s, k))));
    }
    return e;
}

ExtOp ExtOp::contraction(int m, int k) {
    ExtOp e(m);
    for (int s = 0; s < (1 << m); ++s) {
        if (!(s & (1 << k))) continue;
        e.add(s & ~(1 << k), s, QuadC(Quad(parity_sign(s, k))));
    }
    return e;
}

ExtOp ExtOp::degree_block(int k) const {
    ExtOp r(m_);
    for (const auto& [rc, v] : a_)
        if (ext_degree(rc.first) == k && ext_degree(rc.second) == k)
            r.add(rc.first, rc.second, v);
    return r;
}

bool ExtOp::is_degree_preserving() const {
    for (const auto& [rc, v] : a_)
        if (ext_degree(rc.first) != ext_degree(rc.second)) return false;
    return true;
}

bool ext_is_zero(const ExtVector& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

ExtVector ext_scale(const ExtVector& v, const QuadC& s) {
    ExtVector out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k] * s;
    return out;
}

ExtVector ext_sub(const ExtVector& a, const ExtVector& b) {
    ExtVector out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
    return out;
}

ExtVector ext_add(const ExtVector& a, const ExtVector& b) {
    ExtVector out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
    return out;
}

Quad ext_norm2(const ExtVector& v) {
    Quad out(0);
    for (const auto& c : v) out += c.abs2();
    return out;
}

ExtVector ext_star_conj(const ExtVector& v) {
    const int dim = static_cast<int>(v.size());
    int m = 0;
    while ((1 << m) < dim) ++m;
    const int full = dim - 1;
    ExtVector out(v.size());
    for (int s = 0; s < dim; ++s) {
        if (v[s].is_zero()) continue;
        int comp = full & ~s;
        // sign of Z_S ^ Z_{S^c} relative to the ordered top form: count
        // inversions between elements of S and smaller elements of S^c.
        int inv = 0;
        for (int k = 0; k < m; ++k)
            if (s & (1 << k)) inv += ext_degree(comp & ((1 << k) - 1));
        QuadC sign = QuadC(Quad(inv % 2 == 0 ? 1 : -1));
        out[comp] += sign * v[s].conj();
    }
    return out;
}

}  // namespace flagrock
