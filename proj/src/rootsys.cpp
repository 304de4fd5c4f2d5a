#include "flagrock/rootsys.hpp"

#include <optional>

namespace flagrock {

std::optional<Root> root_sum(const Root& x, const Root& y) {
    if (x.j == y.i && x.i != y.j) return Root(x.i, y.j);
    if (y.j == x.i && y.i != x.j) return Root(y.i, x.j);
    return std::nullopt;
}

bool ParabolicData::in_l_k(const Root& r) const {
    auto block = [this](int idx) { return idx <= p1 ? 0 : (idx <= p ? 1 : 2); };
    return block(r.i) == block(r.j);
}

std::vector<Root> ParabolicData::all_positive_roots() const {
    std::vector<Root> out;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) out.emplace_back(i, j);
    return out;
}

ParabolicData build_parabolic(int p, int q, int p1) {
    if (p < 1 || q < 1)
        throw InvalidParameterError("need p >= 1 and q >= 1");
    if (p1 < 1 || p1 > p)
        throw InvalidParameterError("need 1 <= p1 <= p");
    ParabolicData pd;
    pd.p = p;
    pd.q = q;
    pd.p1 = p1;
    pd.p2 = p - p1;
    pd.n = p + q;
    for (const Root& r : pd.all_positive_roots()) {
        if (pd.in_u_k(r)) pd.delta_u_k.push_back(r);
        if (pd.in_u_p(r)) pd.delta_u_p.push_back(r);
        if (pd.in_u(r)) pd.delta_u.push_back(r);
        if (pd.in_l_p(r)) pd.delta_l_p.push_back(r);
        if (pd.in_l_k(r)) pd.delta_l_k.push_back(r);
    }
    pd.s = static_cast<int>(pd.delta_u_k.size());
    pd.t = static_cast<int>(pd.delta_u_p.size());
    return pd;
}

StructureConstants::StructureConstants(const ParabolicData& pd) : p_(pd.p) {
    std::vector<Root> all;
    for (const Root& r : pd.all_positive_roots()) {
        all.push_back(r);
        all.push_back(-r);
    }
    // [e_ij, e_kl] = delta_jk e_il - delta_li e_kj.
    for (const Root& a : all)
        for (const Root& b : all) {
            if (!root_sum(a, b)) continue;
            int v = 0;
            if (a.j == b.i) v += 1;
            if (b.j == a.i) v -= 1;
            if (v != 0) table_[{a, b}] = v;
        }
}

int StructureConstants::n(const Root& alpha, const Root& beta) const {
    auto it = table_.find({alpha, beta});
    return it == table_.end() ? 0 : it->second;
}

void StructureConstants::corrupt_for_test() {
    if (table_.empty()) return;
    auto& [key, val] = *table_.begin();
    val = -val;
    auto mate = table_.find({key.second, key.first});
    if (mate != table_.end()) mate->second = -mate->second;
}

MatrixRealization::MatrixRealization(const ParabolicData& pd) : n_(pd.n), p_(pd.p) {}

CMatrix MatrixRealization::cartan(const Root& r) const {
    CMatrix h(n_);
    h.at(r.i - 1, r.i - 1) = QuadC(Quad(1));
    h.at(r.j - 1, r.j - 1) = QuadC(Quad(-1));
    return h;
}

CMatrix MatrixRealization::theta(const CMatrix& m) const {
    CMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            int sgn = ((i < p_) == (j < p_)) ? +1 : -1;
            r.at(i, j) = sgn > 0 ? m.at(i, j) : -m.at(i, j);
        }
    return r;
}

CMatrix MatrixRealization::sigma(const CMatrix& m) const { return -theta(m.dagger()); }

QuadC MatrixRealization::root_value(const Root& alpha, const CMatrix& h) const {
    return h.at(alpha.i - 1, alpha.i - 1) - h.at(alpha.j - 1, alpha.j - 1);
}

void MatrixRealization::verify(const ParabolicData& pd, const StructureConstants& sc) const {
    std::vector<Root> all;
    for (const Root& r : pd.all_positive_roots()) {
        all.push_back(r);
        all.push_back(-r);
    }
    for (const Root& a : all) {
        CMatrix ea = root_vector(a);
        // [E_a, E_-a] = H_a
        if (!(ea.commutator(root_vector(-a)) == cartan(a)))
            throw InternalConsistencyError("oracle-cartan-bracket",
                                           "[E,E^-] != H for " + a.str());
        // [H, E_a] = a(H) E_a for every Cartan generator
        for (const Root& h : all) {
            CMatrix hm = cartan(h);
            if (!(hm.commutator(ea) == root_value(a, hm) * ea))
                throw InternalConsistencyError("oracle-root-space",
                                               "[H,E] != a(H)E for " + a.str());
        }
        // -theta(sigma(E_a)) = E_{-a}; equivalently theta(sigma(E_a)) = -E_{-a}.
        if (!(-theta(sigma(ea)) == root_vector(-a)))
            throw InternalConsistencyError("oracle-involution",
                                           "-theta(conj E) != E^- for " + a.str());
        // Orthonormality under tr(X Y*).
        for (const Root& b : all) {
            QuadC ip = hermitian_inner(ea, root_vector(b));
            QuadC expect = (a == b) ? QuadC(Quad(1)) : QuadC();
            if (!(ip == expect))
                throw InternalConsistencyError("oracle-orthonormal",
                                               a.str() + " . " + b.str());
        }
    }
    // Structure constants agree with literal commutators for every pair.
    for (const Root& a : all)
        for (const Root& b : all) {
            if (a == -b) continue;
            CMatrix lhs = root_vector(a).commutator(root_vector(b));
            auto sum = root_sum(a, b);
            CMatrix rhs =
                sum ? QuadC(Quad(sc.n(a, b))) * root_vector(*sum) : CMatrix(n_);
            if (!(lhs == rhs))
                throw InternalConsistencyError(
                    "oracle-structure-constants",
                    "N mismatch at (" + a.str() + ", " + b.str() + ")");
        }
}

}  // namespace flagrock
