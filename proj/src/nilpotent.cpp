#include "flagrock/nilpotent.hpp"

#include <algorithm>
#include <set>

#include "flagrock/exactlin.hpp"

namespace flagrock {

NilpotentAlgebra::NilpotentAlgebra(const ParabolicData& pd, const StructureConstants& sc)
    : pd_(pd) {
    Frame fr = build_frame(pd);
    layer1_ = fr.e_block;
    layer2_ = fr.f_block;
    // [[u, v]] keeps only terms with N'_{a,-b} != 0, i.e. the difference
    // root lands in the fiber.  On compact x noncompact pairs this is the
    // fiber part of the closed bracket formulas; all other brackets of base
    // vectors vanish.
    for (const FrameVector& u : layer1_)
        for (const FrameVector& v : layer1_) {
            bool mixed = (pd.in_u_k(u.root) && pd.in_u_p(v.root)) ||
                         (pd.in_u_p(u.root) && pd.in_u_k(v.root));
            if (!mixed) continue;
            FrameCombo fiber = bracket_formula(pd, sc, u, v).restricted_to_l_p(pd);
            if (!fiber.is_zero()) table_[{u, v}] = std::move(fiber);
        }
}

std::vector<FrameVector> NilpotentAlgebra::basis() const {
    std::vector<FrameVector> out = layer1_;
    out.insert(out.end(), layer2_.begin(), layer2_.end());
    return out;
}

FrameCombo NilpotentAlgebra::bracket(const FrameVector& u, const FrameVector& v) const {
    auto it = table_.find({u, v});
    return it == table_.end() ? FrameCombo{} : it->second;
}

void NilpotentAlgebra::check_jacobi() const {
    // Layer 2 is central and brackets land there, so [[x,[[y,z]]]] = 0 for
    // all triples; the identity reduces to each summand vanishing.
    auto all = basis();
    for (const FrameVector& x : all)
        for (const FrameVector& y : all)
            for (const FrameVector& z : all) {
                FrameCombo inner = bracket(y, z);
                for (const auto& [w, c] : inner.coeffs)
                    if (!bracket(x, w).is_zero())
                        throw InternalConsistencyError("nilpotent-jacobi",
                                                       "bracket out of layer 2");
            }
}

bool check_hormander(const NilpotentAlgebra& n) {
    const auto& l1 = n.layer1();
    const auto& l2 = n.layer2();
    if (l2.empty()) return true;
    std::map<FrameVector, int> col;
    for (std::size_t k = 0; k < l2.size(); ++k) col[l2[k]] = static_cast<int>(k);
    DenseMat<Quad> m;
    for (std::size_t a = 0; a < l1.size(); ++a)
        for (std::size_t b = a + 1; b < l1.size(); ++b) {
            FrameCombo br = n.bracket(l1[a], l1[b]);
            if (br.is_zero()) continue;
            std::vector<Quad> row(l2.size(), Quad(0));
            for (const auto& [w, c] : br.coeffs) row[col.at(w)] = c;
            m.push_back(std::move(row));
        }
    if (m.empty()) return false;
    return exact_rank(m) == static_cast<int>(l2.size());
}

namespace {

bool strongly_orthogonal(const ParabolicData& pd, const Root& a, const Root& b) {
    return pd.is_root(a) && pd.is_root(b) && !root_sum(a, b).has_value() &&
           !root_sum(a, -b).has_value();
}

}  // namespace

OrthogonalSequence strongly_orthogonal_sequence(const ParabolicData& pd) {
    if (pd.delta_l_p.empty())
        throw InvalidParameterError("no fiber roots: Delta(l cap p) is empty");
    // Anti-diagonal picks e_{p1+i} - e_{p+q-i}; when the column index would
    // fall out of range (i = q), the largest unused column replaces it.
    const int r = std::min(pd.p2, pd.q);
    std::set<int> cols;
    for (int c = pd.p + 1; c <= pd.n; ++c) cols.insert(c);
    OrthogonalSequence seq;
    for (int i = 1; i <= r; ++i) {
        int row = pd.p1 + i;
        int col = pd.n - i;
        if (col <= pd.p || !cols.count(col)) col = *cols.rbegin();
        cols.erase(col);
        seq.gamma.emplace_back(row, col);
    }
    // Exhaustive verification of both properties before handing the
    // sequence to anyone.
    for (int a = 0; a < seq.size(); ++a) {
        if (!pd.in_l_p(seq.gamma[a]))
            throw InternalConsistencyError("ortho-membership",
                                           seq.gamma[a].str() + " not a fiber root");
        for (int b = a + 1; b < seq.size(); ++b)
            if (!strongly_orthogonal(pd, seq.gamma[a], seq.gamma[b]))
                throw InternalConsistencyError(
                    "ortho-strong", seq.gamma[a].str() + " vs " + seq.gamma[b].str());
    }
    uniqueness_report(pd, seq);  // throws on a uniqueness violation
    return seq;
}

UniquenessReport uniqueness_report(const ParabolicData& pd, const OrthogonalSequence& g) {
    UniquenessReport rep;
    for (const Root& alpha : pd.delta_u) {
        auto& list = rep.matches[alpha];
        for (int i = 0; i < g.size(); ++i)
            for (int dir : {+1, -1}) {
                auto beta = root_sum(alpha, dir > 0 ? g.gamma[i] : -g.gamma[i]);
                if (beta && pd.in_u(*beta) && beta->positive())
                    list.push_back({i, *beta, dir});
            }
        if (list.size() > 1)
            throw InternalConsistencyError("ortho-uniqueness",
                                           "multiple matches for " + alpha.str());
    }
    auto fully = [&](const std::vector<Root>& side) {
        return std::all_of(side.begin(), side.end(), [&](const Root& a) {
            return !rep.matches.at(a).empty();
        });
    };
    rep.all_compact_matched = !pd.delta_u_k.empty() && fully(pd.delta_u_k);
    rep.all_noncompact_matched = !pd.delta_u_p.empty() && fully(pd.delta_u_p);
    if (!rep.all_compact_matched && !rep.all_noncompact_matched &&
        !pd.delta_u_k.empty() && !pd.delta_u_p.empty())
        throw InternalConsistencyError("ortho-dichotomy",
                                       "neither side of Delta(u) fully matched");
    return rep;
}

}  // namespace flagrock
