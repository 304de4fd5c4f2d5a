#include "flagrock/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace flagrock {

namespace {

const Quad kInvSqrt2(Rational(0), Rational(1, 2));
constexpr double kSpectrumTol = 1e-8;
constexpr double kFloatResidualTol = 1e-10;

// Partner pairs of a root of u across the fiber: (a compact, b noncompact)
// with |a - b| a fiber root; rho is one of the two.
struct Partner {
    Root a, b, fiber;
    int eps = 0;     // eps(a - b)
    int nprime = 0;  // N_{a, -b}
};

std::vector<Partner> partners(const ParabolicData& pd, const StructureConstants& sc,
                              const Root& rho) {
    std::vector<Partner> out;
    const bool rho_compact = pd.in_u_k(rho);
    const std::vector<Root>& others = rho_compact ? pd.delta_u_p : pd.delta_u_k;
    for (const Root& other : others) {
        Root a = rho_compact ? rho : other;
        Root b = rho_compact ? other : rho;
        auto diff = root_sum(a, -b);
        if (!diff) continue;
        Root fiber = abs_root(*diff);
        if (!pd.in_l_p(fiber)) continue;
        out.push_back({a, b, fiber, eps_root(*diff), sc.n(a, -b)});
    }
    return out;
}

}  // namespace

RValue compute_r(const LinearForm& l, const ParabolicData& pd,
                 const StructureConstants& sc, const Root& rho) {
    RValue rv;
    for (const Partner& pr : partners(pd, sc, rho)) {
        Quad xi = l.xi(pr.fiber), eta = l.eta(pr.fiber);
        rv.squared += Quad(Rational(pr.nprime * pr.nprime, 2)) * (xi * xi + eta * eta);
    }
    rv.exact = rv.squared.sqrt();
    rv.approx = rv.exact ? rv.exact->to_double() : std::sqrt(rv.squared.to_double());
    return rv;
}

ExtOp build_m(const LinearForm& l, const StructureConstants& sc,
              const SymbolSpace& space, const Root& rho) {
    ExtOp m(space.m);
    const QuadC I = QuadC::i();
    for (const Partner& pr : partners(space.n->pd(), sc, rho)) {
        Quad xi = l.xi(pr.fiber), eta = l.eta(pr.fiber);
        if (xi.is_zero() && eta.is_zero()) continue;
        QuadC plus(xi, Quad(pr.eps) * eta);    // xi + i eps eta
        QuadC minus(xi, -(Quad(pr.eps) * eta));
        QuadC scale = -(I * QuadC(Quad(pr.nprime) * kInvSqrt2));
        ExtOp eaib = space.e_op(pr.a) * space.i_op(pr.b);
        ExtOp ebia = space.e_op(pr.b) * space.i_op(pr.a);
        m = m + (eaib * plus - ebia * minus) * scale;
    }
    return m;
}

double ModelOperator::sum_r() const {
    double s = 0;
    for (const RValue& rv : r) s += rv.approx;
    return s;
}

Quad ModelOperator::sum_r_exact() const {
    Quad s(0);
    for (const RValue& rv : r) s += *rv.exact;
    return s;
}

ModelOperator rep_laplacian(const Representation& rep, const ESymbol& sym,
                            const LinearForm& l, const StructureConstants& sc) {
    const SymbolSpace& space = sym.space();
    ModelOperator op;
    op.which = rep.pol.which;
    op.transverse_roots = rep.pol.transverse_roots;
    op.nvars = rep.nvars;
    op.m = space.m;

    // Substitute pi into the symbol, in the stored factor order.
    for (const auto& [ids, coeff] : sym.terms()) {
        DiffOp prod = DiffOp::multiplication(Poly::constant(rep.nvars, QuadC(Quad(1))));
        for (int id : ids) prod = prod * rep(space.basis[static_cast<std::size_t>(id)]);
        for (const auto& [derivs, poly] : prod.terms())
            for (const auto& [exps, c] : poly.terms()) {
                auto key = std::make_pair(derivs, exps);
                auto [it, fresh] = op.raw.emplace(key, coeff * c);
                if (!fresh) {
                    it->second = it->second + coeff * c;
                    if (it->second.is_zero()) op.raw.erase(it);
                }
            }
    }

    for (const Root& rho : op.transverse_roots) {
        op.r.push_back(compute_r(l, space.n->pd(), sc, rho));
        if (!op.r.back().exact) op.exact_mode = false;
    }

    // Structural matching against oscillators + curvature.
    const ExtOp id_ext = ExtOp::identity(op.m);
    ExtOp c_found(op.m);
    bool has_c = false;
    std::vector<bool> lap_seen(rep.nvars, false), quad_seen(rep.nvars, false);
    for (const auto& [key, coeff] : op.raw) {
        const auto& [derivs, exps] = key;
        const int dd = mi_degree(derivs), pd_ = mi_degree(exps);
        if (dd == 2 && pd_ == 0) {
            int k = 0;
            while (derivs[k] == 0) ++k;
            if (derivs[k] != 2 ||
                !(coeff == id_ext * QuadC(Quad(Rational(-1, 2)))))
                throw InternalConsistencyError("model-decomposition",
                                               "unexpected second-order term");
            lap_seen[k] = true;
        } else if (dd == 0 && pd_ == 2) {
            int k = 0;
            while (exps[k] == 0) ++k;
            if (exps[k] != 2)
                throw InvalidFormError(
                    "quadratic cross terms: the model space cannot diagonalize "
                    "this form; use weights on a strongly orthogonal set");
            const Quad& r2 = op.r[static_cast<std::size_t>(k) / 2].squared;
            if (!(coeff == id_ext * QuadC(Quad(Rational(1, 2)) * r2)))
                throw InternalConsistencyError("model-decomposition",
                                               "potential term does not match r^2");
            quad_seen[k] = true;
        } else if (dd == 0 && pd_ == 0) {
            c_found = coeff;
            has_c = true;
        } else {
            throw InternalConsistencyError("model-decomposition",
                                           "unexpected term shape in pi(laplacian)");
        }
    }
    for (int k = 0; k < rep.nvars; ++k) {
        if (!lap_seen[k])
            throw InternalConsistencyError("model-decomposition",
                                           "missing kinetic term");
        if (!quad_seen[k] && !op.r[static_cast<std::size_t>(k) / 2].squared.is_zero())
            throw InternalConsistencyError("model-decomposition",
                                           "missing potential term");
    }

    // The constant exterior part must be exactly the curvature sum.
    ExtOp c_expected(op.m);
    for (const Root& rho : op.transverse_roots)
        c_expected = c_expected + build_m(l, sc, space, rho);
    if (has_c ? !(c_found == c_expected) : !c_expected.is_zero())
        throw InternalConsistencyError("model-decomposition",
                                       "curvature part does not match");
    op.c_total = c_expected;
    if (!op.c_total.is_degree_preserving() || !op.c_total.is_hermitian())
        throw InternalConsistencyError("model-curvature",
                                       "curvature endomorphism malformed");
    return op;
}

namespace {

ExtVector start_vector(const ModelOperator& op, const SymbolSpace& space) {
    const ParabolicData& pd = space.n->pd();
    const std::vector<Root>& roots =
        op.which == Polarization::Case::First ? pd.delta_u_k : pd.delta_u_p;
    int mask = 0;
    for (const Root& r : roots) mask |= 1 << space.ext_index(r);
    ExtVector v(static_cast<std::size_t>(1) << space.m);
    v[static_cast<std::size_t>(mask)] = QuadC(Quad(1));
    return v;
}

}  // namespace

ExtVector build_eigenvector_ordered(const ModelOperator& op, const LinearForm& l,
                                    const StructureConstants& sc,
                                    const SymbolSpace& space, int sign,
                                    const std::vector<int>& order) {
    if (!op.exact_mode)
        throw Error("exact ladder recursion requires exact oscillator frequencies");
    std::vector<ExtOp> ms;
    for (const Root& rho : op.transverse_roots)
        ms.push_back(build_m(l, sc, space, rho));
    ExtVector v = start_vector(op, space);
    for (int k : order) {
        QuadC rs(Quad(sign) * *op.r[static_cast<std::size_t>(k)].exact);
        v = ext_add(ms[static_cast<std::size_t>(k)].apply(v), ext_scale(v, rs));
        if (ext_is_zero(v))
            throw ZeroCollapseError("ladder recursion annihilated the vector");
    }
    for (std::size_t k = 0; k < ms.size(); ++k) {
        QuadC rs(Quad(sign) * *op.r[k].exact);
        if (!ext_is_zero(ext_sub(ms[k].apply(v), ext_scale(v, rs))))
            throw ZeroCollapseError(
                "ladder vector is not a simultaneous eigenvector; "
                "the chosen form is degenerate for this instance");
    }
    return v;
}

ExtVector build_eigenvector(const ModelOperator& op, const LinearForm& l,
                            const StructureConstants& sc, const SymbolSpace& space,
                            int sign) {
    std::vector<int> order(op.transverse_roots.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    return build_eigenvector_ordered(op, l, sc, space, sign, order);
}

namespace {

// Scalar abstraction so the residual runs exactly when the frequencies lie
// in Q(sqrt2) and in floating point otherwise.
template <class S>
struct Scal;

template <>
struct Scal<QuadC> {
    static QuadC from(const QuadC& q) { return q; }
    static QuadC from_quad(const Quad& q) { return QuadC(q); }
    static bool is_zero(const QuadC& v) { return v.is_zero(); }
    static std::complex<double> approx(const QuadC& v) { return v.to_complex(); }
};

template <>
struct Scal<std::complex<double>> {
    static std::complex<double> from(const QuadC& q) { return q.to_complex(); }
    static std::complex<double> from_quad(const Quad& q) { return {q.to_double(), 0.0}; }
    static bool is_zero(const std::complex<double>& v) { return std::abs(v) == 0.0; }
    static std::complex<double> approx(const std::complex<double>& v) { return v; }
};

template <class S>
void poly_add(std::map<MultiIndex, S>& p, const MultiIndex& m, const S& c) {
    if (Scal<S>::is_zero(c)) return;
    auto [it, fresh] = p.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (Scal<S>::is_zero(it->second)) p.erase(it);
    }
}

// d/dx_k on P * exp(-sum r_j (x^2+y^2)/2):  P -> dP/dx_k - r x_k P.
template <class S>
std::map<MultiIndex, S> gauss_derivative(const std::map<MultiIndex, S>& p, int k,
                                         const S& r) {
    std::map<MultiIndex, S> out;
    for (const auto& [m, c] : p) {
        if (m[static_cast<std::size_t>(k)] > 0) {
            MultiIndex d = m;
            d[static_cast<std::size_t>(k)] -= 1;
            poly_add(out, d, c * S(Scal<S>::from_quad(Quad(m[static_cast<std::size_t>(k)]))));
        }
        MultiIndex up = m;
        up[static_cast<std::size_t>(k)] += 1;
        poly_add(out, up, S(-r * c));
    }
    return out;
}

template <class S>
ModelSection<S> apply_raw(const ModelOperator& op, const ModelSection<S>& in,
                          const std::vector<S>& rpair) {
    ModelSection<S> out;
    out.nvars = in.nvars;
    out.comp.assign(in.comp.size(), {});
    for (const auto& [key, ext] : op.raw) {
        const auto& [derivs, exps] = key;
        for (std::size_t b = 0; b < in.comp.size(); ++b) {
            if (in.comp[b].empty()) continue;
            std::map<MultiIndex, S> poly = in.comp[b];
            for (std::size_t k = 0; k < derivs.size(); ++k)
                for (int rep = 0; rep < derivs[k]; ++rep)
                    poly = gauss_derivative(poly, static_cast<int>(k), rpair[k / 2]);
            if (mi_degree(exps) > 0) {
                std::map<MultiIndex, S> shifted;
                for (const auto& [m, c] : poly) {
                    MultiIndex up = m;
                    for (std::size_t k = 0; k < up.size(); ++k) up[k] += exps[k];
                    poly_add(shifted, up, c);
                }
                poly = std::move(shifted);
            }
            for (const auto& [rc, v] : ext.entries()) {
                if (rc.second != static_cast<int>(b)) continue;
                S factor = Scal<S>::from(v);
                for (const auto& [m, c] : poly)
                    poly_add(out.comp[static_cast<std::size_t>(rc.first)], m, S(c * factor));
            }
        }
    }
    return out;
}

double gaussian_moment(int power, double r) {
    if (power % 2 == 1) return 0.0;
    double val = std::sqrt(M_PI / r);
    for (int m = 1; m <= power / 2; ++m) val *= (2.0 * m - 1.0) / (2.0 * r);
    return val;
}

template <class S>
double section_norm(const ModelSection<S>& sec, const std::vector<double>& rpair) {
    double total = 0.0;
    for (const auto& poly : sec.comp) {
        for (const auto& [m1, c1] : poly)
            for (const auto& [m2, c2] : poly) {
                double term = std::real(Scal<S>::approx(c1) * std::conj(Scal<S>::approx(c2)));
                for (std::size_t k = 0; k < m1.size(); ++k)
                    term *= gaussian_moment(m1[k] + m2[k], rpair[k / 2]);
                total += term;
            }
    }
    return std::sqrt(std::max(0.0, total));
}

template <class S>
bool section_exact_zero(const ModelSection<S>& sec) {
    for (const auto& poly : sec.comp)
        if (!poly.empty()) return false;
    return true;
}

template <class S>
ResidualResult residual_impl(const ModelOperator& op, const std::vector<S>& w,
                             const std::vector<S>& rpair) {
    ModelSection<S> sec;
    sec.nvars = op.nvars;
    sec.comp.assign(w.size(), {});
    const MultiIndex zero(op.nvars, 0);
    for (std::size_t b = 0; b < w.size(); ++b)
        if (!Scal<S>::is_zero(w[b])) sec.comp[b][zero] = w[b];
    std::vector<double> rfl;
    for (const RValue& rv : op.r) rfl.push_back(rv.approx);
    ModelSection<S> image = apply_raw(op, sec, rpair);
    ResidualResult res;
    res.exact_zero = section_exact_zero(image);
    res.norm = section_norm(image, rfl);
    res.witness_norm = section_norm(sec, rfl);
    return res;
}

ResidualResult residual_float(const ModelOperator& op,
                              const std::vector<std::complex<double>>& w) {
    std::vector<std::complex<double>> rpair;
    for (const RValue& rv : op.r) rpair.emplace_back(rv.approx, 0.0);
    return residual_impl(op, w, rpair);
}

std::vector<std::complex<double>> star_conj_float(
    const std::vector<std::complex<double>>& v, int m) {
    const int full = (1 << m) - 1;
    std::vector<std::complex<double>> out(v.size());
    for (int s = 0; s <= full; ++s) {
        if (std::abs(v[static_cast<std::size_t>(s)]) == 0.0) continue;
        int comp = full & ~s;
        int inv = 0;
        for (int k = 0; k < m; ++k)
            if (s & (1 << k)) inv += ext_degree(comp & ((1 << k) - 1));
        double sgn = inv % 2 == 0 ? 1.0 : -1.0;
        out[static_cast<std::size_t>(comp)] += sgn * std::conj(v[static_cast<std::size_t>(s)]);
    }
    return out;
}

}  // namespace

ResidualResult kernel_residual(const ModelOperator& op, const ExtVector& w) {
    if (op.exact_mode) {
        std::vector<QuadC> rpair;
        for (const RValue& rv : op.r) rpair.emplace_back(*rv.exact);
        return residual_impl<QuadC>(op, w, rpair);
    }
    std::vector<std::complex<double>> wf(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) wf[k] = w[k].to_complex();
    return residual_float(op, wf);
}

ModelSection<QuadC> apply_model(const ModelOperator& op, const ModelSection<QuadC>& in) {
    if (!op.exact_mode)
        throw Error("apply_model requires exact oscillator frequencies");
    std::vector<QuadC> rpair;
    for (const RValue& rv : op.r) rpair.emplace_back(*rv.exact);
    return apply_raw(op, in, rpair);
}

std::vector<std::vector<double>> curvature_spectra(const ExtOp& c, int m) {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(m) + 1);
    const int dim = 1 << m;
    for (int deg = 0; deg <= m; ++deg) {
        std::vector<int> idx;
        for (int s = 0; s < dim; ++s)
            if (ext_degree(s) == deg) idx.push_back(s);
        Eigen::MatrixXcd block(idx.size(), idx.size());
        block.setZero();
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b < idx.size(); ++b)
                block(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                    c.at(idx[a], idx[b]).to_complex();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block);
        auto& lst = out[static_cast<std::size_t>(deg)];
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
            lst.push_back(es.eigenvalues()[k]);
        std::sort(lst.begin(), lst.end());
    }
    return out;
}

namespace {

// Dense spectrum over the truncated oscillator basis, built from the raw
// operator's matrix elements (one-variable ladder recurrences, extended
// range so products of x and d factors are exact on the kept block).
std::vector<double> dense_truncated_spectrum(const ModelOperator& op, int max_level) {
    const int pairs = op.nvars / 2;

    // per-pair basis: (m, n) with m + n <= max_level
    std::vector<std::pair<int, int>> pair_basis;
    for (int m = 0; m <= max_level; ++m)
        for (int n = 0; n + m <= max_level; ++n) pair_basis.emplace_back(m, n);
    const int pb = static_cast<int>(pair_basis.size());

    int fdim = 1;
    for (int j = 0; j < pairs; ++j) fdim *= pb;
    const int edim = 1 << op.m;
    const int dim = fdim * edim;

    // One-variable matrices on an extended range.
    const int ext = max_level + 5;
    auto matmul = [&](const std::vector<double>& a, const std::vector<double>& b) {
        std::vector<double> c(static_cast<std::size_t>(ext) * ext, 0.0);
        for (int i = 0; i < ext; ++i)
            for (int k = 0; k < ext; ++k) {
                double v = a[static_cast<std::size_t>(i) * ext + k];
                if (v == 0) continue;
                for (int j = 0; j < ext; ++j)
                    c[static_cast<std::size_t>(i) * ext + j] +=
                        v * b[static_cast<std::size_t>(k) * ext + j];
            }
        return c;
    };
    auto one_var = [&](double r, int xpow, int dpow) {
        std::vector<double> X(static_cast<std::size_t>(ext) * ext, 0.0),
            D(static_cast<std::size_t>(ext) * ext, 0.0),
            M(static_cast<std::size_t>(ext) * ext, 0.0);
        for (int m = 0; m < ext; ++m) {
            if (m + 1 < ext) {
                X[static_cast<std::size_t>(m + 1) * ext + m] = std::sqrt((m + 1) / (2.0 * r));
                X[static_cast<std::size_t>(m) * ext + m + 1] = std::sqrt((m + 1) / (2.0 * r));
                D[static_cast<std::size_t>(m + 1) * ext + m] = -std::sqrt(r * (m + 1) / 2.0);
                D[static_cast<std::size_t>(m) * ext + m + 1] = std::sqrt(r * (m + 1) / 2.0);
            }
        }
        for (int m = 0; m < ext; ++m) M[static_cast<std::size_t>(m) * ext + m] = 1.0;
        for (int k = 0; k < xpow; ++k) M = matmul(M, X);
        for (int k = 0; k < dpow; ++k) M = matmul(M, D);
        return M;
    };

    Eigen::MatrixXcd H(dim, dim);
    H.setZero();
    std::vector<int> fidx(pairs);
    for (const auto& [key, ext_op] : op.raw) {
        const auto& [derivs, exps] = key;
        // per-variable one-dimensional matrices for this term
        std::vector<std::vector<double>> varmat;
        for (int k = 0; k < op.nvars; ++k)
            varmat.push_back(one_var(op.r[static_cast<std::size_t>(k) / 2].approx,
                                     exps[static_cast<std::size_t>(k)],
                                     derivs[static_cast<std::size_t>(k)]));
        for (int row = 0; row < fdim; ++row)
            for (int col = 0; col < fdim; ++col) {
                double amp = 1.0;
                int rr = row, cc = col;
                for (int j = 0; j < pairs && amp != 0.0; ++j) {
                    auto [rm, rn] = pair_basis[static_cast<std::size_t>(rr % pb)];
                    auto [cm, cn] = pair_basis[static_cast<std::size_t>(cc % pb)];
                    rr /= pb;
                    cc /= pb;
                    amp *= varmat[static_cast<std::size_t>(2 * j)]
                                 [static_cast<std::size_t>(rm) * ext + cm];
                    if (amp == 0.0) break;
                    amp *= varmat[static_cast<std::size_t>(2 * j + 1)]
                                 [static_cast<std::size_t>(rn) * ext + cn];
                }
                if (amp == 0.0) continue;
                for (const auto& [rc, v] : ext_op.entries())
                    H(row * edim + rc.first, col * edim + rc.second) +=
                        amp * v.to_complex();
            }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    std::vector<double> vals;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
        vals.push_back(es.eigenvalues()[k]);
    std::sort(vals.begin(), vals.end());
    return vals;
}

}  // namespace

SpectrumCrossCheck cross_check_spectrum(const ModelOperator& op, int max_level,
                                        int count) {
    SpectrumCrossCheck out;
    const int pairs = op.nvars / 2;

    // Closed formula: sum_j r_j (m_j + n_j + 1) + mu, mu in spec(C).
    std::vector<double> oscillator{0.0};
    for (int j = 0; j < pairs; ++j) {
        std::vector<double> next;
        for (double base : oscillator)
            for (int m = 0; m <= max_level; ++m)
                for (int n = 0; n + m <= max_level; ++n)
                    next.push_back(base + op.r[static_cast<std::size_t>(j)].approx * (m + n + 1));
        oscillator = std::move(next);
    }
    std::vector<double> mu;
    for (const auto& lst : curvature_spectra(op.c_total, op.m))
        mu.insert(mu.end(), lst.begin(), lst.end());
    for (double base : oscillator)
        for (double v : mu) out.formula.push_back(base + v);
    std::sort(out.formula.begin(), out.formula.end());

    out.dense = dense_truncated_spectrum(op, max_level);

    const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(count),
                                                std::min(out.formula.size(), out.dense.size()));
    out.formula.resize(n);
    out.dense.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        out.max_deviation = std::max(out.max_deviation,
                                     std::abs(out.formula[k] - out.dense[k]));
    for (double v : out.dense)
        if (std::abs(v) < kSpectrumTol) out.zero_in_dense = true;
    return out;
}

namespace {

int homogeneous_degree(const ExtVector& v) {
    int deg = -1;
    for (std::size_t s = 0; s < v.size(); ++s) {
        if (v[s].is_zero()) continue;
        int d = ext_degree(static_cast<int>(s));
        if (deg == -1) deg = d;
        else if (deg != d) throw InternalConsistencyError("witness-degree",
                                                          "witness not homogeneous");
    }
    return deg;
}

WitnessRecord make_record(const ModelOperator& op, const ExtVector& w,
                          const char* construction) {
    WitnessRecord rec;
    rec.degree = homogeneous_degree(w);
    rec.construction = construction;
    rec.eigenvalue = -op.sum_r();
    if (op.exact_mode) rec.eigenvalue_exact = (-op.sum_r_exact()).str();
    ResidualResult res = kernel_residual(op, w);
    rec.residual_exact_zero = op.exact_mode && res.exact_zero;
    rec.residual = res.norm;
    if (op.exact_mode && !res.exact_zero)
        throw InternalConsistencyError("witness-residual",
                                       "exact witness has nonzero residual");
    if (!op.exact_mode && res.norm > kFloatResidualTol * std::max(1.0, res.witness_norm))
        throw InternalConsistencyError("witness-residual",
                                       "float witness residual above tolerance");
    return rec;
}

}  // namespace

Verdict analyze_with_form(const ParabolicData& pd, const LinearForm& l) {
    Verdict v;
    v.p = pd.p;
    v.q = pd.q;
    v.p1 = pd.p1;
    v.s = pd.s;
    v.t = pd.t;
    v.dim_e = 2 * static_cast<int>(pd.delta_u.size());
    v.dim_f = 2 * static_cast<int>(pd.delta_l_p.size());

    StructureConstants sc(pd);
    NilpotentAlgebra n = nilpotentize(pd, sc);
    v.hormander_ok = check_hormander(n);

    if (pd.degenerate()) {
        v.degenerate = true;
        v.degenerate_reason = "no fiber directions (p2 = 0); the certificate "
                              "pipeline does not apply";
        v.case_name = "degenerate";
        return v;
    }

    OrthogonalSequence g = strongly_orthogonal_sequence(pd);
    v.gamma = g.gamma;

    SkewForm sf = bl_and_a(l, n);
    v.hypothesis_h = check_hypothesis_h(sf);
    Polarization pol = choose_polarization(sf, n, l);
    v.case_name = pol.which == Polarization::Case::First ? "first" : "second";
    v.transverse_roots = pol.transverse_roots;

    Representation rep = realize_rep(l, pol, n);
    if (!check_rep_homomorphism(rep, n))
        throw InternalConsistencyError("rep-homomorphism",
                                       "pi is not a Lie algebra homomorphism");
    if (!check_linear_independence_at_zero(rep, n))
        throw InternalConsistencyError("rep-independence",
                                       "derivative coefficients at 0 are dependent");

    SymbolSpace space(n);
    ModelOperator op = rep_laplacian(rep, laplacian_symbol(space), l, sc);
    v.r_values = op.r;
    v.exact_mode = op.exact_mode;
    for (const RValue& rv : op.r)
        if (rv.squared.is_zero())
            throw InvalidFormError("zero oscillator frequency; the model space "
                                   "has no ground state for this form");

    if (!op.c_total.degree_block(0).is_zero())
        throw InternalConsistencyError("degree0-block",
                                       "curvature does not vanish on functions");
    v.degree0_min = op.sum_r();

    v.m_spectra = curvature_spectra(op.c_total, op.m);
    for (int deg = 0; deg <= op.m; ++deg)
        for (double mu : v.m_spectra[static_cast<std::size_t>(deg)])
            if (std::abs(mu + op.sum_r()) < kSpectrumTol) {
                v.spectral_hit_degrees.push_back(deg);
                break;
            }

    if (op.exact_mode) {
        ExtVector wm = build_eigenvector(op, l, sc, space, -1);
        v.witnesses.push_back(make_record(op, wm, "ladder"));
        ExtVector wp = build_eigenvector(op, l, sc, space, +1);
        ExtVector wd = ext_star_conj(wp);
        // The conjugate-linear duality must send the +sum r eigenvector to a
        // -sum r eigenvector in the complementary degree; validated directly.
        QuadC ev(-op.sum_r_exact());
        if (!ext_is_zero(ext_sub(op.c_total.apply(wd), ext_scale(wd, ev))))
            throw InternalConsistencyError("duality-witness",
                                           "dual vector is not a -sum r eigenvector");
        v.witnesses.push_back(make_record(op, wd, "duality"));
    } else {
        // Floating-point ladder, mirrored from the exact path.
        std::vector<ExtOp> ms;
        for (const Root& rho : op.transverse_roots)
            ms.push_back(build_m(l, sc, space, rho));
        const std::vector<Root>& start_roots =
            op.which == Polarization::Case::First ? pd.delta_u_k : pd.delta_u_p;
        int mask = 0;
        for (const Root& r0 : start_roots) mask |= 1 << space.ext_index(r0);

        auto run_chain = [&](int sign) {
            std::vector<std::complex<double>> w(static_cast<std::size_t>(1) << op.m);
            w[static_cast<std::size_t>(mask)] = 1.0;
            for (std::size_t k = 0; k < ms.size(); ++k) {
                std::vector<std::complex<double>> next(w.size());
                for (const auto& [rc, val] : ms[k].entries())
                    next[static_cast<std::size_t>(rc.first)] +=
                        val.to_complex() * w[static_cast<std::size_t>(rc.second)];
                double nrm = 0;
                for (std::size_t i = 0; i < w.size(); ++i) {
                    next[i] += double(sign) * op.r[k].approx * w[i];
                    nrm += std::norm(next[i]);
                }
                if (std::sqrt(nrm) < 1e-12)
                    throw ZeroCollapseError("ladder recursion annihilated the vector");
                w = std::move(next);
            }
            return w;
        };
        auto float_degree = [&](const std::vector<std::complex<double>>& w) {
            int deg = -1;
            for (std::size_t i = 0; i < w.size(); ++i)
                if (std::abs(w[i]) > 1e-9) deg = ext_degree(static_cast<int>(i));
            return deg;
        };
        auto push_float_witness = [&](const std::vector<std::complex<double>>& w,
                                      const char* construction) {
            WitnessRecord rec;
            rec.construction = construction;
            rec.eigenvalue = -op.sum_r();
            rec.degree = float_degree(w);
            ResidualResult res = residual_float(op, w);
            rec.residual = res.norm;
            rec.residual_exact_zero = false;
            if (res.norm > kFloatResidualTol * std::max(1.0, res.witness_norm))
                throw InternalConsistencyError("witness-residual",
                                               "float witness residual above tolerance");
            v.witnesses.push_back(rec);
        };
        push_float_witness(run_chain(-1), "ladder");
        push_float_witness(star_conj_float(run_chain(+1), op.m), "duality");
    }

    // The spectral scan must agree with the constructed witnesses.
    for (const WitnessRecord& rec : v.witnesses) {
        bool found = false;
        for (int d : v.spectral_hit_degrees) found = found || d == rec.degree;
        if (!found)
            throw InternalConsistencyError("witness-spectrum-agreement",
                                           "witness degree missing from spectral scan");
    }

    v.rockland_fails = !v.witnesses.empty();
    v.maximal_hypoelliptic = !*v.rockland_fails;
    return v;
}

Verdict analyze(int p, int q, int p1, const std::vector<Quad>& weights) {
    ParabolicData pd = build_parabolic(p, q, p1);
    if (pd.degenerate()) {
        LinearForm zero;
        Verdict v = analyze_with_form(pd, zero);
        return v;
    }
    OrthogonalSequence g = strongly_orthogonal_sequence(pd);
    std::vector<Quad> w = weights;
    if (w.empty()) w.assign(static_cast<std::size_t>(g.size()), Quad::sqrt2());
    LinearForm l = canonical_form(g, w);
    Verdict v = analyze_with_form(pd, l);
    v.weights = w;
    return v;
}

}  // namespace flagrock
