#include "qinv/eform.hpp"

#include <algorithm>

namespace qinv {

void MultiPoly::add_term(const Exps& e, Elem c) {
    if (c == 0) return;
    if (e.size() != n_) throw field_error("exponent tuple arity mismatch");
    for (auto x : e)
        if (x > 3) throw field_error("exponent exceeds the form's degree cap");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second = f_->add(it->second, c);
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly MultiPoly::monomial(const FieldCtx* f, unsigned nvars, const Exps& e, Elem c) {
    MultiPoly m(f, nvars);
    m.add_term(e, c);
    return m;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, f_->neg(c));
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly r(f_, n_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Exps e(n_);
            for (unsigned i = 0; i < n_; ++i) e[i] = static_cast<std::uint8_t>(e1[i] + e2[i]);
            r.add_term(e, f_->mul(c1, c2));
        }
    return r;
}

MultiPoly MultiPoly::scale(Elem s) const {
    MultiPoly r(f_, n_);
    if (s == 0) return r;
    for (const auto& [e, c] : terms_) r.add_term(e, f_->mul(c, s));
    return r;
}

unsigned MultiPoly::degree_in(unsigned i) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, e[i]);
    return d;
}

unsigned MultiPoly::joint_degree(unsigned i, unsigned j) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, e[i] + e[j]);
    return d;
}

unsigned MultiPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        unsigned s = 0;
        for (auto x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

bool MultiPoly::homogeneous() const {
    if (terms_.empty()) return true;
    unsigned want = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        unsigned s = 0;
        for (auto x : e) s += x;
        if (first) {
            want = s;
            first = false;
        } else if (s != want) {
            return false;
        }
    }
    return true;
}

Elem MultiPoly::eval(const std::vector<Elem>& point) const {
    Elem r = 0;
    for (const auto& [e, c] : terms_) {
        Elem v = c;
        for (unsigned i = 0; i < n_; ++i)
            for (unsigned t = 0; t < e[i]; ++t) v = f_->mul(v, point[i]);
        r = f_->add(r, v);
    }
    return r;
}

MultiPoly MultiPoly::substitute(unsigned i, Elem s, unsigned j) const {
    MultiPoly r(f_, n_);
    for (const auto& [e, c] : terms_) {
        Exps e2 = e;
        Elem c2 = c;
        const unsigned k = e2[i];
        if (k) {
            e2[i] = 0;
            e2[j] = static_cast<std::uint8_t>(e2[j] + k);
            for (unsigned t = 0; t < k; ++t) c2 = f_->mul(c2, s);
        }
        r.add_term(e2, c2);
    }
    return r;
}

MultiPoly MultiPoly::substitute_linear(const std::vector<std::vector<Elem>>& m) const {
    MultiPoly r(f_, n_);
    for (const auto& [e, c] : terms_) {
        MultiPoly term(f_, n_);
        term.add_term(Exps(n_, 0), c);
        for (unsigned i = 0; i < n_; ++i)
            for (unsigned t = 0; t < e[i]; ++t) {
                MultiPoly lin(f_, n_);
                for (unsigned j = 0; j < n_; ++j) {
                    if (m[i][j] == 0) continue;
                    Exps ej(n_, 0);
                    ej[j] = 1;
                    lin.add_term(ej, m[i][j]);
                }
                term = term * lin;
            }
        r = r + term;
    }
    return r;
}

std::optional<MultiPoly> MultiPoly::divide_binomial(unsigned i, Elem s, unsigned j) const {
    // P = (x_i + s x_j) Q: split P by the x_i-degree and solve top down
    const unsigned D = degree_in(i);
    if (is_zero()) return MultiPoly(f_, n_);
    std::vector<MultiPoly> P;
    for (unsigned k = 0; k <= D; ++k) P.emplace_back(f_, n_);
    for (const auto& [e, c] : terms_) {
        Exps e2 = e;
        const unsigned k = e2[i];
        e2[i] = 0;
        P[k].add_term(e2, c);
    }
    if (D == 0) return std::nullopt;  // no x_i at all: not divisible
    std::vector<MultiPoly> Q;
    for (unsigned k = 0; k < D; ++k) Q.emplace_back(f_, n_);
    MultiPoly sxj(f_, n_);
    {
        Exps ej(n_, 0);
        ej[j] = 1;
        sxj.add_term(ej, s);
    }
    Q[D - 1] = P[D];
    for (unsigned k = D - 1; k >= 1; --k) Q[k - 1] = P[k] - sxj * Q[k];
    if (P[0] != sxj * Q[0]) return std::nullopt;
    MultiPoly out(f_, n_);
    for (unsigned k = 0; k < D; ++k) {
        Exps ei(n_, 0);
        ei[i] = static_cast<std::uint8_t>(k);
        out = out + MultiPoly::monomial(f_, n_, ei, 1) * Q[k];
    }
    return out;
}

MultiPoly::Exps MultiPoly::monomial_content() const {
    Exps g(n_, 3);
    for (const auto& [e, c] : terms_)
        for (unsigned i = 0; i < n_; ++i) g[i] = std::min(g[i], e[i]);
    if (terms_.empty()) return Exps(n_, 0);
    return g;
}

MultiPoly MultiPoly::divide_monomial(const Exps& e) const {
    MultiPoly r(f_, n_);
    for (const auto& [e1, c] : terms_) {
        Exps e2(n_);
        for (unsigned i = 0; i < n_; ++i) {
            if (e1[i] < e[i]) throw field_error("monomial does not divide");
            e2[i] = static_cast<std::uint8_t>(e1[i] - e[i]);
        }
        r.add_term(e2, c);
    }
    return r;
}

MultiPoly MultiPoly::normalized() const {
    if (terms_.empty()) return *this;
    return scale(f_->inv(terms_.begin()->second));
}

bool MultiPoly::coeffs_in_subfield(std::uint64_t r) const {
    for (const auto& [e, c] : terms_)
        if (!f_->in_subfield(c, r)) return false;
    return true;
}

MultiPoly build_E(const FieldCtx* f, const std::vector<Elem>& a, const std::vector<Elem>& b,
                  int sign) {
    if (a.size() != b.size()) throw field_error("length mismatch");
    const unsigned n = static_cast<unsigned>(a.size());
    if (n < 2) throw field_error("E needs at least two indeterminates");
    MultiPoly E(f, n);
    Elem diag = 1;
    for (unsigned i = 0; i < n; ++i) {
        const Elem aibi = f->mul(a[i], b[i]);
        diag = sign > 0 ? f->add(diag, aibi) : f->sub(diag, aibi);
    }
    E.add_term(MultiPoly::Exps(n, 1), diag);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            if (i == j) continue;
            Elem c = f->mul(a[i], b[j]);
            if (c == 0) continue;
            if (sign < 0) c = f->neg(c);
            MultiPoly::Exps e(n, 1);
            e[i] = 0;
            e[j] = 2;
            E.add_term(e, c);
        }
    return E;
}

bool check_property(const MultiPoly& E) {
    const unsigned n = E.nvars();
    for (unsigned i = 0; i < n; ++i) {
        if (E.degree_in(i) > 2) return false;
        for (unsigned j = i + 1; j < n; ++j)
            if (E.joint_degree(i, j) > 3) return false;
    }
    return true;
}

std::vector<BinomialFactor> find_binomial_linear_factors(const MultiPoly& E) {
    if (E.is_zero()) throw field_error("zero form");
    const FieldCtx* f = E.field();
    const unsigned n = E.nvars();
    std::vector<BinomialFactor> out;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) {
            // projective solve for x_i + s x_j | E via x_i <- -s x_j
            for (Elem s = 1; s < f->order(); ++s) {
                if (!E.substitute(i, f->neg(s), j).is_zero()) continue;
                out.push_back({i, j, 1, s});
            }
        }
    return out;
}

FactorReport factor_report(const MultiPoly& E) {
    MultiPoly::Exps content = E.monomial_content();
    MultiPoly core = E.divide_monomial(content);
    std::vector<BinomialFactor> factors = find_binomial_linear_factors(core);

    MultiPoly residual = core;
    std::vector<BinomialFactor> removed;
    for (const auto& bf : factors) {
        auto q = residual.divide_binomial(bf.i, bf.beta, bf.j);
        if (q) {
            residual = *q;
            removed.push_back(bf);
        }
    }
    FactorShape shape;
    const unsigned resdeg = residual.total_degree();
    if (removed.empty()) {
        shape = FactorShape::IrreducibleCandidate;
    } else if (resdeg <= 1) {
        shape = FactorShape::Exc1;
    } else if (resdeg == 2) {
        shape = FactorShape::Exc2;
    } else {
        shape = FactorShape::OtherSplit;
    }
    FactorReport rep{std::move(content), std::move(removed), std::move(residual), shape, 0};
    rep.r = rep.binomial_linear_factors.empty() ? rep.residual.total_degree() : 1;
    return rep;
}

std::pair<MultiPoly, MultiPoly> exceptional_identity_sides(const FieldCtx* f, int which) {
    // variables: x1 x2 x3 a b c  (arity 6; x3 unused in the first identity)
    const unsigned N = 6;
    auto var = [&](unsigned i) {
        MultiPoly::Exps e(N, 0);
        e[i] = 1;
        return MultiPoly::monomial(f, N, e, 1);
    };
    const MultiPoly x1 = var(0), x2 = var(1), x3 = var(2), a = var(3), b = var(4), c = var(5);
    auto one = MultiPoly::monomial(f, N, MultiPoly::Exps(N, 0), 1);

    if (which == 1) {
        // c x1 x2 + (a x2 + (a+c) x1)(b c x1 + (b c - 1) x2)
        MultiPoly lhs = c * x1 * x2 + (a * x2 + (a + c) * x1) * (b * c * x1 + (b * c - one) * x2);
        // (x1 + x2)((a+c) b c x1 + a (b c - 1) x2)
        MultiPoly rhs = (x1 + x2) * ((a + c) * b * c * x1 + a * (b * c - one) * x2);
        return {lhs, rhs};
    }
    // x1 x2 x3 (1 + (a/x1 + a/x2 + 1/x3)(b x1 + b x2 - x3)); the inner sign
    // is forced by the factor-existence constraint a_3 b_3 = -1
    MultiPoly lhs = x1 * x2 * x3 + (a * x2 * x3 + a * x1 * x3 + x1 * x2) * (b * x1 + b * x2 - x3);
    // (x1 + x2)(a b x2 x3 + a b x1 x3 + b x1 x2 - a x3^2)
    MultiPoly rhs = (x1 + x2) * (a * b * x2 * x3 + a * b * x1 * x3 + b * x1 * x2 - a * x3 * x3);
    return {lhs, rhs};
}

bool verify_exceptional_identities(unsigned p) {
    FieldCtx f = FieldCtx::make(p, 1, 1);
    for (int which : {1, 2}) {
        auto [lhs, rhs] = exceptional_identity_sides(&f, which);
        if (lhs != rhs) return false;
    }
    return true;
}

CoordinateChange coordinate_change(const QPoly& B) {
    const FieldCtx* f = B.field();
    if (!B.separable()) throw field_error("B must be separable");
    const unsigned d = B.dim();
    const std::uint64_t q = f->q();

    // adjoint q-polynomial b_0^{q^d} x^{q^d} + b_1^{q^{d-1}} x^{q^{d-1}} + ... + b_d x
    std::vector<Elem> adj(d + 1);
    for (unsigned u = 0; u <= d; ++u) adj[u] = f->frobenius(B.qcoeff(d - u), u);
    const Elem lead = adj[d];
    for (auto& c : adj) c = f->mul(c, f->inv(lead));
    Subspace roots = kernel(QPoly::raw(f, std::move(adj)));
    if (roots.dim() != d) throw field_error("adjoint does not split in the ambient");

    CoordinateChange cc;
    cc.gammas = roots.basis();
    // T[j][i] = c_i(gamma_j) = sum_{s<=i} b_s^{q^{i-s}} gamma_j^{q^{i-s}}
    cc.z_from_x.assign(d, std::vector<Elem>(d, 0));
    for (unsigned j = 0; j < d; ++j)
        for (unsigned i = 0; i < d; ++i) {
            Elem v = 0;
            for (unsigned s = 0; s <= i; ++s) {
                const Elem t = f->mul(f->frobenius(B.qcoeff(s), i - s), f->frobenius(cc.gammas[j], i - s));
                v = f->add(v, t);
            }
            cc.z_from_x[j][i] = v;
        }

    // the functionals take values in F_q on every element of kernel(B)
    Subspace KB = kernel(B);
    cc.functionals_verified = true;
    KB.for_each_element([&](Elem v) {
        for (unsigned j = 0; j < d && cc.functionals_verified; ++j) {
            Elem z = 0;
            for (unsigned i = 0; i < d; ++i)
                z = f->add(z, f->mul(cc.z_from_x[j][i], f->frobenius(v, i)));
            if (!f->in_subfield(z, q)) cc.functionals_verified = false;
        }
    });
    if (!cc.functionals_verified) throw field_error("coordinate functionals not F_q-valued");

    // invert T over the ambient field
    std::vector<std::vector<Elem>> m = cc.z_from_x;
    std::vector<std::vector<Elem>> inv(d, std::vector<Elem>(d, 0));
    for (unsigned i = 0; i < d; ++i) inv[i][i] = 1;
    for (unsigned col = 0; col < d; ++col) {
        unsigned piv = col;
        while (piv < d && m[piv][col] == 0) ++piv;
        if (piv == d) throw field_error("transition matrix singular");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        const Elem li = f->inv(m[col][col]);
        for (unsigned c2 = 0; c2 < d; ++c2) {
            m[col][c2] = f->mul(m[col][c2], li);
            inv[col][c2] = f->mul(inv[col][c2], li);
        }
        for (unsigned r = 0; r < d; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Elem mu = m[r][col];
            for (unsigned c2 = 0; c2 < d; ++c2) {
                m[r][c2] = f->sub(m[r][c2], f->mul(mu, m[col][c2]));
                inv[r][c2] = f->sub(inv[r][c2], f->mul(mu, inv[col][c2]));
            }
        }
    }
    // x_i = sum_j inv[i][j] z_j, since z = T x
    cc.x_from_z = std::move(inv);
    return cc;
}

Poly univariate_substitution(const MultiPoly& E) {
    const FieldCtx* f = E.field();
    const std::uint64_t q = f->q();
    Poly r = Poly::zero(f);
    for (const auto& [e, c] : E.terms()) {
        std::uint64_t deg = 0;
        for (unsigned i = 0; i < e.size(); ++i) deg += static_cast<std::uint64_t>(e[i]) * ipow(q, i);
        r = r + Poly::monomial(f, deg, c);
    }
    return r;
}

ConjugateTriplesReport frobenius_conjugate_points(const QPoly& A, const QPoly& B) {
    if (A.dim() != 3 || B.dim() != 3) throw field_error("needs d = 3");
    const FieldCtx* f = A.field();
    const std::uint64_t q = f->q();
    const std::vector<Elem> a{A.qcoeff(0), A.qcoeff(1), A.qcoeff(2)};
    const std::vector<Elem> b{B.qcoeff(0), B.qcoeff(1), B.qcoeff(2)};

    MultiPoly F = build_E(f, a, b, -1);

    // Frobenius conjugate reduced mod B: monomial x0^{e0} x1^{e1} x2^{e2}
    // with q-power coefficients maps to x1^{e0} x2^{e1} R^{e2},
    // R = -(b0 x0 + b1 x1 + b2 x2)
    MultiPoly R(f, 3);
    R.add_term({1, 0, 0}, f->neg(b[0]));
    R.add_term({0, 1, 0}, f->neg(b[1]));
    R.add_term({0, 0, 1}, f->neg(b[2]));
    MultiPoly Fs(f, 3);
    for (const auto& [e, c] : F.terms()) {
        MultiPoly t = MultiPoly::monomial(f, 3, {0, e[0], e[1]}, f->frobenius(c, 1));
        for (unsigned rep = 0; rep < e[2]; ++rep) t = t * R;
        Fs = Fs + t;
    }

    ConjugateTriplesReport rep;
    rep.triples[0] = {Elem{1}, Elem{0}, Elem{0}};
    rep.triples[1] = {b[1], f->neg(b[0]), Elem{0}};
    rep.triples[2] = {b[2], Elem{0}, f->neg(b[0])};
    rep.f_vanishes = true;
    rep.fsigma_vanishes = true;
    rep.none_rational = true;
    for (const auto& t : rep.triples) {
        const std::vector<Elem> pt{t[0], t[1], t[2]};
        if (F.eval(pt) != 0) rep.f_vanishes = false;
        if (Fs.eval(pt) != 0) rep.fsigma_vanishes = false;
        // rational means x1 = x0^q, x2 = x1^q, x2^q = -(b2 x2 + b1 x1 + b0 x0)
        const bool rational =
            t[1] == f->pow(t[0], q) && t[2] == f->pow(t[1], q) &&
            f->pow(t[2], q) ==
                f->neg(f->add(f->mul(b[2], t[2]), f->add(f->mul(b[1], t[1]), f->mul(b[0], t[0]))));
        if (rational) rep.none_rational = false;
    }
    return rep;
}

}  // namespace qinv
