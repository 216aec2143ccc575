#include "qinv/linspace.hpp"

#include <algorithm>

namespace qinv {

namespace {

// reduced row echelon form over F_q; rows are coordinate vectors, entries are
// ambient elements lying in F_q
std::vector<std::vector<Elem>> rref(const FieldCtx* f, std::vector<std::vector<Elem>> rows) {
    if (rows.empty()) return rows;
    const std::size_t ncols = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        const Elem li = f->inv(rows[rank][col]);
        for (auto& v : rows[rank]) v = f->mul(v, li);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const Elem m = rows[r][col];
            for (std::size_t c2 = col; c2 < ncols; ++c2)
                rows[r][c2] = f->sub(rows[r][c2], f->mul(m, rows[rank][c2]));
        }
        ++rank;
    }
    rows.resize(rank);
    return rows;
}

}  // namespace

QPoly::QPoly(const FieldCtx* f, std::vector<Elem> qcoeffs) : f_(f), c_(std::move(qcoeffs)) {
    if (c_.size() < 2) throw field_error("q-polynomial needs dimension >= 1");
    if (c_.back() != 1) throw field_error("q-polynomial must be monic");
}

QPoly QPoly::raw(const FieldCtx* f, std::vector<Elem> qcoeffs) {
    QPoly r(f, {0, 1});
    r.c_ = std::move(qcoeffs);
    return r;
}

Elem QPoly::apply(Elem e) const {
    Elem r = 0;
    Elem x = e;
    for (unsigned i = 0; i < c_.size(); ++i) {
        if (c_[i]) r = f_->add(r, f_->mul(c_[i], x));
        if (i + 1 < c_.size()) x = f_->frobenius(x, 1);
    }
    return r;
}

Poly QPoly::to_poly() const {
    Poly r = Poly::zero(f_);
    for (unsigned i = 0; i < c_.size(); ++i)
        if (c_[i]) r = r + Poly::monomial(f_, ipow(f_->q(), i), c_[i]);
    return r;
}

Poly QPoly::reversal() const {
    const std::uint64_t qd = ipow(f_->q(), dim());
    Poly r = Poly::zero(f_);
    for (unsigned i = 0; i < c_.size(); ++i)
        if (c_[i]) r = r + Poly::monomial(f_, qd - ipow(f_->q(), i), c_[i]);
    return r;
}

QPoly QPoly::scale_root(Elem gamma) const {
    if (gamma == 0) throw field_error("zero scaling");
    // gamma^{-q^d} A(gamma x): coefficient i becomes a_i gamma^{q^i - q^d}
    const unsigned d = dim();
    std::vector<Elem> out(c_.size());
    const Elem gi = f_->inv(f_->frobenius(gamma, d));
    for (unsigned i = 0; i < c_.size(); ++i)
        out[i] = c_[i] ? f_->mul(c_[i], f_->mul(f_->frobenius(gamma, i), gi)) : 0;
    return QPoly::raw(f_, std::move(out));
}

Subspace::Subspace(const FieldCtx* f, const std::vector<Elem>& spanning) : f_(f) {
    std::vector<std::vector<Elem>> rows;
    rows.reserve(spanning.size());
    for (Elem e : spanning) rows.push_back(f->q_coords(e));
    if (rows.empty()) return;
    rows = rref(f, std::move(rows));
    basis_.reserve(rows.size());
    for (const auto& r : rows) basis_.push_back(f->from_q_coords(r));
}

std::vector<Elem> Subspace::elements() const {
    std::vector<Elem> out;
    out.reserve(ipow(f_->q(), dim()));
    for_each_element([&](Elem e) { out.push_back(e); });
    return out;
}

void Subspace::for_each_element(const std::function<void(Elem)>& fn) const {
    const auto& scalars = f_->q_elements();
    const unsigned d = dim();
    if (d == 0) {
        fn(0);
        return;
    }
    std::vector<unsigned> idx(d, 0);
    std::vector<Elem> partial(d + 1, 0);
    // odometer over scalar combinations, last coordinate fastest
    for (;;) {
        Elem v = 0;
        for (unsigned i = 0; i < d; ++i)
            if (scalars[idx[i]]) v = f_->add(v, f_->mul(scalars[idx[i]], basis_[i]));
        fn(v);
        unsigned i = d;
        while (i-- > 0) {
            if (++idx[i] < scalars.size()) break;
            idx[i] = 0;
            if (i == 0) return;
        }
    }
}

bool Subspace::contains(Elem e) const {
    std::vector<Elem> v = f_->q_coords(e);
    // reduce against echelon basis
    for (const Elem b : basis_) {
        std::vector<Elem> bc = f_->q_coords(b);
        std::size_t piv = 0;
        while (piv < bc.size() && bc[piv] == 0) ++piv;
        if (piv == bc.size()) continue;
        if (v[piv] == 0) continue;
        const Elem m = v[piv];
        for (std::size_t i = piv; i < v.size(); ++i) v[i] = f_->sub(v[i], f_->mul(m, bc[i]));
    }
    return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

Subspace Subspace::scaled(Elem gamma) const {
    if (gamma == 0) throw field_error("zero scaling");
    std::vector<Elem> sp;
    sp.reserve(basis_.size());
    for (Elem b : basis_) sp.push_back(f_->mul(gamma, b));
    return Subspace(f_, sp);
}

std::string Subspace::format() const {
    if (basis_.empty()) return "";
    std::string s;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (i) s += ';';
        s += f_->format(basis_[i]);
    }
    return s;
}

Subspace Subspace::parse(const FieldCtx* f, const std::string& lit) {
    std::vector<Elem> sp;
    std::size_t pos = 0;
    while (pos < lit.size()) {
        auto semi = lit.find(';', pos);
        if (semi == std::string::npos) semi = lit.size();
        sp.push_back(f->parse(lit.substr(pos, semi - pos)));
        pos = semi + 1;
    }
    return Subspace(f, sp);
}

QPoly qpoly_from_subspace(const Subspace& S) {
    const FieldCtx* f = S.field();
    const std::uint64_t q = f->q();
    // A_0 = x;  A_{i+1}(x) = A_i(x)^q - A_i(beta_{i+1})^{q-1} A_i(x)
    std::vector<Elem> co{1};
    for (Elem beta : S.basis()) {
        Elem img = 0;
        for (unsigned i = 0; i < co.size(); ++i)
            if (co[i]) img = f->add(img, f->mul(co[i], f->frobenius(beta, i)));
        if (img == 0) throw field_error("subspace basis not independent");
        const Elem fac = f->pow(img, q - 1);
        std::vector<Elem> next(co.size() + 1, 0);
        for (unsigned i = 0; i < co.size(); ++i) {
            next[i + 1] = f->frobenius(co[i], 1);
            next[i] = f->sub(next[i], f->mul(fac, co[i]));
        }
        co = std::move(next);
    }
    return QPoly(f, std::move(co));
}

namespace {

std::vector<std::vector<Elem>> kernel_rows(const QPoly& A) {
    const FieldCtx* f = A.field();
    const unsigned n = f->qdim();
    // matrix of the map in F_q-coordinates: column j = coords(A(x^j))
    std::vector<std::vector<Elem>> m(n, std::vector<Elem>(n, 0));
    for (unsigned j = 0; j < n; ++j) {
        const std::vector<Elem> img = f->q_coords(A.apply(f->x_power(j)));
        for (unsigned i = 0; i < n; ++i) m[i][j] = img[i];
    }
    // nullspace via column elimination on the transpose (row reduce, track)
    // solve m v = 0: row-reduce [m] and read free columns
    std::vector<int> pivot_of_col(n, -1);
    std::size_t rank = 0;
    for (unsigned col = 0; col < n && rank < n; ++col) {
        std::size_t piv = rank;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(m[rank], m[piv]);
        const Elem li = f->inv(m[rank][col]);
        for (auto& v : m[rank]) v = f->mul(v, li);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            const Elem mu = m[r][col];
            for (unsigned c2 = col; c2 < n; ++c2)
                m[r][c2] = f->sub(m[r][c2], f->mul(mu, m[rank][c2]));
        }
        pivot_of_col[col] = static_cast<int>(rank);
        ++rank;
    }
    std::vector<std::vector<Elem>> null_rows;
    for (unsigned col = 0; col < n; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        std::vector<Elem> v(n, 0);
        v[col] = 1;
        for (unsigned c2 = 0; c2 < n; ++c2) {
            const int pr = pivot_of_col[c2];
            if (pr >= 0) v[c2] = f->neg(m[static_cast<std::size_t>(pr)][col]);
        }
        null_rows.push_back(std::move(v));
    }
    return null_rows;
}

}  // namespace

unsigned kernel_nullity(const QPoly& A) {
    return static_cast<unsigned>(kernel_rows(A).size());
}

Subspace kernel_unchecked(const QPoly& A) {
    const FieldCtx* f = A.field();
    std::vector<Elem> sp;
    for (const auto& row : kernel_rows(A)) sp.push_back(f->from_q_coords(row));
    return Subspace(f, sp);
}

Subspace kernel(const QPoly& A) {
    if (!A.separable()) throw field_error("q-polynomial not separable (a_0 = 0)");
    Subspace S = kernel_unchecked(A);
    if (S.dim() != A.dim())
        throw field_error("kernel nullity " + std::to_string(S.dim()) + " < dimension " +
                          std::to_string(A.dim()) + ": ambient field too small");
    return S;
}

BruteForceResult inverse_intersection_bruteforce(const Subspace& A, const Subspace& B) {
    if (A.dim() != B.dim()) throw field_error("dimension mismatch");
    const FieldCtx* f = A.field();
    std::vector<Elem> belems = B.elements();
    std::sort(belems.begin(), belems.end());
    BruteForceResult res;
    A.for_each_element([&](Elem u) {
        if (u == 0) return;
        const Elem v = f->inv(u);
        if (std::binary_search(belems.begin(), belems.end(), v)) res.witnesses.push_back(v);
    });
    std::sort(res.witnesses.begin(), res.witnesses.end());
    res.count = res.witnesses.size();
    return res;
}

}  // namespace qinv
