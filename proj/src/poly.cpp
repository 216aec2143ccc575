#include "qinv/poly.hpp"

namespace qinv {

Poly Poly::monomial(const FieldCtx* f, std::uint64_t deg, Elem coeff) {
    Poly r(f);
    if (coeff != 0) {
        r.c_.assign(deg + 1, 0);
        r.c_[deg] = coeff;
    }
    return r;
}

void Poly::check_ctx(const Poly& o) const {
    if (f_ && o.f_ && !f_->same_field(*o.f_)) throw field_error("ctx mismatch");
}

Poly Poly::operator+(const Poly& o) const {
    check_ctx(o);
    const FieldCtx* f = f_ ? f_ : o.f_;
    Poly r(f);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = f->add(coeff(i), o.coeff(i));
    r.normalize();
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    check_ctx(o);
    const FieldCtx* f = f_ ? f_ : o.f_;
    Poly r(f);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = f->sub(coeff(i), o.coeff(i));
    r.normalize();
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    check_ctx(o);
    const FieldCtx* f = f_ ? f_ : o.f_;
    Poly r(f);
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            if (o.c_[j]) r.c_[i + j] = f->add(r.c_[i + j], f->mul(c_[i], o.c_[j]));
    }
    r.normalize();
    return r;
}

Poly Poly::scale(Elem s) const {
    Poly r(f_);
    if (s == 0) return r;
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = f_->mul(c_[i], s);
    return r;
}

Poly Poly::shift(std::uint64_t k) const {
    Poly r(f_);
    if (is_zero()) return r;
    r.c_.assign(c_.size() + k, 0);
    std::copy(c_.begin(), c_.end(), r.c_.begin() + static_cast<long>(k));
    return r;
}

Poly Poly::monic() const {
    if (is_zero() || lead() == 1) return *this;
    return scale(f_->inv(lead()));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& o) const {
    check_ctx(o);
    if (o.is_zero()) throw field_error("division by zero polynomial");
    Poly q(f_), r = *this;
    if (degree() < o.degree()) return {q, r};
    q.c_.assign(c_.size() - o.c_.size() + 1, 0);
    const Elem li = f_->inv(o.lead());
    while (!r.is_zero() && r.degree() >= o.degree()) {
        const std::size_t shift = r.c_.size() - o.c_.size();
        const Elem cf = f_->mul(r.c_.back(), li);
        q.c_[shift] = cf;
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            r.c_[shift + i] = f_->sub(r.c_[shift + i], f_->mul(cf, o.c_[i]));
        r.normalize();
    }
    q.normalize();
    return {q, r};
}

Elem Poly::eval(Elem x) const {
    Elem r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = f_->add(f_->mul(r, x), c_[i]);
    return r;
}

std::string Poly::format() const {
    if (is_zero()) return f_->format(0);
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ';';
        s += f_->format(c_[i]);
    }
    return s;
}

Poly Poly::parse(const FieldCtx* f, const std::string& lit) {
    std::vector<Elem> cs;
    std::size_t pos = 0;
    while (pos <= lit.size()) {
        auto semi = lit.find(';', pos);
        if (semi == std::string::npos) semi = lit.size();
        cs.push_back(f->parse(lit.substr(pos, semi - pos)));
        pos = semi + 1;
        if (semi == lit.size()) break;
    }
    return Poly(f, std::move(cs));
}

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw field_error("gcd of two zero polynomials");
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x.mod(y);
        x = y;
        y = r;
    }
    return x.monic();
}

Poly pow_mod(const Poly& a, std::uint64_t e, const Poly& m) {
    Poly base = a.mod(m);
    Poly r = Poly::one(a.field()).mod(m);
    while (e) {
        if (e & 1) r = (r * base).mod(m);
        base = (base * base).mod(m);
        e >>= 1;
    }
    return r;
}

std::uint64_t distinct_root_count(const Poly& f) {
    if (f.is_zero()) throw field_error("distinct_root_count of zero polynomial");
    if (f.degree() == 0) return 0;
    const FieldCtx* F = f.field();
    // x^{p^M} mod f by M rounds of r -> r^p mod f
    Poly r = Poly::monomial(F, 1, 1).mod(f);
    for (unsigned i = 0; i < F->M(); ++i) r = pow_mod(r, F->p(), f);
    Poly g = gcd(f, r - Poly::monomial(F, 1, 1));
    return static_cast<std::uint64_t>(g.degree());
}

}  // namespace qinv
