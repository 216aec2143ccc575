#ifndef QINV_POLY_HPP
#define QINV_POLY_HPP

#include <cstdint>
#include <vector>

#include "qinv/gf.hpp"

namespace qinv {

// Dense univariate polynomial over the ambient field, constant term first,
// no trailing zero coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(const FieldCtx* f) : f_(f) {}
    Poly(const FieldCtx* f, std::vector<Elem> coeffs) : f_(f), c_(std::move(coeffs)) {
        normalize();
    }
    static Poly zero(const FieldCtx* f) { return Poly(f); }
    static Poly one(const FieldCtx* f) { return monomial(f, 0, 1); }
    static Poly monomial(const FieldCtx* f, std::uint64_t deg, Elem coeff);

    const FieldCtx* field() const { return f_; }
    bool is_zero() const { return c_.empty(); }
    // -1 for the zero polynomial
    long long degree() const { return static_cast<long long>(c_.size()) - 1; }
    const std::vector<Elem>& coeffs() const { return c_; }
    Elem coeff(std::uint64_t i) const { return i < c_.size() ? c_[i] : 0; }
    Elem lead() const { return c_.empty() ? 0 : c_.back(); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly scale(Elem s) const;
    Poly shift(std::uint64_t k) const;  // multiply by x^k
    Poly monic() const;
    // quotient and remainder on division by o (o nonzero)
    std::pair<Poly, Poly> divmod(const Poly& o) const;
    Poly mod(const Poly& o) const { return divmod(o).second; }

    Elem eval(Elem x) const;

    std::string format() const;  // element literals joined by ';'
    static Poly parse(const FieldCtx* f, const std::string& lit);

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    void check_ctx(const Poly& o) const;

    const FieldCtx* f_ = nullptr;
    std::vector<Elem> c_;
};

// monic gcd via Euclid; gcd(f, 0) = monic(f)
Poly gcd(const Poly& a, const Poly& b);

// number of distinct roots of f in the ambient field:
// deg gcd(f, x^{p^M} - x) with x^{p^M} reduced mod f by iterated
// Frobenius-mod-f, never materializing degree p^M
std::uint64_t distinct_root_count(const Poly& f);

// a^e mod m
Poly pow_mod(const Poly& a, std::uint64_t e, const Poly& m);

}  // namespace qinv

#endif
