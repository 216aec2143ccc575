#ifndef QINV_LINSPACE_HPP
#define QINV_LINSPACE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qinv/poly.hpp"

namespace qinv {

// Monic separable q-polynomial  A(x) = sum_{i=0}^{d} a_i x^{q^i},  a_d = 1,
// a_0 != 0.  Its root set is an F_q-subspace of dimension d when it splits in
// the ambient field.
class QPoly {
public:
    QPoly(const FieldCtx* f, std::vector<Elem> qcoeffs);
    // relaxed constructor for internal non-monic use (adjoint etc.)
    static QPoly raw(const FieldCtx* f, std::vector<Elem> qcoeffs);

    const FieldCtx* field() const { return f_; }
    unsigned dim() const { return static_cast<unsigned>(c_.size()) - 1; }
    const std::vector<Elem>& qcoeffs() const { return c_; }
    Elem qcoeff(unsigned i) const { return i < c_.size() ? c_[i] : 0; }
    bool separable() const { return c_.front() != 0; }
    bool monic() const { return c_.back() == 1; }

    // the induced F_q-linear map e -> sum a_i e^{q^i}
    Elem apply(Elem e) const;
    // dense polynomial of degree q^d
    Poly to_poly() const;
    // x^{q^d} A(1/x) = sum a_i x^{q^d - q^i}
    Poly reversal() const;
    // A_{gamma^{-1}}(x) = gamma^{-q^d} A(gamma x): monic q-polynomial whose
    // kernel is gamma^{-1} * kernel(A)
    QPoly scale_root(Elem gamma) const;

    bool operator==(const QPoly& o) const { return c_ == o.c_; }

private:
    const FieldCtx* f_;
    std::vector<Elem> c_;
};

// F_q-subspace of the ambient field in canonical reduced-echelon basis form
// (coordinates w.r.t. the fixed basis {1, x, ..., x^{n-1}} over F_q).
class Subspace {
public:
    Subspace(const FieldCtx* f, const std::vector<Elem>& spanning);

    const FieldCtx* field() const { return f_; }
    unsigned dim() const { return static_cast<unsigned>(basis_.size()); }
    const std::vector<Elem>& basis() const { return basis_; }

    // all q^d elements, deterministic order
    std::vector<Elem> elements() const;
    void for_each_element(const std::function<void(Elem)>& fn) const;
    bool contains(Elem e) const;
    Subspace scaled(Elem gamma) const;  // gamma * S

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    bool operator<(const Subspace& o) const { return basis_ < o.basis_; }

    std::string format() const;  // basis element literals joined by ';'
    static Subspace parse(const FieldCtx* f, const std::string& lit);

private:
    const FieldCtx* f_;
    std::vector<Elem> basis_;  // canonical echelon basis, ambient elements
};

// monic q-polynomial with root set exactly S
QPoly qpoly_from_subspace(const Subspace& S);

// F_q-kernel of the map induced by A; throws if a_0 = 0 or if the nullity is
// smaller than dim A (roots not all in the ambient field)
Subspace kernel(const QPoly& A);
// nullity without the split requirement
unsigned kernel_nullity(const QPoly& A);
Subspace kernel_unchecked(const QPoly& A);  // whatever nullity is found

struct BruteForceResult {
    std::uint64_t count = 0;
    std::vector<Elem> witnesses;  // ambient element order
};

// |A^{-1} cap B| by inverting every nonzero element of A and testing
// membership in B
BruteForceResult inverse_intersection_bruteforce(const Subspace& A, const Subspace& B);

}  // namespace qinv

#endif
