#ifndef QINV_CERTIFY_HPP
#define QINV_CERTIFY_HPP

#include <optional>

#include "qinv/linspace.hpp"
#include "qinv/poly.hpp"

namespace qinv {

// Certificate polynomials for a pair of monic separable q-polynomials of the
// same dimension d.  C has degree <= 2q^{d-1}-2 (unless it vanishes, which
// happens exactly for the inverse-paired binomials), D has degree
// <= q^d - q^{d-1} + q^{d-2} - 1 and exists for d > 1, and every element of
// A^{-1} cap B is a root of each.
struct Certificate {
    Poly C;
    std::optional<Poly> D;
    Poly C0;  // x^{1+(1+q+...+q^{d-2})} * C
    std::uint64_t bound_general = 0;  // 2q^{d-1} - 2
    std::uint64_t bound_q2 = 0;       // q^d - q^{d-1} + q^{d-2} - 1
    std::optional<std::uint64_t> gcd_degree;  // deg gcd(x^{q^d}A(1/x), B(x)/x)
};

enum class WithGcd { no, yes };

Certificate build_certificate(const QPoly& A, const QPoly& B, WithGcd wg = WithGcd::yes);

// sparse C0 built independently from the display
// x^{1+q+...+q^{d-1}} (1 - (sum a_i/x^{q^i})(sum b_j x^{q^j}))
Poly c0_from_expansion(const QPoly& A, const QPoly& B);

struct BoundsReport {
    std::uint64_t count = 0;
    std::uint64_t bound_general = 0;
    std::uint64_t bound_q2 = 0;
    bool tight = false;          // count == bound_general
    bool subfield_case = false;  // A^{-1} subset of B (count = q^d - 1)
    bool general_ok = true;
    bool q2_ok = true;           // only checked when q = 2 and |B| > 2
    std::vector<Elem> witnesses;
};

BoundsReport verify_bounds(const Subspace& A, const Subspace& B);

// certificate for the affine pair (A+alpha, B+beta); every element of
// (A+alpha)^{-1} cap (B+beta) is a root, degree <= 2q^{d-1}
Poly affine_certificate(const QPoly& A, Elem alpha, const QPoly& B, Elem beta);

}  // namespace qinv

#endif
