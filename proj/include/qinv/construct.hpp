#ifndef QINV_CONSTRUCT_HPP
#define QINV_CONSTRUCT_HPP

#include <array>

#include "qinv/certify.hpp"
#include "qinv/linspace.hpp"

namespace qinv {

// the position of the F_q-rational line relative to the conic in the
// projective plane of B
enum class CaseTag { External = 1, Secant = 2, Tangent = 3, Other = 4 };

const char* case_name(CaseTag t);

struct CaseDecision {
    CaseTag tag;
    std::uint64_t value;  // exact count for cases 1-3, upper bound for case 4
    bool is_bound;
};

// applies the case predicate table to (q, a, b) for the pair
// A = x^{q^d} + a x^{q^{d-1}} - x^q - a x, B likewise with b
CaseDecision classify_special_case(const FieldCtx& f, Elem a, Elem b);

struct SpecialPair {
    const FieldCtx* f;
    unsigned d;
    Elem a, b;
    CaseDecision decision;
    QPoly A, B;
    Subspace SA, SB;
};

SpecialPair make_special_pair(const FieldCtx& f, unsigned d, Elem a, Elem b);

// first a in F_{q^2}^* with a^{q+1} = -1 (q odd) or = 1 excluding a = 1
// (q even), in element order
Elem find_case_parameter(const FieldCtx& f);

struct GeometryReport {
    // x^{q+2} C(x) = (x^{q^2} - x)(ab x^{q^2+q} + b x^{q^2+1} - a x^{2q} - ab x^{q+1})
    bool identity_ok = false;
    bool nonsingular = false;  // ab != 1
    bool conic_rational = false;
    std::uint64_t on_line = 0, on_conic = 0, on_both = 0;
    std::uint64_t ratio = 0;  // |A^{-1} cap B| / (q-1)
    bool counts_match = false;  // on_line + on_conic - on_both == ratio (rational conic)
    std::string line_position;  // external | secant | tangent | conic-not-rational
};

GeometryReport geometry_report(const SpecialPair& pair);

struct QdBoundReport {
    std::uint64_t count = 0;
    std::uint64_t bound = 0;  // q^{d-1} + 2q^2 - 3
    bool ok = false;
};

QdBoundReport qd_configuration_bound(const FieldCtx& f, unsigned d, Elem a, Elem b);

// parameter a = -L(u)^{q-1} with L = x^{q^{d-1}} - x makes the kernel of
// x^{q^d} + a x^{q^{d-1}} - x^q - a x split with full dimension d
Elem sample_splitting_parameter(const FieldCtx& f, unsigned d, Elem u);

// kernel of x -> Tr_{F_{q^4}/F_q}(alpha x); requires alpha^2 in F_{q^2} \ F_q
Subspace trace_kernel_space(const FieldCtx& f, Elem alpha);

// roots of P(alpha gamma^{-1} x) and P(alpha gamma x), P = x^{q^3}+x^{q^2}+x^q+x
std::pair<Subspace, Subspace> corollary_pair(const FieldCtx& f, Elem alpha, Elem gamma);

// the kernel of P itself (3-dimensional, inside F_{q^4})
Subspace corollary_base_kernel(const FieldCtx& f);

bool valid_corollary_alpha(const FieldCtx& f, Elem alpha);

}  // namespace qinv

#endif
