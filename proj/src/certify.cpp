#include "qinv/certify.hpp"

namespace qinv {

namespace {

void check_pair(const QPoly& A, const QPoly& B) {
    if (!A.field()->same_field(*B.field())) throw field_error("ctx mismatch");
    if (A.dim() != B.dim()) throw field_error("dimension mismatch");
    if (!A.separable() || !B.separable()) throw field_error("non-separable input");
}

}  // namespace

Certificate build_certificate(const QPoly& A, const QPoly& B, WithGcd wg) {
    check_pair(A, B);
    const FieldCtx* f = A.field();
    const unsigned d = A.dim();
    const std::uint64_t q = f->q();
    const std::uint64_t qd1 = ipow(q, d - 1);

    Certificate cert;
    cert.bound_general = 2 * qd1 - 2;
    cert.bound_q2 = d >= 2 ? ipow(q, d) - qd1 + ipow(q, d - 2) - 1 : 0;

    // C(x) = x^{q^{d-1}-1} - (sum_{i<d} a_i x^{q^{d-1}-q^i})(sum_{j<d} b_j x^{q^j-1})
    Poly s1 = Poly::zero(f), s2 = Poly::zero(f);
    for (unsigned i = 0; i < d; ++i) {
        if (A.qcoeff(i)) s1 = s1 + Poly::monomial(f, qd1 - ipow(q, i), A.qcoeff(i));
        if (B.qcoeff(i)) s2 = s2 + Poly::monomial(f, ipow(q, i) - 1, B.qcoeff(i));
    }
    cert.C = Poly::monomial(f, qd1 - 1, 1) - s1 * s2;

    if (d > 1) {
        // D(x) = x^{q^d-q^{d-1}} + b_{d-1}
        //        - (sum_{j<=d-2} b_j x^{q^j})(sum_{i<d} a_i x^{q^d-q^{d-1}-q^i})
        const std::uint64_t qd = ipow(q, d);
        Poly t1 = Poly::zero(f), t2 = Poly::zero(f);
        for (unsigned j = 0; j + 1 < d; ++j)
            if (B.qcoeff(j)) t1 = t1 + Poly::monomial(f, ipow(q, j), B.qcoeff(j));
        for (unsigned i = 0; i < d; ++i)
            if (A.qcoeff(i)) t2 = t2 + Poly::monomial(f, qd - qd1 - ipow(q, i), A.qcoeff(i));
        cert.D = Poly::monomial(f, qd - qd1, 1) + Poly(f, {B.qcoeff(d - 1)}) - t1 * t2;
    }

    // C0 = x^{1 + (1 + q + ... + q^{d-2})} C
    std::uint64_t shift = 1;
    for (unsigned i = 0; i + 1 < d; ++i) shift += ipow(q, i);
    cert.C0 = cert.C.shift(shift);

    if (wg == WithGcd::yes) {
        Poly revA = A.reversal();
        Poly bx = B.to_poly().divmod(Poly::monomial(f, 1, 1)).first;  // B(x)/x
        cert.gcd_degree = static_cast<std::uint64_t>(gcd(revA, bx).degree());
    }
    return cert;
}

Poly c0_from_expansion(const QPoly& A, const QPoly& B) {
    check_pair(A, B);
    const FieldCtx* f = A.field();
    const unsigned d = A.dim();
    const std::uint64_t q = f->q();
    std::uint64_t S = 0;
    for (unsigned i = 0; i < d; ++i) S += ipow(q, i);
    Poly r = Poly::monomial(f, S, 1);
    for (unsigned i = 0; i < d; ++i)
        for (unsigned j = 0; j < d; ++j) {
            const Elem c = f->mul(A.qcoeff(i), B.qcoeff(j));
            if (c) r = r - Poly::monomial(f, S - ipow(q, i) + ipow(q, j), c);
        }
    return r;
}

BoundsReport verify_bounds(const Subspace& A, const Subspace& B) {
    if (A.dim() != B.dim()) throw field_error("dimension mismatch");
    const FieldCtx* f = A.field();
    const unsigned d = A.dim();
    const std::uint64_t q = f->q();
    const std::uint64_t qd = ipow(q, d);

    BoundsReport rep;
    rep.bound_general = d >= 1 ? 2 * ipow(q, d - 1) - 2 : 0;
    rep.bound_q2 = d >= 2 ? qd - ipow(q, d - 1) + ipow(q, d - 2) - 1 : 0;

    auto bf = inverse_intersection_bruteforce(A, B);
    rep.count = bf.count;
    rep.witnesses = std::move(bf.witnesses);
    rep.subfield_case = rep.count == qd - 1;
    if (rep.subfield_case) return rep;  // characterized extremal case, reported not raised

    rep.general_ok = rep.count <= rep.bound_general;
    rep.tight = rep.count == rep.bound_general;
    if (q == 2 && qd > 2) rep.q2_ok = rep.count <= 3 * qd / 4 - 1;
    return rep;
}

Poly affine_certificate(const QPoly& A, Elem alpha, const QPoly& B, Elem beta) {
    check_pair(A, B);
    const FieldCtx* f = A.field();
    const unsigned d = A.dim();
    const std::uint64_t q = f->q();
    const std::uint64_t qd1 = ipow(q, d - 1);

    Certificate base = build_certificate(A, B, WithGcd::no);
    const Elem Aalpha = A.apply(alpha);
    const Elem Bbeta = B.apply(beta);

    // x C(x) + A(alpha) x^{q^{d-1}} (B(x) - x^{q^d})
    //        + B(beta) x^{q^{d-1}} (A(1/x) - 1/x^{q^d})
    //        - A(alpha) B(beta) x^{q^{d-1}}
    // (the last term clears the cross product left over at common roots)
    Poly r = base.C.shift(1);
    if (Aalpha) {
        Poly t = Poly::zero(f);
        for (unsigned j = 0; j < d; ++j)
            if (B.qcoeff(j)) t = t + Poly::monomial(f, qd1 + ipow(q, j), B.qcoeff(j));
        r = r + t.scale(Aalpha);
    }
    if (Bbeta) {
        Poly t = Poly::zero(f);
        for (unsigned i = 0; i < d; ++i)
            if (A.qcoeff(i)) t = t + Poly::monomial(f, qd1 - ipow(q, i), A.qcoeff(i));
        r = r + t.scale(Bbeta);
    }
    const Elem cross = f->mul(Aalpha, Bbeta);
    if (cross) r = r - Poly::monomial(f, qd1, cross);
    return r;
}

}  // namespace qinv
