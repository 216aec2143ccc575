#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qinv/certify.hpp"

using namespace qinv;

namespace {

QPoly random_split_qpoly(const FieldCtx& f, unsigned d, std::mt19937_64& rng) {
    for (;;) {
        std::vector<Elem> sp(d);
        for (auto& e : sp) e = static_cast<Elem>(rng() % (f.order() - 1)) + 1;
        Subspace s(&f, sp);
        if (s.dim() == d) return qpoly_from_subspace(s);
    }
}

QPoly random_qpoly_coeffs(const FieldCtx& f, unsigned d, std::mt19937_64& rng) {
    std::vector<Elem> c(d + 1);
    c[0] = static_cast<Elem>(rng() % (f.order() - 1)) + 1;
    for (unsigned i = 1; i < d; ++i) c[i] = static_cast<Elem>(rng() % f.order());
    c[d] = 1;
    return QPoly(&f, std::move(c));
}

}  // namespace

TEST_CASE("C vanishes exactly for inverse-paired binomials") {
    FieldCtx f = FieldCtx::make(3, 4, 1);
    std::mt19937_64 rng(20);
    for (int t = 0; t < 20; ++t) {
        Elem a0 = static_cast<Elem>(rng() % 80) + 1;
        QPoly A(&f, {a0, 0, 0, 1});
        QPoly B(&f, {f.inv(a0), 0, 0, 1});
        Certificate c = build_certificate(A, B, WithGcd::no);
        CHECK(c.C.is_zero());
        // non-paired binomial: nonzero
        Elem b0 = f.add(f.inv(a0), 1);
        if (b0 == 0) continue;
        Certificate c2 = build_certificate(A, QPoly(&f, {b0, 0, 0, 1}), WithGcd::no);
        CHECK(!c2.C.is_zero());
    }
}

TEST_CASE("q=3 case-(1) pair: C matches the factored form and gcd degree is 16") {
    FieldCtx f = FieldCtx::make(3, 4, 1);
    const Elem m1 = f.neg(1);
    std::vector<Elem> mu;
    for (Elem a = 1; a < 81; ++a)
        if (f.pow(a, 4) == m1) mu.push_back(a);
    REQUIRE(mu.size() == 4);
    Elem a = 0, b = 0;
    for (Elem x : mu)
        for (Elem y : mu)
            if (f.pow(x, 2) != f.pow(y, 2) && f.mul(x, y) != 1) { a = x; b = y; }
    REQUIRE(a != 0);
    QPoly A(&f, {f.neg(a), m1, a, 1});
    QPoly B(&f, {f.neg(b), m1, b, 1});
    Certificate cert = build_certificate(A, B, WithGcd::yes);

    // (x^{q^2-1} - 1)(ab x^{q^2-1} + b x^{q^2-q} - a x^{q-1} - ab)
    const std::uint64_t q = 3;
    Poly f1 = Poly::monomial(&f, q * q - 1, 1) - Poly::one(&f);
    Poly f2 = Poly::monomial(&f, q * q - 1, f.mul(a, b)) + Poly::monomial(&f, q * q - q, b) -
              Poly::monomial(&f, q - 1, a) - Poly(&f, {f.mul(a, b)});
    CHECK(cert.C == f1 * f2);
    CHECK(cert.gcd_degree.value() == 16);
    CHECK(distinct_root_count(cert.C) >= 16);

    // all 16 roots of C that lie in B are exactly the witnesses
    auto r = inverse_intersection_bruteforce(kernel(A), kernel(B));
    CHECK(r.count == 16);
    for (Elem w : r.witnesses) CHECK(cert.C.eval(w) == 0);
}

TEST_CASE("witness containment in C and D for random pairs") {
    std::mt19937_64 rng(21);
    for (auto [p, M] : {std::pair<unsigned, unsigned>{2, 6}, {3, 4}, {5, 4}}) {
        FieldCtx f = FieldCtx::make(p, M, 1);
        for (int t = 0; t < 15; ++t) {
            QPoly A = random_split_qpoly(f, 3, rng);
            QPoly B = random_split_qpoly(f, 3, rng);
            Certificate cert = build_certificate(A, B, WithGcd::no);
            auto r = inverse_intersection_bruteforce(kernel(A), kernel(B));
            for (Elem w : r.witnesses) {
                CHECK(cert.C.eval(w) == 0);
                CHECK(cert.D->eval(w) == 0);
            }
            if (!cert.C.is_zero())
                CHECK(static_cast<std::uint64_t>(cert.C.degree()) <= cert.bound_general);
            if (!cert.D->is_zero())
                CHECK(static_cast<std::uint64_t>(cert.D->degree()) <= cert.bound_q2);
            if (!cert.C.is_zero()) CHECK(distinct_root_count(cert.C) >= r.count);
        }
    }
}

TEST_CASE("exhaustive witness containment for q=2 d<=3 in F_{2^12}") {
    FieldCtx f = FieldCtx::make(2, 12, 1);
    std::mt19937_64 rng(22);
    for (unsigned d = 1; d <= 3; ++d) {
        for (int t = 0; t < 25; ++t) {
            QPoly A = random_split_qpoly(f, d, rng);
            QPoly B = random_split_qpoly(f, d, rng);
            Certificate cert = build_certificate(A, B, WithGcd::no);
            auto r = inverse_intersection_bruteforce(kernel(A), kernel(B));
            for (Elem w : r.witnesses) {
                CHECK(cert.C.eval(w) == 0);
                if (d > 1) CHECK(cert.D->eval(w) == 0);
            }
        }
    }
}

TEST_CASE("D agrees with its gcd-route definition") {
    // D = C x^{q^d - 2q^{d-1} + 1} + b_{d-1} x^{q^d} A(1/x)
    std::mt19937_64 rng(23);
    FieldCtx f = FieldCtx::make(3, 4, 1);
    for (int t = 0; t < 10; ++t) {
        QPoly A = random_qpoly_coeffs(f, 3, rng);
        QPoly B = random_qpoly_coeffs(f, 3, rng);
        Certificate cert = build_certificate(A, B, WithGcd::no);
        const std::uint64_t qd = 27, qd1 = 9;
        Poly route2 = cert.C.shift(qd - 2 * qd1 + 1) + A.reversal().scale(B.qcoeff(2));
        CHECK(*cert.D == route2);
    }
}

TEST_CASE("C0 identity: shifted C equals the direct expansion") {
    std::mt19937_64 rng(24);
    for (auto [p, M] : {std::pair<unsigned, unsigned>{2, 6}, {3, 4}, {5, 4}}) {
        FieldCtx f = FieldCtx::make(p, M, 1);
        for (unsigned d = 2; d <= 3; ++d)
            for (int t = 0; t < 10; ++t) {
                QPoly A = random_qpoly_coeffs(f, d, rng);
                QPoly B = random_qpoly_coeffs(f, d, rng);
                Certificate cert = build_certificate(A, B, WithGcd::no);
                CHECK(cert.C0 == c0_from_expansion(A, B));
            }
    }
}

TEST_CASE("verify_bounds reports") {
    FieldCtx f = FieldCtx::make(3, 4, 1);
    const Elem m1 = f.neg(1);

    SUBCASE("q=3 case-(1) pair is tight") {
        std::vector<Elem> mu;
        for (Elem a = 1; a < 81; ++a)
            if (f.pow(a, 4) == m1) mu.push_back(a);
        for (Elem a : mu)
            for (Elem b : mu) {
                if (f.pow(a, 2) == f.pow(b, 2) || f.mul(a, b) == 1) continue;
                QPoly A(&f, {f.neg(a), m1, a, 1});
                QPoly B(&f, {f.neg(b), m1, b, 1});
                auto rep = verify_bounds(kernel(A), kernel(B));
                CHECK(rep.count == 16);
                CHECK(rep.bound_general == 16);
                CHECK(rep.tight);
                CHECK(rep.general_ok);
                CHECK(!rep.subfield_case);
            }
    }

    SUBCASE("subfield pair flagged, not raised") {
        FieldCtx f2 = FieldCtx::make(2, 6, 1);
        Subspace F8 = kernel(QPoly(&f2, {1, 0, 0, 1}));  // x^{q^3} + x, char 2
        auto rep = verify_bounds(F8, F8);
        CHECK(rep.subfield_case);
        CHECK(rep.count == 7);
    }

    SUBCASE("q=2 improved bound over F_{2^6}") {
        FieldCtx f2 = FieldCtx::make(2, 6, 1);
        std::mt19937_64 rng(25);
        std::uint64_t max_count = 0;
        for (int t = 0; t < 300; ++t) {
            std::vector<Elem> sa(3), sb(3);
            for (auto& e : sa) e = static_cast<Elem>(rng() % 63) + 1;
            for (auto& e : sb) e = static_cast<Elem>(rng() % 63) + 1;
            Subspace A(&f2, sa), B(&f2, sb);
            if (A.dim() != 3 || B.dim() != 3) continue;
            auto rep = verify_bounds(A, B);
            if (rep.subfield_case) continue;
            CHECK(rep.q2_ok);
            max_count = std::max(max_count, rep.count);
        }
        CHECK(max_count <= 5);
    }
}

TEST_CASE("affine certificate") {
    std::mt19937_64 rng(26);
    for (auto [p, M, d] : {std::tuple<unsigned, unsigned, unsigned>{3, 4, 2}, {3, 4, 3}, {2, 6, 3}}) {
        FieldCtx f = FieldCtx::make(p, M, d == 0 ? 1 : 1);
        for (int t = 0; t < 20; ++t) {
            QPoly A = random_split_qpoly(f, d, rng);
            QPoly B = random_split_qpoly(f, d, rng);
            Elem alpha = static_cast<Elem>(rng() % f.order());
            Elem beta = static_cast<Elem>(rng() % f.order());
            Poly aff = affine_certificate(A, alpha, B, beta);
            const std::uint64_t bound = 2 * ipow(f.q(), d - 1);
            if (!aff.is_zero()) CHECK(static_cast<std::uint64_t>(aff.degree()) <= bound);

            // brute force (A+alpha)^{-1} cap (B+beta)
            Subspace SA = kernel(A), SB = kernel(B);
            std::vector<Elem> wits;
            const Elem Bbeta = B.apply(beta);
            SA.for_each_element([&](Elem u) {
                const Elem ua = f.add(u, alpha);
                if (ua == 0) return;
                const Elem v = f.inv(ua);
                if (B.apply(v) == Bbeta) wits.push_back(v);
            });
            CHECK(wits.size() <= bound);
            for (Elem w : wits) CHECK(aff.eval(w) == 0);
        }
    }
}

TEST_CASE("affine certificate reduces to xC at alpha = beta = 0") {
    FieldCtx f = FieldCtx::make(3, 4, 1);
    std::mt19937_64 rng(27);
    QPoly A = random_split_qpoly(f, 2, rng);
    QPoly B = random_split_qpoly(f, 2, rng);
    Certificate cert = build_certificate(A, B, WithGcd::no);
    CHECK(affine_certificate(A, 0, B, 0) == cert.C.shift(1));
}

TEST_CASE("certificate input validation") {
    FieldCtx f = FieldCtx::make(3, 4, 1);
    QPoly A(&f, {1, 0, 1});        // d = 2
    QPoly B(&f, {1, 0, 0, 1});     // d = 3
    CHECK_THROWS_AS(build_certificate(A, B), field_error);
    CHECK_THROWS_AS(build_certificate(QPoly::raw(&f, {0, 1, 1}), A), field_error);
}
