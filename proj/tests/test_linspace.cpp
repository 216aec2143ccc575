#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "qinv/linspace.hpp"

using namespace qinv;

namespace {

Subspace random_subspace(const FieldCtx& f, unsigned d, std::mt19937_64& rng) {
    for (;;) {
        std::vector<Elem> sp(d);
        for (auto& e : sp) e = static_cast<Elem>(rng() % (f.order() - 1)) + 1;
        Subspace s(&f, sp);
        if (s.dim() == d) return s;
    }
}

}  // namespace

TEST_CASE("subspace canonical form and element counts") {
    FieldCtx f = FieldCtx::make(2, 6, 1);
    std::mt19937_64 rng(11);
    Subspace zero(&f, {});
    CHECK(zero.dim() == 0);
    CHECK(zero.elements() == std::vector<Elem>{0});

    Subspace s = random_subspace(f, 2, rng);
    CHECK(s.elements().size() == 4);

    for (int t = 0; t < 20; ++t) {
        Subspace a = random_subspace(f, 3, rng);
        CHECK(a.elements().size() == 8);
        // same span in another order gives identical basis data
        std::vector<Elem> sp = a.basis();
        std::swap(sp[0], sp[2]);
        sp.push_back(f.add(sp[0], sp[1]));  // redundant spanning vector
        Subspace b(&f, sp);
        CHECK(a == b);
        for (Elem e : a.elements()) CHECK(a.contains(e));
    }
}

TEST_CASE("qpoly of the working subfield is x^q - x") {
    FieldCtx f = FieldCtx::make(3, 4, 1);
    Subspace fq(&f, {1});
    QPoly A = qpoly_from_subspace(fq);
    CHECK(A.qcoeffs() == std::vector<Elem>{f.neg(1), 1});
}

TEST_CASE("span{1, g} in F_9 over F_3 gives x^9 - x") {
    FieldCtx f = FieldCtx::make(3, 2, 1);
    // F_9 = the whole ambient; any basis spans it
    Subspace s(&f, {1, 3});  // 1 and x
    REQUIRE(s.dim() == 2);
    QPoly A = qpoly_from_subspace(s);
    CHECK(A.qcoeffs() == std::vector<Elem>{f.neg(1), 0, 1});
}

TEST_CASE("kernel of x^q - x is F_q") {
    FieldCtx f = FieldCtx::make(5, 4, 1);
    QPoly A(&f, {f.neg(1), 1});
    Subspace K = kernel(A);
    CHECK(K.dim() == 1);
    auto els = K.elements();
    std::set<Elem> got(els.begin(), els.end());
    auto sub = f.subfield_elements(5);
    CHECK(got == std::set<Elem>(sub.begin(), sub.end()));
}

TEST_CASE("round trips between subspaces and q-polynomials") {
    FieldCtx f = FieldCtx::make(5, 4, 1);
    std::mt19937_64 rng(12);
    for (int t = 0; t < 10; ++t) {
        Subspace s = random_subspace(f, 3, rng);
        QPoly A = qpoly_from_subspace(s);
        CHECK(A.monic());
        CHECK(A.separable());
        CHECK(kernel(A) == s);
        CHECK(qpoly_from_subspace(kernel(A)) == A);
        // kernel size by exhaustive membership
        Poly dense = A.to_poly();
        std::uint64_t roots = 0;
        for (Elem e = 0; e < f.order(); ++e)
            if (dense.eval(e) == 0) ++roots;
        CHECK(roots == 125);
    }
}

TEST_CASE("exhaustive round trip at q = 2, M = 4") {
    FieldCtx f = FieldCtx::make(2, 4, 1);
    // every subspace of every dimension
    std::vector<Elem> all(f.order());
    for (Elem e = 0; e < f.order(); ++e) all[e] = e;
    std::set<std::vector<Elem>> seen;
    for (Elem a = 1; a < 16; ++a)
        for (Elem b = 1; b < 16; ++b) {
            Subspace s(&f, {a, b});
            if (seen.count(s.basis())) continue;
            seen.insert(s.basis());
            CHECK(kernel(qpoly_from_subspace(s)) == s);
        }
}

TEST_CASE("kernel rejects non-separable and unsplit inputs") {
    FieldCtx f = FieldCtx::make(3, 4, 1);
    CHECK_THROWS_AS(kernel(QPoly(&f, {0, 1, 1})), field_error);  // a_0 = 0
    // an irreducible-style q-polynomial with too-small ambient:
    // x^{q^3} + x has nullity < 3 over F_{3^4} unless it splits
    QPoly A(&f, {1, 0, 0, 1});
    if (kernel_nullity(A) < 3) CHECK_THROWS_AS(kernel(A), field_error);
}

TEST_CASE("scaling covariance of kernels") {
    FieldCtx f = FieldCtx::make(3, 4, 1);
    std::mt19937_64 rng(13);
    for (int t = 0; t < 10; ++t) {
        Subspace s = random_subspace(f, 2, rng);
        QPoly A = qpoly_from_subspace(s);
        Elem gamma = static_cast<Elem>(rng() % (f.order() - 1)) + 1;
        QPoly Ag = A.scale_root(gamma);
        CHECK(Ag.monic());
        Subspace expected = s.scaled(f.inv(gamma));
        CHECK(kernel(Ag) == expected);
    }
}

TEST_CASE("brute force intersection: subfield pair attains q^d - 1") {
    FieldCtx f = FieldCtx::make(2, 6, 1);
    // A = B = F_8 inside F_{2^6}
    QPoly A(&f, {f.neg(1), 0, 0, 1});  // x^{q^3} - x
    Subspace F8 = kernel(A);
    REQUIRE(F8.dim() == 3);
    auto r = inverse_intersection_bruteforce(F8, F8);
    CHECK(r.count == 7);
}

TEST_CASE("brute force matches q=3 case-(1) pair count 16") {
    FieldCtx f = FieldCtx::make(3, 4, 1);
    const Elem m1 = f.neg(1);
    // a, b with a^4 = b^4 = -1, a^2 != b^2, ab != 1
    std::vector<Elem> mu;
    for (Elem a = 1; a < 81; ++a)
        if (f.pow(a, 4) == m1) mu.push_back(a);
    REQUIRE(mu.size() == 4);
    bool checked = false;
    for (Elem a : mu)
        for (Elem b : mu) {
            if (f.pow(a, 2) == f.pow(b, 2) || f.mul(a, b) == 1) continue;
            QPoly A(&f, {f.neg(a), m1, a, 1});
            QPoly B(&f, {f.neg(b), m1, b, 1});
            auto r = inverse_intersection_bruteforce(kernel(A), kernel(B));
            CHECK(r.count == 16);
            checked = true;
        }
    CHECK(checked);
}

TEST_CASE("q=2 d=3 pairs in F_{2^12} respect the improved bound") {
    FieldCtx f = FieldCtx::make(2, 12, 1);
    std::mt19937_64 rng(14);
    for (int t = 0; t < 50; ++t) {
        Subspace A = random_subspace(f, 3, rng);
        Subspace B = random_subspace(f, 3, rng);
        auto r = inverse_intersection_bruteforce(A, B);
        if (r.count == 7) continue;  // subfield pair
        CHECK(r.count <= 5);
    }
}

TEST_CASE("brute force rejects dimension mismatch; witnesses ordered and correct") {
    FieldCtx f = FieldCtx::make(3, 4, 1);
    std::mt19937_64 rng(15);
    Subspace A = random_subspace(f, 2, rng);
    Subspace B = random_subspace(f, 3, rng);
    CHECK_THROWS_AS(inverse_intersection_bruteforce(A, B), field_error);
    Subspace B2 = random_subspace(f, 2, rng);
    auto r = inverse_intersection_bruteforce(A, B2);
    CHECK(std::is_sorted(r.witnesses.begin(), r.witnesses.end()));
    for (Elem w : r.witnesses) {
        CHECK(B2.contains(w));
        CHECK(A.contains(f.inv(w)));
    }
}

TEST_CASE("maximal intersection happens exactly for inverse-paired binomials") {
    // count = q^d - 1  <=>  A = x^{q^d} + a0 x, B = x^{q^d} + a0^{-1} x
    FieldCtx f = FieldCtx::make(2, 6, 1);
    std::mt19937_64 rng(16);
    for (int t = 0; t < 200; ++t) {
        Subspace A = random_subspace(f, 3, rng);
        Subspace B = random_subspace(f, 3, rng);
        auto r = inverse_intersection_bruteforce(A, B);
        QPoly qa = qpoly_from_subspace(A), qb = qpoly_from_subspace(B);
        const bool binomial_pair = qa.qcoeff(1) == 0 && qa.qcoeff(2) == 0 &&
                                   qb.qcoeff(1) == 0 && qb.qcoeff(2) == 0 &&
                                   f.mul(qa.qcoeff(0), qb.qcoeff(0)) == 1;
        CHECK((r.count == 7) == binomial_pair);
    }
}
