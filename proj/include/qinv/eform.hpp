#ifndef QINV_EFORM_HPP
#define QINV_EFORM_HPP

#include <array>
#include <map>
#include <optional>

#include "qinv/linspace.hpp"
#include "qinv/poly.hpp"

namespace qinv {

// Sparse multivariate polynomial with per-variable exponents capped at 3
// (the joint-degree property of the form E makes anything larger a
// construction bug).
class MultiPoly {
public:
    using Exps = std::vector<std::uint8_t>;

    MultiPoly(const FieldCtx* f, unsigned nvars) : f_(f), n_(nvars) {}

    const FieldCtx* field() const { return f_; }
    unsigned nvars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exps, Elem>& terms() const { return terms_; }

    void add_term(const Exps& e, Elem c);
    static MultiPoly monomial(const FieldCtx* f, unsigned nvars, const Exps& e, Elem c);

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }
    MultiPoly scale(Elem s) const;

    unsigned degree_in(unsigned i) const;
    unsigned joint_degree(unsigned i, unsigned j) const;
    unsigned total_degree() const;
    bool homogeneous() const;

    Elem eval(const std::vector<Elem>& point) const;
    // substitute x_i <- s * x_j
    MultiPoly substitute(unsigned i, Elem s, unsigned j) const;
    // substitute x_i <- sum_j m[i][j] * y_j (a full linear change of variables)
    MultiPoly substitute_linear(const std::vector<std::vector<Elem>>& m) const;
    // exact division by (x_i + s x_j); nullopt if not divisible
    std::optional<MultiPoly> divide_binomial(unsigned i, Elem s, unsigned j) const;
    // greatest common monomial of all terms
    Exps monomial_content() const;
    MultiPoly divide_monomial(const Exps& e) const;

    // scale so the lexicographically first term has coefficient 1
    MultiPoly normalized() const;
    bool coeffs_in_subfield(std::uint64_t r) const;

private:
    const FieldCtx* f_;
    unsigned n_;
    std::map<Exps, Elem> terms_;
};

// E(x_1..x_n) = x_1...x_n (1 + sign (sum a_i/x_i)(sum b_j x_j)), sign = +-1
MultiPoly build_E(const FieldCtx* f, const std::vector<Elem>& a, const std::vector<Elem>& b,
                  int sign);

// per-variable degree <= 2 and pairwise joint degree <= 3
bool check_property(const MultiPoly& E);

struct BinomialFactor {
    unsigned i, j;  // i < j
    Elem alpha, beta;  // alpha x_i + beta x_j, normalized alpha = 1
};

// all non-monomial linear factors of E; by the linear-factor lemma these are
// combinations of exactly two indeterminates, so the pairwise projective
// solve is complete
std::vector<BinomialFactor> find_binomial_linear_factors(const MultiPoly& E);

enum class FactorShape { IrreducibleCandidate, Exc1, Exc2, OtherSplit };

struct FactorReport {
    MultiPoly::Exps monomial_part;
    std::vector<BinomialFactor> binomial_linear_factors;
    MultiPoly residual;
    FactorShape shape;
    unsigned r = 0;  // degree of the first non-monomial factor
};

FactorReport factor_report(const MultiPoly& E);

// both displayed exceptional factorization identities, expanded symbolically
// over F_p with a, b, c as extra indeterminates (the single c^{-1} cleared)
bool verify_exceptional_identities(unsigned p);
// the two sides of one identity, for perturbation tests; which = 1 or 2
std::pair<MultiPoly, MultiPoly> exceptional_identity_sides(const FieldCtx* f, int which);

struct CoordinateChange {
    std::vector<Elem> gammas;                    // F_q-basis of adjoint roots
    std::vector<std::vector<Elem>> z_from_x;     // z_j = sum_i T[j][i] x_i
    std::vector<std::vector<Elem>> x_from_z;     // inverse transition
    bool functionals_verified = false;           // F_q-valued on all of kernel(B)
};

CoordinateChange coordinate_change(const QPoly& B);

// substitute x_i <- x^{q^i}; the E-form counterpart of C0
Poly univariate_substitution(const MultiPoly& E);

struct ConjugateTriplesReport {
    std::array<std::array<Elem, 3>, 3> triples;
    bool f_vanishes = false;        // C0-form vanishes on all three
    bool fsigma_vanishes = false;   // Frobenius-conjugate reduced form too
    bool none_rational = false;
};

ConjugateTriplesReport frobenius_conjugate_points(const QPoly& A, const QPoly& B);

}  // namespace qinv

#endif
