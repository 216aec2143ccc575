#ifndef QINV_GF_HPP
#define QINV_GF_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qinv {

// Element of F_{p^M}, encoded as the integer whose base-p digits are the
// polynomial-basis coordinates, constant term first.
using Elem = std::uint32_t;

class field_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Explicit finite field F_{p^M} with a designated working subfield F_q,
// q = p^k, k | M.  The modulus is the lexicographically smallest monic
// irreducible of degree M over F_p with nonzero constant term (coefficient
// sequences ordered constant-term-first), so serialized elements are
// reproducible across runs.
class FieldCtx {
public:
    static FieldCtx make(unsigned p, unsigned M, unsigned k);
    // Field spec string "p^k:M", e.g. "5^1:4".
    static FieldCtx from_spec(const std::string& spec);

    unsigned p() const { return p_; }
    unsigned M() const { return M_; }
    unsigned k() const { return k_; }
    std::uint64_t q() const { return q_; }
    std::uint64_t order() const { return order_; }
    unsigned qdim() const { return M_ / k_; }  // dimension of the ambient over F_q
    const std::vector<unsigned>& modulus() const { return modulus_; }
    std::string spec() const;

    bool same_field(const FieldCtx& o) const {
        return p_ == o.p_ && M_ == o.M_ && k_ == o.k_;
    }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[mod_ord(static_cast<std::uint64_t>(log_[a]) + log_[b])];
    }
    Elem inv(Elem a) const {
        if (a == 0) throw field_error("inversion of zero");
        return exp_[mod_ord(order_ - 1 - log_[a])];
    }
    Elem pow(Elem a, std::uint64_t e) const;
    // a^{q^j}
    Elem frobenius(Elem a, std::uint64_t j) const;
    // a^{p^i}
    Elem frobenius_p(Elem a, std::uint64_t i) const;
    // true iff a lies in the subfield of order r; r must be p^j with j | M
    bool in_subfield(Elem a, std::uint64_t r) const;
    // all elements of the subfield of order r, ascending element order
    std::vector<Elem> subfield_elements(std::uint64_t r) const;
    const std::vector<Elem>& q_elements() const { return q_elements_; }

    // F_q-coordinates of a w.r.t. the basis {1, x, ..., x^{qdim()-1}}
    std::vector<Elem> q_coords(Elem a) const;
    Elem from_q_coords(const std::vector<Elem>& c) const;
    // the basis element x^j
    Elem x_power(unsigned j) const;

    // "c0,c1,...": base-p digit list, constant term first
    std::string format(Elem a) const;
    Elem parse(const std::string& lit) const;

    Elem one() const { return 1; }
    std::uint64_t generator() const { return gen_; }

private:
    FieldCtx() = default;
    void build_tables();
    void build_coord_model();
    std::uint64_t mod_ord(std::uint64_t e) const {
        return e >= order_ - 1 ? e - (order_ - 1) : e;
    }

    unsigned p_ = 0, M_ = 0, k_ = 0;
    std::uint64_t q_ = 0, order_ = 0;
    Elem gen_ = 0;
    std::vector<unsigned> modulus_;      // length M+1, constant first, monic
    std::vector<Elem> exp_;              // exp_[i] = g^i, i in [0, order-1)
    std::vector<std::uint32_t> log_;     // log_[e] for e != 0
    std::vector<Elem> q_elements_;       // F_q inside the ambient, ascending
    // F_p change of basis: digits of zeta^i * x^j  ->  polynomial basis,
    // and its inverse; identity when k == 1
    std::vector<std::vector<unsigned>> phi_inv_;
    std::vector<Elem> zeta_pows_;        // zeta^0 .. zeta^{k-1}
};

bool is_prime(std::uint64_t n);
std::uint64_t ipow(std::uint64_t b, unsigned e);

}  // namespace qinv

#endif
