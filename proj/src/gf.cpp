#include "qinv/gf.hpp"

#include <algorithm>
#include <cstdlib>

namespace qinv {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

namespace {

constexpr std::uint64_t kMaxOrder = 1u << 22;

// dense F_p[x] helpers for the modulus search, coefficients constant-first
using Pol = std::vector<unsigned>;

void trim(Pol& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Pol pmul(const Pol& a, const Pol& b, unsigned p) {
    if (a.empty() || b.empty()) return {};
    Pol r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    trim(r);
    return r;
}

Pol pmod(Pol a, const Pol& f, unsigned p) {
    trim(a);
    const std::size_t df = f.size() - 1;
    // f is monic here
    while (a.size() > df) {
        unsigned c = a.back();
        if (c) {
            std::size_t off = a.size() - 1 - df;
            for (std::size_t i = 0; i <= df; ++i)
                a[off + i] = (a[off + i] + (p - c % p) * f[i]) % p;
        }
        a.pop_back();
        trim(a);
        if (a.size() <= df) break;
    }
    trim(a);
    return a;
}

Pol pgcd(Pol a, Pol b, unsigned p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // make b monic for pmod
        Pol bm = b;
        unsigned lead = bm.back();
        if (lead != 1) {
            unsigned li = 1;
            for (unsigned t = 1; t < p; ++t)
                if (t * lead % p == 1) { li = t; break; }
            for (auto& c : bm) c = c * li % p;
        }
        Pol r = pmod(a, bm, p);
        a = b;
        b = r;
    }
    return a;
}

// r(x)^p mod f, char p
Pol ppow_p(const Pol& r, const Pol& f, unsigned p) {
    if (r.empty()) return {};
    Pol out((r.size() - 1) * p + 1, 0);
    for (std::size_t j = 0; j < r.size(); ++j)
        if (r[j]) out[j * p] = (out[j * p] + r[j]) % p;
    return pmod(std::move(out), f, p);
}

bool modulus_irreducible(const Pol& f, unsigned p, unsigned M) {
    // degree-M f with nonzero constant term is irreducible iff it shares no
    // root with any F_{p^i}, i <= M/2, i.e. gcd(x^{p^i} - x, f) = 1
    Pol r = {0, 1};
    for (unsigned i = 1; i <= M / 2; ++i) {
        r = ppow_p(r, f, p);
        Pol g = r;
        if (g.size() < 2) g.resize(2, 0);
        g[1] = (g[1] + p - 1) % p;
        trim(g);
        Pol d = pgcd(f, g, p);
        if (d.size() > 1) return false;
    }
    return true;
}

Pol canonical_modulus(unsigned p, unsigned M) {
    // lexicographically smallest monic irreducible of degree M over F_p with
    // nonzero constant term, coefficient sequences constant-term-first
    const std::uint64_t total = ipow(p, M);
    const std::uint64_t msd = ipow(p, M - 1);  // place value of c_0
    Pol f(M + 1, 0);
    f[M] = 1;
    for (std::uint64_t t = msd; t < total; ++t) {
        std::uint64_t v = t;
        for (unsigned i = 0; i < M; ++i) {
            f[M - 1 - i] = static_cast<unsigned>(v % p);
            v /= p;
        }
        if (M == 1 || modulus_irreducible(f, p, M)) return f;
    }
    throw field_error("no irreducible modulus found");
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) fs.push_back(n);
    return fs;
}

}  // namespace

FieldCtx FieldCtx::make(unsigned p, unsigned M, unsigned k) {
    if (!is_prime(p)) throw field_error("p must be prime");
    if (M == 0 || k == 0 || M % k != 0) throw field_error("k must divide M");
    std::uint64_t order = 1;
    for (unsigned i = 0; i < M; ++i) {
        order *= p;
        if (order > kMaxOrder) throw field_error("field too large for desk scale");
    }
    FieldCtx f;
    f.p_ = p;
    f.M_ = M;
    f.k_ = k;
    f.q_ = ipow(p, k);
    f.order_ = order;
    f.modulus_ = canonical_modulus(p, M);
    f.build_tables();
    f.build_coord_model();
    return f;
}

FieldCtx FieldCtx::from_spec(const std::string& spec) {
    auto caret = spec.find('^');
    auto colon = spec.find(':');
    if (caret == std::string::npos || colon == std::string::npos || colon < caret)
        throw field_error("bad field spec, want p^k:M");
    unsigned p = static_cast<unsigned>(std::strtoul(spec.substr(0, caret).c_str(), nullptr, 10));
    unsigned k = static_cast<unsigned>(
        std::strtoul(spec.substr(caret + 1, colon - caret - 1).c_str(), nullptr, 10));
    unsigned M = static_cast<unsigned>(std::strtoul(spec.substr(colon + 1).c_str(), nullptr, 10));
    return make(p, M, k);
}

std::string FieldCtx::spec() const {
    return std::to_string(p_) + "^" + std::to_string(k_) + ":" + std::to_string(M_);
}

void FieldCtx::build_tables() {
    const std::uint64_t n1 = order_ - 1;
    auto to_pol = [&](Elem a) {
        Pol d(M_, 0);
        for (unsigned i = 0; i < M_; ++i) {
            d[i] = a % p_;
            a /= p_;
        }
        return d;
    };
    auto from_pol = [&](const Pol& d) {
        std::uint64_t v = 0;
        for (unsigned i = M_; i-- > 0;) v = v * p_ + (i < d.size() ? d[i] : 0);
        return static_cast<Elem>(v);
    };
    auto raw_mul = [&](Elem a, Elem b) {
        return from_pol(pmod(pmul(to_pol(a), to_pol(b), p_), modulus_, p_));
    };
    auto raw_pow = [&](Elem a, std::uint64_t e) {
        Elem r = 1;
        while (e) {
            if (e & 1) r = raw_mul(r, a);
            a = raw_mul(a, a);
            e >>= 1;
        }
        return r;
    };
    const auto fac = prime_factors(n1);
    gen_ = 0;
    for (Elem c = 2; c < order_; ++c) {
        bool ok = true;
        for (auto r : fac)
            if (raw_pow(c, n1 / r) == 1) { ok = false; break; }
        if (ok) { gen_ = c; break; }
    }
    if (gen_ == 0) {
        if (order_ == 2) gen_ = 1;  // F_2: trivial group
        else throw field_error("no generator found");
    }
    exp_.assign(n1, 0);
    log_.assign(order_, 0);
    Elem cur = 1;
    for (std::uint64_t i = 0; i < n1; ++i) {
        exp_[i] = cur;
        log_[cur] = static_cast<std::uint32_t>(i);
        cur = raw_mul(cur, gen_);
    }
    q_elements_ = subfield_elements(q_);
}

Elem FieldCtx::add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    Elem r = 0;
    std::uint64_t mul = 1;
    while (a || b) {
        r += static_cast<Elem>(((a % p_) + (b % p_)) % p_ * mul);
        a /= p_;
        b /= p_;
        mul *= p_;
    }
    return r;
}

Elem FieldCtx::neg(Elem a) const {
    if (p_ == 2) return a;
    Elem r = 0;
    std::uint64_t mul = 1;
    while (a) {
        unsigned d = a % p_;
        if (d) r += static_cast<Elem>((p_ - d) * mul);
        a /= p_;
        mul *= p_;
    }
    return r;
}

Elem FieldCtx::pow(Elem a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    const std::uint64_t n1 = order_ - 1;
    return exp_[static_cast<std::uint64_t>(log_[a]) * (e % n1) % n1];
}

Elem FieldCtx::frobenius(Elem a, std::uint64_t j) const {
    if (a == 0) return 0;
    const std::uint64_t n1 = order_ - 1;
    std::uint64_t qe = 1, base = q_ % n1;
    std::uint64_t jj = j % M_;  // q^M == p^{kM} == identity exponent cycle
    while (jj) {
        if (jj & 1) qe = qe * base % n1;
        base = base * base % n1;
        jj >>= 1;
    }
    return exp_[static_cast<std::uint64_t>(log_[a]) * qe % n1];
}

Elem FieldCtx::frobenius_p(Elem a, std::uint64_t i) const {
    if (a == 0) return 0;
    const std::uint64_t n1 = order_ - 1;
    std::uint64_t pe = 1, base = p_ % n1;
    std::uint64_t ii = i % M_;
    while (ii) {
        if (ii & 1) pe = pe * base % n1;
        base = base * base % n1;
        ii >>= 1;
    }
    return exp_[static_cast<std::uint64_t>(log_[a]) * pe % n1];
}

bool FieldCtx::in_subfield(Elem a, std::uint64_t r) const {
    // r = p^j with j | M
    std::uint64_t t = r;
    unsigned j = 0;
    while (t > 1 && t % p_ == 0) {
        t /= p_;
        ++j;
    }
    if (t != 1 || j == 0 || M_ % j != 0)
        throw field_error("not a subfield order of the ambient");
    return a == 0 || pow(a, r) == a;
}

std::vector<Elem> FieldCtx::subfield_elements(std::uint64_t r) const {
    std::vector<Elem> out;
    out.reserve(r);
    out.push_back(0);
    if (r == order_) {
        for (Elem a = 1; a < order_; ++a) out.push_back(a);
        return out;
    }
    // nonzero elements form the subgroup of index (order-1)/(r-1)
    const std::uint64_t n1 = order_ - 1;
    if (n1 % (r - 1) != 0) throw field_error("not a subfield order of the ambient");
    const std::uint64_t step = n1 / (r - 1);
    for (std::uint64_t i = 0; i < r - 1; ++i) out.push_back(exp_[i * step]);
    std::sort(out.begin(), out.end());
    return out;
}

Elem FieldCtx::x_power(unsigned j) const { return static_cast<Elem>(ipow(p_, j)); }

void FieldCtx::build_coord_model() {
    const unsigned n = qdim();
    zeta_pows_.assign(k_, 1);
    if (k_ > 1) {
        Elem zeta = exp_[(order_ - 1) / (q_ - 1)];  // generator of F_q^*
        for (unsigned i = 1; i < k_; ++i) zeta_pows_[i] = mul(zeta_pows_[i - 1], zeta);
    }
    // columns: digits of zeta^i * x^j for basis index (i + k*j)
    std::vector<std::vector<unsigned>> A(M_, std::vector<unsigned>(M_, 0));
    for (unsigned j = 0; j < n; ++j)
        for (unsigned i = 0; i < k_; ++i) {
            Elem e = mul(zeta_pows_[i], x_power(j));
            for (unsigned row = 0; row < M_; ++row) {
                A[row][i + k_ * j] = e % p_;
                e /= p_;
            }
        }
    // invert A over F_p
    std::vector<std::vector<unsigned>> inv(M_, std::vector<unsigned>(M_, 0));
    for (unsigned i = 0; i < M_; ++i) inv[i][i] = 1;
    auto inv_mod_p = [&](unsigned v) {
        for (unsigned t = 1; t < p_; ++t)
            if (t * v % p_ == 1) return t;
        throw field_error("singular coordinate matrix");
    };
    for (unsigned col = 0; col < M_; ++col) {
        unsigned piv = col;
        while (piv < M_ && A[piv][col] == 0) ++piv;
        if (piv == M_) throw field_error("singular coordinate matrix");
        std::swap(A[piv], A[col]);
        std::swap(inv[piv], inv[col]);
        unsigned f = inv_mod_p(A[col][col]);
        for (unsigned c = 0; c < M_; ++c) {
            A[col][c] = A[col][c] * f % p_;
            inv[col][c] = inv[col][c] * f % p_;
        }
        for (unsigned r = 0; r < M_; ++r) {
            if (r == col || A[r][col] == 0) continue;
            unsigned m = A[r][col];
            for (unsigned c = 0; c < M_; ++c) {
                A[r][c] = (A[r][c] + (p_ - m) * A[col][c]) % p_;
                inv[r][c] = (inv[r][c] + (p_ - m) * inv[col][c]) % p_;
            }
        }
    }
    phi_inv_ = std::move(inv);
}

std::vector<Elem> FieldCtx::q_coords(Elem a) const {
    const unsigned n = qdim();
    std::vector<Elem> out(n, 0);
    if (k_ == 1) {
        for (unsigned j = 0; j < n; ++j) {
            out[j] = a % p_;
            a /= p_;
        }
        return out;
    }
    std::vector<unsigned> dig(M_);
    for (unsigned i = 0; i < M_; ++i) {
        dig[i] = a % p_;
        a /= p_;
    }
    for (unsigned j = 0; j < n; ++j) {
        Elem c = 0;
        for (unsigned i = 0; i < k_; ++i) {
            unsigned lam = 0;
            const unsigned row = i + k_ * j;
            for (unsigned t = 0; t < M_; ++t) lam = (lam + phi_inv_[row][t] * dig[t]) % p_;
            if (lam) c = add(c, mul(static_cast<Elem>(lam), zeta_pows_[i]));
        }
        out[j] = c;
    }
    return out;
}

Elem FieldCtx::from_q_coords(const std::vector<Elem>& c) const {
    Elem r = 0;
    for (unsigned j = 0; j < c.size() && j < qdim(); ++j)
        if (c[j]) r = add(r, mul(c[j], x_power(j)));
    return r;
}

std::string FieldCtx::format(Elem a) const {
    std::string s;
    for (unsigned i = 0; i < M_; ++i) {
        if (i) s += ',';
        s += std::to_string(a % p_);
        a /= p_;
    }
    return s;
}

Elem FieldCtx::parse(const std::string& lit) const {
    std::uint64_t v = 0, mul = 1;
    std::size_t pos = 0;
    unsigned count = 0;
    while (pos < lit.size()) {
        auto comma = lit.find(',', pos);
        if (comma == std::string::npos) comma = lit.size();
        unsigned d = static_cast<unsigned>(std::strtoul(lit.substr(pos, comma - pos).c_str(), nullptr, 10));
        if (d >= p_) throw field_error("element digit out of range");
        if (++count > M_) throw field_error("element literal too long");
        v += d * mul;
        mul *= p_;
        pos = comma + 1;
    }
    return static_cast<Elem>(v);
}

}  // namespace qinv
