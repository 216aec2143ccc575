#ifndef QINV_CLASSIFY_HPP
#define QINV_CLASSIFY_HPP

#include <map>
#include <optional>

#include "qinv/construct.hpp"
#include "qinv/linspace.hpp"

namespace qinv {

// some gamma with gamma^{-1} A = A2 and gamma B = B2, or nothing; the scan
// runs over representatives of ambient^* / F_q^* since F_q^*-scaling fixes
// subspaces
std::optional<Elem> equivalent(const Subspace& A, const Subspace& B, const Subspace& A2,
                               const Subspace& B2);

// all d-dimensional F_q-subspaces of F_{q^e}, canonical order; the count is
// the Gaussian binomial [e, d]_q
std::vector<Subspace> enumerate_subspaces(const FieldCtx& f, unsigned d, unsigned e);

std::uint64_t gaussian_binomial(std::uint64_t q, unsigned e, unsigned d);

struct CensusResult {
    std::uint64_t q = 0;
    unsigned d = 0, e = 0;
    std::map<std::uint64_t, std::uint64_t> tally;  // count -> ordered pairs, non-subfield
    std::uint64_t subfield_pairs = 0;              // pairs with A^{-1} subset of B
};

// full census of |A^{-1} cap B| over ordered pairs of d-dimensional
// subspaces of F_{q^e}; OpenMP-parallel over the outer subspace index,
// jobs <= 0 means use QINV_JOBS or all hardware threads
CensusResult intersection_census(const FieldCtx& f, unsigned d, unsigned e, int jobs = 0);
// reference implementation: plain per-pair brute force, single thread
CensusResult intersection_census_serial(const FieldCtx& f, unsigned d, unsigned e);

struct WeilGapReport {
    std::uint64_t threshold = 0;  // q + 1 + floor(2 sqrt q)
    bool skipped = false;         // theorem vacuous at this scale
    bool pass = false;
    std::vector<std::uint64_t> offending_ratios;
};

// every census ratio above the threshold must be 2q+2 or 2q (q odd), 2q+1
// (q even); 2q+2 is never allowed in characteristic two
WeilGapReport weil_gap_check(const CensusResult& census, std::uint64_t q);

struct PairOrbit {
    std::pair<Subspace, Subspace> representative;  // lexicographically least
    std::uint64_t orbit_size = 0;
    std::vector<Elem> scalars;  // the gamma realizing each found equivalence
    std::vector<std::pair<Subspace, Subspace>> self_paired;  // members with A = B
};

// group pairs into equivalence classes by exhaustive gamma scan
std::vector<PairOrbit> raw_orbits(const FieldCtx& f,
                                  const std::vector<std::pair<Subspace, Subspace>>& pairs);

struct OrbitCensus {
    std::uint64_t target = 0;
    std::uint64_t classes = 0;
    std::uint64_t ab_pairs = 0;          // special-form parameter pairs counted
    CaseTag tag = CaseTag::Other;
    bool theorem_range = false;          // spec validity flags
    unsigned self_paired_per_class = 0;
    bool counts_verified = false;        // brute force agreed with target
};

// number of equivalence classes of pairs with |A^{-1} cap B| = target,
// counted through the (a,b) parameter space divided by q+1; when
// verify_counts is set every parameter pair is checked by brute force
OrbitCensus orbit_census(const FieldCtx& f, std::uint64_t target, bool verify_counts = true);

struct FieldPairCount {
    std::uint64_t pairs = 0;
    std::uint64_t self_paired = 0;
};

// pairs of Cor-"q^3" shape inside F_{q^4}, by direct construction and dedup
FieldPairCount field_pair_count(const FieldCtx& f);

}  // namespace qinv

#endif
