#ifndef QINV_ACCEPTANCE_HPP
#define QINV_ACCEPTANCE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qinv {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;
};

enum class AcceptanceLevel { smoke, desk };

struct AcceptanceOptions {
    AcceptanceLevel level = AcceptanceLevel::desk;
    int jobs = 0;                    // 0: QINV_JOBS or all hardware threads
    std::uint64_t seed = 20240915;   // drives every randomized sample
};

// runs the acceptance checks and returns one result per criterion
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

// runs a single criterion (1..12)
CriterionResult run_criterion(int id, const AcceptanceOptions& opt);

// prints one pass/fail line per criterion; returns true iff all passed
bool print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results);

}  // namespace qinv

#endif
