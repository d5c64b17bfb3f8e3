#pragma once

// Seeded property suites. Case i draws from case_engine(seed, i) only, so a
// report depends on (name, seed, count) and nothing else.

#include <cstdint>
#include <string>
#include <vector>

namespace adlab {

struct CaseFailure {
    size_t index = 0;
    std::string witness;
};

struct SuiteReport {
    std::string name;
    uint64_t seed = 0;
    size_t cases = 0;
    /// Cases whose preconditions could not be met by the generator (not failures).
    size_t skipped = 0;
    std::vector<CaseFailure> failures;  // ordered by case index
    bool ok() const { return failures.empty(); }
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs cases on up to `threads` workers (0: hardware concurrency); the
/// report is identical for any thread count. Throws PreconditionError for an
/// unknown suite name or a zero count.
SuiteReport run_suite(const std::string& name, uint64_t seed, size_t count, unsigned threads = 0);

} // namespace adlab
