#ifndef EDGEWORD_REPORT_HPP
#define EDGEWORD_REPORT_HPP

#include "edgeword/exact.hpp"
#include "edgeword/words.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <utility>

namespace edgeword {

// All reports use key-order-preserving JSON so identical inputs serialize
// byte-identically (golden-file and determinism tests rely on this).
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
extern const char* const kToolName;
extern const char* const kToolVersion;

// {"exact": "p/q", "value": <double>} — every float in a report that has an
// exact source carries it.
Json rat_entry(const Rat& r);

// Shared provenance block: tool, version, rng identifier, resource cap, and
// the seed when one was used.
Json provenance_block(const std::optional<std::uint64_t>& seed);

struct AnalyzeOptions {
    bool with_exact = false;
    std::optional<SimulationConfig> sim;
};

struct AnalyzeOutcome {
    Json report;
    bool exceptional = false;  // CLI exits 2 when set
};

// Full single-pair report: inputs, overlap table, exact constants,
// exception class (with certificate when not none), first-order prediction,
// exact oracle triple with |exact - prediction| columns, and simulation.
// Exceptional pairs skip the prediction but still run the exact oracle.
AnalyzeOutcome analyze_report(const GameSpec& spec, long long n,
                              const AnalyzeOptions& opt);

struct ChainReportOptions {
    bool cumulants = false;
    bool em4 = false;
    bool mfpt = false;
    std::optional<std::pair<int, int>> visits;
};

// Report on a user-supplied chain: stationary distribution always, other
// sections on request.
Json chain_report(const ChainSpec& chain, const ChainReportOptions& opt);

struct ScanOptions {
    long long exact_upto = -1;  // run the exact oracle when n <= exact_upto
    int jobs = 1;
};

// One CSV row per unordered pair of distinct length-ell words over the
// q-letter alphabet, in lexicographic order. Column set is fixed; cells
// that do not apply stay empty. Enforces the player-swap antisymmetry
// p_alice(A,B) = p_bob(B,A) internally.
std::string scan_csv(int q, int ell, long long n, const ScanOptions& opt);

} // namespace edgeword

#endif
