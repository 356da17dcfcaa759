#ifndef EDGEWORD_EXACT_HPP
#define EDGEWORD_EXACT_HPP

#include "edgeword/words.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace edgeword {

// Exact law of the total score after n letters, as big-integer route counts
// over a denominator of q^n (q^{n-l} for the conditional variant). counts is
// trimmed: the first and last entries are nonzero.
struct ScoreDistribution {
    long long n = 0;       // letters consumed
    long long offset = 0;  // score represented by counts[0]
    std::vector<Int> counts;
    Int total;             // sum of counts = number of equally likely routes

    long long min_score() const { return offset; }
    long long max_score() const { return offset + (long long)counts.size() - 1; }
    const Int& count_at(long long s) const;  // 0 outside the support
    Rat prob_at(long long s) const;

    bool operator==(const ScoreDistribution& o) const {
        return n == o.n && offset == o.offset && counts == o.counts && total == o.total;
    }
};

// Exact outcome split at score 0: win = P(S > 0) (the +1 player),
// lose = P(S < 0), tie = P(S = 0). Sums to exactly 1.
struct ExactTriple {
    Rat win, lose, tie;
    Int win_count, lose_count, tie_count;
};

ExactTriple outcome_probabilities(const ScoreDistribution& dist);

struct ExactMoments {
    Rat mean, variance, third_central;
};

ExactMoments moments(const ScoreDistribution& dist);

// Working-set cap for the exact routes: 4 GiB unless the environment
// variable EDGEWORD_MEM_CAP (bytes) says otherwise.
unsigned long long default_mem_cap();

// Exact distribution by dynamic programming over the last l-1 letters.
// Scoring convention: a word's weight is collected each time it ends at a
// position >= l (l = longest word), i.e. once per full-length window; this
// makes the letter process, the window chain, and the transfer route agree
// exactly. For n < l there are no windows: point mass at 0 with total q^n.
// Throws ResourceCap when the estimated working set exceeds the cap.
ScoreDistribution exact_distribution(const GameSpec& spec, long long n,
                                     unsigned long long mem_cap = default_mem_cap());

// Same law conditioned on the first l letters: routes are the q^{n-l}
// continuations, and the score includes the fixed first window. Requires
// |first_window| = l and n >= l.
ScoreDistribution exact_distribution_conditional(const GameSpec& spec,
                                                 const Word& first_window, long long n,
                                                 unsigned long long mem_cap = default_mem_cap());

// Independent route: route-count generating polynomial G(z) = sum over
// states U of z^{g(U)} [ M(z)^{m-1} 1 ]_U with M(z)_{UV} = [U -> V] z^{g(V)},
// expanded over integer-coefficient Laurent polynomials (the q^{-n}
// denominator is factored out). Must equal exact_distribution exactly.
ScoreDistribution transfer_distribution(const GameSpec& spec, long long n,
                                        unsigned long long mem_cap = default_mem_cap());

// Exact first three moments without materializing the distribution: per
// DP state, accumulate route count and the power sums of the score. Cheap
// even for n in the thousands.
ExactMoments exact_moments(const GameSpec& spec, long long n);

// CSV export of the exact law: header "score,count", one row per support
// point, counts as decimal strings.
std::string distribution_to_csv(const ScoreDistribution& dist);

// Seeded Monte Carlo. Stream r draws its letters from a splitmix64 sequence
// whose start state is derived from (seed, r) alone, so tallies do not
// depend on how reps are sharded across threads.
struct SimulationConfig {
    long long reps = 100000;
    std::uint64_t seed = 0;
    int jobs = 1;  // thread count; result is independent of it
};

struct SimulationResult {
    long long reps;
    std::uint64_t seed;
    std::string rng;  // algorithm identifier, "splitmix64"
    long long win_count, lose_count, tie_count;
    double p_win, p_lose, p_tie;
    double se_win, se_lose, se_tie;  // binomial standard errors
};

SimulationResult simulate(const GameSpec& spec, long long n,
                          const SimulationConfig& config);

// The raw generator, exposed so tests can pin the exact letter streams.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next();
};

std::uint64_t splitmix64_mix(std::uint64_t x);
SplitMix64 stream_for_rep(std::uint64_t seed, long long rep);

} // namespace edgeword

#endif
