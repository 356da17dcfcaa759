#ifndef EDGEWORD_WORDS_HPP
#define EDGEWORD_WORDS_HPP

#include "edgeword/chain.hpp"
#include "edgeword/cumulants.hpp"
#include "edgeword/edgeworth.hpp"
#include "edgeword/lattice.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace edgeword {

// Hard ceiling on q^l for anything that enumerates l-grams.
inline constexpr long long kStateCap = 1 << 20;

// A word over the alphabet {0, .., q-1}. For q = 2 the symbols render as
// H (= 0) and T (= 1); otherwise as digits/letters 0-9a-z.
struct Word {
    std::vector<int> sym;
    int size() const { return (int)sym.size(); }
    bool operator==(const Word& o) const { return sym == o.sym; }
    bool operator!=(const Word& o) const { return !(*this == o); }
};

Word parse_word(const std::string& text, int q);
std::string word_to_string(const Word& w, int q);

// Two players watch a uniform random letter stream; each scores its word's
// weight every time that word appears as a window. The classic game is
// [(A, +1), (B, -1)] with |A| = |B|; the general form allows several words
// and weights (then chain order = max length; see build_chain).
struct WeightedWord {
    Word word;
    long long weight;
};

struct GameSpec {
    int q = 2;
    std::vector<WeightedWord> words;

    int ell() const; // chain order = max word length
    bool classic() const;
};

GameSpec classic_game(int q, const std::string& a, const std::string& b);
void validate(const GameSpec& spec);

// Overlap structure of a word pair: which suffix lengths k of U are also
// prefixes of V (1 <= k <= l-1; k = l is deliberately excluded even for
// U = V), and the weighted index theta = sum over those k of q^{k-l}.
struct OverlapData {
    std::set<int> Theta;
    Rat theta;
};

OverlapData overlap(const Word& U, const Word& V, int q);

struct GameConstants {
    Rat theta_AA, theta_AB, theta_BA, theta_BB;
    Rat sigma2; // 2 q^{-l} (1 + theta_AA - theta_AB - theta_BA + theta_BB)
    Rat kappa3; // 3 sigma2 (theta_AA - theta_BB)
};

GameConstants game_constants(const GameSpec& spec); // classic only

// The de Bruijn-style window chain: states are all q^l words, and U -> V is
// allowed (with probability 1/q) iff the last l-1 letters of U equal the
// first l-1 letters of V. The score of state V is the summed weight of
// spec words that are suffixes of V. Throws AlphabetTooLarge past the state
// cap (default 2^20).
ChainSpec build_chain(const GameSpec& spec);

// Known exceptional families of the classic q = 2 game (everything else,
// and every q >= 3 game, is covered by the square-root law):
//   gap_degenerate  {x y^{l-1}, y^{l-1} x}: score difference is bounded
//   single_letter   l = 1, {H, T}: score parity is locked to n
//   complement_pair l = 2, {HH, TT}: score parity is locked to head runs
enum class ExceptionTag { none, gap_degenerate, single_letter, complement_pair };

const char* tag_name(ExceptionTag tag);

struct ExceptionClass {
    ExceptionTag tag = ExceptionTag::none;
    std::string detail; // which symmetry variant matched
};

ExceptionClass classify_exceptions(const GameSpec& spec); // classic only

struct GamePrediction {
    long long n_letters;  // letters tossed
    long long horizon;    // scoring windows = n - l + 1
    GameConstants constants;
    // p_alice = 1/2 + coef_alice / sqrt(2 pi sigma2 m) + O(1/m), etc.
    // coef_tie belongs to p_tie = coef_tie / sqrt(2 pi sigma2 m).
    Rat coef_alice, coef_bob, coef_tie;
    double p_alice, p_bob, p_tie;
    bool asymptotic_ok; // horizon >= 16
};

// First-order prediction for a non-exceptional classic game after n letters.
// Throws ExceptionalPair / HorizonTooShort. The closed form and the generic
// lattice-Edgeworth evaluation agree to 1e-12 (asserted internally).
GamePrediction predict(const GameSpec& spec, long long n);

// General (multi-word / weighted) analysis: builds the chain, checks the
// joint value/length aperiodicity, and either produces the cumulants plus
// the Edgeworth split of P(score < 0 / = 0 / > 0), or the certificate that
// rules the expansion out.
struct MultiwordReport {
    long long n_letters, horizon;
    Em4Certificate em4;
    std::optional<CumulantTriple> cumulants;
    std::optional<OutcomeTriple> split; // of the raw score at 0
    bool asymptotic_ok;
};

MultiwordReport multiword_analysis(const GameSpec& spec, long long n);

} // namespace edgeword

#endif
