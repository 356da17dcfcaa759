#ifndef EDGEWORD_CHAIN_HPP
#define EDGEWORD_CHAIN_HPP

#include "edgeword/matrix.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace edgeword {

// A finite Markov chain with exact rational transition probabilities and an
// integer score attached either to states (g) or to edges (g_edges).
struct ChainSpec {
    std::vector<std::string> states;
    RMat P;
    std::vector<long long> g;                          // per-state, may be empty
    std::map<std::pair<int, int>, long long> g_edges;  // per-edge, may be empty

    int size() const { return P.rows(); }
    bool has_state_score() const { return !g.empty(); }
    bool has_edge_score() const { return !g_edges.empty(); }

    // score carried by traversing edge (i, j): g(j) in state-score mode
    long long edge_value(int i, int j) const {
        if (has_edge_score()) {
            auto it = g_edges.find({i, j});
            return it == g_edges.end() ? 0 : it->second;
        }
        return g.empty() ? 0 : g[j];
    }
};

// Structural checks. validate() throws BadInput on malformed rows
// (entries < 0 or a row not summing to exactly 1) and on edge scores
// defined off the support of P.
void validate(const ChainSpec& chain);

// Strong connectivity of the positive-entry digraph.
bool is_irreducible(const RMat& P);
void require_irreducible(const ChainSpec& chain); // throws NotIrreducible

// gcd of closed-walk lengths; 1 means aperiodic. Computed from BFS levels:
// gcd over edges (u,v) of (level(u) + 1 - level(v)).
long long chain_period(const RMat& P);

// Exact stationary row vector: pi^T P = pi^T, sum(pi) = 1, entries > 0.
RVec stationary_distribution(const ChainSpec& chain);

// Group inverse Q = (I - P + 1 pi^T)^{-1} - 1 pi^T of A = I - P.
RMat group_inverse(const ChainSpec& chain, const RVec& pi);
RMat group_inverse(const ChainSpec& chain);

// Exact verification of the defining identities: AQ = QA, AQA = A, QAQ = Q,
// (I-P)Q = I - 1 pi^T, and Q1 = 0. Used by tests and by debug paths.
bool group_inverse_axioms_hold(const RMat& P, const RVec& pi, const RMat& Q);

// Moore-Penrose pseudoinverse of A = I - P, built from Q and the orthogonal
// projectors onto span(1)^perp and span(pi)^perp. Only used to demonstrate
// that the group inverse is a different animal when pi is not uniform.
RMat moore_penrose_inverse(const RMat& P, const RVec& pi, const RMat& Q);

// m(i,j) = expected steps from i to first arrival at j; m(i,i) = 0.
// Closed form m_ij = (Q_jj - Q_ij) / pi_j.
RMat mean_first_passage(const RVec& pi, const RMat& Q);

// Independent route for tests: solve m_ij = 1 + sum_{k != j} P_ik m_kj.
RMat mean_first_passage_by_solve(const ChainSpec& chain);

struct VisitsReport {
    int A, B;
    Rat expected_visits; // of state A, starting at A, before first hitting B
    std::string route;   // which formulas were used (all must agree)
};

// Expected visits to A (counting the start) before the chain first reaches B.
// Computed by BOTH the group-inverse closed form
//   Q_AA - Q_BA + (Q_BB - Q_AB) pi_A / pi_B
// and the direct linear solve N = (I - P with column B zeroed)^{-1} e_A;
// throws on disagreement (they are provably equal).
VisitsReport expected_visits_before(const ChainSpec& chain, int A, int B);

// Entry (i,j) of (I - P_{neq B})^{-1} from the closed form; exposed for tests.
Rat visits_closed_form(const RVec& pi, const RMat& Q, int i, int j, int B);

// Parse a chain description from a JSON document (fields: states, P, g or
// g_edges). Throws BadInput on malformed input.
ChainSpec chain_from_json_text(const std::string& text);

} // namespace edgeword

#endif
