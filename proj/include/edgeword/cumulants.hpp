#ifndef EDGEWORD_CUMULANTS_HPP
#define EDGEWORD_CUMULANTS_HPP

#include "edgeword/chain.hpp"

#include <vector>

namespace edgeword {

// Asymptotic cumulants of S_n = sum of scores along the chain:
// E S_n ~ n mu, Var S_n ~ n sigma2, kappa3(S_n) ~ n kappa3.
struct CumulantTriple {
    Rat mu, sigma2, kappa3;
    bool operator==(const CumulantTriple& o) const {
        return mu == o.mu && sigma2 == o.sigma2 && kappa3 == o.kappa3;
    }
};

// Exact cumulants for a per-state score, via the group-inverse formulas.
// Two algebraically equivalent routes are computed and must agree exactly:
//   QP route:  sigma2 = pi(G^2 + 2 G Q P G)1 - mu^2
//              kappa3 = pi(G^3 + 3 G Q P G^2 + 3 G^2 Q P G + 6 G Q P G Q P G)1
//                       - mu (6 pi G Q^2 P G 1 + 3 sigma2 + mu^2)
//   Q' route:  sigma2 = pi(G^2 + 2 G Q' G)1 + mu^2
//              kappa3 = pi(G^3 + 3 G Q' G^2 + 3 G^2 Q' G + 6 G Q' G Q' G)1
//                       + mu (3 pi G^2 1 - 6 pi G Q'^2 G 1 + 2 mu^2)
// with G = diag(g), Q = (I-P)^#, Q' = Q - I.
CumulantTriple cumulants_state_score(const ChainSpec& chain);

// The two routes individually (exposed for the route-agreement tests).
CumulantTriple cumulants_state_score_qp(const ChainSpec& chain, const RVec& pi,
                                        const RMat& Q);
CumulantTriple cumulants_state_score_qprime(const ChainSpec& chain, const RVec& pi,
                                            const RMat& Q);

// Edge-score cumulants via the pair-state expansion. The closed forms for
// the expanded chain's stationary vector and group inverse,
//   Pi_hat(i,j) = pi_i P_ij,
//   Q_hat(ij, i'j') = 1{ij = i'j'} + P_{i'j'} (Q_{j i'} - pi_{i'}),
// feed the Q' formulas directly; the result is cross-checked exactly against
// running the state-score machinery on the explicitly built pair chain.
CumulantTriple cumulants_edge_score(const ChainSpec& chain);

// The pair chain as an ordinary ChainSpec (states = edges of the base chain,
// deterministic edge order, score moved onto the destination pair state).
ChainSpec expand_edge_chain(const ChainSpec& chain);

// Float cross-check through the top-eigenvalue perturbation of P(e^t):
// derivatives m_k of the eigenvalue at t = 0 give the raw moments, then
// mu = m1, sigma2 = m2 - m1^2, kappa3 = m3 - 3 m2 m1 + 2 m1^3.
struct PerturbationSeries {
    double m1, m2, m3;
    double mu, sigma2, kappa3;
    std::vector<double> u, v; // left/right Perron pair, u^T 1 = u^T v = 1
};

PerturbationSeries eigen_perturbation_cumulants(const ChainSpec& chain);

// Asymptotic centering correction for a non-stationary start (and optional
// per-state offset h added to the score of the first state):
//   E S_n - n mu  ->  Delta = pi1^T Q g + pi1^T h.
// The defining partial sums converge geometrically; tests compare against
// a 200-term partial sum.
Rat initial_distribution_delta(const ChainSpec& chain, const RVec& pi1,
                               const std::vector<long long>* h = nullptr);

// Partial sum sum_{k=1..K} (E X_k - mu) for the oracle comparison.
Rat delta_partial_sum(const ChainSpec& chain, const RVec& pi1, int K);

} // namespace edgeword

#endif
