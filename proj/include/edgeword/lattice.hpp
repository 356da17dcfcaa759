#ifndef EDGEWORD_LATTICE_HPP
#define EDGEWORD_LATTICE_HPP

#include "edgeword/chain.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace edgeword {

// The subgroup of Z^2 generated by the (score, length) pairs of closed walks.
// The expansion machinery needs this lattice to be all of Z^2; the failure
// modes (finite index N > 1, or rank < 2) each come with a checkable
// certificate.
struct LatticeReport {
    int rank;                 // 1 or 2 for an irreducible chain
    // Hermite-style basis: {(d1, 0), (b_raw, d2)} in (value, length) coords;
    // d1 = 0 encodes rank 1.
    long long d1, d2, b_raw;
    bool full;                // rank 2 and index 1
    long long index;          // |Z^2 / L| = d1*d2 when rank 2; 0 means infinite
    long long b;              // normalized residue slope: value == b*length mod d1
    // forward BFS path vectors from the base state (value, length per state),
    // kept for certificate construction
    std::vector<long long> path_value, path_length;
};

LatticeReport value_length_lattice(const ChainSpec& chain);

// Certificate for the joint-aperiodicity check. verdict is one of:
//   "holds"      — the closed-walk lattice is all of Z^2
//   "fails"      — finite index N > 1; gamma satisfies, on every edge (i,j),
//                  gamma_j == gamma_i + value(i,j) - b  (mod N)
//   "degenerate" — rank 1; the same relation holds exactly over Z, and the
//                  score is deterministically b*n + O(1)
struct Em4Certificate {
    std::string verdict;
    long long N = 1;                 // finite index ("fails" only)
    long long b = 0;
    std::vector<long long> gamma;    // empty when verdict == "holds"
};

// Requires an irreducible, aperiodic chain (time-aperiodicity is the
// classical gcd-of-cycle-lengths condition and is checked first).
// The returned certificate has been verified edge-by-edge.
Em4Certificate check_em4(const ChainSpec& chain);

// Degenerate-score certificate: when the lattice has rank < 2 there is an
// integer b with value(i,j) = gamma_j - gamma_i + b on every edge, hence
// |S_n - b n| <= C deterministically with C = max|g - b| + 2 max|gamma|.
struct DegeneracyCertificate {
    long long b;
    std::vector<long long> gamma;
    long long C;
};

std::optional<DegeneracyCertificate> check_sigma2_zero(const ChainSpec& chain);

// Heuristic witness for the spectral condition: for each t estimates the
// spectral radius of P(e^{it}) (P with column j scaled by e^{it g(j)}) as
// ||M^64||_inf^{1/64}. Diagnostic only; never used as a proof.
std::vector<double> spectral_radius_scan(const ChainSpec& chain,
                                         const std::vector<double>& t_values);

} // namespace edgeword

#endif
