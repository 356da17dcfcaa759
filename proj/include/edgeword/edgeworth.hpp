#ifndef EDGEWORD_EDGEWORTH_HPP
#define EDGEWORD_EDGEWORTH_HPP

namespace edgeword {

// Whether a CDF evaluation at a lattice point means P(S <= s) or P(S < s).
// The sawtooth correction term jumps at integers, and the two one-sided
// conventions differ by exactly the point mass.
enum class Side { at_or_below, strictly_below };

// theta(x) = 1/2 - (x - floor(x)), right-continuous: theta(k) = +1/2 at
// integers, with left limit -1/2. The strictly_below variant takes the left
// limit at integers instead.
double sawtooth(double x);
double sawtooth(double x, Side side);

// Standard normal CDF via erfc; absolute error <= 1e-12 over the real line.
double normal_cdf(double x);

struct EdgeworthInput {
    long long n;          // number of summands (chain steps)
    double mu;
    double sigma2;        // must be > 0
    double kappa3;
    double delta = 0.0;   // initial-distribution correction, 0 when stationary
};

// One-term lattice Edgeworth approximation of P(S_n - n mu <= x sigma sqrt(n)):
//   Phi(x) + kappa3/(6 sigma^3 sqrt(2 pi n)) (1 - x^2) e^{-x^2/2}
//        + theta(x sigma sqrt(n) + n mu) / (sigma sqrt(2 pi n)) e^{-x^2/2}
//        - delta / (sigma sqrt(2 pi n)) e^{-x^2/2}
// clamped to [0, 1]. Throws DegenerateVariance if sigma2 <= 0.
double edgeworth_cdf(const EdgeworthInput& in, double x,
                     Side side = Side::at_or_below);

struct OutcomeTriple {
    double p_below;      // P(S < s)
    double p_zero;       // P(S = s)
    double p_above;      // P(S > s), defined as 1 - p_below - p_zero
    bool clamped;        // any term left the unit interval before clamping
    bool asymptotic_ok;  // false when n < 16 (expansion unreliable)
};

// Splits the approximate law at the integer point s (default 0) using both
// one-sided conventions of the sawtooth term.
OutcomeTriple threshold_triple(const EdgeworthInput& in, double s);

// Same with mu = 0 and s = 0; the classic below/tie/above split.
OutcomeTriple zero_mean_triple(const EdgeworthInput& in);

} // namespace edgeword

#endif
