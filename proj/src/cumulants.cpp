#include "edgeword/cumulants.hpp"

#include <cmath>

namespace edgeword {

namespace {

RVec diag_vec(const std::vector<long long>& g, const RVec& v) {
    RVec r = v;
    for (size_t i = 0; i < r.size(); ++i) r[i] *= Rat((long)g[i]);
    return r;
}

// pi^T diag(g) M diag(g) ... chains reduce to row-vector sweeps; the
// formulas below only ever need pi^T (product of diagonals and matrices) 1,
// so we thread a row vector left to right.
Rat sweep(const RVec& pi, const std::vector<long long>& g,
          const std::vector<const RMat*>& mats, const std::vector<int>& gpow) {
    // value = pi^T G^{gpow[0]} mats[0] G^{gpow[1]} mats[1] ... 1
    RVec row = pi;
    size_t mi = 0;
    for (size_t step = 0; step < gpow.size(); ++step) {
        for (int k = 0; k < gpow[step]; ++k) row = diag_vec(g, row);
        if (mi < mats.size()) row = vec_mat(row, *mats[mi++]);
    }
    Rat s = 0;
    for (const Rat& x : row) s += x;
    return s;
}

} // namespace

CumulantTriple cumulants_state_score_qp(const ChainSpec& chain, const RVec& pi,
                                        const RMat& Q) {
    const std::vector<long long>& g = chain.g;
    const RMat& P = chain.P;
    RMat QP = Q * P;

    Rat mu = 0;
    for (int i = 0; i < chain.size(); ++i) mu += pi[i] * Rat((long)g[i]);

    // sigma2 = pi (G^2 + 2 G QP G) 1 - mu^2
    Rat t_g2 = sweep(pi, g, {}, {2});
    Rat t_gqpg = sweep(pi, g, {&QP}, {1, 1});
    Rat sigma2 = t_g2 + 2 * t_gqpg - mu * mu;

    // kappa3 = pi (G^3 + 3 G QP G^2 + 3 G^2 QP G + 6 G QP G QP G) 1
    //          - mu (6 pi G Q^2 P G 1 + 3 sigma2 + mu^2)
    Rat t_g3 = sweep(pi, g, {}, {3});
    Rat t_a = sweep(pi, g, {&QP}, {1, 2});
    Rat t_b = sweep(pi, g, {&QP}, {2, 1});
    Rat t_c = sweep(pi, g, {&QP, &QP}, {1, 1, 1});
    RMat QQP = Q * QP;
    Rat t_d = sweep(pi, g, {&QQP}, {1, 1});
    Rat kappa3 = t_g3 + 3 * t_a + 3 * t_b + 6 * t_c -
                 mu * (6 * t_d + 3 * sigma2 + mu * mu);

    return CumulantTriple{mu, sigma2, kappa3};
}

CumulantTriple cumulants_state_score_qprime(const ChainSpec& chain, const RVec& pi,
                                            const RMat& Q) {
    const std::vector<long long>& g = chain.g;
    RMat Qp = Q - RMat::identity(Q.rows());

    Rat mu = 0;
    for (int i = 0; i < chain.size(); ++i) mu += pi[i] * Rat((long)g[i]);

    // sigma2 = pi (G^2 + 2 G Q' G) 1 + mu^2
    Rat t_g2 = sweep(pi, g, {}, {2});
    Rat t_gqg = sweep(pi, g, {&Qp}, {1, 1});
    Rat sigma2 = t_g2 + 2 * t_gqg + mu * mu;

    // kappa3 = pi (G^3 + 3 G Q' G^2 + 3 G^2 Q' G + 6 G Q' G Q' G) 1
    //          + mu (3 pi G^2 1 - 6 pi G Q'^2 G 1 + 2 mu^2)
    Rat t_g3 = sweep(pi, g, {}, {3});
    Rat t_a = sweep(pi, g, {&Qp}, {1, 2});
    Rat t_b = sweep(pi, g, {&Qp}, {2, 1});
    Rat t_c = sweep(pi, g, {&Qp, &Qp}, {1, 1, 1});
    RMat Qp2 = Qp * Qp;
    Rat t_d = sweep(pi, g, {&Qp2}, {1, 1});
    Rat kappa3 = t_g3 + 3 * t_a + 3 * t_b + 6 * t_c +
                 mu * (3 * t_g2 - 6 * t_d + 2 * mu * mu);

    return CumulantTriple{mu, sigma2, kappa3};
}

CumulantTriple cumulants_state_score(const ChainSpec& chain) {
    if (!chain.has_state_score())
        throw BadInput("cumulants_state_score needs a per-state score");
    require_irreducible(chain);
    RVec pi = stationary_distribution(chain);
    RMat Q = group_inverse(chain, pi);

    CumulantTriple a = cumulants_state_score_qp(chain, pi, Q);
    CumulantTriple b = cumulants_state_score_qprime(chain, pi, Q);
    if (!(a == b))
        throw Error("cumulant routes disagree (this is a bug)");
    if (a.sigma2 < 0) throw Error("negative sigma^2 from exact formulas (bug)");
    return a;
}

ChainSpec expand_edge_chain(const ChainSpec& chain) {
    const int n = chain.size();
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (chain.P(i, j) != 0) edges.emplace_back(i, j);

    const int m = (int)edges.size();
    ChainSpec pair;
    pair.P = RMat(m, m);
    for (int a = 0; a < m; ++a) {
        auto [i, j] = edges[a];
        for (int b = 0; b < m; ++b) {
            auto [i2, j2] = edges[b];
            if (j == i2) pair.P(a, b) = chain.P(i2, j2);
        }
        pair.states.push_back(chain.states[i] + ">" + chain.states[j]);
    }
    // score of the pair state (i,j) is the edge score it represents
    pair.g.resize(m);
    for (int a = 0; a < m; ++a)
        pair.g[a] = chain.edge_value(edges[a].first, edges[a].second);
    return pair;
}

CumulantTriple cumulants_edge_score(const ChainSpec& chain) {
    if (!chain.has_edge_score())
        throw BadInput("cumulants_edge_score needs a per-edge score");
    require_irreducible(chain);
    RVec pi = stationary_distribution(chain);
    RMat Q = group_inverse(chain, pi);

    const int n = chain.size();
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (chain.P(i, j) != 0) edges.emplace_back(i, j);
    const int m = (int)edges.size();

    // closed forms on the pair space: Pi_hat and Q_hat' (no extra solve)
    RVec pi_hat(m);
    std::vector<long long> g_hat(m);
    for (int a = 0; a < m; ++a) {
        auto [i, j] = edges[a];
        pi_hat[a] = pi[i] * chain.P(i, j);
        g_hat[a] = chain.edge_value(i, j);
    }
    RMat Qp_hat(m, m); // Q_hat - I, entry = P_{i'j'} (Q_{j,i'} - pi_{i'})
    for (int a = 0; a < m; ++a) {
        auto [i, j] = edges[a];
        (void)i;
        for (int b = 0; b < m; ++b) {
            auto [i2, j2] = edges[b];
            Qp_hat(a, b) = chain.P(i2, j2) * (Q(j, i2) - pi[i2]);
        }
    }
    RMat Q_hat = Qp_hat + RMat::identity(m);

    ChainSpec shim;
    shim.P = RMat(m, m); // only g is consulted by the Q' route below
    shim.g = g_hat;
    shim.states.assign(m, "");
    CumulantTriple closed = cumulants_state_score_qprime(shim, pi_hat, Q_hat);

    // cross-check: run the full state-score machinery on the explicit pair
    // chain (its own stationary solve and group inverse)
    ChainSpec pair = expand_edge_chain(chain);
    CumulantTriple direct = cumulants_state_score(pair);
    if (!(closed == direct))
        throw Error("edge-score routes disagree (this is a bug)");
    return closed;
}

namespace {

using DVec = std::vector<double>;
using DMat = std::vector<double>; // row-major n x n

DVec dmat_vec(const DMat& A, const DVec& x, int n) {
    DVec r(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i] += A[size_t(i) * n + j] * x[j];
    return r;
}

DVec dvec_mat(const DVec& x, const DMat& A, int n) {
    DVec r(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[j] += x[i] * A[size_t(i) * n + j];
    return r;
}

} // namespace

PerturbationSeries eigen_perturbation_cumulants(const ChainSpec& chain) {
    if (!chain.has_state_score())
        throw BadInput("eigen_perturbation_cumulants needs a per-state score");
    require_irreducible(chain);
    const int n = chain.size();

    DMat P(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) P[size_t(i) * n + j] = rat_to_double(chain.P(i, j));

    // power iteration for the Perron pair; iterate on (P + I)/2 so periodic
    // structure cannot stall convergence (same eigenvectors). v is trivially
    // the all-ones vector but we run the iteration anyway as an independent
    // numeric path.
    DMat Pd = P;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Pd[size_t(i) * n + j] *= 0.5;
            if (i == j) Pd[size_t(i) * n + j] += 0.5;
        }
    DVec u(n, 1.0 / n), v(n, 1.0);
    for (int it = 0; it < 100000; ++it) {
        DVec un = dvec_mat(u, Pd, n);
        double s = 0;
        for (double x : un) s += x;
        for (double& x : un) x /= s;
        double diff = 0;
        for (int i = 0; i < n; ++i) diff = std::max(diff, std::fabs(un[i] - u[i]));
        u = un;
        if (diff < 1e-13 && it > 3) break;
    }
    for (int it = 0; it < 100000; ++it) {
        DVec vn = dmat_vec(Pd, v, n);
        double s = 0; // normalize u^T v = 1
        for (int i = 0; i < n; ++i) s += u[i] * vn[i];
        for (double& x : vn) x /= s;
        double diff = 0;
        for (int i = 0; i < n; ++i) diff = std::max(diff, std::fabs(vn[i] - v[i]));
        v = vn;
        if (diff < 1e-13 && it > 3) break;
    }

    // exact group inverse reused as floats (ledger: single inversion path)
    RVec pi = stationary_distribution(chain);
    RMat Qr = group_inverse(chain, pi);
    DMat Q(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Q[size_t(i) * n + j] = rat_to_double(Qr(i, j));

    // F^{(k)}(0) = P G^k: scale column j by g(j)^k
    auto Fk = [&](int k) {
        DMat F = P;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 1;
                for (int t = 0; t < k; ++t) s *= (double)chain.g[j];
                F[size_t(i) * n + j] *= s;
            }
        return F;
    };
    DMat F1 = Fk(1), F2 = Fk(2), F3 = Fk(3);

    auto form = [&](const std::vector<const DMat*>& ms) {
        DVec row = u;
        for (const DMat* M : ms) row = dvec_mat(row, *M, n);
        double s = 0;
        for (int i = 0; i < n; ++i) s += row[i] * v[i];
        return s;
    };

    PerturbationSeries out;
    out.u = u;
    out.v = v;
    out.m1 = form({&F1});
    out.m2 = form({&F2}) + 2.0 * form({&F1, &Q, &F1});
    out.m3 = form({&F3}) + 3.0 * form({&F2, &Q, &F1}) + 3.0 * form({&F1, &Q, &F2}) +
             6.0 * form({&F1, &Q, &F1, &Q, &F1}) -
             6.0 * form({&F1}) * form({&F1, &Q, &Q, &F1});
    out.mu = out.m1;
    out.sigma2 = out.m2 - out.m1 * out.m1;
    out.kappa3 = out.m3 - 3.0 * out.m2 * out.m1 + 2.0 * out.m1 * out.m1 * out.m1;
    return out;
}

Rat initial_distribution_delta(const ChainSpec& chain, const RVec& pi1,
                               const std::vector<long long>* h) {
    require_irreducible(chain);
    if ((int)pi1.size() != chain.size())
        throw InvalidDistribution("initial distribution has wrong length");
    Rat total = 0;
    for (const Rat& p : pi1) {
        if (p < 0) throw InvalidDistribution("negative initial probability");
        total += p;
    }
    if (total != 1) throw InvalidDistribution("initial distribution does not sum to 1");
    if (!chain.has_state_score())
        throw BadInput("initial_distribution_delta needs a per-state score");

    RVec pi = stationary_distribution(chain);
    RMat Q = group_inverse(chain, pi);
    RVec gv(chain.size());
    for (int i = 0; i < chain.size(); ++i) gv[i] = Rat((long)chain.g[i]);
    Rat delta = dot(pi1, mat_vec(Q, gv));
    if (h) {
        for (int i = 0; i < chain.size(); ++i) delta += pi1[i] * Rat((long)(*h)[i]);
    }
    return delta;
}

Rat delta_partial_sum(const ChainSpec& chain, const RVec& pi1, int K) {
    RVec pi = stationary_distribution(chain);
    Rat mu = 0;
    for (int i = 0; i < chain.size(); ++i) mu += pi[i] * Rat((long)chain.g[i]);

    Rat acc = 0;
    RVec row = pi1; // distribution of W_k, starting at k = 1
    for (int k = 1; k <= K; ++k) {
        Rat ex = 0;
        for (int i = 0; i < chain.size(); ++i) ex += row[i] * Rat((long)chain.g[i]);
        acc += ex - mu;
        row = vec_mat(row, chain.P);
    }
    return acc;
}

} // namespace edgeword
