#include "edgeword/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <queue>

namespace edgeword {

namespace {

// extended gcd: returns g = gcd(a,b) and x,y with a x + b y = g
long long ext_gcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = (a < 0) ? -1 : 1;
        y = 0;
        return std::llabs(a);
    }
    long long x1, y1;
    long long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

struct PathVectors {
    std::vector<long long> val, len;
};

// BFS path vectors from state 0; reversed = true walks the transposed graph
// (giving return paths i -> 0 in the original orientation).
PathVectors bfs_paths(const ChainSpec& chain, bool reversed) {
    const int n = chain.size();
    PathVectors p;
    p.val.assign(n, 0);
    p.len.assign(n, -1);
    p.len[0] = 0;
    std::queue<int> q;
    q.push(0);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v = 0; v < n; ++v) { // lowest index first: deterministic
            bool edge = reversed ? chain.P(v, u) != 0 : chain.P(u, v) != 0;
            if (!edge || p.len[v] >= 0) continue;
            long long step = reversed ? chain.edge_value(v, u) : chain.edge_value(u, v);
            p.val[v] = p.val[u] + step;
            p.len[v] = p.len[u] + 1;
            q.push(v);
        }
    }
    return p;
}

} // namespace

LatticeReport value_length_lattice(const ChainSpec& chain) {
    require_irreducible(chain);
    const int n = chain.size();
    PathVectors w = bfs_paths(chain, false); // 0 -> i
    PathVectors r = bfs_paths(chain, true);  // i -> 0

    // Closed-walk generators at base state 0: one loop through every edge
    // (path out, the edge, path back) plus the out-and-back loop per state.
    // Telescoping shows these integer-combine into every closed-walk vector.
    std::vector<std::pair<long long, long long>> gens; // (value, length)
    for (int i = 0; i < n; ++i) {
        gens.emplace_back(w.val[i] + r.val[i], w.len[i] + r.len[i]);
        for (int j = 0; j < n; ++j) {
            if (chain.P(i, j) == 0) continue;
            gens.emplace_back(w.val[i] + chain.edge_value(i, j) + r.val[j],
                              w.len[i] + 1 + r.len[j]);
        }
    }

    // Reduce to a triangular basis {(d1, 0), (b_raw, d2)}:
    // first fold all generators into one vector carrying gcd of the lengths,
    // then the leftover pure-value components give d1.
    long long d2 = 0, vb = 0;
    for (auto& [v, l] : gens) {
        if (l == 0 && v == 0) continue;
        long long x, y;
        long long g = ext_gcd(d2, l, x, y);
        vb = x * vb + y * v;
        d2 = g;
    }
    long long d1 = 0;
    for (auto& [v, l] : gens) {
        long long resid = (d2 == 0) ? v : v - (l / d2) * vb;
        d1 = std::gcd(d1, resid);
    }

    LatticeReport rep;
    rep.d1 = d1;
    rep.d2 = d2;
    rep.b_raw = vb;
    rep.rank = (d1 > 0 && d2 > 0) ? 2 : ((d1 > 0 || d2 > 0 || vb != 0) ? 1 : 0);
    rep.index = (rep.rank == 2) ? d1 * d2 : 0;
    rep.full = rep.index == 1;
    if (d1 > 0) {
        rep.b = ((vb % d1) + d1) % d1;
    } else {
        rep.b = vb;
    }
    rep.path_value = std::move(w.val);
    rep.path_length = std::move(w.len);
    return rep;
}

namespace {

void verify_certificate(const ChainSpec& chain, long long b,
                        const std::vector<long long>& gamma, long long N) {
    // N = 0 means exact over Z
    const int n = chain.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (chain.P(i, j) == 0) continue;
            long long lhs = gamma[j] - gamma[i] - chain.edge_value(i, j) + b;
            if (N > 0) lhs %= N;
            if (lhs != 0)
                throw Error("lattice certificate failed edge verification (bug)");
        }
}

} // namespace

Em4Certificate check_em4(const ChainSpec& chain) {
    require_irreducible(chain);
    if (chain_period(chain.P) != 1)
        throw NotAperiodic("chain has period > 1");

    LatticeReport lat = value_length_lattice(chain);
    // aperiodicity makes the length gcd 1, so the index is just d1
    Em4Certificate cert;
    const int n = chain.size();

    if (lat.full) {
        cert.verdict = "holds";
        return cert;
    }

    if (lat.rank == 2) {
        cert.verdict = "fails";
        cert.N = lat.index;
        cert.b = lat.b;
        cert.gamma.resize(n);
        for (int i = 0; i < n; ++i) {
            long long v = lat.path_value[i] - cert.b * lat.path_length[i];
            cert.gamma[i] = ((v % cert.N) + cert.N) % cert.N;
        }
        verify_certificate(chain, cert.b, cert.gamma, cert.N);
        return cert;
    }

    // rank 1: the score is deterministic up to a bounded potential
    cert.verdict = "degenerate";
    cert.N = 0;
    cert.b = lat.b;
    cert.gamma.resize(n);
    for (int i = 0; i < n; ++i)
        cert.gamma[i] = lat.path_value[i] - cert.b * lat.path_length[i];
    verify_certificate(chain, cert.b, cert.gamma, 0);
    return cert;
}

std::optional<DegeneracyCertificate> check_sigma2_zero(const ChainSpec& chain) {
    require_irreducible(chain);
    if (chain_period(chain.P) != 1)
        throw NotAperiodic("chain has period > 1");

    LatticeReport lat = value_length_lattice(chain);
    if (lat.rank == 2) return std::nullopt;

    DegeneracyCertificate cert;
    cert.b = lat.b;
    const int n = chain.size();
    cert.gamma.resize(n);
    for (int i = 0; i < n; ++i)
        cert.gamma[i] = lat.path_value[i] - cert.b * lat.path_length[i];
    verify_certificate(chain, cert.b, cert.gamma, 0);

    long long max_dev = 0, max_gamma = 0;
    for (int i = 0; i < n; ++i) {
        max_gamma = std::max(max_gamma, std::llabs(cert.gamma[i]));
        for (int j = 0; j < n; ++j)
            if (chain.P(i, j) != 0)
                max_dev = std::max(max_dev, std::llabs(chain.edge_value(i, j) - cert.b));
    }
    cert.C = max_dev + 2 * max_gamma;
    return cert;
}

std::vector<double> spectral_radius_scan(const ChainSpec& chain,
                                         const std::vector<double>& t_values) {
    require_irreducible(chain);
    const int n = chain.size();
    std::vector<double> out;
    out.reserve(t_values.size());
    using C = std::complex<double>;

    for (double t : t_values) {
        std::vector<C> M(size_t(n) * n, C(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (chain.P(i, j) == 0) continue;
                double a = t * (double)chain.edge_value(i, j);
                M[size_t(i) * n + j] =
                    rat_to_double(chain.P(i, j)) * C(std::cos(a), std::sin(a));
            }
        // M^64 by six squarings, then the 64th root of the inf-norm
        std::vector<C> cur = M, tmp(size_t(n) * n);
        for (int s = 0; s < 6; ++s) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    C acc(0);
                    for (int k = 0; k < n; ++k)
                        acc += cur[size_t(i) * n + k] * cur[size_t(k) * n + j];
                    tmp[size_t(i) * n + j] = acc;
                }
            std::swap(cur, tmp);
        }
        double norm = 0;
        for (int i = 0; i < n; ++i) {
            double row = 0;
            for (int j = 0; j < n; ++j) row += std::abs(cur[size_t(i) * n + j]);
            norm = std::max(norm, row);
        }
        out.push_back(std::pow(norm, 1.0 / 64.0));
    }
    return out;
}

} // namespace edgeword
