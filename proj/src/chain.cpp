#include "edgeword/chain.hpp"

#include <nlohmann/json.hpp>

#include <numeric>
#include <queue>

namespace edgeword {

void validate(const ChainSpec& chain) {
    const int n = chain.size();
    if (n == 0) throw BadInput("empty chain");
    if (chain.P.cols() != n) throw BadInput("P is not square");
    if ((int)chain.states.size() != n)
        throw BadInput("state label count does not match P");
    for (int i = 0; i < n; ++i) {
        Rat row_sum = 0;
        for (int j = 0; j < n; ++j) {
            if (chain.P(i, j) < 0)
                throw BadInput("negative transition probability at row " + std::to_string(i));
            row_sum += chain.P(i, j);
        }
        if (row_sum != 1)
            throw BadInput("row " + std::to_string(i) + " of P sums to " +
                           rat_to_string(row_sum) + ", expected 1");
    }
    if (chain.has_state_score() && (int)chain.g.size() != n)
        throw BadInput("state score vector has wrong length");
    for (const auto& [edge, val] : chain.g_edges) {
        (void)val;
        auto [i, j] = edge;
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw BadInput("edge score index out of range");
        if (chain.P(i, j) == 0)
            throw BadInput("edge score on a zero-probability edge (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
    }
}

namespace {

// plain BFS reachability over the positive-entry digraph
std::vector<char> reachable(const RMat& P, int from, bool reversed) {
    const int n = P.rows();
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    seen[from] = 1;
    q.push(from);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v = 0; v < n; ++v) {
            bool edge = reversed ? P(v, u) != 0 : P(u, v) != 0;
            if (edge && !seen[v]) {
                seen[v] = 1;
                q.push(v);
            }
        }
    }
    return seen;
}

} // namespace

bool is_irreducible(const RMat& P) {
    const int n = P.rows();
    auto fwd = reachable(P, 0, false);
    auto bwd = reachable(P, 0, true);
    for (int i = 0; i < n; ++i)
        if (!fwd[i] || !bwd[i]) return false;
    return true;
}

void require_irreducible(const ChainSpec& chain) {
    if (!is_irreducible(chain.P))
        throw NotIrreducible("transition digraph is not strongly connected");
}

long long chain_period(const RMat& P) {
    const int n = P.rows();
    std::vector<long long> level(n, -1);
    std::queue<int> q;
    level[0] = 0;
    q.push(0);
    long long g = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v = 0; v < n; ++v) {
            if (P(u, v) == 0) continue;
            if (level[v] < 0) {
                level[v] = level[u] + 1;
                q.push(v);
            } else {
                g = std::gcd(g, level[u] + 1 - level[v]);
            }
        }
    }
    return g == 0 ? 0 : std::abs(g);
}

RVec stationary_distribution(const ChainSpec& chain) {
    require_irreducible(chain);
    const int n = chain.size();
    // solve (I - P)^T x = 0 with the first equation replaced by sum(x) = 1
    RMat A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            A(i, j) = (i == j ? Rat(1) : Rat(0)) - chain.P(j, i);
    RVec b(n, Rat(0));
    for (int j = 0; j < n; ++j) A(0, j) = 1;
    b[0] = 1;
    RVec pi = solve(std::move(A), std::move(b));
    for (const Rat& p : pi)
        if (p <= 0)
            throw SingularMatrix("stationary distribution has a nonpositive entry");
    return pi;
}

RMat group_inverse(const ChainSpec& chain, const RVec& pi) {
    const int n = chain.size();
    // Q = (I - P + 1 pi^T)^{-1} - 1 pi^T
    RMat M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            M(i, j) = (i == j ? Rat(1) : Rat(0)) - chain.P(i, j) + pi[j];
    RMat Q = inverse(M);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Q(i, j) -= pi[j];
    return Q;
}

RMat group_inverse(const ChainSpec& chain) {
    return group_inverse(chain, stationary_distribution(chain));
}

bool group_inverse_axioms_hold(const RMat& P, const RVec& pi, const RMat& Q) {
    const int n = P.rows();
    RMat A = RMat::identity(n) - P;
    RMat AQ = A * Q;
    RMat QA = Q * A;
    if (AQ != QA) return false;
    if (A * QA != A) return false;
    if (Q * AQ != Q) return false;
    // (I - P) Q = I - 1 pi^T
    RMat proj = RMat::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) proj(i, j) -= pi[j];
    if (AQ != proj) return false;
    for (int i = 0; i < n; ++i) {
        Rat row = 0;
        for (int j = 0; j < n; ++j) row += Q(i, j);
        if (row != 0) return false;
    }
    return true;
}

RMat moore_penrose_inverse(const RMat& P, const RVec& pi, const RMat& Q) {
    const int n = P.rows();
    // A+ = (I - 1 1^T / n) Q (I - pi pi^T / (pi^T pi)); both factors are the
    // orthogonal projectors onto range(A^T) and range(A) for A = I - P.
    Rat pi2 = 0;
    for (const Rat& p : pi) pi2 += p * p;
    RMat left = RMat::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) left(i, j) -= Rat(1, n);
    RMat right = RMat::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) right(i, j) -= pi[i] * pi[j] / pi2;
    return left * Q * right;
}

RMat mean_first_passage(const RVec& pi, const RMat& Q) {
    const int n = Q.rows();
    RMat m(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            m(i, j) = (i == j) ? Rat(0) : (Q(j, j) - Q(i, j)) / pi[j];
    return m;
}

RMat mean_first_passage_by_solve(const ChainSpec& chain) {
    require_irreducible(chain);
    const int n = chain.size();
    RMat m(n, n);
    // column by column: restricted system over states != j
    for (int j = 0; j < n; ++j) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (i != j) idx.push_back(i);
        const int k = (int)idx.size();
        RMat A(k, k);
        RVec b(k, Rat(1));
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                A(r, c) = (r == c ? Rat(1) : Rat(0)) - chain.P(idx[r], idx[c]);
        RVec x = solve(std::move(A), std::move(b));
        for (int r = 0; r < k; ++r) m(idx[r], j) = x[r];
    }
    return m;
}

Rat visits_closed_form(const RVec& pi, const RMat& Q, int i, int j, int B) {
    // (I - P_{neq B})^{-1}_{ij}
    //   = Q_ij + (Q_BB + 1{i=B} - Q_iB) pi_j / pi_B - Q_Bj
    Rat ind = (i == B) ? Rat(1) : Rat(0);
    return Q(i, j) + (Q(B, B) + ind - Q(i, B)) * pi[j] / pi[B] - Q(B, j);
}

VisitsReport expected_visits_before(const ChainSpec& chain, int A, int B) {
    if (A == B) throw SameState("source and target state coincide");
    require_irreducible(chain);
    const int n = chain.size();
    RVec pi = stationary_distribution(chain);
    RMat Q = group_inverse(chain, pi);

    Rat closed = visits_closed_form(pi, Q, A, A, B);

    // direct route: N_i = 1{i=A} + sum_{j != B} P_ij N_j
    RMat M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat p = (j == B) ? Rat(0) : chain.P(i, j);
            M(i, j) = (i == j ? Rat(1) : Rat(0)) - p;
        }
    RVec e(n, Rat(0));
    e[A] = 1;
    RVec N = solve(std::move(M), std::move(e));

    if (N[A] != closed)
        throw Error("visit-count routes disagree (this is a bug)");
    return VisitsReport{A, B, closed, "group-inverse closed form = direct solve"};
}

ChainSpec chain_from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw BadInput(std::string("chain file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("P"))
        throw BadInput("chain file must be an object with a \"P\" matrix");

    const auto& pj = doc["P"];
    if (!pj.is_array() || pj.empty())
        throw BadInput("\"P\" must be a non-empty array of rows");
    const int n = (int)pj.size();

    ChainSpec chain;
    chain.P = RMat(n, n);
    for (int i = 0; i < n; ++i) {
        const auto& row = pj[i];
        if (!row.is_array() || (int)row.size() != n)
            throw BadInput("row " + std::to_string(i) + " of \"P\" has wrong length");
        for (int j = 0; j < n; ++j) {
            const auto& cell = row[j];
            if (cell.is_string())
                chain.P(i, j) = rat_from_string(cell.get<std::string>());
            else if (cell.is_number_integer())
                chain.P(i, j) = Rat(cell.get<long>());
            else
                throw BadInput("entries of \"P\" must be rational strings or integers");
        }
    }

    if (doc.contains("states")) {
        for (const auto& s : doc["states"]) chain.states.push_back(s.get<std::string>());
    } else {
        for (int i = 0; i < n; ++i) chain.states.push_back(std::to_string(i));
    }

    if (doc.contains("g")) {
        for (const auto& v : doc["g"]) chain.g.push_back(v.get<long long>());
    }
    if (doc.contains("g_edges")) {
        for (const auto& [key, val] : doc["g_edges"].items()) {
            auto comma = key.find(',');
            if (comma == std::string::npos)
                throw BadInput("g_edges keys must look like \"i,j\"");
            int i = std::stoi(key.substr(0, comma));
            int j = std::stoi(key.substr(comma + 1));
            chain.g_edges[{i, j}] = val.get<long long>();
        }
    }
    if (doc.contains("g") && doc.contains("g_edges"))
        throw BadInput("chain file defines both \"g\" and \"g_edges\"");

    validate(chain);
    return chain;
}

} // namespace edgeword
