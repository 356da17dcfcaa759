// Acceptance gate for the release: twelve end-to-end checks that pin the
// asymptotic formulas against exact big-integer computation. Each criterion
// prints exactly one PASS/FAIL line; the process exits nonzero if any fail.

#include "edgeword/chain.hpp"
#include "edgeword/cumulants.hpp"
#include "edgeword/edgeworth.hpp"
#include "edgeword/errors.hpp"
#include "edgeword/exact.hpp"
#include "edgeword/lattice.hpp"
#include "edgeword/words.hpp"

#include "test_util.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

using namespace edgeword;

namespace {

int failures = 0;

// body returns std::nullopt on success, else a short failure detail
void criterion(int num, const std::string& label,
               const std::function<std::optional<std::string>()>& body) {
    std::optional<std::string> detail;
    try {
        detail = body();
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    if (!detail) {
        std::printf("PASS criterion %d: %s\n", num, label.c_str());
    } else {
        std::printf("FAIL criterion %d: %s (%s)\n", num, label.c_str(),
                    detail->c_str());
        ++failures;
    }
    std::fflush(stdout);
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

ChainSpec word_chain(const std::string& a, const std::string& b, int q = 2) {
    return build_chain(classic_game(q, a, b));
}

ChainSpec bursty_fixture() {
    return chain_from_json_text(testutil::read_file(testutil::data_path("e4.json")));
}

std::vector<std::string> all_words(int q, int l) {
    std::vector<std::string> out;
    long long total = 1;
    for (int i = 0; i < l; ++i) total *= q;
    for (long long code = 0; code < total; ++code) {
        Word w;
        long long c = code;
        for (int i = 0; i < l; ++i) {
            w.sym.insert(w.sym.begin(), (int)(c % q));
            c /= q;
        }
        out.push_back(word_to_string(w, q));
    }
    return out;
}

// max abs gap between the predicted and the exact outcome triple
double triple_error(const GameSpec& spec, long long n) {
    GamePrediction p = predict(spec, n);
    ExactTriple t = outcome_probabilities(exact_distribution(spec, n));
    double ea = std::fabs(rat_to_double(t.win) - p.p_alice);
    double eb = std::fabs(rat_to_double(t.lose) - p.p_bob);
    double et = std::fabs(rat_to_double(t.tie) - p.p_tie);
    return std::max({ea, eb, et});
}

bool close_rel(double got, double want, double rel, double abs_floor) {
    return std::fabs(got - want) <=
           std::max(abs_floor, rel * std::max(std::fabs(got), std::fabs(want)));
}

} // namespace

int main() {
    criterion(1, "leading win/lose coefficients of HH vs HT are 3/(4 sqrt pi) and 1/(4 sqrt pi)", []() -> std::optional<std::string> {
        GamePrediction p = predict(classic_game(2, "HH", "HT"), 100);
        double s2 = rat_to_double(p.constants.sigma2);
        double lead_a = -rat_to_double(p.coef_alice) / std::sqrt(2.0 * M_PI * s2);
        double lead_b = -rat_to_double(p.coef_bob) / std::sqrt(2.0 * M_PI * s2);
        double want_a = 3.0 / (4.0 * std::sqrt(M_PI));
        double want_b = 1.0 / (4.0 * std::sqrt(M_PI));
        if (std::fabs(lead_a - want_a) > 1e-12)
            return "alice coefficient " + fmt(lead_a) + " vs " + fmt(want_a);
        if (std::fabs(lead_b - want_b) > 1e-12)
            return "bob coefficient " + fmt(lead_b) + " vs " + fmt(want_b);
        return std::nullopt;
    });

    criterion(2, "outcome-triple error contracts to <= 0.6x when n quadruples", []() -> std::optional<std::string> {
        for (auto [a, b] : std::vector<std::pair<std::string, std::string>>{
                 {"HH", "HT"}, {"HHH", "HHT"}}) {
            GameSpec spec = classic_game(2, a, b);
            double e64 = triple_error(spec, 64);
            double e128 = triple_error(spec, 128);
            double e256 = triple_error(spec, 256);
            double e512 = triple_error(spec, 512);
            if (e256 > 0.6 * e64)
                return a + " vs " + b + ": E(256)=" + fmt(e256) +
                       " > 0.6 E(64)=" + fmt(0.6 * e64);
            if (e512 > 0.6 * e128)
                return a + " vs " + b + ": E(512)=" + fmt(e512) +
                       " > 0.6 E(128)=" + fmt(0.6 * e128);
        }
        return std::nullopt;
    });

    criterion(3, "tie probability of HH vs HT at n=400 matches the square-root law", []() -> std::optional<std::string> {
        ExactTriple t =
            outcome_probabilities(exact_distribution(classic_game(2, "HH", "HT"), 400));
        const double m = 399.0;
        double target = 1.0 / std::sqrt(2.0 * M_PI * 0.5 * m);
        double gap = std::fabs(rat_to_double(t.tie) - target);
        if (gap > 2.0 / m)
            return "gap " + fmt(gap) + " exceeds " + fmt(2.0 / m);
        return std::nullopt;
    });

    criterion(4, "three cumulant routes agree on four chains", []() -> std::optional<std::string> {
        testutil::Rng rng(0xACCE97);
        std::vector<std::pair<std::string, ChainSpec>> chains;
        chains.emplace_back("HH-vs-HT window chain", word_chain("HH", "HT"));
        chains.emplace_back("HHH-vs-THT window chain", word_chain("HHH", "THT"));
        chains.emplace_back("bursty 4-state fixture", bursty_fixture());
        chains.emplace_back("random 6-state chain", testutil::random_chain(rng, 6, 3));
        for (auto& [name, chain] : chains) {
            RVec pi = stationary_distribution(chain);
            RMat Q = group_inverse(chain, pi);
            CumulantTriple qp = cumulants_state_score_qp(chain, pi, Q);
            CumulantTriple qpr = cumulants_state_score_qprime(chain, pi, Q);
            if (!(qp == qpr)) return name + ": the two exact routes differ";
            PerturbationSeries ps = eigen_perturbation_cumulants(chain);
            if (!close_rel(ps.mu, rat_to_double(qp.mu), 1e-8, 1e-10))
                return name + ": mu " + fmt(ps.mu) + " vs " + fmt(rat_to_double(qp.mu));
            if (!close_rel(ps.sigma2, rat_to_double(qp.sigma2), 1e-8, 1e-10))
                return name + ": sigma2 " + fmt(ps.sigma2) + " vs " +
                       fmt(rat_to_double(qp.sigma2));
            if (!close_rel(ps.kappa3, rat_to_double(qp.kappa3), 1e-8, 1e-10))
                return name + ": kappa3 " + fmt(ps.kappa3) + " vs " +
                       fmt(rat_to_double(qp.kappa3));
        }
        return std::nullopt;
    });

    criterion(5, "window-chain group inverse equals the overlap closed form", []() -> std::optional<std::string> {
        for (auto [q, l] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}}) {
            std::vector<std::string> words = all_words(q, l);
            ChainSpec chain = build_chain(classic_game(q, words.front(), words.back()));
            RVec pi = stationary_distribution(chain);
            RMat Q = group_inverse(chain, pi);
            Rat states = rat_pow(Rat(q), (unsigned long)l);
            for (int u = 0; u < chain.size(); ++u)
                for (int v = 0; v < chain.size(); ++v) {
                    Word U = parse_word(chain.states[(size_t)u], q);
                    Word V = parse_word(chain.states[(size_t)v], q);
                    Rat expect = overlap(U, V, q).theta - Rat(l) / states;
                    if (u == v) expect += 1;
                    if (Q(u, v) != expect)
                        return "q=" + std::to_string(q) + " l=" + std::to_string(l) +
                               " entry (" + chain.states[(size_t)u] + "," +
                               chain.states[(size_t)v] + ")";
                }
        }
        return std::nullopt;
    });

    criterion(6, "exception taxonomy = certificate status, exhaustively", []() -> std::optional<std::string> {
        auto sweep = [](int q, int l) -> std::optional<std::string> {
            std::vector<std::string> words = all_words(q, l);
            for (const std::string& a : words)
                for (const std::string& b : words) {
                    if (a == b) continue;
                    GameSpec spec = classic_game(q, a, b);
                    ExceptionTag tag = classify_exceptions(spec).tag;
                    bool zero_var = game_constants(spec).sigma2 == Rat(0);
                    if (zero_var != (tag == ExceptionTag::gap_degenerate))
                        return "sigma2-zero mismatch at (" + a + "," + b + ")";
                    std::string verdict = check_em4(build_chain(spec)).verdict;
                    if ((verdict != "holds") != (tag != ExceptionTag::none))
                        return "certificate/tag mismatch at (" + a + "," + b +
                               "): verdict " + verdict;
                }
            return std::nullopt;
        };
        for (int l : {1, 2, 3})
            if (auto bad = sweep(2, l)) return bad;
        return sweep(3, 2);
    });

    criterion(7, "frozen exact fixtures hit their closed forms", []() -> std::optional<std::string> {
        GameSpec gap = classic_game(2, "HT", "TH");
        for (long long n : {2, 10, 25}) {
            ExactTriple t = outcome_probabilities(exact_distribution(gap, n));
            if (t.win != Rat(1, 4) || t.lose != Rat(1, 4) || t.tie != Rat(1, 2))
                return "HT vs TH at n=" + std::to_string(n);
        }

        GameSpec single = classic_game(2, "H", "T");
        for (long long n : {3, 7, 11}) {
            if (outcome_probabilities(exact_distribution(single, n)).tie != Rat(0))
                return "H vs T odd-n tie at n=" + std::to_string(n);
        }
        for (long long n : {4, 8, 12}) {
            Int c, p;
            mpz_bin_uiui(c.get_mpz_t(), (unsigned long)n, (unsigned long)(n / 2));
            mpz_ui_pow_ui(p.get_mpz_t(), 2, (unsigned long)n);
            if (outcome_probabilities(exact_distribution(single, n)).tie !=
                Rat(c) / Rat(p))
                return "H vs T even-n tie at n=" + std::to_string(n);
        }

        GameSpec comp = classic_game(2, "HH", "TT");
        for (long long n = 3; n <= 41; n += 2) {
            unsigned long m = (unsigned long)((n - 1) / 2);
            Int c, p;
            mpz_bin_uiui(c.get_mpz_t(), 2 * m, m);
            mpz_ui_pow_ui(p.get_mpz_t(), 2, (unsigned long)n);
            if (outcome_probabilities(exact_distribution(comp, n)).tie != Rat(c) / Rat(p))
                return "HH vs TT tie at n=" + std::to_string(n);
        }

        RVec pi = stationary_distribution(bursty_fixture());
        if (pi[0] != Rat(5, 12) || pi[1] != Rat(5, 12) || pi[2] != Rat(1, 12) ||
            pi[3] != Rat(1, 12))
            return "bursty fixture stationary law";
        return std::nullopt;
    });

    criterion(8, "equal self-overlap means an exactly fair game through n=30", []() -> std::optional<std::string> {
        std::vector<std::string> words = all_words(2, 3);
        int fair_pairs = 0;
        for (const std::string& a : words)
            for (const std::string& b : words) {
                if (a == b) continue;
                GameSpec spec = classic_game(2, a, b);
                GameConstants c = game_constants(spec);
                if (c.theta_AA != c.theta_BB) continue;
                ++fair_pairs;
                for (long long n = 3; n <= 30; ++n) {
                    ExactTriple t = outcome_probabilities(exact_distribution(spec, n));
                    if (t.win_count != t.lose_count)
                        return "(" + a + "," + b + ") unfair at n=" + std::to_string(n);
                }
            }
        if (fair_pairs != 16)
            return "expected 16 equal-overlap ordered pairs, saw " +
                   std::to_string(fair_pairs);
        // and a pair with unequal self-overlaps must NOT be fair
        ExactTriple t =
            outcome_probabilities(exact_distribution(classic_game(2, "HHH", "HHT"), 30));
        if (t.win_count == t.lose_count) return "HHH vs HHT is unexpectedly fair at n=30";
        return std::nullopt;
    });

    criterion(9, "expected visits before absorption obey the overlap formula", []() -> std::optional<std::string> {
        testutil::Rng rng(0x715175);
        int done = 0;
        while (done < 20) {
            Word wa = testutil::random_word(rng, 2, 3);
            Word wb = testutil::random_word(rng, 2, 3);
            if (wa == wb) continue;
            std::string a = word_to_string(wa, 2), b = word_to_string(wb, 2);
            GameSpec spec = classic_game(2, a, b);
            ChainSpec chain = build_chain(spec);
            int ia = -1, ib = -1;
            for (int i = 0; i < chain.size(); ++i) {
                if (chain.states[(size_t)i] == a) ia = i;
                if (chain.states[(size_t)i] == b) ib = i;
            }
            // the library cross-checks its two routes internally and throws
            // on any disagreement
            VisitsReport r = expected_visits_before(chain, ia, ib);
            GameConstants c = game_constants(spec);
            Rat expect = Rat(2) + c.theta_AA + c.theta_BB - c.theta_AB - c.theta_BA;
            if (r.expected_visits != expect)
                return "(" + a + "," + b + "): visits " +
                       rat_to_string(r.expected_visits) + " vs " + rat_to_string(expect);
            ++done;
        }
        return std::nullopt;
    });

    criterion(10, "route counting and the transfer-matrix route coincide", []() -> std::optional<std::string> {
        auto agree = [](const GameSpec& spec, long long n) -> bool {
            ScoreDistribution a = exact_distribution(spec, n);
            ScoreDistribution b = transfer_distribution(spec, n);
            return a == b;
        };
        GameSpec hhht = classic_game(2, "HH", "HT");
        for (long long n : {1, 2, 3, 5, 8, 16, 64, 512})
            if (!agree(hhht, n)) return "HH vs HT at n=" + std::to_string(n);
        if (!agree(classic_game(2, "HHH", "THT"), 40)) return std::string("HHH vs THT");
        if (!agree(classic_game(2, "HH", "TT"), 41)) return std::string("HH vs TT");
        if (!agree(classic_game(2, "HT", "TH"), 25)) return std::string("HT vs TH");
        if (!agree(classic_game(3, "01", "20"), 30)) return std::string("q=3 pair");
        GameSpec weighted;
        weighted.q = 2;
        weighted.words = {{parse_word("H", 2), 1}, {parse_word("TT", 2), -2}};
        if (!agree(weighted, 20)) return std::string("weighted multiword game");
        return std::nullopt;
    });

    criterion(11, "a million seeded repetitions sit within 4 binomial SEs", []() -> std::optional<std::string> {
        GameSpec spec = classic_game(2, "HH", "HT");
        const long long n = 100, reps = 1000000;
        ExactTriple t = outcome_probabilities(exact_distribution(spec, n));
        SimulationResult r = simulate(spec, n, SimulationConfig{reps, 20240817, 4});
        auto check = [&](double emp, const Rat& truth,
                         const char* what) -> std::optional<std::string> {
            double p = rat_to_double(truth);
            double se = std::sqrt(p * (1.0 - p) / (double)reps);
            if (std::fabs(emp - p) > 4.0 * se)
                return std::string(what) + ": " + fmt(emp) + " vs " + fmt(p) +
                       " (4se=" + fmt(4 * se) + ")";
            return std::nullopt;
        };
        if (auto bad = check(r.p_win, t.win, "win")) return bad;
        if (auto bad = check(r.p_lose, t.lose, "lose")) return bad;
        return check(r.p_tie, t.tie, "tie");
    });

    criterion(12, "start-state correction moves the threshold prediction toward truth", []() -> std::optional<std::string> {
        GameSpec spec = classic_game(2, "HH", "HT");
        ChainSpec chain = build_chain(spec);
        RVec p1(4, Rat(0));
        p1[0] = 1; // the chain starts at window HH
        Rat delta = initial_distribution_delta(chain, p1);
        Rat partial = delta_partial_sum(chain, p1, 200);
        if (std::fabs(rat_to_double(delta - partial)) > 1e-12)
            return "closed form " + rat_to_string(delta) + " vs 200-term sum " +
                   rat_to_string(partial);

        for (long long m : {256, 1024}) {
            ScoreDistribution d =
                exact_distribution_conditional(spec, parse_word("HH", 2), m + 1);
            Int below = 0;
            for (long long s = d.min_score(); s <= 0; ++s) below += d.count_at(s);
            double exact = rat_to_double(Rat(below) / Rat(d.total));

            EdgeworthInput in{m, 0.0, 0.5, 0.75, 0.0};
            double plain = edgeworth_cdf(in, 0.0);
            in.delta = rat_to_double(delta);
            double corrected = edgeworth_cdf(in, 0.0);
            if (std::fabs(corrected - exact) >= std::fabs(plain - exact))
                return "m=" + std::to_string(m) + ": corrected " + fmt(corrected) +
                       " is no closer to " + fmt(exact) + " than " + fmt(plain);
        }
        return std::nullopt;
    });

    if (failures == 0) {
        std::printf("all 12 acceptance criteria passed\n");
    } else {
        std::printf("%d of 12 acceptance criteria FAILED\n", failures);
    }
    return failures == 0 ? 0 : 1;
}
