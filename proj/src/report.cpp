#include "edgeword/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

namespace edgeword {

const char* const kToolName = "edgeword";
const char* const kToolVersion = "1.0.0";

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Json overlap_entry(const Word& U, const Word& V, int q) {
    OverlapData o = overlap(U, V, q);
    Json j;
    j["lengths"] = Json(std::vector<int>(o.Theta.begin(), o.Theta.end()));
    j["theta"] = rat_entry(o.theta);
    return j;
}

Json em4_json(const Em4Certificate& cert) {
    Json j;
    j["verdict"] = cert.verdict;
    if (cert.verdict != "holds") {
        if (cert.verdict == "fails") j["N"] = cert.N;
        j["b"] = cert.b;
        j["gamma"] = Json(cert.gamma);
    }
    return j;
}

Json exception_json(const GameSpec& spec, const ExceptionClass& cls) {
    Json j;
    j["tag"] = tag_name(cls.tag);
    if (cls.tag == ExceptionTag::none) return j;
    j["detail"] = cls.detail;
    ChainSpec chain = build_chain(spec);
    if (cls.tag == ExceptionTag::gap_degenerate) {
        auto cert = check_sigma2_zero(chain);
        if (!cert) throw Error("gap-degenerate pair without a degeneracy certificate (bug)");
        Json c;
        c["b"] = cert->b;
        c["gamma"] = Json(cert->gamma);
        c["score_band_halfwidth"] = cert->C;
        j["degeneracy_certificate"] = c;
    } else {
        j["lattice_certificate"] = em4_json(check_em4(chain));
    }
    return j;
}

Json simulation_json(const SimulationResult& r, const ExactTriple* exact) {
    Json j;
    j["reps"] = r.reps;
    j["seed"] = r.seed;
    j["rng"] = r.rng;
    j["win_count"] = r.win_count;
    j["lose_count"] = r.lose_count;
    j["tie_count"] = r.tie_count;
    j["p_win"] = r.p_win;
    j["p_lose"] = r.p_lose;
    j["p_tie"] = r.p_tie;
    j["se_win"] = r.se_win;
    j["se_lose"] = r.se_lose;
    j["se_tie"] = r.se_tie;
    if (exact) {
        Json err;
        err["win"] = std::fabs(r.p_win - rat_to_double(exact->win));
        err["lose"] = std::fabs(r.p_lose - rat_to_double(exact->lose));
        err["tie"] = std::fabs(r.p_tie - rat_to_double(exact->tie));
        j["abs_error_vs_exact"] = err;
    }
    return j;
}

} // namespace

Json rat_entry(const Rat& r) {
    Json j;
    j["exact"] = rat_to_string(r);
    j["value"] = rat_to_double(r);
    return j;
}

Json provenance_block(const std::optional<std::uint64_t>& seed) {
    Json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["rng"] = "splitmix64";
    j["mem_cap_bytes"] = default_mem_cap();
    if (seed) j["seed"] = *seed;
    return j;
}

AnalyzeOutcome analyze_report(const GameSpec& spec, long long n,
                              const AnalyzeOptions& opt) {
    if (!spec.classic())
        throw NotClassic("analyze expects the two-word +1/-1 game");
    const Word& A = spec.words[0].word;
    const Word& B = spec.words[1].word;
    const int q = spec.q;

    AnalyzeOutcome out;
    Json& j = out.report;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "analyze";
    j["provenance"] =
        provenance_block(opt.sim ? std::optional<std::uint64_t>(opt.sim->seed)
                                 : std::nullopt);

    Json inputs;
    inputs["q"] = q;
    inputs["a"] = word_to_string(A, q);
    inputs["b"] = word_to_string(B, q);
    inputs["n"] = n;
    j["inputs"] = inputs;

    Json ov;
    ov["aa"] = overlap_entry(A, A, q);
    ov["ab"] = overlap_entry(A, B, q);
    ov["ba"] = overlap_entry(B, A, q);
    ov["bb"] = overlap_entry(B, B, q);
    j["overlaps"] = ov;

    GameConstants c = game_constants(spec);
    Json consts;
    consts["sigma2"] = rat_entry(c.sigma2);
    consts["kappa3"] = rat_entry(c.kappa3);
    j["constants"] = consts;

    ExceptionClass cls = classify_exceptions(spec);
    out.exceptional = cls.tag != ExceptionTag::none;
    j["exception"] = exception_json(spec, cls);

    std::optional<GamePrediction> pred;
    if (!out.exceptional) {
        pred = predict(spec, n);
        Json p;
        p["horizon"] = pred->horizon;
        p["asymptotic_ok"] = pred->asymptotic_ok;
        Json coef;
        coef["alice"] = rat_entry(pred->coef_alice);
        coef["bob"] = rat_entry(pred->coef_bob);
        coef["tie"] = rat_entry(pred->coef_tie);
        p["coefficients"] = coef;
        p["p_alice"] = pred->p_alice;
        p["p_bob"] = pred->p_bob;
        p["p_tie"] = pred->p_tie;
        j["prediction"] = p;
    }

    std::optional<ExactTriple> exact;
    if (opt.with_exact || out.exceptional) {
        ScoreDistribution dist = exact_distribution(spec, n);
        exact = outcome_probabilities(dist);
        Json e;
        e["routes"] = dist.total.get_str();
        e["support"] = Json::array({dist.min_score(), dist.max_score()});
        e["win"] = rat_entry(exact->win);
        e["lose"] = rat_entry(exact->lose);
        e["tie"] = rat_entry(exact->tie);
        ExactMoments mo = moments(dist);
        Json m;
        m["mean"] = rat_entry(mo.mean);
        m["variance"] = rat_entry(mo.variance);
        m["third_central"] = rat_entry(mo.third_central);
        e["moments"] = m;
        if (pred) {
            Json err;
            err["alice"] = std::fabs(rat_to_double(exact->win) - pred->p_alice);
            err["bob"] = std::fabs(rat_to_double(exact->lose) - pred->p_bob);
            err["tie"] = std::fabs(rat_to_double(exact->tie) - pred->p_tie);
            e["abs_error_vs_prediction"] = err;
        }
        j["exact"] = e;
    }

    if (opt.sim) {
        SimulationResult r = simulate(spec, n, *opt.sim);
        j["simulation"] = simulation_json(r, exact ? &*exact : nullptr);
    }
    return out;
}

Json chain_report(const ChainSpec& chain, const ChainReportOptions& opt) {
    validate(chain);
    require_irreducible(chain);

    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "chain";
    j["provenance"] = provenance_block(std::nullopt);

    Json inputs;
    inputs["size"] = chain.size();
    inputs["states"] = Json(chain.states);
    inputs["score_kind"] = chain.has_edge_score() ? "edge"
                           : chain.has_state_score() ? "state"
                                                     : "none";
    j["inputs"] = inputs;

    RVec pi = stationary_distribution(chain);
    Json stat = Json::array();
    for (const Rat& p : pi) stat.push_back(rat_entry(p));
    j["stationary"] = stat;

    if (opt.cumulants) {
        if (!chain.has_state_score() && !chain.has_edge_score())
            throw BadInput("cumulants need a score (g or g_edges)");
        CumulantTriple cum = chain.has_edge_score() ? cumulants_edge_score(chain)
                                                    : cumulants_state_score(chain);
        Json cj;
        cj["mu"] = rat_entry(cum.mu);
        cj["sigma2"] = rat_entry(cum.sigma2);
        cj["kappa3"] = rat_entry(cum.kappa3);
        if (chain.has_state_score()) {
            PerturbationSeries ps = eigen_perturbation_cumulants(chain);
            Json pj;
            pj["mu"] = ps.mu;
            pj["sigma2"] = ps.sigma2;
            pj["kappa3"] = ps.kappa3;
            cj["eigenvalue_route"] = pj;
        }
        j["cumulants"] = cj;
    }

    if (opt.em4) {
        try {
            j["joint_aperiodicity"] = em4_json(check_em4(chain));
        } catch (const NotAperiodic&) {
            Json e;
            e["verdict"] = "not_aperiodic";
            e["period"] = chain_period(chain.P);
            j["joint_aperiodicity"] = e;
        }
    }

    if (opt.mfpt) {
        RMat Q = group_inverse(chain, pi);
        RMat M = mean_first_passage(pi, Q);
        Json rows = Json::array();
        for (int i = 0; i < M.rows(); ++i) {
            Json row = Json::array();
            for (int k = 0; k < M.cols(); ++k) row.push_back(rat_to_string(M(i, k)));
            rows.push_back(row);
        }
        j["mean_first_passage"] = rows;
    }

    if (opt.visits) {
        VisitsReport v = expected_visits_before(chain, opt.visits->first, opt.visits->second);
        Json vj;
        vj["A"] = v.A;
        vj["B"] = v.B;
        vj["expected_visits"] = rat_entry(v.expected_visits);
        vj["route"] = v.route;
        j["visits"] = vj;
    }
    return j;
}

std::string scan_csv(int q, int ell, long long n, const ScanOptions& opt) {
    if (q < 2 || q > 36) throw BadInput("alphabet size must be in [2, 36]");
    if (ell < 1) throw BadInput("word length must be positive");
    if (n < ell) throw HorizonTooShort("need at least l letters");

    long long words = 1;
    for (int i = 0; i < ell; ++i) {
        words *= q;
        if (words > kStateCap) throw AlphabetTooLarge("q^l exceeds the state cap");
    }

    auto decode = [&](long long x) {
        Word w;
        w.sym.assign(ell, 0);
        for (int i = ell - 1; i >= 0; --i) {
            w.sym[i] = int(x % q);
            x /= q;
        }
        return w;
    };

    std::vector<std::pair<long long, long long>> pairs;
    for (long long a = 0; a < words; ++a)
        for (long long b = a + 1; b < words; ++b) pairs.emplace_back(a, b);

    const bool with_exact = opt.exact_upto >= 0 && n <= opt.exact_upto;
    std::vector<std::string> rows(pairs.size());

    auto run_range = [&](size_t first, size_t last) {
        for (size_t idx = first; idx < last; ++idx) {
            Word A = decode(pairs[idx].first), B = decode(pairs[idx].second);
            GameSpec spec;
            spec.q = q;
            spec.words = {{A, +1}, {B, -1}};
            GameConstants c = game_constants(spec);
            ExceptionClass cls = classify_exceptions(spec);

            std::string row = word_to_string(A, q) + "," + word_to_string(B, q) + "," +
                              rat_to_string(c.theta_AA) + "," + rat_to_string(c.theta_AB) +
                              "," + rat_to_string(c.theta_BA) + "," +
                              rat_to_string(c.theta_BB) + "," + rat_to_string(c.sigma2) +
                              "," + rat_to_string(c.kappa3) + "," + tag_name(cls.tag) + ",";

            if (cls.tag == ExceptionTag::none) {
                GamePrediction pred = predict(spec, n);
                // player-swap antisymmetry: swapping the words must swap the
                // win probabilities
                GameSpec swapped;
                swapped.q = q;
                swapped.words = {{B, +1}, {A, -1}};
                GamePrediction mirror = predict(swapped, n);
                if (std::fabs(pred.p_alice - mirror.p_bob) > 1e-12 ||
                    std::fabs(pred.p_bob - mirror.p_alice) > 1e-12 ||
                    std::fabs(pred.p_tie - mirror.p_tie) > 1e-12)
                    throw Error("player-swap antisymmetry violated (bug)");
                row += fmt17(pred.p_alice) + "," + fmt17(pred.p_bob) + "," +
                       fmt17(pred.p_tie) + ",";
            } else {
                row += ",,,";
            }

            if (with_exact) {
                ExactTriple t = outcome_probabilities(exact_distribution(spec, n));
                row += fmt17(rat_to_double(t.win)) + "," + fmt17(rat_to_double(t.lose)) +
                       "," + fmt17(rat_to_double(t.tie)) + "," +
                       (t.win_count == t.lose_count ? "true" : "false");
            } else {
                row += ",,,";
            }
            rows[idx] = row;
        }
    };

    int jobs = std::max(1, opt.jobs);
    if ((size_t)jobs > pairs.size()) jobs = (int)pairs.size();
    if (jobs <= 1) {
        run_range(0, pairs.size());
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors((size_t)jobs);
        size_t chunk = (pairs.size() + jobs - 1) / jobs;
        for (int w = 0; w < jobs; ++w) {
            size_t first = (size_t)w * chunk;
            size_t last = std::min(pairs.size(), first + chunk);
            if (first >= last) break;
            pool.emplace_back([&run_range, &errors, w, first, last] {
                try {
                    run_range(first, last);
                } catch (...) {
                    errors[(size_t)w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    std::string out =
        "A,B,theta_AA,theta_AB,theta_BA,theta_BB,sigma2,kappa3,exception,"
        "p_alice,p_bob,p_tie,p_alice_exact,p_bob_exact,p_tie_exact,exact_fair\n";
    for (const std::string& r : rows) {
        out += r;
        out += '\n';
    }
    return out;
}

} // namespace edgeword
