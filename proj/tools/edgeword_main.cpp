// edgeword: first-order win/lose/tie asymptotics for word-occurrence games,
// exact big-integer oracles, and Markov-chain inspection.
//
// Exit codes: 0 ok, 2 exceptional pair (report still printed), 64 usage,
// 65 bad data file, 69 resource cap, 70 internal error.

#include "edgeword/report.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitExceptional = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitResource = 69;
constexpr int kExitInternal = 70;

int run_analyze(int q, const std::string& a, const std::string& b, long long n,
                bool with_exact, long long sim_reps, std::uint64_t seed, int jobs,
                const std::string& dist_out) {
    edgeword::GameSpec spec = edgeword::classic_game(q, a, b);

    edgeword::AnalyzeOptions opt;
    opt.with_exact = with_exact;
    if (sim_reps > 0) {
        edgeword::SimulationConfig cfg;
        cfg.reps = sim_reps;
        cfg.seed = seed;
        cfg.jobs = jobs;
        opt.sim = cfg;
    }

    edgeword::AnalyzeOutcome out = edgeword::analyze_report(spec, n, opt);

    if (!dist_out.empty()) {
        std::ofstream f(dist_out);
        if (!f) {
            std::cerr << "edgeword: cannot write " << dist_out << "\n";
            return kExitData;
        }
        f << edgeword::distribution_to_csv(edgeword::exact_distribution(spec, n));
    }

    std::cout << out.report.dump(2) << "\n";
    return out.exceptional ? kExitExceptional : kExitOk;
}

int run_scan(int q, int ell, long long n, long long exact_upto, int jobs,
             const std::string& out_path) {
    edgeword::ScanOptions opt;
    opt.exact_upto = exact_upto;
    opt.jobs = jobs;
    std::string csv = edgeword::scan_csv(q, ell, n, opt);
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "edgeword: cannot write " << out_path << "\n";
            return kExitData;
        }
        f << csv;
    }
    return kExitOk;
}

int resolve_state(const edgeword::ChainSpec& chain, const std::string& token) {
    for (int i = 0; i < (int)chain.states.size(); ++i)
        if (chain.states[i] == token) return i;
    try {
        size_t used = 0;
        int v = std::stoi(token, &used);
        if (used == token.size() && v >= 0 && v < chain.size()) return v;
    } catch (...) {
    }
    throw edgeword::BadInput("unknown state '" + token + "'");
}

int run_chain(const std::string& path, bool cumulants, bool em4, bool mfpt,
              const std::vector<std::string>& visits) {
    std::ifstream f(path);
    if (!f) {
        std::cerr << "edgeword: cannot read " << path << "\n";
        return kExitData;
    }
    std::ostringstream buf;
    buf << f.rdbuf();

    edgeword::ChainSpec chain;
    try {
        chain = edgeword::chain_from_json_text(buf.str());
        edgeword::validate(chain);
    } catch (const edgeword::Error& e) {
        std::cerr << "edgeword: bad chain file: " << e.what() << "\n";
        return kExitData;
    }

    edgeword::ChainReportOptions opt;
    opt.cumulants = cumulants;
    opt.em4 = em4;
    opt.mfpt = mfpt;
    if (!visits.empty())
        opt.visits = {resolve_state(chain, visits[0]), resolve_state(chain, visits[1])};

    std::cout << edgeword::chain_report(chain, opt).dump(2) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Word-occurrence game asymptotics with exact oracles"};
    app.require_subcommand(1);

    // analyze
    int a_q = 2;
    std::string a_a, a_b;
    long long a_n = 0;
    bool a_exact = false;
    long long a_sim = 0;
    std::uint64_t a_seed = 12345;
    int a_jobs = 1;
    std::string a_dist;
    CLI::App* analyze = app.add_subcommand("analyze", "One word pair: report and predictions");
    analyze->add_option("--q", a_q, "alphabet size")->capture_default_str();
    analyze->add_option("--a", a_a, "Alice's word")->required();
    analyze->add_option("--b", a_b, "Bob's word")->required();
    analyze->add_option("--n", a_n, "number of letters")->required();
    analyze->add_flag("--exact", a_exact, "run the exact big-integer oracle");
    analyze->add_option("--simulate", a_sim, "Monte Carlo repetitions");
    analyze->add_option("--seed", a_seed, "simulation seed")->capture_default_str();
    analyze->add_option("--jobs", a_jobs, "worker threads")->capture_default_str();
    analyze->add_option("--dist-out", a_dist, "write the exact score distribution CSV here");

    // scan
    int s_q = 2, s_ell = 2, s_jobs = 1;
    long long s_n = 0, s_exact_upto = -1;
    std::string s_out;
    CLI::App* scan = app.add_subcommand("scan", "All pairs of one length: CSV table");
    scan->add_option("--q", s_q, "alphabet size")->capture_default_str();
    scan->add_option("--ell", s_ell, "word length")->capture_default_str();
    scan->add_option("--n", s_n, "number of letters")->required();
    scan->add_option("--exact-upto", s_exact_upto,
                     "also run the exact oracle when n <= this");
    scan->add_option("--out", s_out, "output path (default stdout)");
    scan->add_option("--jobs", s_jobs, "worker threads")->capture_default_str();

    // chain
    std::string c_file;
    bool c_cum = false, c_em4 = false, c_mfpt = false;
    std::vector<std::string> c_visits;
    CLI::App* chain = app.add_subcommand("chain", "Inspect a chain from a JSON file");
    chain->add_option("--file", c_file, "chain description (JSON)")->required();
    chain->add_flag("--cumulants", c_cum, "asymptotic mean/variance/skewness");
    chain->add_flag("--em4", c_em4, "joint value/length aperiodicity certificate");
    chain->add_flag("--mfpt", c_mfpt, "mean first-passage matrix");
    chain->add_option("--visits", c_visits, "expected visits to A before B")
        ->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message
        return kExitUsage;
    }

    try {
        if (analyze->parsed())
            return run_analyze(a_q, a_a, a_b, a_n, a_exact, a_sim, a_seed, a_jobs, a_dist);
        if (scan->parsed())
            return run_scan(s_q, s_ell, s_n, s_exact_upto, s_jobs, s_out);
        if (chain->parsed())
            return run_chain(c_file, c_cum, c_em4, c_mfpt, c_visits);
    } catch (const edgeword::ResourceCap& e) {
        std::cerr << "edgeword: " << e.what() << "\n";
        return kExitResource;
    } catch (const edgeword::BadInput& e) {
        std::cerr << "edgeword: " << e.what() << "\n";
        return kExitUsage;
    } catch (const edgeword::NotClassic& e) {
        std::cerr << "edgeword: " << e.what() << "\n";
        return kExitUsage;
    } catch (const edgeword::HorizonTooShort& e) {
        std::cerr << "edgeword: " << e.what() << "\n";
        return kExitUsage;
    } catch (const edgeword::AlphabetTooLarge& e) {
        std::cerr << "edgeword: " << e.what() << "\n";
        return kExitUsage;
    } catch (const edgeword::SameState& e) {
        std::cerr << "edgeword: " << e.what() << "\n";
        return kExitUsage;
    } catch (const edgeword::NotIrreducible& e) {
        std::cerr << "edgeword: " << e.what() << "\n";
        return kExitData;
    } catch (const edgeword::InvalidDistribution& e) {
        std::cerr << "edgeword: " << e.what() << "\n";
        return kExitData;
    } catch (const edgeword::Error& e) {
        std::cerr << "edgeword: internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
