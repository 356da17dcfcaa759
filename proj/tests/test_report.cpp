#include "edgeword/report.hpp"
#include "edgeword/errors.hpp"

#include "doctest.h"
#include "test_util.hpp"

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

using namespace edgeword;

namespace {

// reports embed the resource cap; pin it to the default for reproducibility
struct ScopedDefaultCap {
    ScopedDefaultCap() { unsetenv("EDGEWORD_MEM_CAP"); }
};

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

int count_fields(const std::string& line) {
    int n = 1;
    for (char c : line)
        if (c == ',') ++n;
    return n;
}

} // namespace

TEST_CASE("analyze report: structure and determinism") {
    ScopedDefaultCap cap;
    GameSpec spec = classic_game(2, "HH", "HT");
    AnalyzeOptions opt;
    opt.with_exact = true;

    AnalyzeOutcome out = analyze_report(spec, 40, opt);
    CHECK_FALSE(out.exceptional);
    const Json& j = out.report;

    CHECK(j["schema_version"] == 1);
    CHECK(j["kind"] == "analyze");
    CHECK(j["provenance"]["tool"] == "edgeword");
    CHECK(j["provenance"]["rng"] == "splitmix64");
    CHECK_FALSE(j["provenance"].contains("seed")); // no simulation requested
    CHECK(j["inputs"]["q"] == 2);
    CHECK(j["inputs"]["a"] == "HH");
    CHECK(j["inputs"]["b"] == "HT");
    CHECK(j["inputs"]["n"] == 40);

    CHECK(j["overlaps"]["aa"]["theta"]["exact"] == "1/2");
    CHECK(j["overlaps"]["aa"]["lengths"] == Json::array({1}));
    CHECK(j["overlaps"]["ba"]["theta"]["exact"] == "0");
    CHECK(j["constants"]["sigma2"]["exact"] == "1/2");
    CHECK(j["constants"]["kappa3"]["exact"] == "3/4");
    CHECK(j["exception"]["tag"] == "none");

    CHECK(j["prediction"]["horizon"] == 39);
    CHECK(j["prediction"]["asymptotic_ok"] == true);
    CHECK(j["prediction"]["coefficients"]["alice"]["exact"] == "-3/4");
    CHECK(j["prediction"]["coefficients"]["tie"]["exact"] == "1");

    CHECK(j["exact"]["routes"] == "1099511627776"); // 2^40
    CHECK(j["exact"]["support"] == Json::array({-20, 39}));
    CHECK(j["exact"]["moments"]["variance"]["exact"] == "39/2");
    double err = j["exact"]["abs_error_vs_prediction"]["alice"].get<double>();
    CHECK(err >= 0.0);
    CHECK(err < 0.05); // first-order error at m = 39 is O(1/m)

    // byte-for-byte reproducibility
    AnalyzeOutcome again = analyze_report(spec, 40, opt);
    CHECK(out.report.dump(2) == again.report.dump(2));
}

TEST_CASE("analyze report: exceptional pairs keep the exact oracle") {
    ScopedDefaultCap cap;
    AnalyzeOutcome out =
        analyze_report(classic_game(2, "HT", "TH"), 50, AnalyzeOptions{});
    CHECK(out.exceptional);
    const Json& j = out.report;
    CHECK(j["exception"]["tag"] == "gap_degenerate");
    CHECK(j["exception"]["detail"] == "as given");
    CHECK(j["exception"]["degeneracy_certificate"]["b"] == 0);
    CHECK(j["exception"]["degeneracy_certificate"]["gamma"] ==
          Json::array({0, 1, 0, 1}));
    CHECK(j["exception"]["degeneracy_certificate"]["score_band_halfwidth"] == 3);
    CHECK_FALSE(j.contains("prediction"));
    // exact results are produced even though with_exact was false
    CHECK(j["exact"]["win"]["exact"] == "1/4");
    CHECK(j["exact"]["lose"]["exact"] == "1/4");
    CHECK(j["exact"]["tie"]["exact"] == "1/2");
}

TEST_CASE("analyze report: parity-locked pair carries a lattice certificate") {
    ScopedDefaultCap cap;
    AnalyzeOutcome out =
        analyze_report(classic_game(2, "HH", "TT"), 21, AnalyzeOptions{});
    CHECK(out.exceptional);
    const Json& j = out.report;
    CHECK(j["exception"]["tag"] == "complement_pair");
    CHECK(j["exception"]["lattice_certificate"]["verdict"] == "fails");
    CHECK(j["exception"]["lattice_certificate"]["N"] == 2);
}

TEST_CASE("analyze report: simulation block") {
    ScopedDefaultCap cap;
    AnalyzeOptions opt;
    opt.with_exact = true;
    opt.sim = SimulationConfig{2000, 5, 2};
    AnalyzeOutcome out = analyze_report(classic_game(2, "HH", "HT"), 30, opt);
    const Json& s = out.report["simulation"];
    CHECK(s["rng"] == "splitmix64");
    CHECK(s["seed"] == 5);
    CHECK(s["reps"] == 2000);
    CHECK(s["win_count"].get<long long>() + s["lose_count"].get<long long>() +
              s["tie_count"].get<long long>() ==
          2000);
    CHECK(s.contains("abs_error_vs_exact"));
    CHECK(out.report["provenance"]["seed"] == 5);
}

TEST_CASE("chain report: all sections on the bursty fixture") {
    ScopedDefaultCap cap;
    ChainSpec c = chain_from_json_text(
        testutil::read_file(testutil::data_path("e4.json")));
    ChainReportOptions opt;
    opt.cumulants = true;
    opt.em4 = true;
    opt.mfpt = true;
    opt.visits = std::make_pair(0, 2); // visits to a before first reaching c

    Json j = chain_report(c, opt);
    CHECK(j["kind"] == "chain");
    CHECK(j["inputs"]["size"] == 4);
    CHECK(j["inputs"]["score_kind"] == "state");
    CHECK(j["stationary"][0]["exact"] == "5/12");
    CHECK(j["stationary"][2]["exact"] == "1/12");

    CHECK(j["cumulants"]["mu"]["exact"] == "0");
    CHECK(j["cumulants"]["sigma2"]["exact"] == "5/6");
    CHECK(j["cumulants"]["kappa3"]["exact"] == "0");
    CHECK(j["cumulants"]["eigenvalue_route"]["sigma2"].get<double>() ==
          doctest::Approx(5.0 / 6.0).epsilon(1e-8));

    CHECK(j["joint_aperiodicity"]["verdict"] == "fails");
    CHECK(j["joint_aperiodicity"]["N"] == 2);
    CHECK(j["joint_aperiodicity"]["gamma"] == Json::array({0, 0, 1, 0}));

    CHECK(j["mean_first_passage"][0][1] == "12/5");
    CHECK(j["mean_first_passage"][2][3] == "1");
    CHECK(j["mean_first_passage"][1][1] == "0");

    CHECK(j["visits"]["A"] == 0);
    CHECK(j["visits"]["B"] == 2);
    CHECK(j["visits"]["expected_visits"]["exact"] == "11/2");
}

TEST_CASE("chain report: periodic chains get a verdict instead of a crash") {
    ScopedDefaultCap cap;
    ChainSpec c;
    c.states = {"u", "v"};
    c.P = RMat(2, 2);
    c.P(0, 1) = 1;
    c.P(1, 0) = 1;
    c.g = {1, -1};
    ChainReportOptions opt;
    opt.em4 = true;
    Json j = chain_report(c, opt);
    CHECK(j["joint_aperiodicity"]["verdict"] == "not_aperiodic");
    CHECK(j["joint_aperiodicity"]["period"] == 2);
}

TEST_CASE("chain report: edge scores use the edge machinery") {
    ScopedDefaultCap cap;
    ChainSpec c;
    c.states = {"u", "v"};
    c.P = RMat(2, 2, Rat(1, 2));
    c.g_edges[{0, 1}] = 1;
    c.g_edges[{1, 0}] = -1;
    ChainReportOptions opt;
    opt.cumulants = true;
    Json j = chain_report(c, opt);
    CHECK(j["inputs"]["score_kind"] == "edge");
    CHECK(j["cumulants"]["mu"]["exact"] == "0");
    CHECK_FALSE(j["cumulants"].contains("eigenvalue_route"));
}

TEST_CASE("scan CSV") {
    ScopedDefaultCap cap;
    SUBCASE("row and column inventory, thread independence") {
        ScanOptions opt;
        std::string csv1 = scan_csv(2, 2, 40, opt);
        opt.jobs = 3;
        std::string csv3 = scan_csv(2, 2, 40, opt);
        CHECK(csv1 == csv3); // byte-equal regardless of the thread split

        std::vector<std::string> lines = split_lines(csv1);
        REQUIRE((int)lines.size() == 7); // header + C(4,2) unordered pairs
        CHECK(lines[0] ==
              "A,B,theta_AA,theta_AB,theta_BA,theta_BB,sigma2,kappa3,exception,"
              "p_alice,p_bob,p_tie,p_alice_exact,p_bob_exact,p_tie_exact,exact_fair");
        for (const std::string& line : lines) CHECK(count_fields(line) == 16);

        // without the exact oracle those columns stay empty
        CHECK(lines[1].substr(lines[1].size() - 4) == ",,,,");
        // pairs are lexicographic; the first is (HH, HT)
        CHECK(lines[1].substr(0, 6) == "HH,HT,");
        // the degenerate pair is labeled, and its prediction cells are empty
        bool saw_gap = false;
        for (const std::string& line : lines)
            if (line.find("gap_degenerate") != std::string::npos) saw_gap = true;
        CHECK(saw_gap);
    }
    SUBCASE("exact columns appear when requested and certify fairness") {
        ScanOptions opt;
        opt.exact_upto = 64;
        std::string csv = scan_csv(2, 3, 30, opt);
        std::vector<std::string> lines = split_lines(csv);
        REQUIRE((int)lines.size() == 1 + 28); // C(8,2) pairs
        // every row now has the exact triple and a fairness verdict
        for (size_t i = 1; i < lines.size(); ++i) {
            CHECK(count_fields(lines[i]) == 16);
            std::string tail = lines[i].substr(lines[i].rfind(',') + 1);
            CHECK((tail == "true" || tail == "false"));
        }
        // (HHT, HTT) has equal self-overlaps: exactly fair
        bool found = false;
        for (const std::string& line : lines)
            if (line.substr(0, 8) == "HHT,HTT,") {
                CHECK(line.substr(line.size() - 5) == ",true");
                found = true;
            }
        CHECK(found);
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(scan_csv(1, 2, 40, ScanOptions{}), BadInput);
        CHECK_THROWS_AS(scan_csv(2, 0, 40, ScanOptions{}), BadInput);
        CHECK_THROWS_AS(scan_csv(2, 3, 2, ScanOptions{}), HorizonTooShort);
    }
}

TEST_CASE("golden reports stay stable") {
    ScopedDefaultCap cap;
    SUBCASE("analyze golden") {
        AnalyzeOptions opt;
        opt.with_exact = true;
        AnalyzeOutcome out = analyze_report(classic_game(2, "HH", "HT"), 40, opt);
        CHECK(out.report.dump(2) + "\n" ==
              testutil::read_file(testutil::data_path("golden_analyze.json")));
    }
    SUBCASE("chain golden") {
        ChainSpec c = chain_from_json_text(
            testutil::read_file(testutil::data_path("e4.json")));
        ChainReportOptions opt;
        opt.cumulants = true;
        opt.em4 = true;
        opt.mfpt = true;
        opt.visits = std::make_pair(0, 2);
        CHECK(chain_report(c, opt).dump(2) + "\n" ==
              testutil::read_file(testutil::data_path("golden_chain.json")));
    }
}
