#include "edgeword/exact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace edgeword {

namespace {

// Precomputed per-window score increments. The window ending at each letter
// position >= l is an l-gram; its score is the summed weight of the spec
// words that are suffixes of it.
struct StepTable {
    int q = 2;
    int l = 1;
    long long tail_states = 1;  // q^{l-1}
    long long full_states = 1;  // q^l
    std::vector<long long> score;  // indexed by encoded l-gram
    long long min_d = 0, max_d = 0;
};

StepTable make_step_table(const GameSpec& spec) {
    validate(spec);
    StepTable t;
    t.q = spec.q;
    t.l = spec.ell();
    for (int i = 0; i < t.l; ++i) {
        t.full_states *= t.q;
        if (t.full_states > kStateCap)
            throw AlphabetTooLarge("q^l = " + std::to_string(spec.q) + "^" +
                                   std::to_string(t.l) + " exceeds the state cap " +
                                   std::to_string(kStateCap));
    }
    t.tail_states = t.full_states / t.q;

    struct Probe {
        long long mod, enc, weight;
    };
    std::vector<Probe> probes;
    for (const auto& ww : spec.words) {
        Probe p{1, 0, ww.weight};
        for (int v : ww.word.sym) {
            p.mod *= t.q;
            p.enc = p.enc * t.q + v;
        }
        probes.push_back(p);
    }

    t.score.assign(t.full_states, 0);
    for (long long u = 0; u < t.full_states; ++u)
        for (const Probe& p : probes)
            if (u % p.mod == p.enc) t.score[u] += p.weight;
    t.min_d = *std::min_element(t.score.begin(), t.score.end());
    t.max_d = *std::max_element(t.score.begin(), t.score.end());
    return t;
}

// Index bounds valid at every intermediate stage: after any number of
// windows the running score sits in [lo, hi].
void score_bounds(const StepTable& t, long long windows, long long& lo, long long& hi) {
    lo = windows * std::min(t.min_d, 0LL);
    hi = windows * std::max(t.max_d, 0LL);
}

void check_cap(double cells, long long n, int q, unsigned long long cap,
               const char* what) {
    // big-int width: counts reach q^n, i.e. about n log2(q) bits, plus the
    // mpz_class header and limb slack
    double big_bytes = 32.0 + (double)n * std::log2((double)q) / 8.0;
    double est = 2.0 * cells * big_bytes;
    if (est > (double)cap)
        throw ResourceCap(std::string(what) + ": estimated working set " +
                              std::to_string((unsigned long long)est) + " bytes exceeds cap " +
                              std::to_string(cap),
                          (unsigned long long)est, cap);
}

ScoreDistribution point_mass(long long n, const Int& total) {
    ScoreDistribution d;
    d.n = n;
    d.offset = 0;
    d.counts = {total};
    d.total = total;
    return d;
}

Int int_pow(long long base, long long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)base, (unsigned long)e);
    return r;
}

// Collapse a (state x score-index) table to a trimmed ScoreDistribution.
ScoreDistribution collapse(const std::vector<Int>& table, long long states,
                           long long width, long long lo, long long n, Int total) {
    std::vector<Int> sums((size_t)width);
    for (long long s = 0; s < states; ++s)
        for (long long k = 0; k < width; ++k)
            sums[(size_t)k] += table[(size_t)(s * width + k)];

    long long first = 0, last = width - 1;
    while (first < last && sums[(size_t)first] == 0) ++first;
    while (last > first && sums[(size_t)last] == 0) --last;

    ScoreDistribution d;
    d.n = n;
    d.offset = lo + first;
    d.counts.assign(sums.begin() + first, sums.begin() + last + 1);
    d.total = std::move(total);

    Int mass = 0;
    for (const Int& c : d.counts) mass += c;
    if (mass != d.total) throw Error("route-count mass mismatch (bug)");
    return d;
}

// Shared DP engine: runs `windows` steps over the tail table starting from
// the given initial cell assignment.
ScoreDistribution run_dp(const StepTable& t, long long n, long long windows,
                         std::vector<Int> cur, long long lo, long long width,
                         Int total) {
    std::vector<Int> next((size_t)(t.tail_states * width), Int(0));
    for (long long step = 0; step < windows; ++step) {
        for (auto& x : next) x = 0;
        for (long long tail = 0; tail < t.tail_states; ++tail) {
            const Int* row = &cur[(size_t)(tail * width)];
            for (long long k = 0; k < width; ++k) {
                if (row[k] == 0) continue;
                for (int c = 0; c < t.q; ++c) {
                    long long full = tail * t.q + c;
                    long long nt = full % t.tail_states;
                    long long nk = k + t.score[(size_t)full];
                    next[(size_t)(nt * width + nk)] += row[k];
                }
            }
        }
        std::swap(cur, next);
    }
    return collapse(cur, t.tail_states, width, lo, n, std::move(total));
}

} // namespace

const Int& ScoreDistribution::count_at(long long s) const {
    static const Int zero(0);
    if (s < offset || s > max_score()) return zero;
    return counts[(size_t)(s - offset)];
}

Rat ScoreDistribution::prob_at(long long s) const {
    Rat r(count_at(s), total);
    r.canonicalize();
    return r;
}

ExactTriple outcome_probabilities(const ScoreDistribution& dist) {
    ExactTriple t;
    t.win_count = 0;
    t.lose_count = 0;
    t.tie_count = dist.count_at(0);
    for (long long s = dist.min_score(); s <= dist.max_score(); ++s) {
        if (s > 0) t.win_count += dist.count_at(s);
        if (s < 0) t.lose_count += dist.count_at(s);
    }
    auto frac = [&](const Int& c) {
        Rat r(c, dist.total);
        r.canonicalize();
        return r;
    };
    t.win = frac(t.win_count);
    t.lose = frac(t.lose_count);
    t.tie = frac(t.tie_count);
    if (t.win + t.lose + t.tie != 1) throw Error("outcome split mass mismatch (bug)");
    return t;
}

ExactMoments moments(const ScoreDistribution& dist) {
    Int S1 = 0, S2 = 0, S3 = 0;
    for (long long s = dist.min_score(); s <= dist.max_score(); ++s) {
        const Int& c = dist.count_at(s);
        if (c == 0) continue;
        const long sl = (long)s;  // support is tiny relative to long
        S1 += sl * c;
        S2 += (sl * sl) * c;
        S3 += (sl * sl * sl) * c;
    }
    auto frac = [&](const Int& num) {
        Rat r(num, dist.total);
        r.canonicalize();
        return r;
    };
    ExactMoments m;
    m.mean = frac(S1);
    Rat e2 = frac(S2), e3 = frac(S3);
    m.variance = e2 - m.mean * m.mean;
    m.third_central = e3 - 3 * e2 * m.mean + 2 * m.mean * m.mean * m.mean;
    return m;
}

unsigned long long default_mem_cap() {
    if (const char* env = std::getenv("EDGEWORD_MEM_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 4ull << 30;
}

ScoreDistribution exact_distribution(const GameSpec& spec, long long n,
                                     unsigned long long mem_cap) {
    if (n < 1) throw BadInput("need at least one letter");
    StepTable t = make_step_table(spec);
    if (n < t.l) return point_mass(n, int_pow(t.q, n));

    const long long windows = n - t.l + 1;
    long long lo, hi;
    score_bounds(t, windows, lo, hi);
    const long long width = hi - lo + 1;
    check_cap((double)t.tail_states * (double)width, n, t.q, mem_cap, "exact DP");

    std::vector<Int> cur((size_t)(t.tail_states * width), Int(0));
    for (long long tail = 0; tail < t.tail_states; ++tail)
        cur[(size_t)(tail * width + (0 - lo))] = 1;  // the q^{l-1} possible prefixes
    return run_dp(t, n, windows, std::move(cur), lo, width, int_pow(t.q, n));
}

ScoreDistribution exact_distribution_conditional(const GameSpec& spec,
                                                 const Word& first_window, long long n,
                                                 unsigned long long mem_cap) {
    StepTable t = make_step_table(spec);
    if (first_window.size() != t.l)
        throw LengthMismatch("first window must have the chain order length");
    if (n < t.l) throw HorizonTooShort("conditional law needs n >= l letters");

    long long enc = 0;
    for (int v : first_window.sym) {
        if (v < 0 || v >= t.q) throw BadInput("first-window symbol out of range");
        enc = enc * t.q + v;
    }

    const long long windows = n - t.l + 1;
    long long lo, hi;
    score_bounds(t, windows, lo, hi);
    const long long width = hi - lo + 1;
    check_cap((double)t.tail_states * (double)width, n, t.q, mem_cap,
              "conditional exact DP");

    // the first window is fixed and already scored; the remaining windows
    // extend it one letter at a time
    std::vector<Int> cur((size_t)(t.tail_states * width), Int(0));
    cur[(size_t)((enc % t.tail_states) * width + (t.score[(size_t)enc] - lo))] = 1;
    return run_dp(t, n, windows - 1, std::move(cur), lo, width,
                  int_pow(t.q, n - t.l));
}

ScoreDistribution transfer_distribution(const GameSpec& spec, long long n,
                                        unsigned long long mem_cap) {
    if (n < 1) throw BadInput("need at least one letter");
    StepTable t = make_step_table(spec);
    if (n < t.l) return point_mass(n, int_pow(t.q, n));

    const long long windows = n - t.l + 1;
    long long lo, hi;
    score_bounds(t, windows, lo, hi);
    const long long width = hi - lo + 1;
    check_cap((double)t.full_states * (double)width, n, t.q, mem_cap,
              "transfer polynomials");

    // one Laurent polynomial (dense coefficient row) per l-gram state;
    // state U starts at z^{g(U)}
    std::vector<Int> cur((size_t)(t.full_states * width), Int(0));
    for (long long u = 0; u < t.full_states; ++u)
        cur[(size_t)(u * width + (t.score[(size_t)u] - lo))] = 1;

    std::vector<Int> next(cur.size(), Int(0));
    for (long long step = 1; step < windows; ++step) {
        for (auto& x : next) x = 0;
        for (long long v = 0; v < t.full_states; ++v) {
            // predecessors of V share their tail with V's head
            long long head = v / t.q;
            long long d = t.score[(size_t)v];
            Int* out = &next[(size_t)(v * width)];
            for (int c = 0; c < t.q; ++c) {
                const Int* in = &cur[(size_t)((head + (long long)c * t.tail_states) * width)];
                for (long long k = 0; k < width; ++k) {
                    if (in[k] == 0) continue;
                    out[k + d] += in[k];
                }
            }
        }
        std::swap(cur, next);
    }
    return collapse(cur, t.full_states, width, lo, n, int_pow(t.q, n));
}

ExactMoments exact_moments(const GameSpec& spec, long long n) {
    if (n < 1) throw BadInput("need at least one letter");
    StepTable t = make_step_table(spec);

    ExactMoments out;
    out.mean = out.variance = out.third_central = 0;
    if (n < t.l) return out;

    const long long windows = n - t.l + 1;
    // per tail state: route count and power sums of the running score
    std::vector<Int> cnt((size_t)t.tail_states, Int(1));
    std::vector<Int> s1((size_t)t.tail_states, Int(0));
    std::vector<Int> s2 = s1, s3 = s1;
    std::vector<Int> ncnt = s1, ns1 = s1, ns2 = s1, ns3 = s1;

    for (long long step = 0; step < windows; ++step) {
        for (long long i = 0; i < t.tail_states; ++i) {
            ncnt[(size_t)i] = 0;
            ns1[(size_t)i] = 0;
            ns2[(size_t)i] = 0;
            ns3[(size_t)i] = 0;
        }
        for (long long tail = 0; tail < t.tail_states; ++tail) {
            if (cnt[(size_t)tail] == 0) continue;
            for (int c = 0; c < t.q; ++c) {
                long long full = tail * t.q + c;
                size_t nt = (size_t)(full % t.tail_states);
                const long d = (long)t.score[(size_t)full];  // per-window score, tiny
                const Int &c0 = cnt[(size_t)tail], &a1 = s1[(size_t)tail],
                          &a2 = s2[(size_t)tail], &a3 = s3[(size_t)tail];
                ncnt[nt] += c0;
                ns1[nt] += a1 + d * c0;
                ns2[nt] += a2 + 2 * d * a1 + d * d * c0;
                ns3[nt] += a3 + 3 * d * a2 + 3 * d * d * a1 + d * d * d * c0;
            }
        }
        cnt.swap(ncnt);
        s1.swap(ns1);
        s2.swap(ns2);
        s3.swap(ns3);
    }

    Int T1 = 0, T2 = 0, T3 = 0, R = 0;
    for (long long i = 0; i < t.tail_states; ++i) {
        R += cnt[(size_t)i];
        T1 += s1[(size_t)i];
        T2 += s2[(size_t)i];
        T3 += s3[(size_t)i];
    }
    if (R != int_pow(t.q, n)) throw Error("route-count mass mismatch (bug)");

    auto frac = [&](const Int& num) {
        Rat r(num, R);
        r.canonicalize();
        return r;
    };
    Rat e1 = frac(T1), e2 = frac(T2), e3 = frac(T3);
    out.mean = e1;
    out.variance = e2 - e1 * e1;
    out.third_central = e3 - 3 * e2 * e1 + 2 * e1 * e1 * e1;
    return out;
}

std::string distribution_to_csv(const ScoreDistribution& dist) {
    std::string out = "score,count\n";
    for (long long s = dist.min_score(); s <= dist.max_score(); ++s) {
        const Int& c = dist.count_at(s);
        if (c == 0) continue;
        out += std::to_string(s);
        out += ',';
        out += c.get_str();
        out += '\n';
    }
    return out;
}

std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
    return splitmix64_mix(state += 0x9E3779B97F4A7C15ull);
}

SplitMix64 stream_for_rep(std::uint64_t seed, long long rep) {
    return SplitMix64{splitmix64_mix(seed ^ (0x9E3779B97F4A7C15ull * (std::uint64_t)(rep + 1)))};
}

SimulationResult simulate(const GameSpec& spec, long long n,
                          const SimulationConfig& config) {
    validate(spec);
    if (config.reps < 1) throw BadInput("need at least one repetition");
    if (n < 1) throw BadInput("need at least one letter");
    const int q = spec.q;
    const int l = spec.ell();
    if ((double)l * std::log2((double)q) > 62)
        throw AlphabetTooLarge("window does not fit in 64 bits");

    unsigned long long qpow = 1;
    for (int i = 0; i < l; ++i) qpow *= (unsigned long long)q;

    struct Probe {
        unsigned long long mod, enc;
        long long weight;
    };
    std::vector<Probe> probes;
    for (const auto& ww : spec.words) {
        Probe p{1, 0, ww.weight};
        for (int v : ww.word.sym) {
            p.mod *= (unsigned long long)q;
            p.enc = p.enc * (unsigned long long)q + (unsigned long long)v;
        }
        probes.push_back(p);
    }

    // rejection bound for unbiased letters
    const unsigned long long reject_from =
        ~0ull - (unsigned long long)((~0ull % (unsigned long long)q + 1) % (unsigned long long)q);

    auto run_range = [&](long long first, long long last, long long tally[3]) {
        for (long long rep = first; rep < last; ++rep) {
            SplitMix64 gen = stream_for_rep(config.seed, rep);
            unsigned long long window = 0;
            long long score = 0;
            for (long long pos = 1; pos <= n; ++pos) {
                unsigned long long u;
                do {
                    u = gen.next();
                } while (u > reject_from);
                window = (window * (unsigned long long)q + u % (unsigned long long)q) % qpow;
                if (pos < l) continue;
                for (const Probe& p : probes)
                    if (window % p.mod == p.enc) score += p.weight;
            }
            ++tally[score > 0 ? 0 : score < 0 ? 1 : 2];
        }
    };

    int jobs = std::max(1, config.jobs);
    if ((long long)jobs > config.reps) jobs = (int)config.reps;
    std::vector<std::array<long long, 3>> tallies((size_t)jobs, {0, 0, 0});
    if (jobs == 1) {
        run_range(0, config.reps, tallies[0].data());
    } else {
        std::vector<std::thread> pool;
        long long chunk = (config.reps + jobs - 1) / jobs;
        for (int j = 0; j < jobs; ++j) {
            long long first = (long long)j * chunk;
            long long last = std::min(config.reps, first + chunk);
            pool.emplace_back([&, j, first, last] { run_range(first, last, tallies[(size_t)j].data()); });
        }
        for (auto& th : pool) th.join();
    }

    long long w = 0, lz = 0, tz = 0;
    for (const auto& tl : tallies) {
        w += tl[0];
        lz += tl[1];
        tz += tl[2];
    }

    SimulationResult r;
    r.reps = config.reps;
    r.seed = config.seed;
    r.rng = "splitmix64";
    r.win_count = w;
    r.lose_count = lz;
    r.tie_count = tz;
    const double R = (double)config.reps;
    r.p_win = (double)w / R;
    r.p_lose = (double)lz / R;
    r.p_tie = (double)tz / R;
    r.se_win = std::sqrt(r.p_win * (1.0 - r.p_win) / R);
    r.se_lose = std::sqrt(r.p_lose * (1.0 - r.p_lose) / R);
    r.se_tie = std::sqrt(r.p_tie * (1.0 - r.p_tie) / R);
    return r;
}

} // namespace edgeword
