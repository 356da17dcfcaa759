#include "edgeword/words.hpp"

#include <algorithm>
#include <cmath>

namespace edgeword {

namespace {

int symbol_value(char c, int q) {
    if (q == 2) {
        if (c == 'H' || c == 'h' || c == '0') return 0;
        if (c == 'T' || c == 't' || c == '1') return 1;
        throw BadInput(std::string("expected H/T, got '") + c + "'");
    }
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'z') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'Z') v = c - 'A' + 10;
    else throw BadInput(std::string("bad symbol '") + c + "'");
    return v;
}

char symbol_char(int v, int q) {
    if (q == 2) return v == 0 ? 'H' : 'T';
    return v < 10 ? char('0' + v) : char('a' + v - 10);
}

} // namespace

Word parse_word(const std::string& text, int q) {
    if (text.empty()) throw BadInput("empty word");
    Word w;
    for (char c : text) {
        int v = symbol_value(c, q);
        if (v >= q)
            throw BadInput(std::string("symbol '") + c + "' out of range for alphabet size " +
                           std::to_string(q));
        w.sym.push_back(v);
    }
    return w;
}

std::string word_to_string(const Word& w, int q) {
    std::string s;
    for (int v : w.sym) s += symbol_char(v, q);
    return s;
}

int GameSpec::ell() const {
    int l = 0;
    for (const auto& ww : words) l = std::max(l, ww.word.size());
    return l;
}

bool GameSpec::classic() const {
    return words.size() == 2 && words[0].word.size() == words[1].word.size() &&
           words[0].word != words[1].word && words[0].weight == 1 &&
           words[1].weight == -1;
}

GameSpec classic_game(int q, const std::string& a, const std::string& b) {
    GameSpec spec;
    spec.q = q;
    spec.words.push_back({parse_word(a, q), +1});
    spec.words.push_back({parse_word(b, q), -1});
    validate(spec);
    if (!spec.classic())
        throw NotClassic("the two words must be distinct and of equal length");
    return spec;
}

void validate(const GameSpec& spec) {
    if (spec.q < 2 || spec.q > 36)
        throw BadInput("alphabet size must be in [2, 36]");
    if (spec.words.empty()) throw BadInput("no words given");
    for (const auto& ww : spec.words) {
        if (ww.word.size() < 1) throw BadInput("empty word");
        for (int v : ww.word.sym)
            if (v < 0 || v >= spec.q) throw BadInput("word symbol out of range");
    }
}

OverlapData overlap(const Word& U, const Word& V, int q) {
    if (U.size() != V.size()) throw LengthMismatch("overlap needs equal-length words");
    const int l = U.size();
    OverlapData out;
    out.theta = 0;
    for (int k = 1; k <= l - 1; ++k) {
        bool match = true;
        for (int t = 0; t < k; ++t)
            if (U.sym[l - k + t] != V.sym[t]) { match = false; break; }
        if (match) {
            out.Theta.insert(k);
            out.theta += Rat(1) / rat_pow(Rat(q), (unsigned long)(l - k));
        }
    }
    return out;
}

GameConstants game_constants(const GameSpec& spec) {
    if (!spec.classic())
        throw NotClassic("need exactly two distinct equal-length words with weights +1/-1");
    const Word& A = spec.words[0].word;
    const Word& B = spec.words[1].word;
    const int q = spec.q, l = A.size();

    GameConstants c;
    c.theta_AA = overlap(A, A, q).theta;
    c.theta_AB = overlap(A, B, q).theta;
    c.theta_BA = overlap(B, A, q).theta;
    c.theta_BB = overlap(B, B, q).theta;
    Rat qml = Rat(1) / rat_pow(Rat(q), (unsigned long)l);
    c.sigma2 = 2 * qml * (1 + c.theta_AA - c.theta_AB - c.theta_BA + c.theta_BB);
    c.kappa3 = 3 * c.sigma2 * (c.theta_AA - c.theta_BB);
    return c;
}

ChainSpec build_chain(const GameSpec& spec) {
    validate(spec);
    const int q = spec.q, l = spec.ell();

    long long states = 1;
    for (int i = 0; i < l; ++i) {
        states *= q;
        if (states > kStateCap)
            throw AlphabetTooLarge("q^l = " + std::to_string(q) + "^" + std::to_string(l) +
                                   " exceeds the state cap " + std::to_string(kStateCap));
    }

    long long tail_states = states / q; // q^{l-1}

    ChainSpec chain;
    chain.P = RMat((int)states, (int)states);
    Rat inv_q = Rat(1, q);
    for (long long u = 0; u < states; ++u) {
        // tail(u) == head(v)  <=>  v in [ (u mod q^{l-1}) * q, ... + q )
        long long base = (u % tail_states) * q;
        for (int c = 0; c < q; ++c) chain.P((int)u, (int)(base + c)) = inv_q;
    }

    // state labels and scores: state value encodes the word most-significant
    // letter first, so "ends with w" is a mod test
    chain.g.assign(states, 0);
    for (long long u = 0; u < states; ++u) {
        Word w;
        long long x = u;
        w.sym.assign(l, 0);
        for (int i = l - 1; i >= 0; --i) {
            w.sym[i] = int(x % q);
            x /= q;
        }
        chain.states.push_back(word_to_string(w, q));
        long long score = 0;
        for (const auto& ww : spec.words) {
            long long wl = ww.word.size();
            long long enc = 0;
            for (int v : ww.word.sym) enc = enc * q + v;
            long long mod = 1;
            for (int i = 0; i < wl; ++i) mod *= q;
            if (u % mod == enc) score += ww.weight;
        }
        chain.g[u] = score;
    }
    return chain;
}

const char* tag_name(ExceptionTag tag) {
    switch (tag) {
        case ExceptionTag::none: return "none";
        case ExceptionTag::gap_degenerate: return "gap_degenerate";
        case ExceptionTag::single_letter: return "single_letter";
        case ExceptionTag::complement_pair: return "complement_pair";
    }
    return "none";
}

ExceptionClass classify_exceptions(const GameSpec& spec) {
    if (!spec.classic())
        throw NotClassic("exception classes are defined for the classic two-word game");
    ExceptionClass out;
    if (spec.q != 2) return out; // q >= 3 is never exceptional

    const Word& A = spec.words[0].word;
    const Word& B = spec.words[1].word;
    const int l = A.size();

    auto rep = [&](int x, int y, int count_x_then_y) {
        // x followed by count-1 copies of y, or the reverse arrangement
        Word w;
        if (count_x_then_y) {
            w.sym.push_back(x);
            for (int i = 0; i < l - 1; ++i) w.sym.push_back(y);
        } else {
            for (int i = 0; i < l - 1; ++i) w.sym.push_back(y);
            w.sym.push_back(x);
        }
        return w;
    };

    if (l == 1) {
        // distinct binary letters: this is the pure-parity game
        out.tag = ExceptionTag::single_letter;
        out.detail = (A.sym[0] == 0) ? "as given" : "players swapped";
        return out;
    }

    for (int x = 0; x <= 1; ++x) {
        int y = 1 - x;
        Word p1 = rep(x, y, 1); // x y^{l-1}
        Word p2 = rep(x, y, 0); // y^{l-1} x
        if (A == p1 && B == p2) {
            out.tag = ExceptionTag::gap_degenerate;
            out.detail = x == 0 ? "as given" : "letters swapped";
            return out;
        }
        if (A == p2 && B == p1) {
            out.tag = ExceptionTag::gap_degenerate;
            out.detail = x == 0 ? "players swapped" : "players and letters swapped";
            return out;
        }
    }

    if (l == 2) {
        Word hh{{0, 0}}, tt{{1, 1}};
        if (A == hh && B == tt) {
            out.tag = ExceptionTag::complement_pair;
            out.detail = "as given";
            return out;
        }
        if (A == tt && B == hh) {
            out.tag = ExceptionTag::complement_pair;
            out.detail = "players swapped";
            return out;
        }
    }
    return out;
}

GamePrediction predict(const GameSpec& spec, long long n) {
    GameConstants c = game_constants(spec);
    ExceptionClass cls = classify_exceptions(spec);
    if (cls.tag != ExceptionTag::none)
        throw ExceptionalPair("exceptional pair (" + std::string(tag_name(cls.tag)) +
                                  ", " + cls.detail + ")",
                              tag_name(cls.tag));
    const int l = spec.words[0].word.size();
    if (n < l)
        throw HorizonTooShort("need at least l = " + std::to_string(l) + " letters");
    const long long m = n - l + 1;

    GamePrediction pred;
    pred.n_letters = n;
    pred.horizon = m;
    pred.constants = c;
    pred.coef_alice = (c.theta_BB - c.theta_AA - 1) / 2;
    pred.coef_bob = (c.theta_AA - c.theta_BB - 1) / 2;
    pred.coef_tie = 1;

    EdgeworthInput in{m, 0.0, rat_to_double(c.sigma2), rat_to_double(c.kappa3), 0.0};
    OutcomeTriple t = zero_mean_triple(in);
    pred.p_alice = t.p_above; // Alice's word carries weight +1
    pred.p_bob = t.p_below;
    pred.p_tie = t.p_zero;
    pred.asymptotic_ok = t.asymptotic_ok;

    // the closed form must agree with the generic Edgeworth evaluation
    if (!t.clamped) {
        double denom = std::sqrt(2.0 * M_PI * rat_to_double(c.sigma2) * (double)m);
        double cf_alice = 0.5 + rat_to_double(pred.coef_alice) / denom;
        double cf_bob = 0.5 + rat_to_double(pred.coef_bob) / denom;
        double cf_tie = rat_to_double(pred.coef_tie) / denom;
        if (std::fabs(pred.p_alice - cf_alice) > 1e-12 ||
            std::fabs(pred.p_bob - cf_bob) > 1e-12 ||
            std::fabs(pred.p_tie - cf_tie) > 1e-12)
            throw Error("closed form and Edgeworth evaluation disagree (bug)");
    }
    return pred;
}

MultiwordReport multiword_analysis(const GameSpec& spec, long long n) {
    validate(spec);
    const int l = spec.ell();
    if (n < l)
        throw HorizonTooShort("need at least l = " + std::to_string(l) + " letters");

    ChainSpec chain = build_chain(spec);
    MultiwordReport rep;
    rep.n_letters = n;
    rep.horizon = n - l + 1;
    rep.em4 = check_em4(chain);
    rep.asymptotic_ok = rep.horizon >= 16;

    if (rep.em4.verdict == "holds") {
        CumulantTriple cum = cumulants_state_score(chain);
        EdgeworthInput in{rep.horizon, rat_to_double(cum.mu), rat_to_double(cum.sigma2),
                          rat_to_double(cum.kappa3), 0.0};
        rep.split = threshold_triple(in, 0.0);
        rep.cumulants = std::move(cum);
    }
    return rep;
}

} // namespace edgeword
