#include "edgeword/rational.hpp"
#include "edgeword/errors.hpp"

#include <cctype>

namespace edgeword {

namespace {

bool all_digits(const std::string& s, size_t from, size_t to) {
    if (from >= to) return false;
    for (size_t i = from; i < to; ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

} // namespace

Rat rat_from_string(const std::string& text) {
    if (text.empty()) throw BadInput("empty rational literal");
    std::string s = text;
    size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;

    size_t slash = s.find('/');
    size_t dot = s.find('.');
    if (slash != std::string::npos && dot != std::string::npos)
        throw BadInput("rational literal mixes '/' and '.': " + text);

    if (slash != std::string::npos) {
        // "p/q" with integer p, q
        if (!all_digits(s, start, slash) || !all_digits(s, slash + 1, s.size()))
            throw BadInput("bad rational literal: " + text);
        Rat r;
        if (r.set_str(s, 10) != 0) throw BadInput("bad rational literal: " + text);
        if (r.get_den() == 0) throw BadInput("zero denominator: " + text);
        r.canonicalize();
        return r;
    }

    if (dot != std::string::npos) {
        // plain decimal like "0.45" -> 45/100 canonicalized
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac_len = s.size() - dot - 1;
        if (!all_digits(digits, start, digits.size()))
            throw BadInput("bad decimal literal: " + text);
        Int num(digits, 10);
        Int den = 1;
        for (size_t i = 0; i < frac_len; ++i) den *= 10;
        Rat r(num, den);
        r.canonicalize();
        return r;
    }

    if (!all_digits(s, start, s.size()))
        throw BadInput("bad integer literal: " + text);
    Rat r;
    if (r.set_str(s, 10) != 0) throw BadInput("bad integer literal: " + text);
    r.canonicalize();
    return r;
}

std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double rat_to_double(const Rat& r) { return r.get_d(); }

Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

Rat rat_pow(const Rat& base, unsigned long e) {
    Rat out = 1;
    Rat b = base;
    while (e > 0) {
        if (e & 1) out *= b;
        b *= b;
        e >>= 1;
    }
    return out;
}

} // namespace edgeword
