#include "gromega/words.hpp"

#include "gromega/errors.hpp"

namespace gromega {

GenWord parse_gen_word(std::string_view text) {
    GenWord w;
    w.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == ' ') continue;
        switch (c) {
            case 'a': w.push_back(Gen::a); break;
            case 'b': w.push_back(Gen::b); break;
            case 'c': w.push_back(Gen::c); break;
            case 'd': w.push_back(Gen::d); break;
            default: throw ParseError(std::string("invalid generator '") + c + "'", i);
        }
    }
    return w;
}

std::string to_string(const GenWord& w) {
    std::string s;
    s.reserve(w.size());
    for (Gen g : w) s.push_back(to_char(g));
    return s;
}

Gen bcd_product(Gen x, Gen y) {
    // {b,c,d} with bc=d, cd=b, bd=c.
    int xi = static_cast<int>(x), yi = static_cast<int>(y);
    return static_cast<Gen>(6 - xi - yi);
}

GenWord reduce(const GenWord& raw) {
    // The stack stays alternating throughout, so every step is O(1):
    // cancelling or merging two four-group letters exposes an 'a' (or
    // nothing) underneath, never another mergeable pair.
    GenWord out;
    out.reserve(raw.size());
    for (Gen g : raw) {
        if (out.empty()) {
            out.push_back(g);
            continue;
        }
        Gen top = out.back();
        if (g == Gen::a) {
            if (top == Gen::a)
                out.pop_back(); // a a -> 1
            else
                out.push_back(g);
        } else if (top == Gen::a) {
            out.push_back(g);
        } else if (top == g) {
            out.pop_back(); // x x -> 1
        } else {
            out.back() = bcd_product(top, g); // x y -> z
        }
    }
    return out;
}

bool is_reduced(const GenWord& w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
        bool pa = w[i - 1] == Gen::a, ca = w[i] == Gen::a;
        if (pa == ca) return false;
    }
    return true;
}

GenWord inverse_word(const GenWord& w) { return GenWord(w.rbegin(), w.rend()); }

GenWord concat_reduce(const GenWord& u, const GenWord& v) {
    GenWord w = u;
    w.insert(w.end(), v.begin(), v.end());
    return reduce(w);
}

TildeWord parse_tilde_word(std::string_view text) {
    TildeWord w;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == ' ') continue;
        int exp = 1;
        if (c >= 'A' && c <= 'D') {
            exp = -1;
            c = static_cast<char>(c - 'A' + 'a');
        }
        if (c < 'a' || c > 'd')
            throw ParseError(std::string("invalid generator '") + text[i] + "'", i);
        w.push_back({static_cast<Gen>(c - 'a'), exp});
    }
    return w;
}

std::string to_string(const TildeWord& w) {
    std::string s;
    s.reserve(w.size());
    for (const TildeLetter& l : w) {
        char c = to_char(l.gen);
        s.push_back(l.exp > 0 ? c : static_cast<char>(c - 'a' + 'A'));
    }
    return s;
}

} // namespace gromega
