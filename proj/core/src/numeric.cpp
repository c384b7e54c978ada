#include "gromega/numeric.hpp"

#include "gromega/errors.hpp"

#include <cmath>

namespace gromega {

Rat parse_rational(std::string_view text) {
    if (text.empty()) throw ParseError("empty rational", 0);
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            Int num(std::string(text), 10);
            return Rat(num);
        }
        if (slash == 0 || slash + 1 == text.size())
            throw std::invalid_argument("bad fraction");
        Int num(std::string(text.substr(0, slash)), 10);
        Int den(std::string(text.substr(slash + 1)), 10);
        if (den == 0) throw ParseError("zero denominator", slash + 1);
        Rat r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("invalid rational '" + std::string(text) + "'", 0);
    }
}

std::string rat_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string int_string(const Int& n) { return n.get_str(); }

double to_double(const Rat& r) { return r.get_d(); }

double log_int(const Int& n) {
    signed long exp = 0;
    double d = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(d) + static_cast<double>(exp) * M_LN2;
}

double log_rat(const Rat& r) {
    return log_int(r.get_num()) - log_int(r.get_den());
}

} // namespace gromega
