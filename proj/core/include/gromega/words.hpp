#pragma once

#include "gromega/sequences.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gromega {

using GenWord = std::vector<Gen>;

GenWord parse_gen_word(std::string_view text); // "abac"; throws ParseError
std::string to_string(const GenWord& w);

// Product of two distinct elements of {b,c,d} in the four-group: bc = d etc.
Gen bcd_product(Gen x, Gen y);

// Fixed point of the rewriting a^2 -> 1, x^2 -> 1, xy -> z for
// {x,y,z} = {b,c,d}; the result alternates between a and {b,c,d}.
GenWord reduce(const GenWord& raw);

bool is_reduced(const GenWord& w);

// All generators are involutions, so inversion is reversal.
GenWord inverse_word(const GenWord& w);

GenWord concat_reduce(const GenWord& u, const GenWord& v);

// Letters with exponents over {a,b,c,d}: words in the torsion-free cousin
// groups where <b,c,d> is free abelian.
struct TildeLetter {
    Gen gen;
    int exp; // +1 or -1
    bool operator==(const TildeLetter&) const = default;
};
using TildeWord = std::vector<TildeLetter>;

// Lowercase = generator, uppercase = inverse.
TildeWord parse_tilde_word(std::string_view text);
std::string to_string(const TildeWord& w);

} // namespace gromega
