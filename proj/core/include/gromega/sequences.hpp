#pragma once

#include "gromega/numeric.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gromega {

// The three letters 0 < 1 < 2; the order is used for all tie-breaking.
enum class Letter : std::uint8_t { l0 = 0, l1 = 1, l2 = 2 };

// Group generators a, b, c, d (all involutions).
enum class Gen : std::uint8_t { a = 0, b = 1, c = 2, d = 3 };

// Image of b, c, d under the homomorphism named by a letter.
enum class Section : std::uint8_t { one, a };

char to_char(Letter x);
Letter letter_from_char(char c); // throws ParseError
char to_char(Gen g);
Gen gen_from_char(char c); // throws ParseError

std::vector<Letter> parse_letter_word(std::string_view text);
std::string to_string(const std::vector<Letter>& word);

// Letter x kills exactly one of b, c, d (0 -> b, 1 -> c, 2 -> d) and sends
// the other two to a.
Section vanish(Letter x, Gen g);

struct SyllablePair {
    std::uint64_t i; // number of 012 repetitions, >= 1
    std::uint64_t j; // number of trailing 2s, >= 1
};

// An infinite sequence over {0,1,2}: explicit finite word, periodic word,
// syllable form (012)^{i1} 2^{j1} (012)^{i2} 2^{j2} ... (block list repeated
// periodically), or a programmatic rule. Immutable value type, cheap to copy;
// programmatic access is memoized behind an internal lock.
class OmegaSeq {
public:
    enum class Kind { finite, periodic, syllable, programmatic };

    OmegaSeq(); // periodic "012"

    static OmegaSeq explicit_word(std::vector<Letter> w);
    static OmegaSeq periodic_word(std::vector<Letter> w);
    static OmegaSeq syllable_form(std::vector<SyllablePair> blocks);
    static OmegaSeq programmatic(std::string name, std::function<Letter(std::uint64_t)> rule);
    // Built-in programmatic sequences: "sqrt", "geom", "doublegeom", "ackermann".
    static OmegaSeq preset(std::string_view name);

    // Letter at index i of the (shifted) sequence. Total for every i >= 0
    // except the explicit variant, which throws RangeError past its end.
    Letter at(std::uint64_t i) const;

    OmegaSeq shifted(std::uint64_t k) const;

    Kind kind() const;
    std::uint64_t offset() const;
    // Letters left before the end (explicit variant only).
    std::optional<std::uint64_t> remaining() const;

    // Mini-language form ("per:012", ...); exact for offset 0, explicit and
    // periodic fold the offset in, other shifted variants are annotated.
    std::string spec() const;

private:
    struct Impl;
    explicit OmegaSeq(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
    std::uint64_t offset_ = 0;
};

// Mini-language: per:<word> | exp:<word> | syll:i1,j1;i2,j2;... | prog:<name>
OmegaSeq parse_omega_spec(std::string_view text);

// Truncated Bernoulli distance: sum of 2^{-i} over i < horizon with
// differing letters; within 2^{1-horizon} of the full sum.
double bernoulli_distance(const OmegaSeq& w1, const OmegaSeq& w2, std::uint64_t horizon);

} // namespace gromega
