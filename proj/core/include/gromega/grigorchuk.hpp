#pragma once

#include "gromega/simplex.hpp"
#include "gromega/words.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace gromega {

// Element of the group at a given level of the family defined by omega:
// level i lives in the group of the i-times shifted sequence.
struct GElement {
    OmegaSeq omega; // level-0 sequence
    std::uint32_t level = 0;
    GenWord word;   // kept reduced
};

GElement make_element(OmegaSeq omega, std::uint32_t level, GenWord word);

struct WreathSplitResult {
    GElement first;  // section at vertex 1, one level down
    GElement second; // section at vertex 2
    bool swapped;    // odd number of a's
};

// Decomposition g = <g1, g2> pi with the convention
// <u1,u2>s * <v1,v2>t = <u1 v_{s(1)}, u2 v_{s(2)}> st.
WreathSplitResult wreath_split(const GElement& g);

struct TrivialityResult {
    bool trivial;
    std::uint32_t depth; // deepest recursion level reached
};

// Recursive word problem: reduce; empty -> trivial; odd a-count ->
// nontrivial; otherwise recurse on both wreath sections.
TrivialityResult is_trivial(const GElement& g);
TrivialityResult is_trivial(const GenWord& w, const OmegaSeq& omega, std::uint32_t level = 0);

bool equal_elements(const GElement& g, const GElement& h);

// Word problem in the torsion-free cousin: normalize (free cancellation,
// <b,c,d> abelian); empty -> trivial; nonzero a-exponent or a nonempty
// <b,c,d>-word -> nontrivial; otherwise recurse on the two residue words.
TrivialityResult is_trivial_tilde(const TildeWord& w, const OmegaSeq& omega, std::uint32_t level = 0);

// Image of the group word under the natural quotient (drop exponents).
GenWord tilde_shadow(const TildeWord& w);

// Image of the finite vertex string v (over '1','2') under the tree action;
// length-preserving.
std::string apply_to_vertex(const GElement& g, std::string_view v);

// Permutation induced on the 2^depth vertices at the given depth; vertex
// bits: bit j = letter at depth j (0 = '1', 1 = '2').
std::vector<std::uint32_t> word_permutation(const GElement& g, int depth);

// Least depth <= max_depth at which some vertex moves; nullopt if none
// found (in particular for trivial elements).
std::optional<int> moved_vertex_depth(const GElement& g, int max_depth,
                                      std::uint64_t node_budget = 1'000'000);

// Shared caches for tree-action permutations and word-problem verdicts.
class ActionContext {
public:
    explicit ActionContext(OmegaSeq omega);
    const std::vector<std::uint32_t>& gen_perm(Gen g, std::uint32_t level, int depth);
    std::vector<std::uint32_t> word_perm(const GenWord& w, std::uint32_t level, int depth);
    std::vector<std::uint32_t> compose(const std::vector<std::uint32_t>& base, Gen g,
                                       std::uint32_t level, int depth);
    bool trivial(const GenWord& w, std::uint32_t level);
    const OmegaSeq& omega() const { return omega_; }

private:
    OmegaSeq omega_;
    std::map<std::tuple<int, std::uint32_t, int>, std::vector<std::uint32_t>> perms_;
    std::unordered_map<std::string, bool> verdicts_;
};

// Exact-rational Dijkstra over the weighted Cayley graph at one level.
// Elements are deduplicated by their depth-D tree permutation; a key match
// is always confirmed by the word problem, and a confirmed collision of
// distinct elements bumps D by 2 and rescans.
class GeodesicBall {
public:
    struct Item {
        Rat norm;
        GenWord word; // first (norm, word)-minimal representative settled
    };

    GeodesicBall(OmegaSeq omega, std::uint32_t level, const SimplexPoint& V,
                 std::uint64_t budget = 1'000'000, int initial_depth = 8);

    // All elements of norm <= limit in increasing (norm, word) order,
    // optionally truncated to max_items. Throws BudgetExceeded if more than
    // `budget` distinct elements settle.
    std::vector<Item> enumerate(const Rat& limit,
                                std::optional<std::uint64_t> max_items = std::nullopt);

    // Geodesic norm of the element represented by `word`.
    Rat norm_of(const GenWord& word);

    // Norms of several elements from a single expanding search.
    std::vector<Rat> norms_of(const std::vector<GenWord>& words);

    const MetricWeights& metric() const { return weights_; }
    int depth() const { return depth_; }

private:
    struct RunResult;
    RunResult run(std::optional<Rat> limit, std::optional<std::uint64_t> max_items,
                  const std::vector<GenWord>* targets);

    OmegaSeq omega_;
    std::uint32_t level_;
    SimplexPoint point_;
    MetricWeights weights_;
    std::uint64_t budget_;
    int depth_;
};

struct BallTable {
    Rat radius;
    std::vector<GeodesicBall::Item> entries; // sorted by (norm, word)
    std::uint64_t count() const { return entries.size(); }
};

BallTable ball(const OmegaSeq& omega, std::uint32_t level, const SimplexPoint& V,
               const Rat& radius, std::uint64_t budget = 1'000'000);

// CSV "norm,word" with CRLF line endings, rows sorted by (norm, word).
std::string ball_to_csv(const BallTable& table);

Rat element_norm(const GElement& g, const SimplexPoint& V, std::uint64_t budget = 1'000'000);

// Words over the two-letter blocks {ab, ac, ad}, stored as the block tails.
using BlockWord = std::vector<Gen>; // entries in {b, c, d}

BlockWord parse_block_word(std::string_view text); // "adabac" -> d,b,c
GenWord block_word_letters(const BlockWord& w);    // expand to generators
std::string block_word_string(const BlockWord& w);

// Blockwise substitution for one letter; counts transform by the transpose
// of the letter matrix.
BlockWord substitute_zeta(const BlockWord& w, Letter x);

std::array<Int, 3> block_counts(const BlockWord& w);

struct ZetaTower {
    Gen seed;         // minimal-weight tail letter at level k (ties: b < c < d)
    BlockWord blocks; // substituted word back at level 0
    GenWord word;
    Rat norm;         // exact word norm at V0
};

ZetaTower zeta_tower(const OmegaSeq& omega, std::uint32_t k, const SimplexPoint& V0);

} // namespace gromega
