#pragma once

#include "gromega/orbit.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gromega {

// The lamp group Z/m.
struct AbelianSpec {
    std::uint32_t modulus = 2;
};

// Element (f, g) of the permutational wreath product: a finitely supported
// function from the orbit of the basepoint into Z/m (zero values never
// stored) together with a group element acting on the orbit.
struct WreathElement {
    std::map<BoundaryPoint, std::uint32_t> support;
    GElement g;
};

WreathElement w_identity(OmegaSeq omega, std::uint32_t level = 0);

// (f,g)(f',g') = (p -> f(p) + f'(p.g), g g').
WreathElement w_multiply(const AbelianSpec& A, const WreathElement& x, const WreathElement& y);
WreathElement w_inverse(const AbelianSpec& A, const WreathElement& x);
bool w_equal(const WreathElement& x, const WreathElement& y);

// Canonical "p1=r1;p2=r2#word" string; sorts wreath elements.
std::string w_key(const WreathElement& x);

struct WGenerator {
    std::optional<Gen> gen;  // group letter, if any
    std::uint32_t residue;   // lamp value at the basepoint, 0 = none
    Rat weight;
    std::string name;
};

// Standard set: a,b,c,d with their metric weights plus one lamp generator
// per nonzero residue, each of weight ||a||. With `mixed`, the combined set
// {1,a,b,c,d} x Z/m (norm of s t is ||s||, of a pure lamp ||a||).
std::vector<WGenerator> w_generators(const OmegaSeq& omega, const AbelianSpec& A,
                                     const SimplexPoint& V, bool mixed = false);

struct WBallEntry {
    Rat norm;
    WreathElement elem;
};

struct WBallTable {
    Rat radius;
    std::vector<WBallEntry> entries; // sorted by (norm, key)
    std::uint64_t count() const { return entries.size(); }
};

// Exact Dijkstra ball in the wreath product; same deduplication scheme as
// the plain geodesic ball (tree permutation plus exact support).
WBallTable ball_W(const OmegaSeq& omega, const AbelianSpec& A, const SimplexPoint& V,
                  const Rat& radius, std::uint64_t budget = 1'000'000, bool mixed = false);

Rat w_element_norm(const WreathElement& x, const AbelianSpec& A, const SimplexPoint& V,
                   std::uint64_t budget = 1'000'000, bool mixed = false);

// Lower-bound witness family: a word realizing the maximal inverted orbit,
// decorated with every admissible lamp configuration on that orbit. All
// members have word norm <= 2R and are pairwise distinct.
std::vector<WreathElement> witness_set(const OmegaSeq& omega, const AbelianSpec& A,
                                       const SimplexPoint& V, const Rat& R,
                                       const OrbitSearchOptions& opt = {});

struct PsiSplitResult {
    WreathElement first;
    WreathElement second;
    bool swapped;
};

// Wreath counterpart of the group splitting: the support splits by first
// letter (the basepoint lies in the '2' component), the group part by the
// plain wreath recursion.
PsiSplitResult psi_split(const WreathElement& x);

} // namespace gromega
