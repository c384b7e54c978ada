#pragma once

#include "gromega/grigorchuk.hpp"

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace gromega {

// Point of the orbit of the all-2 ray: a finite prefix (over '1','2') with
// no trailing '2', standing for prefix followed by 2s forever. The empty
// prefix is the basepoint itself.
class BoundaryPoint {
public:
    BoundaryPoint() = default;
    explicit BoundaryPoint(std::string prefix); // normalizes
    static BoundaryPoint rho() { return BoundaryPoint(); }

    const std::string& prefix() const { return prefix_; }
    bool is_rho() const { return prefix_.empty(); }

    auto operator<=>(const BoundaryPoint& o) const { return prefix_ <=> o.prefix_; }
    bool operator==(const BoundaryPoint& o) const = default;

private:
    std::string prefix_;
};

// Right action p . g, computing only finitely many letters; max_depth, when
// given, accumulates the deepest letter index touched.
BoundaryPoint act_point(const BoundaryPoint& p, Gen g, const OmegaSeq& omega,
                        std::uint32_t level, std::size_t* max_depth = nullptr);
BoundaryPoint act_point(const BoundaryPoint& p, const GElement& g,
                        std::size_t* max_depth = nullptr);

struct InvertedOrbit {
    std::set<BoundaryPoint> points; // always contains rho
    std::uint64_t size() const { return points.size(); }
};

// Inverted orbit of the word g_1 ... g_R: the basepoint together with its
// images under all suffix products g_i ... g_R; computed by one sweep that
// pushes the growing point set through the letters.
InvertedOrbit inverted_orbit(const GenWord& w, const OmegaSeq& omega, std::uint32_t level = 0,
                             std::size_t* max_depth = nullptr);

struct OrbitSearchOptions {
    std::uint64_t budget = 10'000'000; // DFS nodes
    int threads = 1;
};

struct DeltaResult {
    std::uint64_t delta;
    GenWord realizer; // (delta max, then shortlex-minimal) witness word
    std::uint64_t nodes;
};

// Maximum inverted-orbit size over alternating words of norm <= R in the
// metric of V; exhaustive with a sound dominance prune.
DeltaResult delta_search(const OmegaSeq& omega, const SimplexPoint& V, const Rat& R,
                         const OrbitSearchOptions& opt = {});
std::uint64_t delta_growth(const OmegaSeq& omega, const SimplexPoint& V, const Rat& R,
                           const OrbitSearchOptions& opt = {});

// Number of distinct inverted-orbit point sets over the same word range.
std::uint64_t sigma_growth(const OmegaSeq& omega, const SimplexPoint& V, const Rat& R,
                           const OrbitSearchOptions& opt = {});

struct SchreierEdge {
    BoundaryPoint from;
    Gen label;
    BoundaryPoint to;
};

struct SchreierBall {
    std::vector<BoundaryPoint> vertices; // BFS discovery order from rho
    std::vector<SchreierEdge> edges;     // emitted from vertices at depth < radius
};

SchreierBall schreier_ball(const OmegaSeq& omega, std::uint32_t radius, std::uint32_t level = 0);

// CSV "vertex,label,vertex" with CRLF line endings.
std::string schreier_to_csv(const SchreierBall& ball);

} // namespace gromega
