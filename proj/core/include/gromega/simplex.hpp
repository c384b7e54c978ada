#pragma once

#include "gromega/numeric.hpp"
#include "gromega/sequences.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gromega {

// Interior point of the open 2-simplex: beta + gamma + delta = 1 exactly,
// max coordinate < 1/2 (which forces all coordinates > 0). Parameterizes a
// weighted metric on the group generated by a, b, c, d.
class SimplexPoint {
public:
    SimplexPoint(Rat beta, Rat gamma, Rat delta); // throws std::domain_error
    static SimplexPoint barycentre();

    const Rat& beta() const { return v_[0]; }
    const Rat& gamma() const { return v_[1]; }
    const Rat& delta() const { return v_[2]; }
    const Rat& coord(Letter x) const { return v_[static_cast<int>(x)]; }
    const std::array<Rat, 3>& coords() const { return v_; }

    bool operator==(const SimplexPoint& o) const { return v_ == o.v_; }

private:
    std::array<Rat, 3> v_;
};

// Generator norms derived from a simplex point: wa = 1 - 2 max, and
// wb, wc, wd the coordinate excesses over wa. Scale: wab + wac + wad = 1.
struct MetricWeights {
    Rat wa, wb, wc, wd;
    const Rat& weight(Gen g) const;
    Rat wab() const { return wa + wb; }
    Rat wac() const { return wa + wc; }
    Rat wad() const { return wa + wd; }
};

MetricWeights weights(const SimplexPoint& p);

// Normalization factor 3 - 2 p_x of the projective map for letter x; in (2,3).
Rat eta(const SimplexPoint& p, Letter x);

// Projective image M_x(p) / eta(p,x); exact, lands in the subsimplex where
// coordinate x is the strict maximum.
SimplexPoint apply_map(const SimplexPoint& p, Letter x);

// Minimum coordinate, in (0, 1/3].
Rat mu(const SimplexPoint& p);

// Product of eta along the orbit of p under the letters of `prefix`;
// eta_word(p, empty) = 1.
Rat eta_word(const SimplexPoint& p, std::span<const Letter> prefix);

// Endpoint of the same orbit.
SimplexPoint orbit_end(const SimplexPoint& p, std::span<const Letter> prefix);

// Exact cross-ratio underlying the Hilbert metric; 1 when p == q.
Rat hilbert_cross_ratio(const SimplexPoint& p, const SimplexPoint& q);

// Hilbert distance log of the cross-ratio of p, q and the two chord
// intersections with the simplex boundary; symmetric, 0 iff p == q.
double hilbert_distance(const SimplexPoint& p, const SimplexPoint& q);

// Letter x such that p lies in the image of the projective map of x (the
// unique strict-max coordinate); nullopt on the separating segments.
std::optional<Letter> address(const SimplexPoint& p);

struct IntMatrix3 {
    std::array<std::array<Int, 3>, 3> m;
    static IntMatrix3 identity();
    bool operator==(const IntMatrix3& o) const { return m == o.m; }
};

IntMatrix3 operator*(const IntMatrix3& A, const IntMatrix3& B);

IntMatrix3 letter_matrix(Letter x);

// Product M_{w_{k-1}} ... M_{w_0}: the leftmost factor is the LAST letter.
IntMatrix3 matrix_product(std::span<const Letter> word);

// Monic cubic x^3 + c2 x^2 + c1 x + c0.
struct CubicPoly {
    Int c2, c1, c0;
    bool operator==(const CubicPoly& o) const = default;
};

// Exact characteristic polynomial: c2 = -trace, c1 = sum of principal 2x2
// minors, c0 = -det.
CubicPoly char_poly(const IntMatrix3& M);

// Largest real root, to absolute accuracy tol (within double precision).
// Exact rational Sturm bisection on the square-free part, then Newton polish.
double largest_real_root(const CubicPoly& p, double tol = 1e-12);

double spectral_radius(const IntMatrix3& M, double tol = 1e-12);

struct PerronResult {
    std::array<double, 3> v; // entries sum to 1
    bool interior;           // strictly inside the open simplex
};

// Normalized nonnegative eigenvector for the spectral radius via power
// iteration; `interior` is false for degenerate (non primitive) inputs.
PerronResult perron_vector(const IntMatrix3& M, double tol = 1e-12);

struct CesaroExponents {
    double eta;        // spectral_radius(product)^{1/k}
    double alpha;      // log 2 / log eta
    double theta_plus; // log eta
};

CesaroExponents cesaro_exponent(std::span<const Letter> word, double tol = 1e-12);

} // namespace gromega
