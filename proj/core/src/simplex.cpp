#include "gromega/simplex.hpp"

#include "gromega/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gromega {

SimplexPoint::SimplexPoint(Rat beta, Rat gamma, Rat delta)
    : v_{std::move(beta), std::move(gamma), std::move(delta)} {
    if (v_[0] + v_[1] + v_[2] != 1)
        throw std::domain_error("simplex point coordinates must sum to 1");
    Rat half(1, 2);
    for (const Rat& c : v_)
        if (c >= half)
            throw std::domain_error("simplex point must have max coordinate < 1/2");
    // max < 1/2 and sum 1 force every coordinate positive.
}

SimplexPoint SimplexPoint::barycentre() {
    return SimplexPoint(Rat(1, 3), Rat(1, 3), Rat(1, 3));
}

const Rat& MetricWeights::weight(Gen g) const {
    switch (g) {
        case Gen::a: return wa;
        case Gen::b: return wb;
        case Gen::c: return wc;
        default: return wd;
    }
}

MetricWeights weights(const SimplexPoint& p) {
    Rat mx = std::max({p.beta(), p.gamma(), p.delta()});
    Rat wa = 1 - 2 * mx;
    return MetricWeights{wa, p.beta() - wa, p.gamma() - wa, p.delta() - wa};
}

Rat eta(const SimplexPoint& p, Letter x) { return 3 - 2 * p.coord(x); }

SimplexPoint apply_map(const SimplexPoint& p, Letter x) {
    Rat e = eta(p, x);
    switch (x) {
        case Letter::l0: return SimplexPoint(1 / e, 2 * p.gamma() / e, 2 * p.delta() / e);
        case Letter::l1: return SimplexPoint(2 * p.beta() / e, 1 / e, 2 * p.delta() / e);
        default: return SimplexPoint(2 * p.beta() / e, 2 * p.gamma() / e, 1 / e);
    }
}

Rat mu(const SimplexPoint& p) { return std::min({p.beta(), p.gamma(), p.delta()}); }

Rat eta_word(const SimplexPoint& p, std::span<const Letter> prefix) {
    Rat prod = 1;
    SimplexPoint q = p;
    for (Letter x : prefix) {
        prod *= eta(q, x);
        q = apply_map(q, x);
    }
    return prod;
}

SimplexPoint orbit_end(const SimplexPoint& p, std::span<const Letter> prefix) {
    SimplexPoint q = p;
    for (Letter x : prefix) q = apply_map(q, x);
    return q;
}

Rat hilbert_cross_ratio(const SimplexPoint& p, const SimplexPoint& q) {
    if (p == q) return 1;
    // Chord p + t (q - p); the boundary is hit where some coordinate
    // reaches 1/2. Parameter 0 at p, 1 at q.
    Rat half(1, 2);
    bool have_pos = false, have_neg = false;
    Rat tpos, tneg;
    for (int i = 0; i < 3; ++i) {
        Rat d = q.coords()[i] - p.coords()[i];
        if (d == 0) continue;
        Rat t = (half - p.coords()[i]) / d;
        if (d > 0) {
            if (!have_pos || t < tpos) tpos = t;
            have_pos = true;
        } else {
            if (!have_neg || t > tneg) tneg = t;
            have_neg = true;
        }
    }
    // The differences sum to zero, so both sides exist.
    if (!have_pos || !have_neg) throw Error("degenerate chord");
    return ((1 - tneg) * tpos) / ((-tneg) * (tpos - 1));
}

double hilbert_distance(const SimplexPoint& p, const SimplexPoint& q) {
    if (p == q) return 0.0;
    return log_rat(hilbert_cross_ratio(p, q));
}

std::optional<Letter> address(const SimplexPoint& p) {
    const auto& v = p.coords();
    if (v[0] > v[1] && v[0] > v[2]) return Letter::l0;
    if (v[1] > v[0] && v[1] > v[2]) return Letter::l1;
    if (v[2] > v[0] && v[2] > v[1]) return Letter::l2;
    return std::nullopt;
}

IntMatrix3 IntMatrix3::identity() {
    IntMatrix3 I;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) I.m[i][j] = (i == j) ? 1 : 0;
    return I;
}

IntMatrix3 operator*(const IntMatrix3& A, const IntMatrix3& B) {
    IntMatrix3 C;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Int s = 0;
            for (int k = 0; k < 3; ++k) s += A.m[i][k] * B.m[k][j];
            C.m[i][j] = s;
        }
    return C;
}

IntMatrix3 letter_matrix(Letter x) {
    IntMatrix3 M;
    auto set = [&](int r, long a, long b, long c) {
        M.m[r][0] = a;
        M.m[r][1] = b;
        M.m[r][2] = c;
    };
    switch (x) {
        case Letter::l0:
            set(0, 1, 1, 1);
            set(1, 0, 2, 0);
            set(2, 0, 0, 2);
            break;
        case Letter::l1:
            set(0, 2, 0, 0);
            set(1, 1, 1, 1);
            set(2, 0, 0, 2);
            break;
        default:
            set(0, 2, 0, 0);
            set(1, 0, 2, 0);
            set(2, 1, 1, 1);
            break;
    }
    return M;
}

IntMatrix3 matrix_product(std::span<const Letter> word) {
    IntMatrix3 P = IntMatrix3::identity();
    for (Letter x : word) P = letter_matrix(x) * P;
    return P;
}

CubicPoly char_poly(const IntMatrix3& M) {
    const auto& m = M.m;
    Int tr = m[0][0] + m[1][1] + m[2][2];
    Int minors = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) +
                 (m[0][0] * m[2][2] - m[0][2] * m[2][0]) +
                 (m[0][0] * m[1][1] - m[0][1] * m[1][0]);
    Int det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
              m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
              m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    return CubicPoly{-tr, minors, -det};
}

namespace {

// Sturm chain of the monic cubic, all integer coefficients (positive-scaled
// remainders keep the sign pattern):
//   s0 = x^3 + c2 x^2 + c1 x + c0
//   s1 = 3 x^2 + 2 c2 x + c1
//   s2 = A x + B,  A = 2 c2^2 - 6 c1,  B = c1 c2 - 9 c0
//   s3 = -(3 B^2 - 2 c2 A B + c1 A^2)
struct SturmChain {
    Int c2, c1, c0;
    Int A, B, s3;
    bool has_s2 = false, has_s3 = false;

    explicit SturmChain(const CubicPoly& p) : c2(p.c2), c1(p.c1), c0(p.c0) {
        A = 2 * c2 * c2 - 6 * c1;
        B = c1 * c2 - 9 * c0;
        has_s2 = !(A == 0 && B == 0);
        if (has_s2 && A != 0) {
            s3 = -(3 * B * B - 2 * c2 * A * B + c1 * A * A);
            has_s3 = (s3 != 0);
        }
    }

    // Sign of the cubic at the dyadic point n / 2^e.
    static int sgn(const Int& v) { return mpz_sgn(v.get_mpz_t()); }

    int sign_s0(const Int& n, unsigned e) const {
        Int p2 = Int(1) << e;
        Int v = n * n * n + c2 * n * n * p2 + c1 * n * (p2 * p2) + c0 * (p2 * p2 * p2);
        return sgn(v);
    }
    int sign_s1(const Int& n, unsigned e) const {
        Int p2 = Int(1) << e;
        Int v = 3 * n * n + 2 * c2 * n * p2 + c1 * p2 * p2;
        return sgn(v);
    }
    int sign_s2(const Int& n, unsigned e) const {
        Int v = A * n + B * (Int(1) << e);
        return sgn(v);
    }

    // Number of sign variations at n / 2^e (zeros skipped).
    int variations(const Int& n, unsigned e) const {
        int signs[4];
        int cnt = 0;
        signs[cnt++] = sign_s0(n, e);
        signs[cnt++] = sign_s1(n, e);
        if (has_s2) signs[cnt++] = sign_s2(n, e);
        if (has_s3) signs[cnt++] = sgn(s3);
        int v = 0, prev = 0;
        for (int i = 0; i < cnt; ++i) {
            if (signs[i] == 0) continue;
            if (prev != 0 && signs[i] != prev) ++v;
            prev = signs[i];
        }
        return v;
    }
};

} // namespace

double largest_real_root(const CubicPoly& p, double tol) {
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    SturmChain chain(p);
    if (!chain.has_s2) {
        // Triple root -c2/3 (necessarily an integer for a monic cubic).
        return -to_double(Rat(p.c2, 3));
    }
    // Cauchy bound: all roots lie in (-bound, bound).
    Int mx = abs(p.c2);
    if (abs(p.c1) > mx) mx = abs(p.c1);
    if (abs(p.c0) > mx) mx = abs(p.c0);
    Int bound = mx + 2;

    // Dyadic bisection on (lo, hi] keeping at least one root above lo and
    // none above hi. Points are n / 2^e.
    Int lo_n = -bound, hi_n = bound;
    unsigned e = 0;
    int vhi = chain.variations(hi_n, e);
    double width = 2.0 * to_double(Rat(bound));
    while (width > tol) {
        Int mid_n = lo_n + hi_n; // at scale e+1
        ++e;
        lo_n <<= 1;
        hi_n <<= 1;
        if (chain.sign_s0(mid_n, e) == 0) {
            // Exact root at the midpoint; the whole chain may vanish there
            // (multiple root), so split off the linear factor instead.
            Rat v(mid_n);
            mpq_div_2exp(v.get_mpq_t(), v.get_mpq_t(), e);
            Rat q1 = Rat(p.c2) + v;
            Rat q0 = Rat(p.c1) + v * q1;
            Rat disc = q1 * q1 - 4 * q0;
            double best = to_double(v);
            if (disc >= 0)
                best = std::max(best, (-to_double(q1) + std::sqrt(to_double(disc))) / 2.0);
            return best;
        }
        int roots_above = chain.variations(mid_n, e) - vhi;
        if (roots_above >= 1)
            lo_n = mid_n;
        else
            hi_n = mid_n;
        width /= 2.0;
        if (e > 4096) throw Error("root isolation failed to converge");
    }
    Rat mid = (Rat(lo_n) + Rat(hi_n)) / 2;
    mpq_div_2exp(mid.get_mpq_t(), mid.get_mpq_t(), e);
    return to_double(mid);
}

double spectral_radius(const IntMatrix3& M, double tol) {
    // Nonnegative matrix: the spectral radius is the largest real eigenvalue.
    return largest_real_root(char_poly(M), tol);
}

PerronResult perron_vector(const IntMatrix3& M, double tol) {
    double a[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = M.m[i][j].get_d();
    double v[3] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    double step = 1.0;
    for (int it = 0; it < 200000 && step > tol * 1e-3; ++it) {
        double w[3];
        for (int i = 0; i < 3; ++i)
            w[i] = a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2];
        double s = w[0] + w[1] + w[2];
        if (s <= 0.0) throw Error("power iteration collapsed");
        step = 0.0;
        for (int i = 0; i < 3; ++i) {
            w[i] /= s;
            step = std::max(step, std::abs(w[i] - v[i]));
            v[i] = w[i];
        }
    }
    double mn = std::min({v[0], v[1], v[2]});
    double mx = std::max({v[0], v[1], v[2]});
    bool interior = mn > 1e-9 && mx < 0.5 - 1e-9;
    return PerronResult{{v[0], v[1], v[2]}, interior};
}

CesaroExponents cesaro_exponent(std::span<const Letter> word, double tol) {
    if (word.empty()) throw std::invalid_argument("cesaro exponent needs a nonempty word");
    double rho = spectral_radius(matrix_product(word), tol);
    double theta = std::log(rho) / static_cast<double>(word.size());
    return CesaroExponents{std::exp(theta), M_LN2 / theta, theta};
}

} // namespace gromega
