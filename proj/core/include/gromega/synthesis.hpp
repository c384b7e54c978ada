#pragma once

#include "gromega/grigorchuk.hpp"
#include "gromega/wreath.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gromega {

// The positive root of X^3 - X^2 - 2X - 4 and log2/log of it.
double eta_plus();
double alpha_minus();

// An increasing target g with g(1) = 1, evaluated in the log domain so that
// values far beyond double range stay usable.
struct TargetGrowth {
    std::string name;
    std::function<double(double)> log_eval_log; // log g at log R

    double log_eval(double logR) const { return log_eval_log(logR); }
    double eval(double R) const;
};

// Presets: pow:<alpha>, linear, r-over-log, r-over-loglog, ackermann-inverse.
TargetGrowth preset_growth(const std::string& name);

// The two-sided doubling condition g(2R) <= 2 g(R) <= g(eta_plus R) sampled
// on a log-spaced grid; violations are report content, not errors.
struct DoublingReport {
    bool ok;
    double worst_left_margin;  // min of log(2 g(R)) - log g(2R)
    double worst_right_margin; // min of log g(eta_plus R) - log(2 g(R))
    std::vector<double> left_violations;  // offending R values (at most 16)
    std::vector<double> right_violations;
    double rmin, rmax;
    int samples;
};

DoublingReport check_doubling(const TargetGrowth& g, double rmin, double rmax, int samples);

struct BoundaryRecord {
    std::uint64_t k;
    bool after_two_block; // false: after a 012 block
    double log2_value;    // log2 of g at the eta product
    double ratio;         // g(eta product) / 2^k
};

struct SynthesisTrace {
    std::vector<Letter> prefix;
    std::vector<SyllablePair> syllables; // last entry may have j = 0 when truncated
    bool truncated_mid_block = false;
    std::vector<BoundaryRecord> boundaries;
    double final_ratio = 1.0;
};

// Greedy construction: grow the prefix with 012 blocks until g overtakes
// 2^k, then with 2s until it drops back below, repeating to length >= N.
// Ties continue the 012 phase and stop the 2 phase.
SynthesisTrace synthesize_omega(const TargetGrowth& g, const SimplexPoint& V0, std::uint64_t N);

struct SandwichReport {
    double A_obs; // min ratio over syllable boundaries
    double B_obs; // max ratio
    // Phase invariants: ratio in [1/2, 1] after 2-blocks and [1, 27] after
    // 012-blocks, with a small relative slack.
    std::uint64_t phase_violations;
    std::uint64_t phase_violations_after_first_two;
    std::uint64_t boundary_count;
};

SandwichReport verify_sandwich(const SynthesisTrace& trace, const TargetGrowth& g,
                               const SimplexPoint& V0);

// Exact two-argument Ackermann recursion with an evaluation-step guard.
std::uint64_t ackermann(std::uint64_t m, std::uint64_t n);

// Upper concave envelope of a sample set, evaluated by linear interpolation
// (end slopes extended beyond the sampled range).
struct PiecewiseLinear {
    std::vector<std::pair<double, double>> vertices; // increasing in first
    double operator()(double R) const;
};

PiecewiseLinear concave_majorand(std::vector<std::pair<double, double>> samples);

struct ReportBudgets {
    std::uint64_t ball_budget = 200'000;
    std::uint64_t wreath_budget = 200'000;
    std::uint32_t zeta_kmax = 8;
};

struct ReportRow {
    std::uint64_t k;
    Rat radius; // eta_0 ... eta_{k-1} mu_k
    Rat eta_k;
    Rat mu_k;
    std::optional<std::uint64_t> v_g;
    std::optional<std::uint64_t> v_w;
    std::optional<std::uint64_t> delta_zeta; // inverted orbit of the zeta witness
    std::optional<double> alpha_g; // log log v / log R
    std::optional<double> alpha_w;
};

std::vector<ReportRow> growth_report(const OmegaSeq& omega, const SimplexPoint& V0,
                                     std::uint32_t kmax, const AbelianSpec& A = {},
                                     const ReportBudgets& budgets = {});

// CSV, one row per k, CRLF line endings; budget-skipped cells say so.
std::string report_to_csv(const std::vector<ReportRow>& rows);

} // namespace gromega
