#include "gromega/synthesis.hpp"

#include "gromega/errors.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace gromega;
using testsup::make_rat;
using testsup::random_point;

namespace {

const OmegaSeq kPer012 = parse_omega_spec("per:012");

OmegaSeq random_syllable(std::mt19937_64& rng, std::size_t blocks) {
    std::uniform_int_distribution<std::uint64_t> i_pick(1, 4), j_pick(1, 6);
    std::vector<SyllablePair> out;
    for (std::size_t t = 0; t < blocks; ++t) out.push_back({i_pick(rng), j_pick(rng)});
    return OmegaSeq::syllable_form(std::move(out));
}

} // namespace

TEST_CASE("eta_plus and alpha_minus") {
    double e = eta_plus();
    CHECK(std::abs(e * e * e - e * e - 2 * e - 4) < 1e-9);
    CHECK(e == doctest::Approx(2.4675).epsilon(1e-4));
    CHECK(alpha_minus() == doctest::Approx(0.7674).epsilon(1e-4));
}

TEST_CASE("growth presets") {
    TargetGrowth pw = preset_growth("pow:0.7674");
    CHECK(pw.eval(2.0) == doctest::Approx(std::pow(2.0, 0.7674)).epsilon(1e-12));
    CHECK(pw.eval(1.0) == doctest::Approx(1.0));

    TargetGrowth rl = preset_growth("r-over-log");
    CHECK(rl.eval(std::exp(1.0)) == doctest::Approx(std::exp(1.0) / 2.0).epsilon(1e-12));

    TargetGrowth lin = preset_growth("linear");
    CHECK(lin.eval(42.0) == doctest::Approx(42.0));

    TargetGrowth rll = preset_growth("r-over-loglog");
    CHECK(rll.eval(1.0) == doctest::Approx(1.0));

    TargetGrowth ack = preset_growth("ackermann-inverse");
    CHECK(ack.eval(1.0) == doctest::Approx(1.0));
    CHECK(ack.eval(61.0) == doctest::Approx(61.0 / 4.0).epsilon(1e-9));
    CHECK(ack.eval(1000.0) == doctest::Approx(250.0).epsilon(1e-9));

    CHECK_THROWS_AS(preset_growth("bogus"), std::invalid_argument);
    CHECK_THROWS_AS(preset_growth("pow:-1"), std::invalid_argument);

    // All presets are increasing on a sampled domain.
    for (const char* name :
         {"linear", "pow:0.8", "r-over-log", "r-over-loglog", "ackermann-inverse"}) {
        TargetGrowth g = preset_growth(name);
        double prev = -1e300;
        for (int i = 0; i <= 200; ++i) {
            double lr = i * std::log(1e6) / 200;
            double v = g.log_eval(lr);
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("doubling condition checks") {
    CHECK(check_doubling(preset_growth("pow:0.8"), 1.0, 1e6, 300).ok);
    CHECK(check_doubling(preset_growth("linear"), 1.0, 1e6, 300).ok);
    DoublingReport bad = check_doubling(preset_growth("pow:0.7"), 1.0, 1e6, 300);
    CHECK_FALSE(bad.ok);
    CHECK(bad.left_violations.empty());
    CHECK_FALSE(bad.right_violations.empty());
    CHECK(bad.worst_right_margin < 0);
    // The slow-factor preset satisfies the condition past its cutoff R >= 8.
    CHECK(check_doubling(preset_growth("ackermann-inverse"), 8.0, 1e6, 300).ok);
}

TEST_CASE("ackermann recursion") {
    CHECK(ackermann(0, 5) == 6);
    CHECK(ackermann(1, 1) == 3);
    CHECK(ackermann(2, 2) == 7);
    CHECK(ackermann(3, 3) == 61);
    CHECK(ackermann(3, 5) == 253);
    CHECK_THROWS_AS(ackermann(4, 2), ResourceLimit);
}

TEST_CASE("greedy synthesis tracks powers of two") {
    SimplexPoint bary = SimplexPoint::barycentre();
    for (const char* name : {"pow:0.85", "pow:0.95", "linear"}) {
        TargetGrowth g = preset_growth(name);
        SynthesisTrace trace = synthesize_omega(g, bary, 120);
        CHECK(trace.prefix.size() >= 120);
        // Syllable shape: the prefix letters match the recorded blocks.
        std::vector<Letter> rebuilt;
        for (const auto& s : trace.syllables) {
            for (std::uint64_t i = 0; i < s.i; ++i) {
                rebuilt.push_back(Letter::l0);
                rebuilt.push_back(Letter::l1);
                rebuilt.push_back(Letter::l2);
            }
            for (std::uint64_t j = 0; j < s.j; ++j) rebuilt.push_back(Letter::l2);
        }
        REQUIRE(rebuilt.size() == trace.prefix.size());
        CHECK(rebuilt == trace.prefix);
        for (std::size_t t = 0; t + 1 < trace.syllables.size(); ++t) {
            CHECK(trace.syllables[t].i >= 1);
            CHECK(trace.syllables[t].j >= 1);
        }
        SandwichReport rep = verify_sandwich(trace, g, bary);
        CHECK(rep.phase_violations_after_first_two == 0);
        CHECK(rep.A_obs >= std::ldexp(1.0, -7));
        CHECK(rep.B_obs <= std::ldexp(1.0, 7));
    }
}

TEST_CASE("exactly critical exponent produces isolated 2 blocks") {
    char name[32];
    std::snprintf(name, sizeof(name), "pow:%.10f", alpha_minus());
    TargetGrowth g = preset_growth(name);
    SynthesisTrace trace = synthesize_omega(g, SimplexPoint::barycentre(), 300);
    std::uint64_t twos = 0, triples = 0;
    for (const auto& s : trace.syllables) {
        triples += 3 * s.i;
        twos += s.j;
        CHECK(s.j <= 3);
    }
    CHECK(triples >= 2 * twos);
}

TEST_CASE("linear growth produces one long 2 block") {
    TargetGrowth g = preset_growth("linear");
    SynthesisTrace trace = synthesize_omega(g, SimplexPoint::barycentre(), 200);
    REQUIRE(trace.syllables.size() == 1);
    CHECK(trace.syllables[0].i == 1);
    CHECK(trace.syllables[0].j == 197);
    CHECK(trace.final_ratio > 1.0);
    CHECK(trace.final_ratio < 128.0);
}

TEST_CASE("tiny traces report their single ratio") {
    TargetGrowth g = preset_growth("pow:0.85");
    SynthesisTrace trace = synthesize_omega(g, SimplexPoint::barycentre(), 3);
    SandwichReport rep = verify_sandwich(trace, g, SimplexPoint::barycentre());
    CHECK(rep.boundary_count == 0);
    CHECK(rep.A_obs == rep.B_obs);
    CHECK(rep.A_obs == doctest::Approx(trace.final_ratio));
}

TEST_CASE("mu stays in (1/5, 1/3) past the first block of syllable sequences") {
    std::mt19937_64 rng(103);
    for (int t = 0; t < 40; ++t) {
        OmegaSeq omega = random_syllable(rng, 12);
        SimplexPoint v = (t % 2 == 0) ? SimplexPoint::barycentre() : random_point(rng);
        std::uint64_t first_block = 3; // mu enters the window once the first 012 block ends
        while (omega.at(first_block - 3) != Letter::l0 ||
               omega.at(first_block - 2) != Letter::l1 || omega.at(first_block - 1) != Letter::l2)
            first_block += 3;
        SimplexPoint cur = v;
        for (std::uint64_t k = 0; k <= 60; ++k) {
            if (k >= first_block) {
                CHECK(mu(cur) > make_rat(1, 5));
                CHECK(mu(cur) < make_rat(1, 3));
            }
            cur = apply_map(cur, omega.at(k));
        }
    }
}

TEST_CASE("eta products along constant blocks stay near their limit rates") {
    std::mt19937_64 rng(107);
    double worst_triple = 0, worst_twos = 0;
    double worst_triple_half = 0, worst_twos_half = 0;
    for (int t = 0; t < 20; ++t) {
        SimplexPoint v = random_point(rng);
        std::vector<Letter> blocks;
        for (int n = 0; n < 50; ++n) {
            blocks.push_back(Letter::l0);
            blocks.push_back(Letter::l1);
            blocks.push_back(Letter::l2);
        }
        Rat prod = 1;
        SimplexPoint cur = v;
        for (int n = 1; n <= 50; ++n) {
            for (int j = 0; j < 3; ++j) {
                prod *= eta(cur, blocks[3 * (n - 1) + j]);
                cur = apply_map(cur, blocks[3 * (n - 1) + j]);
            }
            double err = std::abs(log_rat(prod) - 3 * n * std::log(eta_plus()));
            worst_triple = std::max(worst_triple, err);
            if (n <= 25) worst_triple_half = std::max(worst_triple_half, err);
        }
        Rat prod2 = 1;
        cur = v;
        for (int n = 1; n <= 50; ++n) {
            prod2 *= eta(cur, Letter::l2);
            cur = apply_map(cur, Letter::l2);
            double err = std::abs(log_rat(prod2) - n * M_LN2);
            worst_twos = std::max(worst_twos, err);
            if (n <= 25) worst_twos_half = std::max(worst_twos_half, err);
        }
    }
    // The running maxima stabilize: the second half adds almost nothing.
    CHECK(worst_triple - worst_triple_half < 0.01);
    CHECK(worst_twos - worst_twos_half < 0.01);
    CHECK(worst_triple < 10.0);
    CHECK(worst_twos < 10.0);
}

TEST_CASE("mu scales like 1/m under long two-symbol alternations") {
    std::mt19937_64 rng(109);
    for (int t = 0; t < 10; ++t) {
        std::uniform_int_distribution<int> len(1, 3);
        // 012 prologue, then m alternating 0/1 blocks.
        std::vector<Letter> word{Letter::l0, Letter::l1, Letter::l2};
        int m = 6 + t;
        for (int b = 0; b < m; ++b) {
            Letter x = (b % 2 == 0) ? Letter::l0 : Letter::l1;
            int n = len(rng);
            for (int i = 0; i < n; ++i) word.push_back(x);
        }
        SimplexPoint end = orbit_end(SimplexPoint::barycentre(), word);
        double scaled = to_double(mu(end)) * m;
        CHECK(scaled > 0.3);
        CHECK(scaled < 4.0);
    }
}

TEST_CASE("concave majorands") {
    // Already concave data is reproduced at the sample points.
    std::vector<std::pair<double, double>> sq;
    for (int i = 1; i <= 40; ++i) sq.emplace_back(i, std::sqrt(double(i)));
    PiecewiseLinear env = concave_majorand(sq);
    for (const auto& [r, v] : sq) CHECK(env(r) == doctest::Approx(v).epsilon(1e-12));

    PiecewiseLinear chord = concave_majorand({{0.0, 0.0}, {2.0, 4.0}});
    CHECK(chord(1.0) == doctest::Approx(2.0));

    // Subadditive increasing staircase: the envelope stays below twice it.
    std::vector<std::pair<double, double>> stair;
    for (int r = 1; r <= 1024; ++r) {
        double g = std::ldexp(1.0, static_cast<int>(std::floor(std::log2(double(r)))));
        stair.emplace_back(r, g);
    }
    PiecewiseLinear star = concave_majorand(stair);
    for (int r = 1; r <= 1024; r += 7) {
        double g = std::ldexp(1.0, static_cast<int>(std::floor(std::log2(double(r)))));
        CHECK(star(r) >= g - 1e-9);
        CHECK(star(r) <= 2 * g + 1e-9);
    }
}

TEST_CASE("growth report rows") {
    ReportBudgets budgets;
    budgets.ball_budget = 2000;
    budgets.wreath_budget = 2000;
    budgets.zeta_kmax = 4;
    auto rows = growth_report(kPer012, SimplexPoint::barycentre(), 3, AbelianSpec{2}, budgets);
    REQUIRE(rows.size() == 4);
    CHECK(rat_string(rows[0].radius) == "1/3");
    CHECK(rat_string(rows[1].radius) == "2/3");
    CHECK(rat_string(rows[2].radius) == "4/3");
    CHECK(rat_string(rows[3].radius) == "4");
    CHECK(rows[0].v_g == 20);
    CHECK(rows[0].v_w == 24);
    CHECK(rows[1].delta_zeta == 3);
    for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
        double ratio = to_double(rows[k + 1].radius) / to_double(rows[k].radius);
        CHECK(ratio > 1.5);
        CHECK(ratio < 3.1);
    }
    CHECK_FALSE(rows[3].v_g.has_value()); // budget marker

    std::string csv = report_to_csv(rows);
    CHECK(csv.rfind("k,R,eta_k,mu_k,v_G,v_W,delta_zeta,alpha_G,alpha_W\r\n", 0) == 0);
    CHECK(csv.find("skipped: budget") != std::string::npos);
}
