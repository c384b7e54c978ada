#include "gromega/orbit.hpp"

#include "gromega/errors.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace gromega;
using testsup::make_rat;
using testsup::random_alternating_word;
using testsup::random_gen_word;
using testsup::random_periodic;
using testsup::random_point;

namespace {

const OmegaSeq kPer012 = parse_omega_spec("per:012");

BoundaryPoint act_word(const BoundaryPoint& p, const GenWord& w, const OmegaSeq& om,
                       std::uint32_t level = 0) {
    BoundaryPoint q = p;
    for (Gen g : w) q = act_point(q, g, om, level);
    return q;
}

// Straight-from-the-definition oracle: image of the basepoint under every
// suffix product, each computed from scratch.
std::set<BoundaryPoint> inverted_orbit_oracle(const GenWord& w, const OmegaSeq& om) {
    std::set<BoundaryPoint> pts{BoundaryPoint::rho()};
    for (std::size_t i = 0; i < w.size(); ++i) {
        GenWord suffix(w.begin() + i, w.end());
        pts.insert(act_word(BoundaryPoint::rho(), suffix, om));
    }
    return pts;
}

// Plain exhaustive alternating-word search without any pruning.
void naive_orbit_dfs(const OmegaSeq& om, const MetricWeights& w, const Rat& R,
                     std::set<BoundaryPoint>& pts, int last_class, const Rat& spent,
                     std::uint64_t& best, std::set<std::string>& sigma) {
    std::string key;
    for (const auto& p : pts) {
        key += p.prefix();
        key += '|';
    }
    sigma.insert(key);
    best = std::max(best, static_cast<std::uint64_t>(pts.size()));
    for (Gen g : {Gen::a, Gen::b, Gen::c, Gen::d}) {
        int cls = g == Gen::a ? 1 : 2;
        if (cls == last_class) continue;
        if (w.weight(g) > R - spent) continue;
        std::set<BoundaryPoint> next;
        for (const auto& p : pts) next.insert(act_point(p, g, om, 0));
        next.insert(BoundaryPoint::rho());
        naive_orbit_dfs(om, w, R, next, cls, spent + w.weight(g), best, sigma);
    }
}

} // namespace

TEST_CASE("boundary point normal form") {
    CHECK(BoundaryPoint("").is_rho());
    CHECK(BoundaryPoint("122").prefix() == "1");
    CHECK(BoundaryPoint("2221").prefix() == "2221");
    CHECK_THROWS_AS(BoundaryPoint("103"), std::invalid_argument);
}

TEST_CASE("basepoint moves under a and is fixed by b, c, d") {
    BoundaryPoint rho = BoundaryPoint::rho();
    CHECK(act_point(rho, Gen::a, kPer012, 0).prefix() == "1");
    CHECK(act_point(rho, Gen::b, kPer012, 0) == rho);
    CHECK(act_point(rho, Gen::c, kPer012, 0) == rho);
    CHECK(act_point(rho, Gen::d, kPer012, 0) == rho);
}

TEST_CASE("acting by a word equals acting by its reduction") {
    std::mt19937_64 rng(71);
    for (int t = 0; t < 1000; ++t) {
        OmegaSeq omega = random_periodic(rng);
        GenWord w = random_gen_word(rng, 1 + t % 14);
        BoundaryPoint p = act_word(BoundaryPoint::rho(), random_gen_word(rng, 4), omega);
        CHECK(act_word(p, w, omega) == act_word(p, reduce(w), omega));
        // Action axiom: acting by a concatenation = acting twice.
        GenWord u = random_gen_word(rng, 3);
        GenWord cat = u;
        cat.insert(cat.end(), w.begin(), w.end());
        CHECK(act_word(act_word(p, u, omega), w, omega) == act_word(p, cat, omega));
    }
}

TEST_CASE("action touches only a bounded prefix") {
    std::mt19937_64 rng(73);
    for (int t = 0; t < 500; ++t) {
        OmegaSeq omega = random_periodic(rng);
        GenWord seed = random_gen_word(rng, 6);
        BoundaryPoint p = act_word(BoundaryPoint::rho(), seed, omega);
        GenWord w = random_gen_word(rng, 1 + t % 12);
        std::size_t touched = 0;
        BoundaryPoint q = p;
        for (Gen g : w) q = act_point(q, g, omega, 0, &touched);
        CHECK(touched <= p.prefix().size() + w.size() + 2);
    }
}

TEST_CASE("inverted orbit matches the suffix-product definition") {
    CHECK(inverted_orbit({}, kPer012).size() == 1);
    InvertedOrbit one = inverted_orbit(parse_gen_word("a"), kPer012);
    CHECK(one.size() == 2);
    CHECK(one.points.count(BoundaryPoint("1")) == 1);

    std::mt19937_64 rng(79);
    for (int t = 0; t < 500; ++t) {
        OmegaSeq omega = random_periodic(rng);
        GenWord w = random_gen_word(rng, 1 + t % 16);
        InvertedOrbit orbit = inverted_orbit(w, omega);
        CHECK(orbit.points == inverted_orbit_oracle(w, omega));
        CHECK(orbit.size() <= w.size() + 1);
        CHECK(orbit.points.count(BoundaryPoint::rho()) == 1);
    }
}

TEST_CASE("zeta tower words have doubling inverted orbits") {
    SimplexPoint bary = SimplexPoint::barycentre();
    std::vector<std::uint64_t> sizes;
    for (std::uint32_t k = 0; k <= 5; ++k) {
        ZetaTower zt = zeta_tower(kPer012, k, bary);
        std::uint64_t got = inverted_orbit(zt.word, kPer012).size();
        if (k <= 3) {
            std::uint64_t oracle = inverted_orbit_oracle(zt.word, kPer012).size();
            CHECK(got == oracle);
        }
        CHECK(got >= (std::uint64_t(1) << k));
        sizes.push_back(got);
    }
    // frozen small values: seeds ab, acac, (ad)^4, then the 0-substitution
    CHECK(sizes[0] == 2);
    CHECK(sizes[1] == 3);
    CHECK(sizes[2] == 5);
    CHECK(sizes[3] == 9);
}

TEST_CASE("delta search basics") {
    SimplexPoint bary = SimplexPoint::barycentre();
    CHECK(delta_growth(kPer012, bary, Rat(0)) == 1);
    DeltaResult dr = delta_search(kPer012, bary, make_rat(1, 3));
    CHECK(dr.delta == 2);
    CHECK(to_string(dr.realizer) == "a");
}

TEST_CASE("delta and sigma agree with the unpruned exhaustive search") {
    std::mt19937_64 rng(83);
    std::vector<std::pair<OmegaSeq, SimplexPoint>> cases;
    cases.emplace_back(kPer012, SimplexPoint::barycentre());
    cases.emplace_back(parse_omega_spec("per:2"), SimplexPoint::barycentre());
    cases.emplace_back(random_periodic(rng), random_point(rng, 12));
    for (const auto& [omega, v] : cases) {
        for (const Rat& r : {make_rat(1, 2), Rat(1)}) {
            MetricWeights w = weights(v);
            std::set<BoundaryPoint> root{BoundaryPoint::rho()};
            std::uint64_t naive_delta = 0;
            std::set<std::string> naive_sigma;
            naive_orbit_dfs(omega, w, r, root, 0, Rat(0), naive_delta, naive_sigma);
            CHECK(delta_growth(omega, v, r) == naive_delta);
            CHECK(sigma_growth(omega, v, r) == naive_sigma.size());
        }
    }
}

TEST_CASE("delta and sigma are monotone in the radius") {
    SimplexPoint bary = SimplexPoint::barycentre();
    std::uint64_t prev_delta = 0, prev_sigma = 0;
    for (long num = 0; num <= 4; ++num) {
        Rat r = make_rat(num, 3);
        std::uint64_t d = delta_growth(kPer012, bary, r);
        std::uint64_t s = sigma_growth(kPer012, bary, r);
        CHECK(d >= prev_delta);
        CHECK(s >= prev_sigma);
        CHECK(s >= 1);
        prev_delta = d;
        prev_sigma = s;
    }
}

TEST_CASE("threaded searches match the sequential ones") {
    SimplexPoint bary = SimplexPoint::barycentre();
    OrbitSearchOptions seq;
    OrbitSearchOptions par;
    par.threads = 3;
    for (const Rat& r : {Rat(1), make_rat(4, 3)}) {
        CHECK(delta_search(kPer012, bary, r, seq).delta == delta_search(kPer012, bary, r, par).delta);
        CHECK(delta_search(kPer012, bary, r, seq).realizer ==
              delta_search(kPer012, bary, r, par).realizer);
        CHECK(sigma_growth(kPer012, bary, r, seq) == sigma_growth(kPer012, bary, r, par));
    }
}

TEST_CASE("search budget is enforced") {
    OrbitSearchOptions opt;
    opt.budget = 5;
    CHECK_THROWS_AS(delta_growth(kPer012, SimplexPoint::barycentre(), Rat(2), opt),
                    BudgetExceeded);
}

TEST_CASE("schreier balls") {
    SchreierBall b0 = schreier_ball(kPer012, 0);
    CHECK(b0.vertices.size() == 1);
    CHECK(b0.edges.empty());

    SchreierBall b1 = schreier_ball(kPer012, 1);
    REQUIRE(b1.edges.size() == 4);
    CHECK(b1.edges[0].label == Gen::a);
    CHECK(b1.edges[0].to.prefix() == "1");
    for (int i = 1; i < 4; ++i) CHECK(b1.edges[i].to.is_rho()); // loops for b, c, d
    CHECK(b1.vertices.size() == 2);

    std::string csv = schreier_to_csv(b1);
    CHECK(csv == "vertex,label,vertex\r\n,a,1\r\n,b,\r\n,c,\r\n,d,\r\n");

    // Each explored vertex emits one edge per generator.
    SchreierBall b4 = schreier_ball(kPer012, 4);
    std::map<std::string, int> out_degree;
    for (const auto& e : b4.edges) out_degree[e.from.prefix()]++;
    for (const auto& [v, d] : out_degree) CHECK(d == 4);
}

TEST_CASE("inverted orbits live inside the schreier ball of the word length") {
    std::mt19937_64 rng(127);
    for (int t = 0; t < 100; ++t) {
        OmegaSeq omega = random_periodic(rng);
        GenWord w = random_gen_word(rng, 1 + t % 8);
        SchreierBall sb = schreier_ball(omega, static_cast<std::uint32_t>(w.size()));
        std::set<BoundaryPoint> vertices(sb.vertices.begin(), sb.vertices.end());
        for (const BoundaryPoint& p : inverted_orbit(w, omega).points)
            REQUIRE(vertices.count(p) == 1);
    }
}
