#include "gromega/orbit.hpp"

#include "gromega/errors.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <map>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace gromega {

namespace {

void strip_trailing_twos(std::string& s) {
    while (!s.empty() && s.back() == '2') s.pop_back();
}

void touch(std::size_t* max_depth, std::size_t d) {
    if (max_depth && d + 1 > *max_depth) *max_depth = d + 1;
}

} // namespace

BoundaryPoint::BoundaryPoint(std::string prefix) : prefix_(std::move(prefix)) {
    for (char c : prefix_)
        if (c != '1' && c != '2') throw std::invalid_argument("boundary prefixes use '1' and '2'");
    strip_trailing_twos(prefix_);
}

BoundaryPoint act_point(const BoundaryPoint& p, Gen g, const OmegaSeq& omega, std::uint32_t level,
                        std::size_t* max_depth) {
    std::string s = p.prefix();
    std::size_t d = 0;
    Gen cur = g;
    while (true) {
        touch(max_depth, d);
        if (cur == Gen::a) {
            if (d < s.size()) {
                s[d] = (s[d] == '1') ? '2' : '1';
            } else {
                s.resize(d, '2');
                s.push_back('1');
            }
            break;
        }
        char ch = d < s.size() ? s[d] : '2';
        if (ch == '1') {
            Section sec = vanish(omega.at(level + d), cur);
            if (sec == Section::one) break;
            cur = Gen::a;
            ++d;
        } else {
            if (d >= s.size()) break; // the all-2 tail is fixed by b, c, d
            ++d;
        }
    }
    return BoundaryPoint(std::move(s));
}

BoundaryPoint act_point(const BoundaryPoint& p, const GElement& g, std::size_t* max_depth) {
    BoundaryPoint q = p;
    for (Gen gen : g.word) q = act_point(q, gen, g.omega, g.level, max_depth);
    return q;
}

InvertedOrbit inverted_orbit(const GenWord& w, const OmegaSeq& omega, std::uint32_t level,
                             std::size_t* max_depth) {
    InvertedOrbit orbit;
    orbit.points.insert(BoundaryPoint::rho());
    for (Gen g : w) {
        std::set<BoundaryPoint> next;
        for (const BoundaryPoint& p : orbit.points)
            next.insert(act_point(p, g, omega, level, max_depth));
        next.insert(BoundaryPoint::rho());
        orbit.points = std::move(next);
    }
    return orbit;
}

// --- Delta / Sigma search ----------------------------------------------------

namespace {

std::string set_key(const std::set<BoundaryPoint>& pts) {
    std::string key;
    for (const auto& p : pts) {
        key += p.prefix();
        key += '|';
    }
    return key;
}

struct SearchShared {
    const OmegaSeq& omega;
    MetricWeights w;
    Rat radius;
    bool want_sigma;
    std::atomic<std::uint64_t> nodes{0};
    std::uint64_t budget;
};

struct SearchLocal {
    std::uint64_t best_delta = 0;
    GenWord best_word;
    std::unordered_set<std::string> sigma;
    // (orbit set, alternation class) -> largest remaining budget explored
    std::unordered_map<std::string, Rat> visited;
};

bool better_witness(std::uint64_t delta, const GenWord& word, std::uint64_t best_delta,
                    const GenWord& best_word) {
    if (delta != best_delta) return delta > best_delta;
    if (word.size() != best_word.size()) return word.size() < best_word.size();
    return word < best_word;
}

// last_class: 0 = start, 1 = previous letter was a, 2 = previous in {b,c,d}
void dfs(SearchShared& shared, SearchLocal& local, std::set<BoundaryPoint>& pts, int last_class,
         const Rat& spent, GenWord& word) {
    std::uint64_t seen = shared.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (seen > shared.budget)
        throw BudgetExceeded("word enumeration passed budget of " + std::to_string(shared.budget) +
                             " nodes");
    std::string key = set_key(pts);
    if (shared.want_sigma) local.sigma.insert(key);
    if (better_witness(pts.size(), word, local.best_delta, local.best_word)) {
        local.best_delta = pts.size();
        local.best_word = word;
    }
    Rat remaining = shared.radius - spent;
    key += static_cast<char>('0' + last_class);
    if (auto it = local.visited.find(key); it != local.visited.end()) {
        if (it->second >= remaining) return; // dominated: nothing new below
        it->second = remaining;
    } else {
        local.visited.emplace(std::move(key), remaining);
    }
    for (Gen g : {Gen::a, Gen::b, Gen::c, Gen::d}) {
        int cls = g == Gen::a ? 1 : 2;
        if (cls == last_class) continue; // keep the word alternating
        const Rat& wg = shared.w.weight(g);
        if (wg > remaining) continue;
        std::set<BoundaryPoint> next;
        for (const BoundaryPoint& p : pts) next.insert(act_point(p, g, shared.omega, 0));
        next.insert(BoundaryPoint::rho());
        word.push_back(g);
        Rat spent2 = spent + wg;
        dfs(shared, local, next, cls, spent2, word);
        word.pop_back();
    }
}

struct SearchOutcome {
    std::uint64_t delta;
    GenWord realizer;
    std::uint64_t sigma;
    std::uint64_t nodes;
};

SearchOutcome orbit_search(const OmegaSeq& omega, const SimplexPoint& V, const Rat& R,
                           const OrbitSearchOptions& opt, bool want_sigma) {
    if (R < 0) throw std::invalid_argument("radius must be >= 0");
    SearchShared shared{omega, weights(V), R, want_sigma, {}, opt.budget};

    std::set<BoundaryPoint> root{BoundaryPoint::rho()};
    int threads = std::max(1, opt.threads);
    if (threads == 1) {
        SearchLocal local;
        GenWord word;
        dfs(shared, local, root, 0, Rat(0), word);
        return SearchOutcome{local.best_delta, local.best_word,
                             static_cast<std::uint64_t>(local.sigma.size()), shared.nodes.load()};
    }

    // Split at the first letter; each worker owns its own prune cache and
    // sigma set, merged deterministically afterwards.
    struct Job {
        Gen first;
        SearchLocal local;
        std::exception_ptr error;
    };
    std::vector<Job> jobs;
    for (Gen g : {Gen::a, Gen::b, Gen::c, Gen::d})
        if (shared.w.weight(g) <= R) jobs.push_back(Job{g, {}, nullptr});

    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        while (true) {
            std::size_t j = cursor.fetch_add(1);
            if (j >= jobs.size()) return;
            Job& job = jobs[j];
            try {
                std::set<BoundaryPoint> start;
                start.insert(act_point(BoundaryPoint::rho(), job.first, omega, 0));
                start.insert(BoundaryPoint::rho());
                GenWord word{job.first};
                dfs(shared, job.local, start, job.first == Gen::a ? 1 : 2,
                    Rat(shared.w.weight(job.first)), word);
            } catch (...) {
                job.error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (Job& job : jobs)
        if (job.error) std::rethrow_exception(job.error);

    SearchLocal merged;
    merged.best_delta = 1; // the empty word
    merged.sigma.insert(set_key(root));
    for (Job& job : jobs) {
        if (better_witness(job.local.best_delta, job.local.best_word, merged.best_delta,
                           merged.best_word)) {
            merged.best_delta = job.local.best_delta;
            merged.best_word = job.local.best_word;
        }
        merged.sigma.insert(job.local.sigma.begin(), job.local.sigma.end());
    }
    // Account for the root node itself.
    shared.nodes.fetch_add(1);
    return SearchOutcome{merged.best_delta, merged.best_word,
                         static_cast<std::uint64_t>(merged.sigma.size()), shared.nodes.load()};
}

} // namespace

DeltaResult delta_search(const OmegaSeq& omega, const SimplexPoint& V, const Rat& R,
                         const OrbitSearchOptions& opt) {
    SearchOutcome out = orbit_search(omega, V, R, opt, false);
    return DeltaResult{out.delta, out.realizer, out.nodes};
}

std::uint64_t delta_growth(const OmegaSeq& omega, const SimplexPoint& V, const Rat& R,
                           const OrbitSearchOptions& opt) {
    return delta_search(omega, V, R, opt).delta;
}

std::uint64_t sigma_growth(const OmegaSeq& omega, const SimplexPoint& V, const Rat& R,
                           const OrbitSearchOptions& opt) {
    return orbit_search(omega, V, R, opt, true).sigma;
}

// --- Schreier graph ----------------------------------------------------------

SchreierBall schreier_ball(const OmegaSeq& omega, std::uint32_t radius, std::uint32_t level) {
    SchreierBall ball;
    std::map<BoundaryPoint, std::uint32_t> depth;
    std::deque<BoundaryPoint> queue;
    depth.emplace(BoundaryPoint::rho(), 0);
    queue.push_back(BoundaryPoint::rho());
    ball.vertices.push_back(BoundaryPoint::rho());
    while (!queue.empty()) {
        BoundaryPoint v = queue.front();
        queue.pop_front();
        std::uint32_t d = depth.at(v);
        if (d >= radius) continue;
        for (Gen g : {Gen::a, Gen::b, Gen::c, Gen::d}) {
            BoundaryPoint u = act_point(v, g, omega, level);
            ball.edges.push_back(SchreierEdge{v, g, u});
            if (depth.emplace(u, d + 1).second) {
                queue.push_back(u);
                ball.vertices.push_back(u);
            }
        }
    }
    return ball;
}

std::string schreier_to_csv(const SchreierBall& ball) {
    std::string out = "vertex,label,vertex\r\n";
    for (const auto& e : ball.edges) {
        out += e.from.prefix();
        out += ',';
        out += to_char(e.label);
        out += ',';
        out += e.to.prefix();
        out += "\r\n";
    }
    return out;
}

} // namespace gromega
