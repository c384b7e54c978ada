#include "gromega/grigorchuk.hpp"

#include "gromega/errors.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <stdexcept>

namespace gromega {

namespace {

struct RawSplit {
    GenWord first, second;
    bool swapped = false;
};

RawSplit split_word(const GenWord& w, const OmegaSeq& omega, std::uint32_t level) {
    RawSplit r;
    bool flip = false;
    std::optional<Letter> x;
    for (Gen g : w) {
        if (g == Gen::a) {
            flip = !flip;
            continue;
        }
        if (!x) x = omega.at(level);
        Section s = vanish(*x, g);
        if (!flip) {
            if (s == Section::a) r.first.push_back(Gen::a);
            r.second.push_back(g);
        } else {
            r.first.push_back(g);
            if (s == Section::a) r.second.push_back(Gen::a);
        }
    }
    r.swapped = flip;
    return r;
}

constexpr std::uint64_t kWordProblemGuard = 1'000'000;

struct WpState {
    std::uint64_t calls = 0;
    std::uint32_t max_depth = 0;
};

bool trivial_rec(const GenWord& raw, const OmegaSeq& omega, std::uint32_t level,
                 std::uint32_t depth, WpState& state) {
    if (++state.calls > kWordProblemGuard)
        throw ResourceLimit("word problem recursion guard exceeded");
    if (depth > 4096) throw ResourceLimit("word problem recursion too deep");
    state.max_depth = std::max(state.max_depth, depth);
    GenWord w = reduce(raw);
    if (w.empty()) return true;
    int acount = 0;
    for (Gen g : w) acount += (g == Gen::a);
    if (acount % 2) return false;
    RawSplit parts = split_word(w, omega, level);
    return trivial_rec(parts.first, omega, level + 1, depth + 1, state) &&
           trivial_rec(parts.second, omega, level + 1, depth + 1, state);
}

} // namespace

GElement make_element(OmegaSeq omega, std::uint32_t level, GenWord word) {
    return GElement{std::move(omega), level, reduce(std::move(word))};
}

WreathSplitResult wreath_split(const GElement& g) {
    RawSplit parts = split_word(g.word, g.omega, g.level);
    return WreathSplitResult{
        GElement{g.omega, g.level + 1, reduce(std::move(parts.first))},
        GElement{g.omega, g.level + 1, reduce(std::move(parts.second))},
        parts.swapped};
}

TrivialityResult is_trivial(const GenWord& w, const OmegaSeq& omega, std::uint32_t level) {
    WpState state;
    bool t = trivial_rec(w, omega, level, 0, state);
    return TrivialityResult{t, state.max_depth};
}

TrivialityResult is_trivial(const GElement& g) { return is_trivial(g.word, g.omega, g.level); }

bool equal_elements(const GElement& g, const GElement& h) {
    if (g.level != h.level)
        throw std::invalid_argument("elements live at different levels");
    return is_trivial(concat_reduce(g.word, inverse_word(h.word)), g.omega, g.level).trivial;
}

// --- torsion-free variant -------------------------------------------------

namespace {

// Normal form nodes: a-powers alternating with abelian <b,c,d> exponent
// vectors, all nonzero.
struct TNode {
    bool is_a;
    long a_exp = 0;
    std::array<long, 3> v{0, 0, 0}; // exponents of b, c, d
};

std::vector<TNode> normalize_tilde(const TildeWord& w) {
    std::vector<TNode> nodes;
    auto push_a = [&](long e) {
        if (e == 0) return;
        if (!nodes.empty() && nodes.back().is_a) {
            nodes.back().a_exp += e;
            if (nodes.back().a_exp == 0) nodes.pop_back();
        } else {
            nodes.push_back(TNode{true, e, {0, 0, 0}});
        }
    };
    auto push_bcd = [&](int idx, long e) {
        if (!nodes.empty() && !nodes.back().is_a) {
            auto& t = nodes.back();
            t.v[idx] += e;
            if (t.v[0] == 0 && t.v[1] == 0 && t.v[2] == 0) nodes.pop_back();
        } else {
            TNode t{false, 0, {0, 0, 0}};
            t.v[idx] = e;
            nodes.push_back(t);
        }
    };
    for (const TildeLetter& l : w) {
        if (l.gen == Gen::a)
            push_a(l.exp);
        else
            push_bcd(static_cast<int>(l.gen) - 1, l.exp);
    }
    return nodes;
}

bool tilde_rec(const TildeWord& w, const OmegaSeq& omega, std::uint32_t level,
               std::uint32_t depth, WpState& state) {
    if (++state.calls > kWordProblemGuard)
        throw ResourceLimit("word problem recursion guard exceeded");
    if (depth > 4096) throw ResourceLimit("word problem recursion too deep");
    state.max_depth = std::max(state.max_depth, depth);
    std::vector<TNode> nodes = normalize_tilde(w);
    if (nodes.empty()) return true;
    long shift_total = 0;
    for (const TNode& n : nodes)
        if (n.is_a) shift_total += n.a_exp;
    if (shift_total != 0) return false;
    if (nodes.size() == 1 && !nodes[0].is_a) return false; // nonzero in <b,c,d>
    // Split into the two residue words one level down: a letter x sitting at
    // cumulative shift M contributes x at residue M+1 and its image under
    // the current homomorphism at residue M (2-periodic pattern).
    std::optional<Letter> x0;
    TildeWord w0, w1;
    long shift = 0;
    for (const TNode& n : nodes) {
        if (n.is_a) {
            shift += n.a_exp;
            continue;
        }
        if (!x0) x0 = omega.at(level);
        bool even = ((shift % 2) + 2) % 2 == 0;
        for (int idx = 0; idx < 3; ++idx) {
            long e = n.v[idx];
            if (e == 0) continue;
            Gen g = static_cast<Gen>(idx + 1);
            Section s = vanish(*x0, g);
            TildeWord& carrier = even ? w1 : w0;   // gets x itself
            TildeWord& other = even ? w0 : w1;     // gets the one-letter image
            int sign = e > 0 ? 1 : -1;
            for (long i = 0; i < std::labs(e); ++i) carrier.push_back({g, sign});
            if (s == Section::a)
                for (long i = 0; i < std::labs(e); ++i) other.push_back({Gen::a, sign});
        }
    }
    return tilde_rec(w0, omega, level + 1, depth + 1, state) &&
           tilde_rec(w1, omega, level + 1, depth + 1, state);
}

} // namespace

TrivialityResult is_trivial_tilde(const TildeWord& w, const OmegaSeq& omega, std::uint32_t level) {
    WpState state;
    bool t = tilde_rec(w, omega, level, 0, state);
    return TrivialityResult{t, state.max_depth};
}

GenWord tilde_shadow(const TildeWord& w) {
    GenWord out;
    out.reserve(w.size());
    for (const TildeLetter& l : w) out.push_back(l.gen);
    return out;
}

// --- tree action ------------------------------------------------------------

namespace {

void act_vertex_in_place(std::string& v, Gen g, const OmegaSeq& omega, std::uint32_t level) {
    std::size_t d = 0;
    Gen cur = g;
    while (d < v.size()) {
        if (cur == Gen::a) {
            v[d] = (v[d] == '1') ? '2' : '1';
            return;
        }
        if (v[d] == '1') {
            Section s = vanish(omega.at(level + d), cur);
            if (s == Section::one) return;
            cur = Gen::a;
            ++d;
        } else {
            ++d; // same letter acts one level down the '2' branch
        }
    }
}

} // namespace

std::string apply_to_vertex(const GElement& g, std::string_view v) {
    std::string s(v);
    for (char ch : s)
        if (ch != '1' && ch != '2') throw std::invalid_argument("vertex strings use '1' and '2'");
    for (Gen gen : g.word) act_vertex_in_place(s, gen, g.omega, g.level);
    return s;
}

ActionContext::ActionContext(OmegaSeq omega) : omega_(std::move(omega)) {}

const std::vector<std::uint32_t>& ActionContext::gen_perm(Gen g, std::uint32_t level, int depth) {
    auto key = std::make_tuple(static_cast<int>(g), level, depth);
    auto it = perms_.find(key);
    if (it != perms_.end()) return it->second;
    std::uint32_t n = 1u << depth;
    std::vector<std::uint32_t> p(n);
    if (depth == 0) {
        p[0] = 0;
    } else if (g == Gen::a) {
        for (std::uint32_t v = 0; v < n; ++v) p[v] = v ^ 1u;
    } else {
        Section s = vanish(omega_.at(level), g);
        const auto& child = gen_perm(g, level + 1, depth - 1);
        for (std::uint32_t v = 0; v < n; ++v) {
            if (v & 1u)
                p[v] = (child[v >> 1] << 1) | 1u;
            else if (s == Section::a && depth >= 2)
                p[v] = v ^ 2u;
            else
                p[v] = v;
        }
    }
    return perms_.emplace(key, std::move(p)).first->second;
}

std::vector<std::uint32_t> ActionContext::word_perm(const GenWord& w, std::uint32_t level, int depth) {
    std::uint32_t n = 1u << depth;
    std::vector<std::uint32_t> cur(n);
    for (std::uint32_t v = 0; v < n; ++v) cur[v] = v;
    for (Gen g : w) cur = compose(cur, g, level, depth);
    return cur;
}

std::vector<std::uint32_t> ActionContext::compose(const std::vector<std::uint32_t>& base, Gen g,
                                                  std::uint32_t level, int depth) {
    const auto& gp = gen_perm(g, level, depth);
    std::vector<std::uint32_t> out(base.size());
    for (std::size_t v = 0; v < base.size(); ++v) out[v] = gp[base[v]];
    return out;
}

bool ActionContext::trivial(const GenWord& w, std::uint32_t level) {
    GenWord r = reduce(w);
    if (r.empty()) return true;
    std::string key = std::to_string(level);
    key += ':';
    key += to_string(r);
    auto it = verdicts_.find(key);
    if (it != verdicts_.end()) return it->second;
    int acount = 0;
    for (Gen g : r) acount += (g == Gen::a);
    bool result;
    if (acount % 2) {
        result = false;
    } else {
        if (level > 4096) throw ResourceLimit("word problem recursion too deep");
        RawSplit parts = split_word(r, omega_, level);
        result = trivial(parts.first, level + 1) && trivial(parts.second, level + 1);
    }
    if (verdicts_.size() > 4'000'000) verdicts_.clear();
    verdicts_.emplace(std::move(key), result);
    return result;
}

std::vector<std::uint32_t> word_permutation(const GElement& g, int depth) {
    ActionContext ctx(g.omega);
    return ctx.word_perm(g.word, g.level, depth);
}

std::optional<int> moved_vertex_depth(const GElement& g, int max_depth, std::uint64_t node_budget) {
    struct Node {
        GenWord w;
        std::uint32_t level;
        int depth;
    };
    std::deque<Node> queue;
    queue.push_back({reduce(g.word), g.level, 0});
    std::uint64_t visited = 0;
    while (!queue.empty()) {
        Node n = std::move(queue.front());
        queue.pop_front();
        if (n.w.empty()) continue;
        if (++visited > node_budget) throw ResourceLimit("moved-vertex search budget exceeded");
        int acount = 0;
        for (Gen x : n.w) acount += (x == Gen::a);
        if (acount % 2) return n.depth + 1; // the top swap at this node moves a vertex
        if (n.depth + 1 >= max_depth) continue;
        RawSplit parts = split_word(n.w, g.omega, n.level);
        queue.push_back({reduce(std::move(parts.first)), n.level + 1, n.depth + 1});
        queue.push_back({reduce(std::move(parts.second)), n.level + 1, n.depth + 1});
    }
    return std::nullopt;
}

// --- weighted geodesic balls -----------------------------------------------

namespace {

std::uint64_t perm_hash(const std::vector<std::uint32_t>& p) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint32_t v : p) {
        h ^= v;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace

GeodesicBall::GeodesicBall(OmegaSeq omega, std::uint32_t level, const SimplexPoint& V,
                           std::uint64_t budget, int initial_depth)
    : omega_(std::move(omega)),
      level_(level),
      point_(V),
      weights_(weights(V)),
      budget_(budget),
      depth_(initial_depth) {}

struct GeodesicBall::RunResult {
    std::vector<Item> items;
    std::vector<std::optional<Rat>> target_norms;
    bool all_targets_found = false;
    bool collision = false;
};

GeodesicBall::RunResult GeodesicBall::run(std::optional<Rat> limit,
                                          std::optional<std::uint64_t> max_items,
                                          const std::vector<GenWord>* targets) {
    ActionContext ctx(omega_);
    struct Cand {
        Rat norm;
        std::string str;
        GenWord word;
        std::int64_t parent;
        Gen via;
    };
    auto later = [](const Cand& x, const Cand& y) {
        if (x.norm != y.norm) return x.norm > y.norm;
        return x.str > y.str;
    };
    std::priority_queue<Cand, std::vector<Cand>, decltype(later)> pq(later);
    struct Elem {
        Rat norm;
        GenWord word;
        std::vector<std::uint32_t> perm;
    };
    std::deque<Elem> elems;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> index;

    struct Target {
        GenWord word;
        std::vector<std::uint32_t> perm;
        bool found = false;
    };
    std::vector<Target> want;
    std::size_t missing = 0;
    if (targets) {
        for (const GenWord& w : *targets) {
            Target t;
            t.word = reduce(w);
            t.perm = ctx.word_perm(t.word, level_, depth_);
            want.push_back(std::move(t));
        }
        missing = want.size();
    }

    std::uint32_t n = 1u << depth_;
    std::vector<std::uint32_t> id_perm(n);
    for (std::uint32_t v = 0; v < n; ++v) id_perm[v] = v;

    pq.push(Cand{Rat(0), "", GenWord{}, -1, Gen::a});
    RunResult out;
    out.target_norms.resize(want.size());
    while (!pq.empty()) {
        Cand c = pq.top();
        pq.pop();
        if (limit && c.norm > *limit) break;
        std::vector<std::uint32_t> perm =
            c.parent < 0 ? id_perm : ctx.compose(elems[c.parent].perm, c.via, level_, depth_);
        std::uint64_t h = perm_hash(perm);
        bool duplicate = false;
        if (auto it = index.find(h); it != index.end()) {
            for (std::uint32_t id : it->second) {
                if (elems[id].perm != perm) continue; // plain hash clash
                if (elems[id].word == c.word ||
                    ctx.trivial(concat_reduce(c.word, inverse_word(elems[id].word)), level_)) {
                    duplicate = true;
                    break;
                }
                // Two word-problem-distinct elements share the depth-D key.
                out.collision = true;
                return out;
            }
        }
        if (duplicate) continue;
        std::uint32_t id = static_cast<std::uint32_t>(elems.size());
        if (elems.size() + 1 > budget_)
            throw BudgetExceeded("ball enumeration passed budget of " + std::to_string(budget_) +
                                 " elements");
        for (std::size_t t = 0; t < want.size(); ++t) {
            Target& tg = want[t];
            if (tg.found || perm != tg.perm) continue;
            if (c.word == tg.word ||
                ctx.trivial(concat_reduce(c.word, inverse_word(tg.word)), level_)) {
                tg.found = true;
                out.target_norms[t] = c.norm;
                --missing;
            }
        }
        elems.push_back(Elem{c.norm, c.word, std::move(perm)});
        index[h].push_back(id);
        out.items.push_back(Item{c.norm, c.word});
        if (targets && missing == 0) {
            out.all_targets_found = true;
            return out;
        }
        if (max_items && out.items.size() >= *max_items) return out;
        for (Gen g : {Gen::a, Gen::b, Gen::c, Gen::d}) {
            Rat nn = c.norm + weights_.weight(g);
            if (limit && nn > *limit) continue;
            GenWord w2 = c.word;
            w2.push_back(g);
            w2 = reduce(std::move(w2));
            std::string s2 = to_string(w2);
            pq.push(Cand{std::move(nn), std::move(s2), std::move(w2), id, g});
        }
    }
    return out;
}

std::vector<GeodesicBall::Item> GeodesicBall::enumerate(const Rat& limit,
                                                        std::optional<std::uint64_t> max_items) {
    while (true) {
        RunResult r = run(limit, max_items, nullptr);
        if (!r.collision) return std::move(r.items);
        depth_ += 2;
        if (depth_ > 24) throw Error("tree depth exceeded while separating elements");
    }
}

Rat GeodesicBall::norm_of(const GenWord& word) {
    return norms_of({word}).front();
}

std::vector<Rat> GeodesicBall::norms_of(const std::vector<GenWord>& words) {
    while (true) {
        RunResult r = run(std::nullopt, std::nullopt, &words);
        if (r.all_targets_found) {
            std::vector<Rat> out;
            out.reserve(words.size());
            for (const auto& n : r.target_norms) out.push_back(*n);
            return out;
        }
        if (!r.collision) throw Error("geodesic search exhausted without finding the element");
        depth_ += 2;
        if (depth_ > 24) throw Error("tree depth exceeded while separating elements");
    }
}

BallTable ball(const OmegaSeq& omega, std::uint32_t level, const SimplexPoint& V,
               const Rat& radius, std::uint64_t budget) {
    if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");
    GeodesicBall engine(omega, level, V, budget);
    return BallTable{radius, engine.enumerate(radius)};
}

std::string ball_to_csv(const BallTable& table) {
    std::string out = "norm,word\r\n";
    for (const auto& e : table.entries) {
        out += rat_string(e.norm);
        out += ',';
        out += to_string(e.word);
        out += "\r\n";
    }
    return out;
}

Rat element_norm(const GElement& g, const SimplexPoint& V, std::uint64_t budget) {
    GeodesicBall engine(g.omega, g.level, V, budget);
    return engine.norm_of(g.word);
}

// --- block substitutions ----------------------------------------------------

BlockWord parse_block_word(std::string_view text) {
    GenWord letters = parse_gen_word(text);
    if (letters.size() % 2 != 0)
        throw ParseError("block word must be a concatenation of ab/ac/ad", letters.size());
    BlockWord out;
    for (std::size_t i = 0; i < letters.size(); i += 2) {
        if (letters[i] != Gen::a || letters[i + 1] == Gen::a)
            throw ParseError("block word must be a concatenation of ab/ac/ad", i);
        out.push_back(letters[i + 1]);
    }
    return out;
}

GenWord block_word_letters(const BlockWord& w) {
    GenWord out;
    out.reserve(2 * w.size());
    for (Gen g : w) {
        out.push_back(Gen::a);
        out.push_back(g);
    }
    return out;
}

std::string block_word_string(const BlockWord& w) { return to_string(block_word_letters(w)); }

BlockWord substitute_zeta(const BlockWord& w, Letter x) {
    static const std::vector<Gen> table[3][3] = {
        // letter 0: ab -> adabac, ac -> acac, ad -> adad
        {{Gen::d, Gen::b, Gen::c}, {Gen::c, Gen::c}, {Gen::d, Gen::d}},
        // letter 1: ab -> abab, ac -> abacad, ad -> adad
        {{Gen::b, Gen::b}, {Gen::b, Gen::c, Gen::d}, {Gen::d, Gen::d}},
        // letter 2: ab -> abab, ac -> acac, ad -> acadab
        {{Gen::b, Gen::b}, {Gen::c, Gen::c}, {Gen::c, Gen::d, Gen::b}},
    };
    BlockWord out;
    for (Gen g : w) {
        const auto& img = table[static_cast<int>(x)][static_cast<int>(g) - 1];
        out.insert(out.end(), img.begin(), img.end());
    }
    return out;
}

std::array<Int, 3> block_counts(const BlockWord& w) {
    std::array<Int, 3> z{0, 0, 0};
    for (Gen g : w) z[static_cast<int>(g) - 1] += 1;
    return z;
}

ZetaTower zeta_tower(const OmegaSeq& omega, std::uint32_t k, const SimplexPoint& V0) {
    std::vector<Letter> prefix;
    prefix.reserve(k);
    for (std::uint32_t i = 0; i < k; ++i) prefix.push_back(omega.at(i));
    SimplexPoint vk = orbit_end(V0, prefix);
    Gen seed;
    if (vk.beta() <= vk.gamma() && vk.beta() <= vk.delta())
        seed = Gen::b;
    else if (vk.gamma() <= vk.delta())
        seed = Gen::c;
    else
        seed = Gen::d;
    BlockWord blocks{seed};
    for (std::uint32_t i = k; i-- > 0;) blocks = substitute_zeta(blocks, omega.at(i));
    std::array<Int, 3> counts = block_counts(blocks);
    Rat norm = Rat(counts[0]) * V0.beta() + Rat(counts[1]) * V0.gamma() + Rat(counts[2]) * V0.delta();
    return ZetaTower{seed, blocks, block_word_letters(blocks), norm};
}

} // namespace gromega
