#include "gromega/wreath.hpp"

#include "gromega/errors.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace gromega {

WreathElement w_identity(OmegaSeq omega, std::uint32_t level) {
    return WreathElement{{}, GElement{std::move(omega), level, {}}};
}

namespace {

void add_lamp(std::map<BoundaryPoint, std::uint32_t>& support, const BoundaryPoint& p,
              std::uint32_t value, std::uint32_t modulus) {
    if (value % modulus == 0) return;
    auto [it, fresh] = support.emplace(p, 0);
    it->second = (it->second + value) % modulus;
    if (it->second == 0) support.erase(it);
    (void)fresh;
}

} // namespace

WreathElement w_multiply(const AbelianSpec& A, const WreathElement& x, const WreathElement& y) {
    if (x.g.level != y.g.level)
        throw std::invalid_argument("wreath elements live at different levels");
    WreathElement out;
    out.g = GElement{x.g.omega, x.g.level, concat_reduce(x.g.word, y.g.word)};
    out.support = x.support;
    GenWord ginv = inverse_word(x.g.word);
    for (const auto& [q, v] : y.support) {
        BoundaryPoint p = q;
        for (Gen g : ginv) p = act_point(p, g, x.g.omega, x.g.level);
        add_lamp(out.support, p, v, A.modulus);
    }
    return out;
}

WreathElement w_inverse(const AbelianSpec& A, const WreathElement& x) {
    WreathElement out;
    out.g = GElement{x.g.omega, x.g.level, inverse_word(x.g.word)};
    for (const auto& [p, v] : x.support) {
        BoundaryPoint q = p;
        for (Gen g : x.g.word) q = act_point(q, g, x.g.omega, x.g.level);
        add_lamp(out.support, q, A.modulus - v, A.modulus);
    }
    return out;
}

bool w_equal(const WreathElement& x, const WreathElement& y) {
    if (x.support != y.support) return false;
    return equal_elements(x.g, y.g);
}

std::string w_key(const WreathElement& x) {
    std::string key;
    for (const auto& [p, v] : x.support) {
        key += p.prefix();
        key += '=';
        key += std::to_string(v);
        key += ';';
    }
    key += '#';
    key += to_string(x.g.word);
    return key;
}

std::vector<WGenerator> w_generators(const OmegaSeq& omega, const AbelianSpec& A,
                                     const SimplexPoint& V, bool mixed) {
    (void)omega;
    if (A.modulus < 2) throw std::invalid_argument("lamp group needs modulus >= 2");
    MetricWeights w = weights(V);
    std::vector<WGenerator> out;
    if (!mixed) {
        for (Gen g : {Gen::a, Gen::b, Gen::c, Gen::d})
            out.push_back(WGenerator{g, 0, w.weight(g), std::string(1, to_char(g))});
        for (std::uint32_t r = 1; r < A.modulus; ++r)
            out.push_back(WGenerator{std::nullopt, r, w.wa, "t" + std::to_string(r)});
        return out;
    }
    for (std::uint32_t r = 0; r < A.modulus; ++r) {
        if (r != 0)
            out.push_back(WGenerator{std::nullopt, r, w.wa, "t" + std::to_string(r)});
        for (Gen g : {Gen::a, Gen::b, Gen::c, Gen::d}) {
            std::string name(1, to_char(g));
            if (r != 0) name += "t" + std::to_string(r);
            out.push_back(WGenerator{g, r, w.weight(g), name});
        }
    }
    return out;
}

// --- Dijkstra over the wreath product ---------------------------------------

namespace {

std::uint64_t mix_hash(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

std::uint64_t perm_hash(const std::vector<std::uint32_t>& p) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint32_t v : p) {
        h ^= v;
        h *= 1099511628211ull;
    }
    return h;
}

std::string support_key(const std::map<BoundaryPoint, std::uint32_t>& support) {
    std::string key;
    for (const auto& [p, v] : support) {
        key += p.prefix();
        key += '=';
        key += std::to_string(v);
        key += ';';
    }
    return key;
}

struct WSearchResult {
    std::vector<WBallEntry> entries;
    std::optional<Rat> target_norm;
    bool collision = false;
};

class WreathBallEngine {
public:
    WreathBallEngine(OmegaSeq omega, std::uint32_t level, const AbelianSpec& A,
                     const SimplexPoint& V, std::uint64_t budget, bool mixed)
        : omega_(std::move(omega)),
          level_(level),
          abelian_(A),
          point_(V),
          budget_(budget),
          mixed_(mixed),
          depth_(8) {}

    std::vector<WBallEntry> enumerate(const Rat& limit) {
        while (true) {
            WSearchResult r = run(limit, nullptr);
            if (!r.collision) return std::move(r.entries);
            bump_depth();
        }
    }

    Rat norm_of(const WreathElement& target) {
        while (true) {
            WSearchResult r = run(std::nullopt, &target);
            if (r.target_norm) return *r.target_norm;
            if (!r.collision) throw Error("wreath search exhausted without finding the element");
            bump_depth();
        }
    }

private:
    void bump_depth() {
        depth_ += 2;
        if (depth_ > 24) throw Error("tree depth exceeded while separating elements");
    }

    WSearchResult run(std::optional<Rat> limit, const WreathElement* target) {
        ActionContext ctx(omega_);
        std::vector<WGenerator> gens = w_generators(omega_, abelian_, point_, mixed_);

        struct Cand {
            Rat norm;
            std::string key;
            std::map<BoundaryPoint, std::uint32_t> support;
            GenWord word;
            std::int64_t parent;
            std::optional<Gen> via;
        };
        auto later = [](const Cand& x, const Cand& y) {
            if (x.norm != y.norm) return x.norm > y.norm;
            return x.key > y.key;
        };
        std::priority_queue<Cand, std::vector<Cand>, decltype(later)> pq(later);

        struct Elem {
            Rat norm;
            std::map<BoundaryPoint, std::uint32_t> support;
            GenWord word;
            std::vector<std::uint32_t> perm;
            BoundaryPoint lamp_spot; // rho . g^{-1}
        };
        std::deque<Elem> elems;
        std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> index;

        std::vector<std::uint32_t> target_perm;
        std::string target_support;
        GenWord target_word;
        if (target) {
            target_word = reduce(target->g.word);
            target_perm = ctx.word_perm(target_word, level_, depth_);
            target_support = support_key(target->support);
        }

        std::uint32_t n = 1u << depth_;
        std::vector<std::uint32_t> id_perm(n);
        for (std::uint32_t v = 0; v < n; ++v) id_perm[v] = v;

        pq.push(Cand{Rat(0), "#", {}, {}, -1, std::nullopt});
        WSearchResult out;
        while (!pq.empty()) {
            Cand c = pq.top();
            pq.pop();
            if (limit && c.norm > *limit) break;
            std::vector<std::uint32_t> perm =
                c.parent < 0 ? id_perm
                             : (c.via ? ctx.compose(elems[c.parent].perm, *c.via, level_, depth_)
                                      : elems[c.parent].perm);
            std::string skey = support_key(c.support);
            std::uint64_t h = mix_hash(perm_hash(perm), std::hash<std::string>{}(skey));
            bool duplicate = false;
            if (auto it = index.find(h); it != index.end()) {
                for (std::uint32_t id : it->second) {
                    if (elems[id].perm != perm || support_key(elems[id].support) != skey) continue;
                    if (elems[id].word == c.word ||
                        ctx.trivial(concat_reduce(c.word, inverse_word(elems[id].word)), level_)) {
                        duplicate = true;
                        break;
                    }
                    out.collision = true;
                    return out;
                }
            }
            if (duplicate) continue;
            if (elems.size() + 1 > budget_)
                throw BudgetExceeded("wreath ball passed budget of " + std::to_string(budget_) +
                                     " elements");
            bool is_target = false;
            if (target && skey == target_support && perm == target_perm &&
                (c.word == target_word ||
                 ctx.trivial(concat_reduce(c.word, inverse_word(target_word)), level_)))
                is_target = true;

            BoundaryPoint spot = BoundaryPoint::rho();
            for (Gen g : inverse_word(c.word)) spot = act_point(spot, g, omega_, level_);

            std::uint32_t id = static_cast<std::uint32_t>(elems.size());
            elems.push_back(Elem{c.norm, c.support, c.word, std::move(perm), spot});
            index[h].push_back(id);
            out.entries.push_back(
                WBallEntry{c.norm, WreathElement{c.support, GElement{omega_, level_, c.word}}});
            if (is_target) {
                out.target_norm = c.norm;
                return out;
            }
            for (const WGenerator& gen : gens) {
                Rat nn = c.norm + gen.weight;
                if (limit && nn > *limit) continue;
                Cand child;
                child.norm = std::move(nn);
                child.support = c.support;
                child.word = c.word;
                child.parent = id;
                child.via = gen.gen;
                if (gen.gen) {
                    child.word.push_back(*gen.gen);
                    child.word = reduce(std::move(child.word));
                }
                if (gen.residue != 0) {
                    BoundaryPoint p = elems[id].lamp_spot;
                    if (gen.gen) {
                        // lamp lands at rho . (g s)^{-1}
                        p = BoundaryPoint::rho();
                        for (Gen g : inverse_word(child.word)) p = act_point(p, g, omega_, level_);
                    }
                    add_lamp(child.support, p, gen.residue, abelian_.modulus);
                }
                child.key = support_key(child.support) + "#" + to_string(child.word);
                pq.push(std::move(child));
            }
        }
        return out;
    }

    OmegaSeq omega_;
    std::uint32_t level_;
    AbelianSpec abelian_;
    SimplexPoint point_;
    std::uint64_t budget_;
    bool mixed_;
    int depth_;
};

} // namespace

WBallTable ball_W(const OmegaSeq& omega, const AbelianSpec& A, const SimplexPoint& V,
                  const Rat& radius, std::uint64_t budget, bool mixed) {
    if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");
    WreathBallEngine engine(omega, 0, A, V, budget, mixed);
    return WBallTable{radius, engine.enumerate(radius)};
}

Rat w_element_norm(const WreathElement& x, const AbelianSpec& A, const SimplexPoint& V,
                   std::uint64_t budget, bool mixed) {
    WreathBallEngine engine(x.g.omega, x.g.level, A, V, budget, mixed);
    return engine.norm_of(x);
}

std::vector<WreathElement> witness_set(const OmegaSeq& omega, const AbelianSpec& A,
                                       const SimplexPoint& V, const Rat& R,
                                       const OrbitSearchOptions& opt) {
    DeltaResult dr = delta_search(omega, V, R, opt);
    GenWord base = inverse_word(dr.realizer);
    MetricWeights w = weights(V);

    // Lamp positions: images of the basepoint under inverses of the base
    // word prefixes; as a set this is exactly the maximal inverted orbit.
    std::vector<BoundaryPoint> points;
    {
        std::set<BoundaryPoint> seen;
        for (std::size_t j = 0; j <= base.size(); ++j) {
            BoundaryPoint p = BoundaryPoint::rho();
            for (std::size_t i = j; i-- > 0;) p = act_point(p, base[i], omega, 0);
            if (seen.insert(p).second) points.push_back(p);
        }
    }
    if (points.size() != dr.delta) throw Error("witness orbit size mismatch");

    Rat base_norm = 0;
    for (Gen g : base) base_norm += w.weight(g);

    std::uint64_t k = points.size();
    bool lamps_fit = k * w.wa <= R; // each lamp letter costs ||a||
    std::uint64_t total = 1;
    if (lamps_fit) {
        for (std::uint64_t i = 0; i < k; ++i) {
            total *= A.modulus;
            if (total > (std::uint64_t(1) << 22))
                throw BudgetExceeded("witness configuration count too large");
        }
    }

    std::vector<WreathElement> out;
    out.reserve(total);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        WreathElement e;
        e.g = GElement{omega, 0, reduce(base)};
        std::uint64_t m = mask;
        std::uint64_t lamps = 0;
        for (std::uint64_t i = 0; i < k; ++i) {
            std::uint32_t r = static_cast<std::uint32_t>(m % A.modulus);
            m /= A.modulus;
            if (r != 0) {
                e.support.emplace(points[i], r);
                ++lamps;
            }
        }
        Rat word_norm = base_norm + Rat(static_cast<long>(lamps)) * w.wa;
        if (word_norm > 2 * R) throw Error("witness word norm exceeds 2R");
        out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(),
              [](const WreathElement& x, const WreathElement& y) { return w_key(x) < w_key(y); });
    return out;
}

PsiSplitResult psi_split(const WreathElement& x) {
    WreathSplitResult gs = wreath_split(x.g);
    PsiSplitResult out{WreathElement{{}, gs.first}, WreathElement{{}, gs.second}, gs.swapped};
    for (const auto& [p, v] : x.support) {
        if (p.is_rho() || p.prefix()[0] == '2') {
            std::string tail = p.is_rho() ? std::string() : p.prefix().substr(1);
            out.second.support.emplace(BoundaryPoint(std::move(tail)), v);
        } else {
            out.first.support.emplace(BoundaryPoint(p.prefix().substr(1)), v);
        }
    }
    return out;
}

} // namespace gromega
