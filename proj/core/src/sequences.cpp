#include "gromega/sequences.hpp"

#include "gromega/errors.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace gromega {

char to_char(Letter x) { return static_cast<char>('0' + static_cast<int>(x)); }

Letter letter_from_char(char c) {
    if (c < '0' || c > '2') throw ParseError(std::string("invalid letter '") + c + "'", 0);
    return static_cast<Letter>(c - '0');
}

char to_char(Gen g) { return "abcd"[static_cast<int>(g)]; }

Gen gen_from_char(char c) {
    switch (c) {
        case 'a': return Gen::a;
        case 'b': return Gen::b;
        case 'c': return Gen::c;
        case 'd': return Gen::d;
        default: throw ParseError(std::string("invalid generator '") + c + "'", 0);
    }
}

std::vector<Letter> parse_letter_word(std::string_view text) {
    std::vector<Letter> out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '2')
            throw ParseError(std::string("invalid letter '") + text[i] + "'", i);
        out.push_back(static_cast<Letter>(text[i] - '0'));
    }
    return out;
}

std::string to_string(const std::vector<Letter>& word) {
    std::string s;
    s.reserve(word.size());
    for (Letter x : word) s.push_back(to_char(x));
    return s;
}

Section vanish(Letter x, Gen g) {
    if (g == Gen::a) throw std::invalid_argument("vanish is defined on b, c, d only");
    // 0 kills b, 1 kills c, 2 kills d.
    return static_cast<int>(g) == static_cast<int>(x) + 1 ? Section::one : Section::a;
}

namespace {

// Lazily extended boundary table for sequences of the shape
// (012) 2^{j_1} (012) 2^{j_2} ...  A nullopt block length means the 2-block
// never ends at any reachable index.
struct SyllableStream {
    std::function<std::optional<Int>(std::uint64_t)> block_len; // t >= 1 -> j_t
    std::mutex lock;
    std::vector<Int> marks; // alternating ends: 012-block, 2-block, ...
    bool open_tail = false;

    Letter at(std::uint64_t idx) {
        std::scoped_lock guard(lock);
        while (!open_tail && (marks.empty() || marks.back() <= idx)) {
            std::uint64_t t = marks.size() / 2 + 1;
            Int start = marks.empty() ? Int(0) : marks.back();
            marks.push_back(start + 3);
            if (auto j = block_len(t))
                marks.push_back(start + 3 + *j);
            else
                open_tail = true;
        }
        auto it = std::upper_bound(marks.begin(), marks.end(), Int(idx));
        if (it == marks.end()) return Letter::l2; // inside the open tail
        std::size_t m = static_cast<std::size_t>(it - marks.begin());
        if (m % 2 == 1) return Letter::l2; // inside a 2-block
        Int start = m == 0 ? Int(0) : marks[m - 1];
        Int pos = Int(idx) - start; // 0, 1 or 2
        return static_cast<Letter>(pos.get_ui());
    }
};

} // namespace

struct OmegaSeq::Impl {
    Kind kind = Kind::periodic;
    std::vector<Letter> word;          // finite / periodic
    std::vector<SyllablePair> blocks;  // syllable
    std::vector<std::uint64_t> cum;    // syllable: cumulative letters per block within one cycle
    std::uint64_t cycle_len = 0;

    std::string name;
    std::function<Letter(std::uint64_t)> rule;
    bool memoize = false;
    mutable std::mutex lock;
    mutable std::vector<Letter> memo;

    Letter letter(std::uint64_t i) const {
        switch (kind) {
            case Kind::finite:
                if (i >= word.size())
                    throw RangeError("explicit sequence index " + std::to_string(i) +
                                     " out of range (length " + std::to_string(word.size()) + ")");
                return word[i];
            case Kind::periodic:
                return word[i % word.size()];
            case Kind::syllable: {
                std::uint64_t r = i % cycle_len;
                auto it = std::upper_bound(cum.begin(), cum.end(), r);
                std::size_t b = static_cast<std::size_t>(it - cum.begin());
                std::uint64_t start = b == 0 ? 0 : cum[b - 1];
                std::uint64_t pos = r - start;
                std::uint64_t triple = 3 * blocks[b].i;
                return pos < triple ? static_cast<Letter>(pos % 3) : Letter::l2;
            }
            case Kind::programmatic:
                if (!memoize) return rule(i);
                {
                    std::scoped_lock guard(lock);
                    while (memo.size() <= i) memo.push_back(rule(memo.size()));
                    return memo[i];
                }
        }
        throw Error("corrupt sequence kind");
    }
};

OmegaSeq::OmegaSeq() : OmegaSeq(periodic_word({Letter::l0, Letter::l1, Letter::l2})) {}

OmegaSeq OmegaSeq::explicit_word(std::vector<Letter> w) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::finite;
    impl->word = std::move(w);
    return OmegaSeq(std::move(impl));
}

OmegaSeq OmegaSeq::periodic_word(std::vector<Letter> w) {
    if (w.empty()) throw std::invalid_argument("periodic sequence needs a nonempty word");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::periodic;
    impl->word = std::move(w);
    return OmegaSeq(std::move(impl));
}

OmegaSeq OmegaSeq::syllable_form(std::vector<SyllablePair> blocks) {
    if (blocks.empty()) throw std::invalid_argument("syllable form needs at least one block");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::syllable;
    std::uint64_t cum = 0;
    for (const auto& b : blocks) {
        if (b.i < 1 || b.j < 1)
            throw std::invalid_argument("syllable exponents must be >= 1");
        cum += 3 * b.i + b.j;
        impl->cum.push_back(cum);
    }
    impl->cycle_len = cum;
    impl->blocks = std::move(blocks);
    return OmegaSeq(std::move(impl));
}

OmegaSeq OmegaSeq::programmatic(std::string name, std::function<Letter(std::uint64_t)> rule) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::programmatic;
    impl->name = std::move(name);
    impl->rule = std::move(rule);
    impl->memoize = true;
    return OmegaSeq(std::move(impl));
}

OmegaSeq OmegaSeq::preset(std::string_view name) {
    auto stream = std::make_shared<SyllableStream>();
    if (name == "sqrt") {
        stream->block_len = [](std::uint64_t t) { return std::optional<Int>(Int(t)); };
    } else if (name == "geom") {
        stream->block_len = [](std::uint64_t t) {
            Int j;
            mpz_ui_pow_ui(j.get_mpz_t(), 2, t - 1);
            return std::optional<Int>(j);
        };
    } else if (name == "doublegeom") {
        stream->block_len = [](std::uint64_t t) -> std::optional<Int> {
            if (t > 64) return std::nullopt; // unreachable at any indexable position
            Int j;
            mpz_ui_pow_ui(j.get_mpz_t(), 2, std::uint64_t(1) << (t - 1));
            return j;
        };
    } else if (name == "ackermann") {
        // Blocks 2^{A(m,m)} for m = 0,1,2,3; the next block exceeds any
        // reachable index, served as an unbounded 2-tail.
        stream->block_len = [](std::uint64_t t) -> std::optional<Int> {
            static const std::uint64_t diag[] = {1, 3, 7, 61};
            if (t > 4) return std::nullopt;
            return Int(diag[t - 1]);
        };
    } else {
        throw ParseError("unknown programmatic preset '" + std::string(name) + "'", 0);
    }
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::programmatic;
    impl->name = std::string(name);
    impl->rule = [stream](std::uint64_t i) { return stream->at(i); };
    impl->memoize = false; // the stream is already O(log) and synchronized
    return OmegaSeq(std::move(impl));
}

Letter OmegaSeq::at(std::uint64_t i) const { return impl_->letter(offset_ + i); }

OmegaSeq OmegaSeq::shifted(std::uint64_t k) const {
    OmegaSeq s(*this);
    s.offset_ += k;
    return s;
}

OmegaSeq::Kind OmegaSeq::kind() const { return impl_->kind; }

std::uint64_t OmegaSeq::offset() const { return offset_; }

std::optional<std::uint64_t> OmegaSeq::remaining() const {
    if (impl_->kind != Kind::finite) return std::nullopt;
    std::uint64_t n = impl_->word.size();
    return offset_ >= n ? 0 : n - offset_;
}

std::string OmegaSeq::spec() const {
    switch (impl_->kind) {
        case Kind::finite: {
            std::string s = "exp:";
            for (std::uint64_t i = offset_; i < impl_->word.size(); ++i)
                s.push_back(to_char(impl_->word[i]));
            return s;
        }
        case Kind::periodic: {
            std::string s = "per:";
            std::uint64_t n = impl_->word.size();
            for (std::uint64_t i = 0; i < n; ++i)
                s.push_back(to_char(impl_->word[(offset_ + i) % n]));
            return s;
        }
        case Kind::syllable: {
            std::string s = "syll:";
            for (std::size_t b = 0; b < impl_->blocks.size(); ++b) {
                if (b) s.push_back(';');
                s += std::to_string(impl_->blocks[b].i) + "," + std::to_string(impl_->blocks[b].j);
            }
            if (offset_) s += "@+" + std::to_string(offset_);
            return s;
        }
        case Kind::programmatic: {
            std::string s = "prog:" + impl_->name;
            if (offset_) s += "@+" + std::to_string(offset_);
            return s;
        }
    }
    return "";
}

OmegaSeq parse_omega_spec(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw ParseError("expected '<kind>:<body>' omega spec", 0);
    std::string_view kind = text.substr(0, colon);
    std::string_view body = text.substr(colon + 1);
    std::size_t base = colon + 1;
    if (kind == "per" || kind == "exp") {
        std::vector<Letter> w;
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (body[i] < '0' || body[i] > '2')
                throw ParseError(std::string("invalid letter '") + body[i] + "'", base + i);
            w.push_back(static_cast<Letter>(body[i] - '0'));
        }
        if (kind == "per") {
            if (w.empty()) throw ParseError("periodic word must be nonempty", base);
            return OmegaSeq::periodic_word(std::move(w));
        }
        return OmegaSeq::explicit_word(std::move(w));
    }
    if (kind == "syll") {
        std::vector<SyllablePair> blocks;
        std::size_t pos = 0;
        auto read_number = [&]() -> std::uint64_t {
            std::size_t start = pos;
            std::uint64_t v = 0;
            while (pos < body.size() && body[pos] >= '0' && body[pos] <= '9') {
                v = v * 10 + static_cast<std::uint64_t>(body[pos] - '0');
                ++pos;
            }
            if (pos == start) throw ParseError("expected a number", base + pos);
            return v;
        };
        while (true) {
            std::uint64_t i = read_number();
            if (pos >= body.size() || body[pos] != ',')
                throw ParseError("expected ','", base + pos);
            ++pos;
            std::uint64_t j = read_number();
            if (i < 1 || j < 1)
                throw ParseError("syllable exponents must be >= 1", base + pos);
            blocks.push_back({i, j});
            if (pos == body.size()) break;
            if (body[pos] != ';') throw ParseError("expected ';'", base + pos);
            ++pos;
        }
        return OmegaSeq::syllable_form(std::move(blocks));
    }
    if (kind == "prog") {
        try {
            return OmegaSeq::preset(body);
        } catch (const ParseError&) {
            throw ParseError("unknown programmatic preset '" + std::string(body) + "'", base);
        }
    }
    throw ParseError("unknown omega spec kind '" + std::string(kind) + "'", 0);
}

double bernoulli_distance(const OmegaSeq& w1, const OmegaSeq& w2, std::uint64_t horizon) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    double sum = 0.0;
    double term = 1.0;
    for (std::uint64_t i = 0; i < horizon; ++i, term *= 0.5)
        if (w1.at(i) != w2.at(i)) sum += term;
    return sum;
}

} // namespace gromega
