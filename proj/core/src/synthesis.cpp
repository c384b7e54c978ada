#include "gromega/synthesis.hpp"

#include "gromega/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gromega {

double eta_plus() {
    static const double value = largest_real_root(CubicPoly{Int(-1), Int(-2), Int(-4)});
    return value;
}

double alpha_minus() {
    static const double value = M_LN2 / std::log(eta_plus());
    return value;
}

double TargetGrowth::eval(double R) const {
    if (R <= 0) throw std::invalid_argument("growth targets are defined for R > 0");
    return std::exp(log_eval_log(std::log(R)));
}

TargetGrowth preset_growth(const std::string& name) {
    TargetGrowth g;
    g.name = name;
    if (name == "linear") {
        g.log_eval_log = [](double lr) { return lr; };
    } else if (name.rfind("pow:", 0) == 0) {
        double alpha = 0.0;
        try {
            alpha = std::stod(name.substr(4));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad exponent in '" + name + "'");
        }
        if (!(alpha > 0.0) || alpha > 2.0)
            throw std::invalid_argument("pow exponent must be in (0, 2]");
        g.log_eval_log = [alpha](double lr) { return alpha * lr; };
    } else if (name == "r-over-log") {
        g.log_eval_log = [](double lr) { return lr - std::log1p(lr); };
    } else if (name == "r-over-loglog") {
        g.log_eval_log = [](double lr) { return lr - std::log1p(std::log1p(lr)); };
    } else if (name == "ackermann-inverse") {
        // Slow factor through (A(m,m), m+1) for m = 0..3, log-linear in
        // log R, capped at 4 past A(3,3) = 61.
        g.log_eval_log = [](double lr) {
            static const double lx[4] = {0.0, std::log(3.0), std::log(7.0), std::log(61.0)};
            static const double hy[4] = {1.0, 2.0, 3.0, 4.0};
            double h;
            if (lr <= lx[0])
                h = hy[0];
            else if (lr >= lx[3])
                h = hy[3];
            else {
                int s = 0;
                while (s < 2 && lr > lx[s + 1]) ++s;
                double t = (lr - lx[s]) / (lx[s + 1] - lx[s]);
                h = hy[s] + t * (hy[s + 1] - hy[s]);
            }
            return lr - std::log(h);
        };
    } else {
        throw std::invalid_argument("unknown growth preset '" + name + "'");
    }
    if (std::abs(g.log_eval(0.0)) > 1e-9)
        throw Error("growth preset is not normalized to g(1) = 1");
    return g;
}

DoublingReport check_doubling(const TargetGrowth& g, double rmin, double rmax, int samples) {
    if (!(rmin >= 1.0) || !(rmax > rmin) || samples < 2)
        throw std::invalid_argument("need 1 <= rmin < rmax and samples >= 2");
    const double leta = std::log(eta_plus());
    DoublingReport rep{true, 1e300, 1e300, {}, {}, rmin, rmax, samples};
    double l0 = std::log(rmin), l1 = std::log(rmax);
    for (int i = 0; i < samples; ++i) {
        double lr = l0 + (l1 - l0) * i / (samples - 1);
        double lg = g.log_eval(lr);
        double left = M_LN2 + lg - g.log_eval(lr + M_LN2);
        double right = g.log_eval(lr + leta) - M_LN2 - lg;
        rep.worst_left_margin = std::min(rep.worst_left_margin, left);
        rep.worst_right_margin = std::min(rep.worst_right_margin, right);
        if (left < -1e-12 && rep.left_violations.size() < 16)
            rep.left_violations.push_back(std::exp(lr));
        if (right < -1e-12 && rep.right_violations.size() < 16)
            rep.right_violations.push_back(std::exp(lr));
    }
    rep.ok = rep.left_violations.empty() && rep.right_violations.empty();
    return rep;
}

SynthesisTrace synthesize_omega(const TargetGrowth& g, const SimplexPoint& V0, std::uint64_t N) {
    if (N < 3) throw std::invalid_argument("prefix length must be >= 3");
    const double tie = 1e-9;
    SynthesisTrace trace;
    SimplexPoint V = V0;
    Rat eta_prod = 1;

    auto append = [&](Letter x) {
        eta_prod *= eta(V, x);
        V = apply_map(V, x);
        trace.prefix.push_back(x);
    };
    auto log_g = [&]() { return g.log_eval(log_rat(eta_prod)); };
    auto target = [&]() { return static_cast<double>(trace.prefix.size()) * M_LN2; };

    while (trace.prefix.size() < N) {
        std::uint64_t appended = 0;
        // 012 phase: run until g is strictly above 2^k (ties keep going).
        std::uint64_t blocks012 = 0;
        while (trace.prefix.size() < N && log_g() <= target() + tie) {
            append(Letter::l0);
            append(Letter::l1);
            append(Letter::l2);
            ++blocks012;
            ++appended;
        }
        if (blocks012 > 0) {
            trace.syllables.push_back(SyllablePair{blocks012, 0});
            if (trace.prefix.size() < N) {
                double lg = log_g();
                trace.boundaries.push_back(BoundaryRecord{trace.prefix.size(), false, lg / M_LN2,
                                                          std::exp(lg - target())});
            }
        }
        if (trace.prefix.size() >= N) {
            trace.truncated_mid_block = blocks012 > 0;
            break;
        }
        // 2 phase: run until g is strictly below 2^k (ties stop).
        std::uint64_t twos = 0;
        while (trace.prefix.size() < N && log_g() >= target() - tie) {
            append(Letter::l2);
            ++twos;
            ++appended;
        }
        if (twos > 0) {
            if (trace.syllables.empty())
                throw StallError("2 block before any 012 block");
            trace.syllables.back().j += twos;
            if (trace.prefix.size() < N) {
                double lg = log_g();
                trace.boundaries.push_back(BoundaryRecord{trace.prefix.size(), true, lg / M_LN2,
                                                          std::exp(lg - target())});
            } else {
                trace.truncated_mid_block = true;
            }
        }
        if (appended == 0)
            throw StallError("greedy construction cannot make progress; the target likely "
                             "violates the doubling condition");
    }
    trace.final_ratio = std::exp(log_g() - target());
    return trace;
}

SandwichReport verify_sandwich(const SynthesisTrace& trace, const TargetGrowth& g,
                               const SimplexPoint& V0) {
    SandwichReport rep{1e300, 0.0, 0, 0, 0};
    SimplexPoint V = V0;
    Rat eta_prod = 1;
    std::size_t next = 0;
    const double slack = 1e-9;
    std::uint64_t seen_boundaries = 0;
    for (std::uint64_t k = 0; k <= trace.prefix.size(); ++k) {
        while (next < trace.boundaries.size() && trace.boundaries[next].k == k) {
            const BoundaryRecord& b = trace.boundaries[next];
            double lg = g.log_eval(log_rat(eta_prod));
            double ratio = std::exp(lg - static_cast<double>(k) * M_LN2);
            rep.A_obs = std::min(rep.A_obs, ratio);
            rep.B_obs = std::max(rep.B_obs, ratio);
            bool ok = b.after_two_block ? (ratio >= 0.5 - slack && ratio <= 1.0 + slack)
                                        : (ratio >= 1.0 - slack && ratio <= 27.0 + slack);
            ++seen_boundaries;
            if (!ok) {
                ++rep.phase_violations;
                if (seen_boundaries > 2) ++rep.phase_violations_after_first_two;
            }
            ++next;
        }
        if (k == trace.prefix.size()) break;
        Letter x = trace.prefix[k];
        eta_prod *= eta(V, x);
        V = apply_map(V, x);
    }
    rep.boundary_count = seen_boundaries;
    if (seen_boundaries == 0) {
        rep.A_obs = trace.final_ratio;
        rep.B_obs = trace.final_ratio;
    }
    return rep;
}

std::uint64_t ackermann(std::uint64_t m, std::uint64_t n) {
    std::vector<std::uint64_t> stack{m};
    std::uint64_t acc = n;
    std::uint64_t steps = 0;
    while (!stack.empty()) {
        if (++steps > 50'000'000)
            throw ResourceLimit("ackermann evaluation budget exceeded");
        std::uint64_t top = stack.back();
        stack.pop_back();
        if (top == 0) {
            acc += 1;
        } else if (acc == 0) {
            stack.push_back(top - 1);
            acc = 1;
        } else {
            stack.push_back(top - 1);
            stack.push_back(top);
            acc -= 1;
        }
        if (acc > (std::uint64_t(1) << 62))
            throw ResourceLimit("ackermann value out of range");
    }
    return acc;
}

double PiecewiseLinear::operator()(double R) const {
    if (vertices.empty()) throw Error("empty envelope");
    if (vertices.size() == 1) return vertices[0].second;
    std::size_t hi = 1;
    if (R >= vertices.back().first)
        hi = vertices.size() - 1;
    else
        while (vertices[hi].first < R) ++hi;
    const auto& [x0, y0] = vertices[hi - 1];
    const auto& [x1, y1] = vertices[hi];
    double t = (R - x0) / (x1 - x0);
    return y0 + t * (y1 - y0);
}

PiecewiseLinear concave_majorand(std::vector<std::pair<double, double>> samples) {
    if (samples.empty()) throw std::invalid_argument("need at least one sample");
    for (const auto& [r, v] : samples)
        if (v < 0) throw std::invalid_argument("sample values must be nonnegative");
    std::sort(samples.begin(), samples.end());
    // Collapse duplicate abscissae onto the max value.
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : samples) {
        if (!pts.empty() && pts.back().first == s.first)
            pts.back().second = std::max(pts.back().second, s.second);
        else
            pts.push_back(s);
    }
    // Upper hull, left to right: drop middle points under the chord.
    PiecewiseLinear env;
    for (const auto& p : pts) {
        auto& h = env.vertices;
        while (h.size() >= 2) {
            const auto& a = h[h.size() - 2];
            const auto& b = h[h.size() - 1];
            double cross = (b.first - a.first) * (p.second - a.second) -
                           (p.first - a.first) * (b.second - a.second);
            if (cross >= 0)
                h.pop_back(); // b is on or below the chord a--p
            else
                break;
        }
        h.push_back(p);
    }
    return env;
}

std::vector<ReportRow> growth_report(const OmegaSeq& omega, const SimplexPoint& V0,
                                     std::uint32_t kmax, const AbelianSpec& A,
                                     const ReportBudgets& budgets) {
    if (kmax < 1) throw std::invalid_argument("kmax must be >= 1");
    std::vector<ReportRow> rows;
    SimplexPoint V = V0;
    Rat eta_prod = 1;
    for (std::uint32_t k = 0; k <= kmax; ++k) {
        ReportRow row;
        row.k = k;
        row.mu_k = mu(V);
        row.eta_k = eta(V, omega.at(k));
        row.radius = eta_prod * row.mu_k;
        try {
            row.v_g = ball(omega, 0, V0, row.radius, budgets.ball_budget).count();
        } catch (const BudgetExceeded&) {
        }
        try {
            row.v_w = ball_W(omega, A, V0, row.radius, budgets.wreath_budget).count();
        } catch (const BudgetExceeded&) {
        }
        if (k <= budgets.zeta_kmax) {
            ZetaTower zt = zeta_tower(omega, k, V0);
            row.delta_zeta = inverted_orbit(zt.word, omega).size();
        }
        double r = to_double(row.radius);
        if (row.v_g && r > 1.0 && *row.v_g >= 3)
            row.alpha_g = std::log(std::log(static_cast<double>(*row.v_g))) / std::log(r);
        if (row.v_w && r > 1.0 && *row.v_w >= 3)
            row.alpha_w = std::log(std::log(static_cast<double>(*row.v_w))) / std::log(r);
        eta_prod *= row.eta_k;
        V = apply_map(V, omega.at(k));
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

std::string report_to_csv(const std::vector<ReportRow>& rows) {
    std::string out = "k,R,eta_k,mu_k,v_G,v_W,delta_zeta,alpha_G,alpha_W\r\n";
    for (const auto& r : rows) {
        out += std::to_string(r.k);
        out += ',' + rat_string(r.radius);
        out += ',' + rat_string(r.eta_k);
        out += ',' + rat_string(r.mu_k);
        out += ',';
        out += r.v_g ? std::to_string(*r.v_g) : std::string("skipped: budget");
        out += ',';
        out += r.v_w ? std::to_string(*r.v_w) : std::string("skipped: budget");
        out += ',';
        out += r.delta_zeta ? std::to_string(*r.delta_zeta) : std::string("skipped: budget");
        out += ',';
        out += r.alpha_g ? fmt_double(*r.alpha_g) : std::string();
        out += ',';
        out += r.alpha_w ? fmt_double(*r.alpha_w) : std::string();
        out += "\r\n";
    }
    return out;
}

} // namespace gromega
