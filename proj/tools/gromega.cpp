// gromega: command line frontend for the group-growth toolkit.

#include "gromega/errors.hpp"
#include "gromega/grigorchuk.hpp"
#include "gromega/orbit.hpp"
#include "gromega/sequences.hpp"
#include "gromega/simplex.hpp"
#include "gromega/synthesis.hpp"
#include "gromega/wreath.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

using json = nlohmann::ordered_json;
using namespace gromega;

namespace {

struct GlobalOpts {
    std::string format = "json";
    std::optional<std::uint64_t> budget;
    int threads = 1;
    double tol = 1e-12;

    std::uint64_t element_budget() const { return budget.value_or(1'000'000); }
    std::uint64_t word_budget() const { return budget.value_or(10'000'000); }
};

SimplexPoint parse_point(const std::string& text) {
    if (text == "bary") return SimplexPoint::barycentre();
    auto c1 = text.find(',');
    auto c2 = text.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ParseError("expected 'bary' or three comma-separated rationals", 0);
    return SimplexPoint(parse_rational(text.substr(0, c1)),
                        parse_rational(text.substr(c1 + 1, c2 - c1 - 1)),
                        parse_rational(text.substr(c2 + 1)));
}

std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

// Flat key,value CSV for payloads without a natural table shape.
std::string json_to_kv_csv(const json& j) {
    std::string out = "key,value\r\n";
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::string v = it->is_string() ? it->get<std::string>() : it->dump();
        out += csv_escape(it.key()) + "," + csv_escape(v) + "\r\n";
    }
    return out;
}

void emit(const GlobalOpts& opts, const json& payload, const std::string* csv = nullptr) {
    if (opts.format == "csv") {
        std::fputs(csv ? csv->c_str() : json_to_kv_csv(payload).c_str(), stdout);
    } else {
        std::fputs(payload.dump(2).c_str(), stdout);
        std::fputc('\n', stdout);
    }
}

json point_json(const SimplexPoint& p) {
    return json::array({rat_string(p.beta()), rat_string(p.gamma()), rat_string(p.delta())});
}

json matrix_json(const IntMatrix3& M) {
    json rows = json::array();
    for (int i = 0; i < 3; ++i)
        rows.push_back(json::array(
            {int_string(M.m[i][0]), int_string(M.m[i][1]), int_string(M.m[i][2])}));
    return rows;
}

int cmd_wp(const GlobalOpts& opts, const std::string& omega_spec, const std::string& word,
           bool tilde) {
    OmegaSeq omega = parse_omega_spec(omega_spec);
    TrivialityResult r{};
    if (tilde)
        r = is_trivial_tilde(parse_tilde_word(word), omega);
    else
        r = is_trivial(parse_gen_word(word), omega);
    json out{{"trivial", r.trivial}, {"recursion_depth", r.depth}};
    emit(opts, out);
    return 0;
}

int cmd_eta(const GlobalOpts& opts, const std::string& word_text) {
    std::vector<Letter> word = parse_letter_word(word_text);
    if (word.empty()) throw ParseError("empty letter word", 0);
    IntMatrix3 P = matrix_product(word);
    CubicPoly chi = char_poly(P);
    CesaroExponents ce = cesaro_exponent(word, opts.tol);
    PerronResult pr = perron_vector(P, opts.tol);
    bool has_all = [&] {
        bool seen[3] = {false, false, false};
        for (Letter x : word) seen[static_cast<int>(x)] = true;
        return seen[0] && seen[1] && seen[2];
    }();
    json out{{"word", word_text},
             {"matrix", matrix_json(P)},
             {"char_poly", json::array({"1", int_string(chi.c2), int_string(chi.c1),
                                        int_string(chi.c0)})},
             {"spectral_radius", spectral_radius(P, opts.tol)},
             {"eta", ce.eta},
             {"alpha", ce.alpha},
             {"theta_plus", ce.theta_plus},
             {"primitive", has_all && pr.interior}};
    if (pr.interior)
        out["perron"] = json::array({pr.v[0], pr.v[1], pr.v[2]});
    else
        out["perron"] = nullptr;
    emit(opts, out);
    return pr.interior ? 0 : 1;
}

int cmd_simplex_orbit(const GlobalOpts& opts, const std::string& omega_spec,
                      const std::string& v_text, std::uint64_t steps) {
    OmegaSeq omega = parse_omega_spec(omega_spec);
    SimplexPoint V = parse_point(v_text);
    json rows = json::array();
    Rat eta_prod = 1;
    for (std::uint64_t k = 0; k <= steps; ++k) {
        json row{{"k", k},
                 {"V", point_json(V)},
                 {"mu", rat_string(mu(V))},
                 {"eta_product", rat_string(eta_prod)}};
        auto addr = address(V);
        row["address"] = addr ? json(std::string(1, to_char(*addr))) : json(nullptr);
        if (k < steps) {
            Letter x = omega.at(k);
            row["eta"] = rat_string(eta(V, x));
            eta_prod *= eta(V, x);
            V = apply_map(V, x);
        }
        rows.push_back(std::move(row));
    }
    emit(opts, json{{"omega", omega.spec()}, {"steps", rows}});
    return 0;
}

int cmd_synth(const GlobalOpts& opts, const std::string& preset, const std::string& v_text,
              std::uint64_t len, double rmin, double rmax, int samples, bool verify_only) {
    TargetGrowth g = preset_growth(preset);
    SimplexPoint V0 = parse_point(v_text);
    DoublingReport dbl = check_doubling(g, rmin, rmax, samples);
    json doubling{{"ok", dbl.ok},
                  {"worst_left_margin", dbl.worst_left_margin},
                  {"worst_right_margin", dbl.worst_right_margin},
                  {"left_violations", dbl.left_violations},
                  {"right_violations", dbl.right_violations},
                  {"rmin", dbl.rmin},
                  {"rmax", dbl.rmax},
                  {"samples", dbl.samples}};
    if (!verify_only && !dbl.ok) {
        emit(opts, json{{"error", "doubling_violation"}, {"doubling", doubling}});
        return 1;
    }
    SynthesisTrace trace = synthesize_omega(g, V0, len);
    SandwichReport sw = verify_sandwich(trace, g, V0);
    json syll = json::array();
    for (const auto& s : trace.syllables) syll.push_back(json::array({s.i, s.j}));
    json bounds = json::array();
    for (const auto& b : trace.boundaries)
        bounds.push_back(json{{"k", b.k},
                              {"kind", b.after_two_block ? "after-2-block" : "after-012-block"},
                              {"log2_value", b.log2_value},
                              {"ratio", b.ratio}});
    json out{{"preset", preset},
             {"V0", point_json(V0)},
             {"length", trace.prefix.size()},
             {"syllables", syll},
             {"truncated_mid_block", trace.truncated_mid_block},
             {"boundaries", bounds},
             {"A_obs", sw.A_obs},
             {"B_obs", sw.B_obs},
             {"phase_violations", sw.phase_violations},
             {"phase_violations_after_first_two", sw.phase_violations_after_first_two},
             {"final_ratio", trace.final_ratio}};
    if (verify_only) out["doubling"] = doubling;
    emit(opts, out);
    return 0;
}

int cmd_ball(const GlobalOpts& opts, const std::string& omega_spec, const std::string& v_text,
             const std::string& r_text, std::uint32_t level) {
    OmegaSeq omega = parse_omega_spec(omega_spec);
    BallTable table = ball(omega, level, parse_point(v_text), parse_rational(r_text),
                           opts.element_budget());
    json entries = json::array();
    for (const auto& e : table.entries)
        entries.push_back(json{{"norm", rat_string(e.norm)}, {"word", to_string(e.word)}});
    json out{{"radius", rat_string(table.radius)}, {"count", table.count()},
             {"entries", entries}};
    std::string csv = ball_to_csv(table);
    emit(opts, out, &csv);
    return 0;
}

int cmd_wball(const GlobalOpts& opts, const std::string& omega_spec, const std::string& v_text,
              const std::string& r_text, std::uint32_t modulus, bool mixed) {
    OmegaSeq omega = parse_omega_spec(omega_spec);
    WBallTable table = ball_W(omega, AbelianSpec{modulus}, parse_point(v_text),
                              parse_rational(r_text), opts.element_budget(), mixed);
    json entries = json::array();
    std::string csv = "norm,support,word\r\n";
    for (const auto& e : table.entries) {
        json support = json::array();
        std::string supp_text;
        for (const auto& [p, v] : e.elem.support) {
            support.push_back(json::array({p.prefix(), v}));
            supp_text += p.prefix() + "=" + std::to_string(v) + ";";
        }
        entries.push_back(json{{"norm", rat_string(e.norm)},
                               {"support", support},
                               {"word", to_string(e.elem.g.word)}});
        csv += rat_string(e.norm) + "," + csv_escape(supp_text) + "," +
               to_string(e.elem.g.word) + "\r\n";
    }
    json out{{"radius", rat_string(table.radius)}, {"modulus", modulus},
             {"count", table.count()}, {"entries", entries}};
    emit(opts, out, &csv);
    return 0;
}

int cmd_orbit(const GlobalOpts& opts, const std::string& omega_spec, const std::string& word) {
    OmegaSeq omega = parse_omega_spec(omega_spec);
    InvertedOrbit orbit = inverted_orbit(parse_gen_word(word), omega);
    json pts = json::array();
    std::string csv = "point\r\n";
    for (const auto& p : orbit.points) {
        pts.push_back(p.prefix());
        csv += p.prefix() + "\r\n";
    }
    json out{{"word", word}, {"size", orbit.size()}, {"points", pts}};
    emit(opts, out, &csv);
    return 0;
}

int cmd_delta(const GlobalOpts& opts, const std::string& omega_spec, const std::string& v_text,
              const std::string& r_text, bool sigma) {
    OmegaSeq omega = parse_omega_spec(omega_spec);
    OrbitSearchOptions search;
    search.budget = opts.word_budget();
    search.threads = opts.threads;
    Rat R = parse_rational(r_text);
    if (sigma) {
        std::uint64_t s = sigma_growth(omega, parse_point(v_text), R, search);
        emit(opts, json{{"R", rat_string(R)}, {"sigma", s}});
    } else {
        DeltaResult dr = delta_search(omega, parse_point(v_text), R, search);
        emit(opts, json{{"R", rat_string(R)},
                        {"delta", dr.delta},
                        {"realizer", to_string(dr.realizer)},
                        {"nodes", dr.nodes}});
    }
    return 0;
}

int cmd_schreier(const GlobalOpts& opts, const std::string& omega_spec, std::uint32_t radius) {
    OmegaSeq omega = parse_omega_spec(omega_spec);
    SchreierBall sb = schreier_ball(omega, radius);
    json vertices = json::array();
    for (const auto& v : sb.vertices) vertices.push_back(v.prefix());
    json edges = json::array();
    for (const auto& e : sb.edges)
        edges.push_back(json::array({e.from.prefix(), std::string(1, to_char(e.label)),
                                     e.to.prefix()}));
    json out{{"radius", radius}, {"vertices", vertices}, {"edges", edges}};
    std::string csv = schreier_to_csv(sb);
    emit(opts, out, &csv);
    return 0;
}

int cmd_report(const GlobalOpts& opts, const std::string& omega_spec, const std::string& v_text,
               std::uint32_t kmax, std::uint32_t modulus) {
    OmegaSeq omega = parse_omega_spec(omega_spec);
    ReportBudgets budgets;
    if (opts.budget) {
        budgets.ball_budget = *opts.budget;
        budgets.wreath_budget = *opts.budget;
    }
    auto rows = growth_report(omega, parse_point(v_text), kmax, AbelianSpec{modulus}, budgets);
    json jrows = json::array();
    for (const auto& r : rows) {
        json row{{"k", r.k},
                 {"R", rat_string(r.radius)},
                 {"eta_k", rat_string(r.eta_k)},
                 {"mu_k", rat_string(r.mu_k)}};
        row["v_G"] = r.v_g ? json(*r.v_g) : json("skipped: budget");
        row["v_W"] = r.v_w ? json(*r.v_w) : json("skipped: budget");
        row["delta_zeta"] = r.delta_zeta ? json(*r.delta_zeta) : json("skipped: budget");
        row["alpha_G"] = r.alpha_g ? json(*r.alpha_g) : json(nullptr);
        row["alpha_W"] = r.alpha_w ? json(*r.alpha_w) : json(nullptr);
        jrows.push_back(std::move(row));
    }
    json out{{"omega", omega.spec()}, {"rows", jrows}};
    std::string csv = report_to_csv(rows);
    emit(opts, out, &csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"group growth workbench: word problems, simplex dynamics, orbit growth"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts opts;
    std::uint64_t budget_flag = 0;
    app.add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    auto* budget_opt = app.add_option("--budget", budget_flag, "Search budget override");
    app.add_option("--threads", opts.threads, "Worker threads for the orbit searches");
    app.add_option("--tol", opts.tol, "Numeric tolerance for spectral routines");

    std::string omega_spec, word_text, v_text = "bary", r_text = "1", preset;
    bool tilde = false, mixed = false;
    std::uint64_t steps = 10, len = 300;
    std::uint32_t level = 0, radius = 2, kmax = 3, modulus = 2;
    double rmin = 1.0, rmax = 1e6;
    int samples = 256;

    auto* wp = app.add_subcommand("wp", "Decide whether a word is trivial");
    wp->add_option("omega", omega_spec)->required();
    wp->add_option("word", word_text)->required();
    wp->add_flag("--tilde", tilde, "Use the torsion-free variant");

    auto* eta_cmd = app.add_subcommand("eta", "Spectral data of a letter word");
    eta_cmd->add_option("word", word_text)->required();

    auto* sorb = app.add_subcommand("simplex-orbit", "Orbit of a metric point under the maps");
    sorb->add_option("omega", omega_spec)->required();
    sorb->add_option("--steps", steps);
    sorb->add_option("--V", v_text);

    auto* synth = app.add_subcommand("synth", "Greedy sequence synthesis for a growth target");
    synth->add_option("preset", preset)->required();
    synth->add_option("--len", len);
    synth->add_option("--V", v_text);
    synth->add_option("--rmin", rmin);
    synth->add_option("--rmax", rmax);
    synth->add_option("--samples", samples);

    auto* verify = app.add_subcommand("verify", "Doubling check plus synthesis sandwich report");
    verify->add_option("preset", preset)->required();
    verify->add_option("--len", len);
    verify->add_option("--V", v_text);
    verify->add_option("--rmin", rmin);
    verify->add_option("--rmax", rmax);
    verify->add_option("--samples", samples);

    auto* ball_cmd = app.add_subcommand("ball", "Weighted geodesic ball");
    ball_cmd->add_option("omega", omega_spec)->required();
    ball_cmd->add_option("--R", r_text)->required();
    ball_cmd->add_option("--V", v_text);
    ball_cmd->add_option("--level", level);

    auto* wball = app.add_subcommand("wball", "Weighted ball in the wreath product");
    wball->add_option("omega", omega_spec)->required();
    wball->add_option("--R", r_text)->required();
    wball->add_option("--V", v_text);
    wball->add_option("--A", modulus, "Lamp group modulus");
    wball->add_flag("--mixed", mixed, "Use the combined generating set");

    auto* orbit_cmd = app.add_subcommand("orbit", "Inverted orbit of a word");
    orbit_cmd->add_option("omega", omega_spec)->required();
    orbit_cmd->add_option("--word", word_text)->required();

    auto* delta = app.add_subcommand("delta", "Maximal inverted orbit size up to norm R");
    delta->add_option("omega", omega_spec)->required();
    delta->add_option("--R", r_text)->required();
    delta->add_option("--V", v_text);

    auto* sigma = app.add_subcommand("sigma", "Number of distinct inverted orbits up to norm R");
    sigma->add_option("omega", omega_spec)->required();
    sigma->add_option("--R", r_text)->required();
    sigma->add_option("--V", v_text);

    auto* schreier = app.add_subcommand("schreier", "Schreier graph ball around the basepoint");
    schreier->add_option("omega", omega_spec)->required();
    schreier->add_option("--radius", radius);

    auto* report = app.add_subcommand("report", "Growth report table");
    report->add_option("omega", omega_spec)->required();
    report->add_option("--kmax", kmax);
    report->add_option("--V", v_text);
    report->add_option("--A", modulus);

    try {
        app.parse(argc, argv);
        if (budget_opt->count()) opts.budget = budget_flag;

        if (wp->parsed()) return cmd_wp(opts, omega_spec, word_text, tilde);
        if (eta_cmd->parsed()) return cmd_eta(opts, word_text);
        if (sorb->parsed()) return cmd_simplex_orbit(opts, omega_spec, v_text, steps);
        if (synth->parsed())
            return cmd_synth(opts, preset, v_text, len, rmin, rmax, samples, false);
        if (verify->parsed())
            return cmd_synth(opts, preset, v_text, len, rmin, rmax, samples, true);
        if (ball_cmd->parsed()) return cmd_ball(opts, omega_spec, v_text, r_text, level);
        if (wball->parsed()) return cmd_wball(opts, omega_spec, v_text, r_text, modulus, mixed);
        if (orbit_cmd->parsed()) return cmd_orbit(opts, omega_spec, word_text);
        if (delta->parsed()) return cmd_delta(opts, omega_spec, v_text, r_text, false);
        if (sigma->parsed()) return cmd_delta(opts, omega_spec, v_text, r_text, true);
        if (schreier->parsed()) return cmd_schreier(opts, omega_spec, radius);
        if (report->parsed()) return cmd_report(opts, omega_spec, v_text, kmax, modulus);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        std::fputs(json{{"error", "budget_exceeded"}, {"detail", e.what()}}.dump(2).c_str(),
                   stdout);
        std::fputc('\n', stdout);
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
