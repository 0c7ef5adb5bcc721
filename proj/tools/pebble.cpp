#include "pebble/cache.hpp"
#include "pebble/constructions.hpp"
#include "pebble/harness.hpp"
#include "pebble/io.hpp"
#include "pebble/numbers.hpp"
#include "pebble/solver.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

using namespace pebble;

namespace {

enum Exit { ok = 0, usage = 1, budget = 2, inconsistent = 3 };

struct Common {
    std::string format = "text";
    std::uint64_t budget = kDefaultBudget;
    bool paranoid = false;
    bool dominance = false;
    bool cross_check = false;
    bool no_cache = false;
    std::string cache_path;
    std::string method = "failing-set";

    std::unique_ptr<ResultCache> cache;

    NumberOptions options() {
        NumberOptions o;
        o.search.paranoid = paranoid;
        o.search.dominance_pruning = dominance;
        o.budget = budget;
        o.cross_check = cross_check;
        o.method = method == "ascending" ? Method::ascending_scan : Method::failing_set;
        o.verify_frontier = o.method == Method::ascending_scan;
        if (!no_cache) {
            cache = std::make_unique<ResultCache>(cache_path.empty() ? ResultCache::default_path() : cache_path);
            o.cache = cache.get();
        }
        return o;
    }
    [[nodiscard]] bool json() const { return format == "json"; }
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app->add_option("--budget", c.budget, "Start distributions examined per number query");
    app->add_flag("--paranoid", c.paranoid, "Disable all search pruning");
    app->add_flag("--dominance", c.dominance, "Enable one-pebble dominance pruning");
    app->add_flag("--cross-check", c.cross_check, "Recompute set numbers with the direct union predicate");
    app->add_flag("--no-cache", c.no_cache, "Do not read or write the result cache");
    app->add_option("--cache", c.cache_path, "Cache file (default $PEBBLE_CACHE or .pebble-cache.jsonl)");
    app->add_option("--method", c.method, "Threshold method")->check(CLI::IsMember({"failing-set", "ascending"}));
}

void print(const Common& c, const Json& j, const std::string& text) {
    if (c.json())
        std::cout << j.dump(2) << '\n';
    else
        std::cout << text;
}

std::string text_of(const NumberResult& r) {
    std::string out = r.value.to_string() + "\n";
    if (r.witness_failure)
        out += "failing start: " + r.witness_failure->to_string() + "\n";
    return out;
}

std::string text_of(const ConjectureInstance& c) {
    std::string out = to_string(c.spec.kind);
    if (is_vertex_kind(c.spec.kind))
        out += " (" + std::to_string(c.spec.x) + "," + std::to_string(c.spec.y) + ")";
    out += " n=" + std::to_string(c.spec.g.vertex_count()) + "x" + std::to_string(c.spec.h.vertex_count());
    out += ": " + c.lhs.to_string() + " vs " + c.rhs.to_string() + " " + to_string(c.status);
    if (c.reconfirmed)
        out += " (reconfirmed)";
    if (c.impossible())
        out += " IMPOSSIBLE";
    for (const auto& n : c.notes)
        out += "\n  note: " + n;
    return out + "\n";
}

std::string text_of(const VerifyReport& r) {
    std::string out = r.claim + ": " + r.lhs.to_string() + " vs " + r.rhs.to_string() + " " +
                      (r.holds ? "holds" : "FAILS") + "\n";
    for (const auto& [k, v] : r.values)
        out += "  " + k + " = " + v.to_string() + "\n";
    for (const auto& n : r.notes)
        out += "  note: " + n + "\n";
    return out;
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& items) {
    std::map<std::string, std::string> out;
    for (const auto& item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("parameter '" + item + "' is not key=value");
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

std::string need(const std::map<std::string, std::string>& p, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end())
        throw std::invalid_argument("missing parameter " + key + "=...");
    return it->second;
}

std::uint64_t need_uint(const std::map<std::string, std::string>& p, const std::string& key,
                        std::optional<std::uint64_t> fallback = std::nullopt) {
    auto it = p.find(key);
    if (it == p.end()) {
        if (fallback)
            return *fallback;
        throw std::invalid_argument("missing parameter " + key + "=...");
    }
    return detail::parse_uint(it->second, key);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact pebbling numbers on small graphs"};
    app.require_subcommand(1);

    Common common;
    int exit_code = Exit::ok;

    // reach
    auto* reach = app.add_subcommand("reach", "Decide whether a target is reachable and print a witness");
    std::string r_graph, r_start, r_target;
    reach->add_option("--graph,-g", r_graph, "Graph designator")->required();
    reach->add_option("--start", r_start, "Start distribution")->required();
    reach->add_option("--target", r_target, "Target distribution, or a set (reach any member)")->required();
    add_common(reach, common);

    // number
    auto* number = app.add_subcommand("number", "Compute a pebbling number");
    std::string n_graph, n_target, n_set, n_vertex;
    std::uint32_t n_t = 1;
    bool n_selectable = false, n_cover = false, n_single = false;
    number->add_option("--graph,-g", n_graph, "Graph designator")->required();
    number->add_option("--target", n_target, "Target distribution");
    number->add_option("--set", n_set, "Target set");
    number->add_option("--vertex", n_vertex, "Target vertex (with --t)");
    number->add_option("--t", n_t, "Pebbles required on the target vertex");
    number->add_flag("--selectable,--rho", n_selectable, "Target chosen after seeing the start");
    number->add_flag("--cover", n_cover, "Cover pebbling number");
    number->add_flag("--single-vertex", n_single, "Least N such that N pebbles on any one vertex reach the target");
    add_common(number, common);

    // verify
    auto* verify = app.add_subcommand("verify", "Check an identity on one instance");
    std::string v_claim;
    std::vector<std::string> v_params;
    verify->add_option("claim", v_claim, "prop:2s | prop:st | thm:doubling | prop:g_of_p")
        ->required()
        ->check(CLI::IsMember({"prop:2s", "prop:st", "thm:doubling", "prop:g_of_p"}));
    verify->add_option("--params", v_params, "key=value parameters");
    add_common(verify, common);

    // conjecture
    auto* conj = app.add_subcommand("conjecture", "Check one conjecture instance");
    std::string c_kind, c_g, c_h, c_x = "0", c_y = "0", c_sg, c_sh;
    std::uint32_t c_s = 1, c_t = 1;
    unsigned c_a = 0, c_b = 0;
    conj->add_option("--kind", c_kind, "Conjecture kind")->required();
    conj->add_option("-G", c_g, "First factor")->required();
    conj->add_option("-H", c_h, "Second factor")->required();
    conj->add_option("--x", c_x, "Vertex of G");
    conj->add_option("--y", c_y, "Vertex of H");
    conj->add_option("--s", c_s, "Multiplier on G");
    conj->add_option("--t", c_t, "Multiplier on H");
    conj->add_option("--a", c_a, "Exponent on G (powers-of-two)");
    conj->add_option("--b", c_b, "Exponent on H (powers-of-two)");
    conj->add_option("--SG", c_sg, "Target set on G");
    conj->add_option("--SH", c_sh, "Target set on H");
    add_common(conj, common);

    // sweep
    auto* sw = app.add_subcommand("sweep", "Check conjecture kinds over graph families");
    std::string s_left, s_right;
    std::vector<std::string> s_kinds;
    std::uint32_t s_s = 1, s_t = 1;
    unsigned s_workers = 1;
    std::uint64_t s_seed = 1;
    sw->add_option("--left", s_left, "Family for G, items separated by ';'")->required();
    sw->add_option("--right", s_right, "Family for H (default: same as --left)");
    sw->add_option("--kind", s_kinds, "Conjecture kinds")->required();
    sw->add_option("--s", s_s, "Multiplier on G");
    sw->add_option("--t", s_t, "Multiplier on H");
    sw->add_option("--workers", s_workers, "Concurrent instances");
    sw->add_option("--seed", s_seed, "Seed for random families");
    add_common(sw, common);

    // repro
    auto* repro = app.add_subcommand("repro", "Reproduce the known counterexamples");
    add_common(repro, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::usage;
    }

    try {
        if (*reach) {
            auto g = parse_graph(r_graph);
            auto start = parse_distribution(g, r_start);
            auto targets = parse_distribution_set(g, r_target);
            auto opts = common.options();
            auto hit = reach_any(g, start, targets, opts.search);
            Json j{{"reachable", hit.has_value()}};
            std::string text = hit ? "reachable\n" : "unreachable\n";
            if (hit) {
                j["target"] = to_json(hit->target);
                j["witness"] = to_json(g, hit->witness);
                text += "target: " + hit->target.to_string() + "\n";
                for (const auto& m : hit->witness.moves)
                    text += "  " + std::to_string(m.from) + " -> " + std::to_string(m.to) + "\n";
                text += "end: " + replay(g, hit->witness).to_string() + "\n";
            }
            if (g.has_unit_weights())
                j["note"] = "graph has weight-1 edges";
            print(common, j, text);
        } else if (*number) {
            auto g = parse_graph(n_graph);
            auto opts = common.options();
            const int chosen = !n_target.empty() + !n_set.empty() + !n_vertex.empty() + n_cover;
            if (chosen > 1)
                throw CLI::ValidationError("choose at most one of --target, --set, --vertex, --cover");
            if (n_single) {
                Distribution d = n_cover ? gamma_target(g) : parse_distribution(g, n_target.empty() ? "gamma" : n_target);
                auto v = single_vertex_threshold(g, d, opts.search);
                print(common, Json{{"value", to_json(v)}}, v.to_string() + "\n");
            } else {
                NumberResult r;
                if (n_cover) {
                    r = n_selectable ? rho_set(g, DistributionSet{gamma_target(g)}, opts) : cover_number(g, opts);
                } else if (!n_target.empty()) {
                    auto d = parse_distribution(g, n_target);
                    r = n_selectable ? rho_set(g, DistributionSet{d}, opts) : pi_dist(g, d, opts);
                } else if (!n_set.empty()) {
                    auto s = parse_distribution_set(g, n_set);
                    r = n_selectable ? rho_set(g, s, opts) : pi_set(g, s, opts);
                } else if (!n_vertex.empty()) {
                    auto d = delta(g, parse_vertex(g, n_vertex), n_t);
                    r = n_selectable ? rho_set(g, DistributionSet{d}, opts) : pi_dist(g, d, opts);
                } else {
                    r = n_selectable ? rho_t(g, n_t, opts) : pi_t_graph(g, n_t, opts);
                }
                auto j = to_json(r);
                if (g.has_unit_weights())
                    j["note"] = "graph has weight-1 edges";
                print(common, j, text_of(r));
            }
        } else if (*verify) {
            auto p = parse_params(v_params);
            auto opts = common.options();
            VerifyReport r;
            if (v_claim == "prop:2s" || v_claim == "prop:st") {
                auto g = parse_graph(need(p, "G"));
                auto x = parse_vertex(g, p.contains("x") ? p["x"] : "0");
                const Weight w = v_claim == "prop:2s" ? kUnweighted : need_uint(p, "s");
                r = verify_prop_2s(g, x, w, static_cast<Count>(need_uint(p, "t", 1)), opts);
            } else if (v_claim == "thm:doubling") {
                auto g = parse_graph(need(p, "G"));
                auto h = parse_graph(need(p, "H"));
                r = verify_doubling_instance(g, h, parse_vertex(g, p.contains("x") ? p["x"] : "0"),
                                             parse_vertex(h, p.contains("y") ? p["y"] : "0"),
                                             static_cast<Count>(need_uint(p, "s", 1)),
                                             static_cast<Count>(need_uint(p, "t", 1)), opts);
            } else {
                r = verify_g_of_p(need_uint(p, "n"), static_cast<unsigned>(need_uint(p, "i", 0)), opts);
            }
            print(common, to_json(r), text_of(r));
            if (!r.holds)
                exit_code = Exit::inconsistent;
        } else if (*conj) {
            ConjectureSpec spec;
            spec.kind = parse_conjecture_kind(c_kind);
            spec.g = parse_graph(c_g);
            spec.h = parse_graph(c_h);
            spec.x = parse_vertex(spec.g, c_x);
            spec.y = parse_vertex(spec.h, c_y);
            spec.s = c_s;
            spec.t = c_t;
            spec.a = c_a;
            spec.b = c_b;
            if (spec.kind == ConjectureKind::distributions) {
                spec.sg = DistributionSet{parse_distribution(spec.g, c_sg.empty() ? "gamma" : c_sg)};
                spec.sh = DistributionSet{parse_distribution(spec.h, c_sh.empty() ? "gamma" : c_sh)};
            } else if (spec.kind == ConjectureKind::sets || spec.kind == ConjectureKind::rho_analog) {
                spec.sg = parse_distribution_set(spec.g, c_sg.empty() ? "S_t:" + std::to_string(c_s) : c_sg);
                spec.sh = parse_distribution_set(spec.h, c_sh.empty() ? "S_t:" + std::to_string(c_t) : c_sh);
            }
            auto opts = common.options();
            auto r = spec.kind == ConjectureKind::rho_analog ? check_rho_analog(spec.g, spec.h, *spec.sg, *spec.sh, opts)
                                                             : check_conjecture(spec, opts);
            print(common, to_json(r), text_of(r));
            if (r.impossible())
                exit_code = Exit::inconsistent;
            else if (r.status == Status::too_large)
                exit_code = Exit::budget;
        } else if (*sw) {
            std::mt19937_64 rng(s_seed);
            SweepSpec spec;
            spec.left = parse_graph_family(s_left, rng);
            spec.right = s_right.empty() ? spec.left : parse_graph_family(s_right, rng);
            for (const auto& k : s_kinds)
                spec.kinds.push_back(parse_conjecture_kind(k));
            spec.s = s_s;
            spec.t = s_t;
            spec.workers = s_workers;
            spec.seed = s_seed;
            auto opts = common.options();
            auto summary = sweep(spec, opts, [&](const ConjectureInstance& c) {
                if (common.json())
                    std::cout << to_json(c).dump() << '\n';
                else
                    std::cout << text_of(c);
            });
            Json j{{"summary",
                    {{"seed", summary.seed},
                     {"holds", summary.holds},
                     {"violations", summary.violations},
                     {"too_large", summary.too_large},
                     {"impossible", summary.impossible}}}};
            print(common, j,
                  "seed " + std::to_string(summary.seed) + ": " + std::to_string(summary.holds) + " hold, " +
                      std::to_string(summary.violations) + " violations, " + std::to_string(summary.too_large) +
                      " too large, " + std::to_string(summary.impossible) + " impossible\n");
            if (summary.impossible > 0)
                exit_code = Exit::inconsistent;
            else if (summary.too_large > 0)
                exit_code = Exit::budget;
        } else if (*repro) {
            auto opts = common.options();
            auto checks = reproduce_counterexamples(opts);
            Json j = Json::array();
            std::string text;
            bool all = true;
            for (const auto& c : checks) {
                j.push_back({{"claim", c.name}, {"expected", c.expected}, {"observed", c.observed}, {"pass", c.pass}});
                text += std::string(c.pass ? "PASS " : "FAIL ") + c.name + " (observed " + c.observed + ")\n";
                all = all && c.pass;
            }
            print(common, j, text);
            if (!all)
                exit_code = Exit::inconsistent;
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return Exit::budget;
    } catch (const InternalInconsistency& e) {
        std::cerr << "internal inconsistency: " << e.what() << '\n';
        return Exit::inconsistent;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << '\n';
        return Exit::usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::usage;
    }
    return exit_code;
}
