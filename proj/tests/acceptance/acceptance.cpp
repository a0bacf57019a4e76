// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "oracles.hpp"

#include "tvg/adversary.hpp"
#include "tvg/algorithms.hpp"
#include "tvg/generate.hpp"
#include "tvg/journeys.hpp"
#include "tvg/json_io.hpp"
#include "tvg/metric.hpp"
#include "tvg/sim.hpp"
#include "tvg/tvg_ops.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace tvg;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) {
            detail = why;
        }
        pass = false;
    }
};

const ScheduleShape shape{8, 8};

Tvg k3() { return load_tvg(TVG_DATA_DIR "/k3_missing_ca.json"); }

std::string str(ExtendedTime t) { return t.to_string(); }

// 1. Ultrametric axioms on graphs and on outputs.
Outcome ultrametric() {
    Outcome o;
    std::size_t graph_triples = 0;
    std::size_t trace_triples = 0;
    for (std::uint64_t seed = 0; seed < 250 && o.pass; ++seed) {
        Rng rng(seed);
        Tvg g = random_tvg(seed, {.max_vertices = 5, .max_period = 8});
        Tvg h = random_variant(g, rng, shape);
        Tvg k = random_variant(rng() % 2 ? h : g, rng, shape);
        const Tvg* ts[] = {&g, &h, &k};
        for (const Tvg* a : ts) {
            for (const Tvg* b : ts) {
                auto ab = lambda_graph(*a, *b);
                auto want = oracle::first_difference(*a, *b, oracle::difference_limit(*a, *b));
                if (ab.is_infinite() != (*a == *b) || ab.is_infinite() == want.has_value()) {
                    o.fail("identity fails, seed " + std::to_string(seed));
                }
                if (want && ab != ExtendedTime(*want)) {
                    o.fail("lambda disagrees with the tick oracle, seed " + std::to_string(seed));
                }
                if (ab != lambda_graph(*b, *a)) {
                    o.fail("symmetry fails, seed " + std::to_string(seed));
                }
                for (const Tvg* c : ts) {
                    if (lambda_graph(*a, *c) < std::min(ab, lambda_graph(*b, *c))) {
                        o.fail("strong triangle fails, seed " + std::to_string(seed));
                    }
                }
            }
        }
        ++graph_triples;

        const Tick horizon = 64;
        auto algo = seed % 2 ? local_flood_window(4) : echo_footprint();
        OutputTrace os[] = {run(g, algo, horizon, {.record_execution = false}).outputs,
                            run(h, algo, horizon, {.record_execution = false}).outputs,
                            run(k, algo, horizon, {.record_execution = false}).outputs};
        for (const auto& a : os) {
            for (const auto& b : os) {
                auto ab = lambda_output(a, b);
                if (ab.censored != (a == b) || ab != lambda_output(b, a)) {
                    o.fail("output identity or symmetry fails, seed " + std::to_string(seed));
                }
                if (ab.value != oracle::first_output_difference(a, b).value_or(horizon + 1)) {
                    o.fail("output lambda disagrees with the oracle, seed " + std::to_string(seed));
                }
                for (const auto& c : os) {
                    if (lambda_output(a, c).value < std::min(ab.value, lambda_output(b, c).value)) {
                        o.fail("output strong triangle fails, seed " + std::to_string(seed));
                    }
                }
            }
        }
        ++trace_triples;
    }
    if (o.pass) {
        o.detail = std::to_string(graph_triples) + " graph triples, " + std::to_string(trace_triples) + " trace triples";
    }
    return o;
}

// 2. Output agreement is at least graph agreement.
Outcome lipschitz() {
    Outcome o;
    const Tick horizon = 256;
    std::size_t pairs = 0;
    std::size_t finite_pairs = 0;
    for (std::uint64_t seed = 0; seed < 120 && o.pass; ++seed) {
        Rng rng(10000 + seed);
        Tvg g = seed % 2 ? random_tvg(seed) : generate_cot(seed, named_footprint(seed % 4 ? "complete:4" : "cycle:5"));
        Tvg h = random_variant(g, rng, shape);
        auto lg = lambda_graph(g, h);
        finite_pairs += lg.is_finite();
        for (const auto& algo : {local_flood_window(8), echo_footprint()}) {
            auto lo = lambda_output(run(g, algo, horizon, {.record_execution = false}).outputs,
                                    run(h, algo, horizon, {.record_execution = false}).outputs);
            // A censored verdict certifies agreement over the whole horizon.
            if (!(lo.censored || ExtendedTime(lo.value) >= lg)) {
                o.fail("seed " + std::to_string(seed) + " " + algo.name + ": output lambda " +
                       std::to_string(lo.value) + " < graph lambda " + str(lg));
            }
        }
        ++pairs;
    }
    if (o.pass) {
        o.detail = std::to_string(pairs) + " pairs x 2 algorithms (" + std::to_string(finite_pairs) +
                   " with finite graph lambda), horizon 256";
    }
    return o;
}

// 3. The construction against local-flood-window(8) on K3.
Outcome adversary_end_to_end() {
    Outcome o;
    Tvg base = k3();
    const EdgeId e = base.edge_by_label("a-c");
    auto report = run_adversary(base, e, local_flood_window(8), {3, 32, 5000});
    if (!report.verdict.defeated) {
        o.fail("verdict Inconclusive: " + report.verdict.reason);
        return o;
    }
    if (report.completed_rounds() != 3) {
        o.fail("only " + std::to_string(report.completed_rounds()) + " rounds");
        return o;
    }
    Tick prev = 0;
    std::string chain;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& r = report.rounds[i];
        const Tick eta = *r.eta.tick;
        const Tick alpha = *r.alpha.tick;
        if ((i > 0 && eta <= prev) || alpha <= eta) {
            o.fail("interleaving broken at round " + std::to_string(i));
        }
        prev = alpha;
        const Tvg& next = i + 1 < 3 ? report.rounds[i + 1].g : report.final_graph;
        auto l = lambda_graph(r.g, next);
        if (l != ExtendedTime(eta) || oracle::first_difference(r.g, next, oracle::difference_limit(r.g, next)) != eta) {
            o.fail("lambda(g_" + std::to_string(i) + ", g_" + std::to_string(i + 1) + ") = " + str(l) + ", eta " +
                   std::to_string(eta));
        }
        auto on_limit = run(report.limit_prefix, local_flood_window(8), 5000, {.record_execution = false}).outputs;
        auto on_round = run(r.g, local_flood_window(8), 5000, {.record_execution = false}).outputs;
        if (!lambda_output(on_limit, on_round).at_least(ExtendedTime(eta))) {
            o.fail("limit run diverges from round " + std::to_string(i) + " before eta");
        }
        chain += (i ? " < " : "") + std::to_string(eta) + " < " + std::to_string(alpha);
    }
    if (report.flip_count < 3) {
        o.fail("flip_count " + std::to_string(report.flip_count));
    }
    if (o.pass) {
        o.detail = "Defeated; eta/alpha " + chain + "; flips " + std::to_string(report.flip_count);
    }
    return o;
}

// 4. Eventual missing edges and eventual footprint connectivity.
Outcome eventual_footprint() {
    Outcome o;
    std::size_t cot_count = 0;
    std::size_t missing = 0;
    for (std::uint64_t seed = 0; seed < 200 && o.pass; ++seed) {
        Tvg g = seed % 2 ? random_tvg(seed) : generate_cot(seed, named_footprint(seed % 4 ? "complete:5" : "cycle:4"));
        auto got = eventual_missing_edges(g);
        std::vector<EdgeId> want;
        for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
            if (!oracle::recurs(g, i)) {
                want.push_back(EdgeId{i});
            }
        }
        missing += want.size();
        if (got != want) {
            o.fail("missing edges disagree, seed " + std::to_string(seed));
        }
        if (is_cot(g)) {
            ++cot_count;
            if (!underlying_graph(g).connected() || !eventual_underlying_graph(g).connected()) {
                o.fail("COT member with a disconnected footprint, seed " + std::to_string(seed));
            }
        }
    }
    if (o.pass) {
        o.detail = "200 TVGs, " + std::to_string(missing) + " missing edges, " + std::to_string(cot_count) +
                   " COT members";
    }
    return o;
}

// 5. is_cot against exhaustive journey search.
Outcome cot_checker() {
    Outcome o;
    std::size_t yes = 0;
    std::size_t no = 0;
    for (std::uint64_t seed = 0; seed < 160 && o.pass; ++seed) {
        Tvg g = seed % 4 == 0 ? generate_cot(seed, named_footprint("complete:4"), {.max_period = 8})
                              : random_tvg(seed, {.max_vertices = 5, .max_period = 8});
        const Tick base = oracle::settle(g);
        const Tick period = oracle::common_period(g);
        bool all = true;
        for (Tick probe : {Tick{0}, base, base + period}) {
            for (std::uint32_t p = 0; p < g.vertex_count(); ++p) {
                for (std::uint32_t q = 0; q < g.vertex_count(); ++q) {
                    if (p != q && !exists_temporal_path(g, Vertex{p}, Vertex{q}, probe)) {
                        all = false;
                    }
                }
            }
        }
        bool got = is_cot(g);
        if (got != all || got != oracle::cot_brute_force(g)) {
            o.fail("disagreement at seed " + std::to_string(seed));
        }
        (got ? yes : no)++;
    }
    if (o.pass) {
        o.detail = "160 instances (" + std::to_string(yes) + " COT, " + std::to_string(no) + " not)";
    }
    return o;
}

// 6. Foremost arrival against the time-expanded search.
Outcome journey_oracle() {
    Outcome o;
    const Tick horizon = 64;
    std::size_t queries = 0;
    std::size_t reached = 0;
    for (std::uint64_t seed = 0; seed < 150 && o.pass; ++seed) {
        Tvg g = random_tvg(seed, {.max_vertices = 5, .max_period = 8});
        for (Tick after : {Tick{0}, Tick{5}, Tick{17}}) {
            for (std::uint32_t p = 0; p < g.vertex_count(); ++p) {
                for (std::uint32_t q = 0; q < g.vertex_count(); ++q) {
                    if (p == q) {
                        continue;
                    }
                    ++queries;
                    auto got = earliest_arrival(g, Vertex{p}, Vertex{q}, after);
                    auto want = oracle::earliest_arrival(g, p, q, after, horizon);
                    bool ok = want ? got == ExtendedTime(*want) : got > ExtendedTime(horizon);
                    reached += want.has_value();
                    if (!ok) {
                        o.fail("seed " + std::to_string(seed) + " " + std::to_string(p) + "->" + std::to_string(q) +
                               " after " + std::to_string(after) + ": got " + str(got));
                    }
                }
            }
        }
    }
    if (o.pass) {
        o.detail = "150 instances, " + std::to_string(queries) + " queries (" + std::to_string(reached) +
                   " reachable by 64)";
    }
    return o;
}

// 7. A staircase sequence converges and its limit extends every prefix.
Outcome completeness() {
    Outcome o;
    std::vector<Tvg> gs;
    for (Tick k = 0; k <= 21; ++k) {
        std::vector<Interval> ivs{{k + 1, k + 2}};
        if (k > 0) {
            ivs.push_back({0, k});
        }
        gs.push_back(Tvg({"a", "b"}, {{"a", "b", 1, PresenceSchedule::finite(IntervalSet::from(ivs))}}));
    }
    for (Tick k = 0; k + 1 < gs.size(); ++k) {
        if (lambda_graph(gs[k], gs[k + 1]) != ExtendedTime(k)) {
            o.fail("construction: lambda(g_" + std::to_string(k) + ", g_" + std::to_string(k + 1) + ") != k");
        }
    }
    auto report = sequence_check(gs, 16);
    for (const auto& s : report.scales) {
        if (!s.cauchy) {
            o.fail("not Cauchy at 2^-" + std::to_string(s.exponent));
        }
    }
    if (!report.ultrametric_consistent) {
        o.fail("matrix violates the strong triangle inequality");
    }
    Tvg limit = limit_construct(gs, {{EdgeId{0}, TimeSpec{Span{0, ExtendedTime::infinity()}}}});
    for (Tick k = 0; k < gs.size(); ++k) {
        if (lambda_graph(gs[k], limit) < ExtendedTime(k)) {
            o.fail("limit agrees with g_" + std::to_string(k) + " only up to " + str(lambda_graph(gs[k], limit)));
        }
    }
    if (o.pass) {
        o.detail = "22 members, Cauchy at 2^-1..2^-16, limit always-present edge";
    }
    return o;
}

StaticGraph random_tree(Rng& rng, std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back(std::string(1, static_cast<char>('a' + i)));
    }
    std::vector<VertexPair> edges;
    for (std::uint32_t v = 1; v < n; ++v) {
        std::uniform_int_distribution<std::uint32_t> pick(0, v - 1);
        edges.push_back(VertexPair::of(Vertex{pick(rng)}, Vertex{v}));
    }
    return StaticGraph(names, edges);
}

// 8. Trees never carry a missing edge; other footprints can.
Outcome tree_footprints() {
    Outcome o;
    Rng rng(42);
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        StaticGraph f = seed % 3 == 0   ? named_footprint("path:" + std::to_string(2 + seed % 5))
                        : seed % 3 == 1 ? named_footprint("star:" + std::to_string(3 + seed % 4))
                                        : random_tree(rng, 2 + seed % 6);
        Tvg g = generate_cot(seed, f, {.density = 1.0});
        if (!eventual_missing_edges(g).empty() || !is_cot(g)) {
            o.fail("tree footprint produced a missing edge, seed " + std::to_string(seed));
        }
    }
    const char* fixtures[] = {"k3", "complete:4", "complete:5", "cycle:4", "cycle:5"};
    std::vector<StaticGraph> footprints;
    for (const char* f : fixtures) {
        footprints.push_back(named_footprint(f));
    }
    // Triangle with a pendant vertex.
    footprints.push_back(StaticGraph::from_names({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}, {"c", "d"}}));
    for (const auto& f : footprints) {
        bool found = false;
        for (std::uint64_t seed = 0; seed < 20 && !found; ++seed) {
            Tvg g = generate_cot(seed, f, {.density = 1.0});
            found = !eventual_missing_edges(g).empty() && is_cot(g) && oracle::cot_brute_force(g);
        }
        if (!found) {
            o.fail("no COT member with a missing edge on a " + std::to_string(f.edge_count()) + "-edge footprint");
        }
    }
    if (o.pass) {
        o.detail = "120 tree seeds clean; " + std::to_string(footprints.size()) + " non-tree footprints witnessed";
    }
    return o;
}

// 9. Repeated runs of the adversary scenario write identical bytes.
Outcome determinism() {
    Outcome o;
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "tvg-acceptance";
    fs::create_directories(dir);
    Tvg base = k3();
    const EdgeId e = base.edge_by_label("a-c");
    std::string first;
    for (int i = 0; i < 10; ++i) {
        auto report = run_adversary(base, e, local_flood_window(8), {3, 32, 5000});
        auto result = run(report.final_graph, local_flood_window(8), 5000);
        std::string text;
        for (const auto& rec : result.execution.ticks) {
            text += dump_line(to_json(rec, report.final_graph));
        }
        text += dump_line(Json{{"output_trace", to_json(result.outputs)}});
        text += dump(to_json(report));
        fs::path file = dir / ("run" + std::to_string(i) + ".jsonl");
        write_file(file, text);
        std::string back = read_file(file);
        if (i == 0) {
            first = back;
        } else if (back != first) {
            o.fail("run " + std::to_string(i) + " differs from run 0");
        }
    }
    if (o.pass) {
        o.detail = "10 runs, " + std::to_string(first.size()) + " bytes each, identical";
    }
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> check;
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "ultrametric axioms", 30, ultrametric},
        {2, "Lipschitz law", 120, lipschitz},
        {3, "adversary end-to-end", 60, adversary_end_to_end},
        {4, "eventual footprint", 30, eventual_footprint},
        {5, "COT checker vs brute force", 120, cot_checker},
        {6, "journey oracle", 60, journey_oracle},
        {7, "completeness", 10, completeness},
        {8, "tree footprints", 30, tree_footprints},
        {9, "simulator determinism", 600, determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& ex) {
            o.fail(std::string("exception: ") + ex.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.pass && secs > c.budget_seconds) {
            o.fail("over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget");
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
        std::cout << "criterion " << c.id << " [" << c.name << "]: " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail
                  << " (" << timing << ")" << std::endl;
        failures += !o.pass;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
