#include "tvg/cli.hpp"

#include "tvg/adversary.hpp"
#include "tvg/algorithms.hpp"
#include "tvg/error.hpp"
#include "tvg/generate.hpp"
#include "tvg/journeys.hpp"
#include "tvg/json_io.hpp"
#include "tvg/metric.hpp"
#include "tvg/sim.hpp"
#include "tvg/tvg_ops.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace tvg {

namespace {

namespace fs = std::filesystem;

struct AlgoFlags {
    std::string name = "local-flood-window";
    std::vector<std::string> params;

    void attach(CLI::App& cmd) {
        cmd.add_option("--algo", name, "candidate algorithm")->check(CLI::IsMember(builtin_algorithms()));
        cmd.add_option("--param", params, "algorithm parameter KEY=VALUE (repeatable)");
    }

    AlgorithmSpec build() const {
        AlgorithmParams parsed;
        for (const auto& p : params) {
            auto eq = p.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw DomainError("--param expects KEY=VALUE, got '" + p + "'");
            }
            parsed[p.substr(0, eq)] = p.substr(eq + 1);
        }
        return make_algorithm(name, parsed);
    }
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
    } else {
        write_file(path, text);
    }
}

std::string edge_list(const Tvg& g, const std::vector<EdgeId>& ids) {
    std::string s;
    for (EdgeId e : ids) {
        s += (s.empty() ? "" : ",") + g.edge_label(e);
    }
    return s;
}

int cmd_info(const std::string& path, bool require_cot, std::ostream& out, std::ostream& err) {
    Tvg g = load_tvg(path);
    StaticGraph footprint = underlying_graph(g);
    auto missing = eventual_missing_edges(g);
    bool cot = is_cot(g);
    bool tree = is_tree(footprint);

    Json missing_json = Json::array();
    for (EdgeId e : missing) {
        missing_json.push_back(g.edge_label(e));
    }
    Json report{{"underlying_graph", to_json(footprint)},
                {"eventual_underlying_graph", to_json(eventual_underlying_graph(g))},
                {"eventual_missing_edges", missing_json},
                {"cot", cot},
                {"footprint_is_tree", tree}};

    if (require_cot && !cot) {
        std::string why = "not connected over time";
        if (tree && !missing.empty()) {
            why += ": the footprint is a tree, and a tree loses connectivity when any edge is removed, so the "
                   "eventually missing edge " +
                   edge_list(g, missing) + " leaves later times disconnected";
        } else {
            why += ": the recurrently usable edges do not connect every vertex";
        }
        err << "tvg: error: " << path << ": " << why << "\n";
        return exit_bad_input;
    }
    out << dump(report);
    return exit_ok;
}

int cmd_dist(const std::string& a, const std::string& b, std::ostream& out) {
    auto d = distance(lambda_graph(load_tvg(a), load_tvg(b)));
    std::ostringstream approx;
    approx << d.approx;
    out << "lambda=" << d.lambda.to_string() << " distance=" << d.exact() << " approx=" << approx.str() << "\n";
    return exit_ok;
}

int cmd_reach(const std::string& path, const std::string& from, const std::string& to, Tick after,
              std::ostream& out) {
    Tvg g = load_tvg(path);
    auto journey = exists_temporal_path(g, g.vertex(from), g.vertex(to), after);
    Json j{{"from", from}, {"to", to}, {"after", after}};
    j["arrival"] = journey ? Json(journey->arrival()) : Json(nullptr);
    j["hops"] = journey ? to_json(*journey, g) : Json::array();
    out << dump(j);
    return exit_ok;
}

int cmd_sim(const std::string& path, const AlgoFlags& algo, Tick horizon, const std::string& trace_path,
            const std::string& out_path, std::ostream& out) {
    Tvg g = load_tvg(path);
    auto result = run(g, algo.build(), horizon, {.record_execution = !trace_path.empty()});
    if (!trace_path.empty()) {
        std::string lines;
        for (const auto& rec : result.execution.ticks) {
            lines += dump_line(to_json(rec, g));
        }
        lines += dump_line(Json{{"output_trace", to_json(result.outputs)}});
        write_file(trace_path, lines);
    }
    emit(dump(to_json(result.outputs)), out_path, out);
    return exit_ok;
}

int cmd_adversary(const std::string& path, const std::string& edge, const AlgoFlags& algo,
                  const AdversaryConfig& config, const std::string& out_path, const std::string& rounds_dir,
                  std::ostream& out) {
    Tvg base = load_tvg(path);
    auto report = run_adversary(base, base.edge_by_label(edge), algo.build(), config);

    // Round graphs go next to the report, or to --rounds-dir when given.
    fs::path dir = !rounds_dir.empty() ? fs::path(rounds_dir) : fs::path(out_path).parent_path();
    std::string stem = out_path.empty() ? std::string("adversary") : fs::path(out_path).stem().string();
    if (!rounds_dir.empty() || !out_path.empty()) {
        if (!dir.empty()) {
            fs::create_directories(dir);
        }
        Json files = Json::array();
        auto save = [&](const std::string& name, const Tvg& g) {
            fs::path file = dir / (stem + "." + name + ".json");
            write_file(file, dump(to_json(g)));
            files.push_back(file.filename().string());
        };
        for (const auto& r : report.rounds) {
            save("g" + std::to_string(r.index), r.g);
            if (r.g_prime) {
                save("gprime" + std::to_string(r.index), *r.g_prime);
            }
        }
        save("g" + std::to_string(report.completed_rounds()), report.final_graph);
        save("limit", report.limit_prefix);
        Json j = to_json(report);
        j["files"] = files;
        emit(dump(j), out_path, out);
    } else {
        emit(dump(to_json(report)), out_path, out);
    }
    return report.verdict.defeated ? exit_ok : exit_inconclusive;
}

int cmd_seqcheck(const std::vector<std::string>& paths, unsigned max_exponent, std::ostream& out) {
    std::vector<Tvg> gs;
    for (const auto& p : paths) {
        gs.push_back(load_tvg(p));
    }
    out << dump(to_json(sequence_check(gs, max_exponent)));
    return exit_ok;
}

int cmd_generate(std::uint64_t seed, const std::string& footprint, const CotOptions& options,
                 const std::string& out_path, std::ostream& out) {
    StaticGraph f = fs::exists(footprint) ? underlying_graph(load_tvg(footprint)) : named_footprint(footprint);
    emit(dump(to_json(generate_cot(seed, f, options))), out_path, out);
    return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Time-varying graph toolkit", "tvg"};
    app.require_subcommand(1);

    std::string path;
    std::string path_b;
    std::string out_path;

    auto* info = app.add_subcommand("info", "footprints, eventual missing edges, connectivity over time");
    bool require_cot = false;
    info->add_option("tvg", path, "TVG JSON file")->required();
    info->add_flag("--require-cot", require_cot, "fail unless the TVG is connected over time");

    auto* dist = app.add_subcommand("dist", "prefix agreement and distance between two TVGs");
    dist->add_option("a", path, "first TVG")->required();
    dist->add_option("b", path_b, "second TVG")->required();

    auto* reach = app.add_subcommand("reach", "foremost temporal path");
    std::string from;
    std::string to;
    Tick after = 0;
    reach->add_option("tvg", path, "TVG JSON file")->required();
    reach->add_option("--from", from, "source vertex")->required();
    reach->add_option("--to", to, "target vertex")->required();
    reach->add_option("--after", after, "first departure is strictly after this tick");

    auto* sim = app.add_subcommand("sim", "simulate a built-in algorithm");
    AlgoFlags sim_algo;
    Tick sim_horizon = 200;
    std::string trace_path;
    sim->add_option("tvg", path, "TVG JSON file")->required();
    sim_algo.attach(*sim);
    sim->add_option("--horizon", sim_horizon, "last simulated tick");
    sim->add_option("--trace", trace_path, "JSONL execution trace");
    sim->add_option("--out", out_path, "output trace JSON (default stdout)");

    auto* adv = app.add_subcommand("adversary", "run the growing-prefix construction against a candidate");
    AlgoFlags adv_algo;
    AdversaryConfig config;
    std::string edge;
    std::string rounds_dir;
    adv->add_option("tvg", path, "base TVG JSON file")->required();
    adv->add_option("--edge", edge, "target eventual missing edge, u-v")->required();
    adv_algo.attach(*adv);
    adv->add_option("--rounds", config.rounds, "rounds to build");
    adv->add_option("--quiescence", config.quiescence, "all-absent ticks required before accepting eta");
    adv->add_option("--horizon", config.horizon, "simulation horizon per run");
    adv->add_option("--out", out_path, "report JSON (default stdout)");
    adv->add_option("--rounds-dir", rounds_dir, "directory for round TVGs (default: next to --out)");

    auto* seq = app.add_subcommand("seqcheck", "Cauchy and ultrametric analysis of a TVG sequence");
    std::vector<std::string> seq_paths;
    unsigned max_exponent = 16;
    seq->add_option("tvgs", seq_paths, "TVG JSON files in order")->required()->expected(2, -1);
    seq->add_option("--max-exponent", max_exponent, "test epsilon = 2^-1 .. 2^-N");

    auto* gen = app.add_subcommand("generate", "random member of COT over a footprint");
    std::uint64_t seed = 0;
    std::string footprint = "complete:3";
    CotOptions cot;
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--footprint", footprint, "complete:N, cycle:N, path:N, star:N, or a TVG file");
    gen->add_option("--period", cot.max_period, "largest period")->check(CLI::PositiveNumber);
    gen->add_option("--max-base", cot.max_base, "largest transient length");
    gen->add_option("--max-latency", cot.max_latency, "largest latency")->check(CLI::PositiveNumber);
    gen->add_option("--density", cot.density, "probability a non-tree edge goes missing")->check(CLI::Range(0.0, 1.0));
    gen->add_option("--out", out_path, "output file (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o;
        std::ostringstream e2;
        int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? exit_ok : exit_bad_input;
    }

    try {
        if (*info) {
            return cmd_info(path, require_cot, out, err);
        }
        if (*dist) {
            return cmd_dist(path, path_b, out);
        }
        if (*reach) {
            return cmd_reach(path, from, to, after, out);
        }
        if (*sim) {
            return cmd_sim(path, sim_algo, sim_horizon, trace_path, out_path, out);
        }
        if (*adv) {
            return cmd_adversary(path, edge, adv_algo, config, out_path, rounds_dir, out);
        }
        if (*seq) {
            return cmd_seqcheck(seq_paths, max_exponent, out);
        }
        if (*gen) {
            return cmd_generate(seed, footprint, cot, out_path, out);
        }
    } catch (const SimulationError& e) {
        err << "tvg: contract violation: " << e.what() << "\n";
        return exit_contract_violation;
    } catch (const ParseError& e) {
        err << "tvg: error: " << e.what() << "\n";
        return exit_bad_input;
    } catch (const DomainError& e) {
        err << "tvg: error: " << e.what() << "\n";
        return exit_bad_input;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "tvg: error: " << e.what() << "\n";
        return exit_bad_input;
    }
    return exit_bad_input;
}

}  // namespace tvg
