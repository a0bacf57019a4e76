#include "tvg/algorithms.hpp"
#include "tvg/cli.hpp"
#include "tvg/error.hpp"
#include "tvg/generate.hpp"
#include "tvg/json_io.hpp"
#include "tvg/sim.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace tvg;
namespace fs = std::filesystem;

namespace {

const std::string data = TVG_DATA_DIR;

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "tvg-tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string parse_error(std::string_view text) {
    try {
        parse_tvg(text, "doc.json");
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_SUITE("json") {
    TEST_CASE("TVG round trip is exact") {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            Tvg g = random_tvg(seed);
            CHECK(parse_tvg(dump(to_json(g))) == g);
        }
        Tvg k3 = load_tvg(data + "/k3_missing_ca.json");
        CHECK(parse_tvg(dump(to_json(k3))) == k3);
    }

    TEST_CASE("output trace round trip") {
        Tvg g = generate_cot(3, named_footprint("complete:4"));
        auto r = run(g, local_flood_window(4), 80, {.record_execution = false});
        CHECK(parse_output_trace(dump(to_json(r.outputs))) == r.outputs);
    }

    TEST_CASE("optional fields default") {
        Tvg g = parse_tvg(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"b","latency":1,"period":1,"pattern":[[0,1]]}]})");
        CHECK(g.edges()[0].schedule == PresenceSchedule::always());
        // A footprint edge must be present at least once.
        CHECK_THROWS_AS(parse_tvg(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"b","latency":1,"period":1}]})"),
                        ParseError);
    }

    TEST_CASE("syntax errors carry line and column") {
        std::string msg = parse_error(read_file(data + "/bad_syntax.json"));
        CHECK(msg.rfind("doc.json:4:61:", 0) == 0);
    }

    TEST_CASE("unknown fields are rejected with their location") {
        std::string msg = parse_error(read_file(data + "/bad_field.json"));
        CHECK(msg.rfind("doc.json:5:7: at /edges/0/colour:", 0) == 0);
    }

    TEST_CASE("schema and invariant violations") {
        CHECK(parse_error(R"({"vertices":["a"],"edges":[]})").empty());
        CHECK(parse_error(R"({"vertices":["a","a"],"edges":[]})") != "");
        CHECK(parse_error(R"({"edges":[]})").find("vertices") != std::string::npos);
        CHECK(parse_error(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"b","latency":0,"period":1}]})") != "");
        CHECK(parse_error(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"z","latency":1,"period":1}]})") != "");
        CHECK(parse_error(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"b","latency":1,"period":0}]})") != "");
        CHECK(parse_error(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"b","latency":1,"period":2,"pattern":[[1,3]]}]})") !=
              "");
        CHECK(parse_error(R"({"vertices":["a","b"],"process_latency":1,"edges":[]})") != "");
        CHECK(parse_error(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"b","latency":-1,"period":1}]})") != "");
    }
}

TEST_SUITE("cli") {
    TEST_CASE("info reports footprints") {
        auto r = cli({"info", data + "/k3_missing_ca.json"});
        REQUIRE(r.code == exit_ok);
        auto j = Json::parse(r.out);
        CHECK(j["cot"] == true);
        CHECK(j["eventual_missing_edges"] == Json::array({"a-c"}));
        CHECK(j["footprint_is_tree"] == false);
    }

    TEST_CASE("require-cot explains tree rejections") {
        auto r = cli({"info", data + "/tree_missing_edge.json", "--require-cot"});
        CHECK(r.code == exit_bad_input);
        CHECK(r.err.find("footprint is a tree") != std::string::npos);
        CHECK(cli({"info", data + "/tree_path.json", "--require-cot"}).code == exit_ok);
    }

    TEST_CASE("bad input exits 1") {
        CHECK(cli({"info", data + "/bad_syntax.json"}).code == exit_bad_input);
        CHECK(cli({"info", data + "/does_not_exist.json"}).code == exit_bad_input);
        CHECK(cli({"nonsense"}).code == exit_bad_input);
        CHECK(cli({}).code == exit_bad_input);
    }

    TEST_CASE("dist prints lambda and distance") {
        fs::path a = scratch("dist_a.json");
        fs::path b = scratch("dist_b.json");
        write_file(a, R"({"vertices":["a","b"],"edges":[{"u":"a","v":"b","latency":1,"transient":[[0,3]],"base":3,"period":1}]})");
        write_file(b, R"({"vertices":["a","b"],"edges":[{"u":"a","v":"b","latency":1,"transient":[[0,5]],"base":5,"period":1}]})");
        auto r = cli({"dist", a.string(), b.string()});
        CHECK(r.code == exit_ok);
        CHECK(r.out == "lambda=3 distance=2^-3 approx=0.125\n");
        CHECK(cli({"dist", a.string(), a.string()}).out == "lambda=inf distance=0 approx=0\n");
    }

    TEST_CASE("reach returns the foremost journey") {
        auto r = cli({"reach", data + "/tree_path.json", "--from", "a", "--to", "d", "--after", "0"});
        REQUIRE(r.code == exit_ok);
        auto j = Json::parse(r.out);
        CHECK(j["arrival"].is_number());
        CHECK(j["hops"].size() == 3);
        CHECK(cli({"reach", data + "/tree_path.json", "--from", "a", "--to", "zz"}).code == exit_bad_input);
    }

    TEST_CASE("sim writes a JSONL trace ending with the outputs") {
        fs::path trace = scratch("sim.jsonl");
        auto r = cli({"sim", data + "/k3_missing_ca.json", "--algo", "local-flood-window", "--param", "W=8",
                      "--horizon", "50", "--trace", trace.string()});
        REQUIRE(r.code == exit_ok);
        std::istringstream lines(read_file(trace));
        std::string line;
        std::size_t n = 0;
        Json last;
        while (std::getline(lines, line)) {
            last = Json::parse(line);
            ++n;
        }
        CHECK(n == 52);
        REQUIRE(last.contains("output_trace"));
        CHECK(output_trace_from_json(last["output_trace"]) == parse_output_trace(r.out));
        CHECK(cli({"sim", data + "/k3_missing_ca.json", "--algo", "nope"}).code == exit_bad_input);
        CHECK(cli({"sim", data + "/k3_missing_ca.json", "--param", "W"}).code == exit_bad_input);
    }

    TEST_CASE("adversary writes its round files") {
        fs::path out = scratch("adv/report.json");
        auto r = cli({"adversary", data + "/k3_missing_ca.json", "--edge", "a-c", "--rounds", "3", "--out",
                      out.string()});
        REQUIRE(r.code == exit_ok);
        auto j = Json::parse(read_file(out));
        CHECK(j["verdict"]["result"] == "Defeated");
        CHECK(j["completed_rounds"] == 3);
        for (const auto& f : j["files"]) {
            CHECK(fs::exists(out.parent_path() / f.get<std::string>()));
        }
        auto seq = cli({"seqcheck", (out.parent_path() / "report.g0.json").string(),
                        (out.parent_path() / "report.g1.json").string(), (out.parent_path() / "report.g2.json").string(),
                        (out.parent_path() / "report.g3.json").string()});
        REQUIRE(seq.code == exit_ok);
        auto s = Json::parse(seq.out);
        CHECK(s["consecutive"] == Json::array({18, 27, 36}));

        auto echo = cli({"adversary", data + "/k3_missing_ca.json", "--edge", "a-c", "--algo", "echo-footprint",
                         "--horizon", "300"});
        CHECK(echo.code == exit_inconclusive);
        CHECK(Json::parse(echo.out)["verdict"]["result"] == "Inconclusive");
    }

    TEST_CASE("generate emits valid members") {
        auto r = cli({"generate", "--seed", "4", "--footprint", "cycle:4", "--density", "1"});
        REQUIRE(r.code == exit_ok);
        fs::path g = scratch("generated.json");
        write_file(g, r.out);
        auto info = Json::parse(cli({"info", g.string()}).out);
        CHECK(info["cot"] == true);
        CHECK(info["eventual_missing_edges"].size() == 1);
        CHECK(cli({"generate", "--footprint", "wheel:3"}).code == exit_bad_input);
    }
}
