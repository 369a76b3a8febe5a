#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "documint/util.hpp"
#include "test_support.hpp"

namespace dm = documint;
namespace fs = std::filesystem;

#ifndef DOCUMINT_CLI_PATH
#error "DOCUMINT_CLI_PATH must point at the documint executable"
#endif

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs the installed binary with sh-quoted arguments, capturing both streams.
CliResult run_cli(const std::string& args) {
    static int counter = 0;
    documint_test::TempDir streams;
    const fs::path out_path = streams.path / ("out" + std::to_string(++counter));
    const fs::path err_path = streams.path / ("err" + std::to_string(counter));

    std::string cmd = std::string("\"") + DOCUMINT_CLI_PATH + "\" " + args + " > \"" +
                      out_path.string() + "\" 2> \"" + err_path.string() + "\"";
    int status = std::system(cmd.c_str());

    CliResult result;
    if (status == -1) {
        result.exit_code = -1;
    } else {
        result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
    if (fs::exists(out_path)) result.out = dm::util::read_file(out_path);
    if (fs::exists(err_path)) result.err = dm::util::read_file(err_path);
    return result;
}

std::string q(const std::string& path) { return "\"" + path + "\""; }

// A syntactically valid scores file with one task and a chosen aggregate.
std::string write_score_file(const fs::path& path, const std::string& model_id, double accuracy,
                             double conciseness, double clarity) {
    nlohmann::ordered_json row{{"task_id", "t1"},
                               {"accuracy", accuracy},
                               {"conciseness", conciseness},
                               {"clarity", clarity},
                               {"conciseness_band", "ideal"},
                               {"clarity_band", "ideal"}};
    nlohmann::ordered_json doc{{"model_id", model_id},
                               {"task_count", 1},
                               {"per_task", nlohmann::ordered_json::array({row})},
                               {"aggregate",
                                {{"accuracy", accuracy},
                                 {"conciseness", conciseness},
                                 {"clarity", clarity}}}};
    dm::util::write_file_atomic(path, doc.dump(2) + "\n");
    return path.string();
}

}  // namespace

TEST_CASE("mine writes the frozen corpus and stats sidecar") {
    documint_test::TempDir tmp;
    const std::string out = (tmp.path / "corpus.json").string();
    CliResult r = run_cli("mine --manifest " +
                          q(documint_test::fixture_path("miner/manifest.json")) + " --out " +
                          q(out));
    CAPTURE(r.err);
    CHECK(r.exit_code == 0);
    CHECK(dm::util::read_file(out) == documint_test::read_fixture("miner/golden_alpaca.json"));
    CHECK(dm::util::read_file(out + ".stats.json") ==
          documint_test::read_fixture("miner/golden_alpaca.json.stats.json"));
}

TEST_CASE("mine applies threshold overrides from the command line") {
    // Raising the contributor bar rejects both manifest repos: an accepted-
    // but-empty run still writes an empty corpus and zeroed stats.
    documint_test::TempDir tmp;
    const std::string out = (tmp.path / "corpus.json").string();
    CliResult r = run_cli("mine --manifest " +
                          q(documint_test::fixture_path("miner/manifest.json")) + " --out " +
                          q(out) + " --min-contributors 100");
    CAPTURE(r.err);
    CHECK(r.exit_code == 0);
    CHECK(dm::util::read_file(out) == "[]");
    auto stats = nlohmann::json::parse(dm::util::read_file(out + ".stats.json"));
    CHECK(stats.at("files_seen").get<int>() == 0);
    CHECK(stats.at("samples_exported").get<int>() == 0);
}

TEST_CASE("mine failure modes use the documented exit codes") {
    documint_test::TempDir tmp;
    const std::string out = (tmp.path / "corpus.json").string();

    SUBCASE("missing --manifest is a usage error") {
        CliResult r = run_cli("mine --out " + q(out));
        CHECK(r.exit_code == 2);
        CHECK_FALSE(fs::exists(out));
    }
    SUBCASE("a malformed manifest is a domain error") {
        const std::string manifest = (tmp.path / "broken.json").string();
        dm::util::write_file_atomic(manifest, "{\"not\": \"an array\"}");
        CliResult r = run_cli("mine --manifest " + q(manifest) + " --out " + q(out));
        CHECK(r.exit_code == 1);
        CHECK_FALSE(fs::exists(out));
    }
    SUBCASE("a tree where every file fails to parse is a domain error") {
        fs::create_directories(tmp.path / "badtree");
        dm::util::write_file_atomic(tmp.path / "badtree" / "broken.py",
                                    "def f():\n        x = 1\n    y = 2\n");
        const std::string manifest = (tmp.path / "manifest.json").string();
        nlohmann::json repos = nlohmann::json::array(
            {{{"repo_id", "bad/tree"},
              {"contributors", 60},
              {"commits", 6000},
              {"stars", 40000},
              {"forks", 12000},
              {"root_path", "badtree"}}});
        dm::util::write_file_atomic(manifest, repos.dump());
        CliResult r = run_cli("mine --manifest " + q(manifest) + " --out " + q(out));
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("failed to parse") != std::string::npos);
        CHECK_FALSE(fs::exists(out));
    }
}

TEST_CASE("bench --pregenerated reproduces the frozen run score") {
    documint_test::TempDir tmp;
    const std::string out = (tmp.path / "scores.json").string();
    CliResult r = run_cli("bench --functions " +
                          q(documint_test::fixture_path("bench/functions7.json")) +
                          " --pregenerated " +
                          q(documint_test::fixture_path("bench/pregenerated_stub.jsonl")) +
                          " --out " + q(out));
    CAPTURE(r.err);
    CHECK(r.exit_code == 0);
    CHECK(dm::util::read_file(out) == documint_test::read_fixture("bench/golden_runscore.json"));
}

TEST_CASE("bench argument contract") {
    documint_test::TempDir tmp;
    const std::string out = (tmp.path / "scores.json").string();
    const std::string functions = documint_test::fixture_path("bench/functions7.json");
    const std::string pregen = documint_test::fixture_path("bench/pregenerated_stub.jsonl");

    SUBCASE("either --pregenerated or --model-url is required") {
        CliResult r = run_cli("bench --functions " + q(functions) + " --out " + q(out));
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("--pregenerated or --model-url") != std::string::npos);
    }
    SUBCASE("--model-url requires --model-id") {
        CliResult r = run_cli("bench --functions " + q(functions) +
                              " --model-url http://127.0.0.1:9/generate --out " + q(out));
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("--model-id") != std::string::npos);
    }
    SUBCASE("--model-id conflicts with --pregenerated") {
        CliResult r = run_cli("bench --functions " + q(functions) + " --pregenerated " +
                              q(pregen) + " --model-id override --out " + q(out));
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("conflicts") != std::string::npos);
    }
    SUBCASE("--pregenerated excludes --model-url at parse time") {
        CliResult r = run_cli("bench --functions " + q(functions) + " --pregenerated " +
                              q(pregen) + " --model-url http://127.0.0.1:9/x --out " + q(out));
        CHECK(r.exit_code == 2);
    }
    SUBCASE("an unreachable generation endpoint is a domain error") {
        CliResult r = run_cli("bench --functions " + q(functions) +
                              " --model-url http://127.0.0.1:9/generate --model-id m " +
                              "--timeout-ms 200 --out " + q(out));
        CHECK(r.exit_code == 1);
        CHECK_FALSE(fs::exists(out));
    }
    SUBCASE("remote embedder without a URL is a usage error") {
        CliResult r = run_cli("bench --functions " + q(functions) + " --pregenerated " +
                              q(pregen) + " --embedder remote --out " + q(out));
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("embed-url") != std::string::npos);
    }
}

TEST_CASE("compare prints the delta table to stdout") {
    documint_test::TempDir tmp;
    const std::string base =
        write_score_file(tmp.path / "base.json", "codegemma-2b", 0.516, 0.425, 91.69);
    const std::string tuned =
        write_score_file(tmp.path / "tuned.json", "codegemma-2b-ft", 0.582, 0.521, 58.75);

    CliResult md = run_cli("compare --base " + q(base) + " --tuned " + q(tuned));
    CAPTURE(md.err);
    CHECK(md.exit_code == 0);
    CHECK(md.out ==
          "| Row | Model | Accuracy | Conciseness | Clarity |\n"
          "|---|---|---|---|---|\n"
          "| base | codegemma-2b | 0.516 | 0.425 | 91.69 |\n"
          "| tuned | codegemma-2b-ft | 0.582 | 0.521 | 58.75 |\n"
          "| delta | - | +12.7% | +22.5% | -32.94 (too_simple -> ideal) |\n");

    CliResult csv = run_cli("compare --base " + q(base) + " --tuned " + q(tuned) +
                            " --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.find("delta,-,+12.7%,+22.5%,-32.94 (too_simple -> ideal)") !=
          std::string::npos);

    SUBCASE("mismatched task sets are a domain error") {
        nlohmann::json doc = nlohmann::json::parse(dm::util::read_file(tuned));
        doc["per_task"][0]["task_id"] = "other_task";
        const std::string mismatched = (tmp.path / "mismatch.json").string();
        dm::util::write_file_atomic(mismatched, doc.dump());
        CliResult r = run_cli("compare --base " + q(base) + " --tuned " + q(mismatched));
        CHECK(r.exit_code == 1);
    }
    SUBCASE("a missing scores file is a domain error") {
        CliResult r = run_cli("compare --base " + q(base) + " --tuned " +
                              q((tmp.path / "nope.json").string()));
        CHECK(r.exit_code == 1);
    }
}

TEST_CASE("report renders the model table for several runs") {
    documint_test::TempDir tmp;
    const std::string a =
        write_score_file(tmp.path / "a.json", "CodeGemma 7B", 0.609, 0.569, 76.49);
    const std::string b =
        write_score_file(tmp.path / "b.json", "DeepSeek Coder 6.7B", 0.679, 0.734, 64.44);
    const std::string c =
        write_score_file(tmp.path / "c.json", "Llama3 8B", 0.668, 0.605, 64.88);
    const std::string d =
        write_score_file(tmp.path / "d.json", "StarCoder2 7B", 0.626, 0.510, 69.74);

    CliResult r = run_cli("report --scores " + q(a) + " " + q(b) + " " + q(c) + " " + q(d));
    CAPTURE(r.err);
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "| Model | Accuracy | Conciseness | Clarity | Best |\n"
          "|---|---|---|---|---|\n"
          "| CodeGemma 7B | 0.609 | 0.569 | 76.49 | clarity |\n"
          "| DeepSeek Coder 6.7B | 0.679 | 0.734 | 64.44 | accuracy conciseness |\n"
          "| Llama3 8B | 0.668 | 0.605 | 64.88 |  |\n"
          "| StarCoder2 7B | 0.626 | 0.510 | 69.74 |  |\n");

    CliResult csv = run_cli("report --scores " + q(c) + " --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out ==
          "model,accuracy,conciseness,clarity,best\n"
          "Llama3 8B,0.668,0.605,64.88,accuracy conciseness clarity\n");
}

TEST_CASE("score prints metric JSON to stdout") {
    CliResult r = run_cli("score --text \"Return the sum of the two inputs.\"");
    CAPTURE(r.err);
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK_FALSE(doc.contains("accuracy"));  // no reference given
    CHECK(doc.at("conciseness").is_number());
    CHECK(doc.at("clarity").is_number());
    CHECK(doc.at("conciseness_band").is_string());
    CHECK(doc.at("clarity_band").is_string());
    CHECK(doc.at("stats").at("words").get<int>() == 7);

    SUBCASE("a reference enables accuracy; identical texts score exactly 1.0") {
        CliResult ref = run_cli(
            "score --text \"Return the sum of the two inputs.\""
            " --reference \"Return the sum of the two inputs.\"");
        CHECK(ref.exit_code == 0);
        auto scored = nlohmann::json::parse(ref.out);
        CHECK(scored.at("accuracy").get<double>() == 1.0);
    }
    SUBCASE("--file reads the docstring from disk") {
        documint_test::TempDir tmp;
        const std::string file = (tmp.path / "doc.txt").string();
        dm::util::write_file_atomic(file, "Return the sum of the two inputs.");
        CliResult from_file = run_cli("score --file " + q(file));
        CHECK(from_file.exit_code == 0);
        CHECK(nlohmann::json::parse(from_file.out) == doc);
    }
    SUBCASE("--text and --file are mutually exclusive") {
        CliResult bad = run_cli("score --text x --file y");
        CHECK(bad.exit_code == 2);
    }
    SUBCASE("score with neither --text nor --file is a usage error") {
        CliResult bad = run_cli("score");
        CHECK(bad.exit_code == 2);
    }
    SUBCASE("empty text is a domain error") {
        CliResult bad = run_cli("score --text \"   \"");
        CHECK(bad.exit_code == 1);
    }
}

TEST_CASE("top-level usage behaviour") {
    SUBCASE("--help exits 0 and names every subcommand") {
        CliResult r = run_cli("--help");
        CHECK(r.exit_code == 0);
        for (const char* name : {"mine", "bench", "compare", "report", "score"}) {
            CAPTURE(name);
            CHECK(r.out.find(name) != std::string::npos);
        }
    }
    SUBCASE("no subcommand is a usage error") {
        CliResult r = run_cli("");
        CHECK(r.exit_code == 2);
    }
    SUBCASE("an unknown subcommand is a usage error") {
        CliResult r = run_cli("frobnicate");
        CHECK(r.exit_code == 2);
    }
    SUBCASE("an unknown flag is a usage error") {
        CliResult r = run_cli("report --scores x --no-such-flag");
        CHECK(r.exit_code == 2);
    }
    SUBCASE("an invalid enum value is rejected at parse time") {
        CliResult r = run_cli("report --scores x --format yaml");
        CHECK(r.exit_code == 2);
    }
}

TEST_CASE("environment variables feed endpoint defaults") {
    // DOCUMINT_GEN_URL stands in for --model-url; pointing it at a dead
    // port proves the variable was honored (domain error, not usage error).
    documint_test::TempDir tmp;
    const std::string out = (tmp.path / "scores.json").string();
    std::string cmd = std::string("DOCUMINT_GEN_URL=http://127.0.0.1:9/generate \"") +
                      DOCUMINT_CLI_PATH + "\" bench --functions " +
                      q(documint_test::fixture_path("bench/functions7.json")) +
                      " --model-id env-model --timeout-ms 200 --out " + q(out) +
                      " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    CHECK(WEXITSTATUS(status) == 1);
    CHECK_FALSE(fs::exists(out));
}
