#include <doctest.h>

#include "lexqa/cli.hpp"
#include "lexqa/report.hpp"
#include "temp_dir.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace lexqa;
using nlohmann::json;
using lexqa::testing::TempDir;

namespace {

const std::string kSample = LEXQA_DATA_DIR "/samples/breach_notification.txt";

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "lexqa");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string value_of(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(key, 0) == 0) {
            auto v = line.substr(key.size());
            v.erase(0, v.find_first_not_of(" :\t"));
            return v;
        }
    }
    return {};
}

}  // namespace

TEST_CASE("ask on the bundled sample with the stub scorer") {
    TempDir dir;
    const auto out = (dir.path() / "report.json").string();
    const auto r = cli({"--store", dir.path().string(), "ask", kSample, "When must the authority be notified?",
                        "--scorer", "stub", "--format", "json", "--out", out});
    CHECK(r.code == kExitOk);
    std::ifstream in(out);
    REQUIRE(in);
    const auto report = report_from_json(json::parse(in));
    CHECK(report.n == 5);
    CHECK(report.entries.size() <= 5);
    CHECK_FALSE(report.entries.empty());
}

TEST_CASE("markdown and html go to stdout") {
    const auto md = cli({"--store", "/nonexistent-store-unused", "ask", kSample, "data breach", "--scorer", "tfidf",
                         "--format", "md", "-n", "2"});
    CHECK(md.code == kExitOk);
    CHECK(md.out.rfind("# data breach", 0) == 0);
    const auto html = cli({"ask", kSample, "data breach", "--scorer", "stub", "--format", "html"});
    CHECK(html.code == kExitOk);
    CHECK(html.out.find("<ol class=\"entries\">") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(cli({"ask", kSample, "q", "--top-n", "0"}).code == kExitUsage);
    CHECK(cli({"ask", kSample, "q", "--scorer", "bm25"}).code == kExitUsage);
    CHECK(cli({"ask", kSample, "q", "--format", "pdf", "--scorer", "stub"}).code == kExitUsage);
    CHECK(cli({"ask", kSample, "   ", "--scorer", "stub"}).code == kExitUsage);
    CHECK(cli({"--max-span-tokens", "0", "ask", kSample, "q"}).code == kExitUsage);
    CHECK(cli({"frobnicate"}).code == kExitUsage);
    CHECK(cli({}).code == kExitUsage);
}

TEST_CASE("missing documents and gold files exit 3") {
    TempDir dir;
    CHECK(cli({"--store", dir.path().string(), "ask", "deadbeefdeadbeef", "q", "--scorer", "stub"}).code ==
          kExitNotFound);
    CHECK(cli({"--store", dir.path().string(), "ingest", "/nonexistent/file.txt"}).code == kExitNotFound);
    CHECK(cli({"--store", dir.path().string(), "eval", "/nonexistent/gold.jsonl"}).code == kExitNotFound);
}

TEST_CASE("cross scoring without a gateway exits 4") {
    const auto r = cli({"--gateway-url", "", "ask", kSample, "data breach", "--scorer", "cross"});
    CHECK(r.code == kExitGateway);
    CHECK(r.err.find("gateway") != std::string::npos);
    CHECK(cli({"--gateway-url", "http://127.0.0.1:1", "ask", kSample, "data breach", "--scorer", "cross"}).code ==
          kExitGateway);
}

TEST_CASE("ingest then ask by doc id") {
    TempDir dir;
    const auto synthetic = std::string(LEXQA_DATA_DIR) + "/samples/synthetic_620.txt";
    const auto ing = cli({"--store", dir.path().string(), "ingest", synthetic});
    REQUIRE(ing.code == kExitOk);
    // Both values come from the standalone partition oracle in tools/gen_fixtures.py.
    CHECK(value_of(ing.out, "doc_id") == "a60de6e4cb9923c2");
    CHECK(value_of(ing.out, "sentences") == "620");
    CHECK(value_of(ing.out, "spans") == "79");

    const auto ask = cli({"--store", dir.path().string(), "ask", "a60de6e4cb9923c2", "controller", "--scorer", "stub",
                          "--format", "json"});
    CHECK(ask.code == kExitOk);
    CHECK(json::parse(ask.out)["doc_id"] == "a60de6e4cb9923c2");
}

TEST_CASE("eval over the bundled gold set") {
    TempDir dir;
    const auto report = (dir.path() / "eval.json").string();
    const auto r = cli({"--store", dir.path().string(), "eval", LEXQA_DATA_DIR "/gold/synthetic_620.gold.jsonl",
                        "--doc", LEXQA_DATA_DIR "/samples/synthetic_620.txt", "--scorer", "stub", "-n", "1",
                        "--report", report});
    REQUIRE(r.code == kExitOk);
    std::ifstream in(report);
    const auto j = json::parse(in);
    CHECK(j["retrieval_accuracy_at_n"] == 1.0);
    CHECK(j["answer_exact_match"] == 1.0);
}

TEST_CASE("the installed binary reports exit codes to the shell") {
    const std::string bin = LEXQA_CLI_PATH;
    auto status = [&](const std::string& args) {
        const int raw = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status("--help") == 0);
    CHECK(status("ask " + kSample + " q --top-n 0") == 2);
    CHECK(status("ask " + kSample + " 'data breach' --scorer stub") == 0);
}
