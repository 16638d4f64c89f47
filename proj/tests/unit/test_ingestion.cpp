#include <doctest.h>

#include "lexqa/errors.hpp"
#include "lexqa/gateway.hpp"
#include "lexqa/ingestion.hpp"
#include "lexqa/text.hpp"
#include "oracles.hpp"

#include <filesystem>
#include <fstream>
#include <random>

using namespace lexqa;

namespace {

std::vector<std::string> texts(const std::vector<Sentence>& s) {
    std::vector<std::string> out;
    for (const auto& x : s) out.push_back(x.text);
    return out;
}

}  // namespace

TEST_SUITE("normalize_text") {
    TEST_CASE("drops the terminal period of listed abbreviations") {
        const auto rules = AbbreviationRules::legal_defaults();
        CHECK(normalize_text("Art. 33 GDPR", rules) == "Art 33 GDPR");
        CHECK(normalize_text("", rules).empty());
    }

    TEST_CASE("only listed, whole-token abbreviations change") {
        const AbbreviationRules rules({"No.", "e.g.", "Art."});
        CHECK(normalize_text("See No. 5, e.g. Art. 4.", rules) == "See No 5, e.g Art 4.");
        CHECK(normalize_text("Cart. Art.x", rules) == "Cart. Art.x");
        CHECK(normalize_text("art. 4", rules) == "art. 4");  // case-sensitive
        CHECK(normalize_text("(Art. 5)", rules) == "(Art 5)");
    }

    TEST_CASE("idempotent on random legal-looking text") {
        const auto rules = AbbreviationRules::legal_defaults();
        std::mt19937_64 rng(7);
        const char* pieces[] = {"Art.", "Arts.", "e.g.", "i.e.", "No.", "etc.", ".", " ", "x", "(", ")", "\n",
                                "par.", "subpar.", "cf.", "Nos."};
        std::uniform_int_distribution<std::size_t> pick(0, std::size(pieces) - 1);
        for (int trial = 0; trial < 500; ++trial) {
            std::string s;
            for (int i = 0; i < 30; ++i) s += pieces[pick(rng)];
            const auto once = normalize_text(s, rules);
            CHECK(normalize_text(once, rules) == once);
        }
    }

    TEST_CASE("rule validation and id") {
        CHECK_THROWS_AS(AbbreviationRules({"Art"}), std::invalid_argument);
        CHECK_THROWS_AS(AbbreviationRules({"e. g."}), std::invalid_argument);
        CHECK_THROWS_AS(AbbreviationRules({"x.."}), std::invalid_argument);
        // Hand hash: sha256 of the sorted entries, each followed by a newline.
        const AbbreviationRules r({"No.", "Art.", "Art."});
        CHECK(r.id() == "abbr-" + sha256_hex("Art.\nNo.\n").substr(0, 12));
        CHECK(AbbreviationRules::parse("# comment\nArt.\n\n  No.  \n").id() == r.id());
    }
}

TEST_SUITE("split_sentences") {
    TEST_CASE("examples") {
        const auto one = split_sentences("Hello.");
        REQUIRE(one.size() == 1);
        CHECK(one[0].index == 0);
        CHECK(one[0].text == "Hello.");
        CHECK(split_sentences("The controller shall notify. The processor shall assist.").size() == 2);
    }

    TEST_CASE("normalization prevents the abbreviation over-split") {
        const std::string raw = "Art. 33 applies without undue delay. Art. 34 applies to the data subject.";
        CHECK(split_sentences(raw).size() == 4);
        const auto normalized = normalize_text(raw, AbbreviationRules::legal_defaults());
        CHECK(texts(split_sentences(normalized)) ==
              std::vector<std::string>{"Art 33 applies without undue delay.", "Art 34 applies to the data subject."});
    }

    TEST_CASE("terminators, closers and paragraph breaks") {
        const std::string s = "Is it (really)? Yes! A; B \"quoted.\" x.y stays\n\nNew para\n  \nThird";
        const auto out = split_sentences(s);
        CHECK(texts(out) == std::vector<std::string>{"Is it (really)?", "Yes!", "A;", "B \"quoted.\"",
                                                     "x.y stays", "New para", "Third"});
        CHECK(out[4].paragraph == 0);
        CHECK(out[5].paragraph == 1);
        CHECK(out[6].paragraph == 2);
    }

    TEST_CASE("offsets slice the normalized text exactly") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 200; ++trial) {
            const auto doc = testing::random_document(rng);
            const auto sentences = split_sentences(doc.text);
            std::size_t expected = 0;
            for (const auto& p : doc.paragraphs) expected += p.size();
            REQUIRE(sentences.size() == expected);
            std::size_t prev_end = 0;
            for (std::size_t i = 0; i < sentences.size(); ++i) {
                const auto& s = sentences[i];
                CHECK(s.index == i);
                CHECK(s.char_start >= prev_end);
                CHECK(doc.text.substr(s.char_start, s.char_end - s.char_start) == s.text);
                prev_end = s.char_end;
            }
        }
    }
}

TEST_SUITE("count_tokens") {
    TEST_CASE("word heuristic") {
        CHECK(count_tokens("") == 0);
        CHECK(count_tokens("personal data breach") == 3);
        CHECK(count_tokens("Art 33(1)") == 2);
        CHECK(count_tokens(" \n\t ") == 0);
    }

    TEST_CASE("additive across whitespace joins") {
        std::mt19937_64 rng(3);
        for (int i = 0; i < 100; ++i) {
            const auto a = testing::random_document(rng, 1, 2, 10).text;
            const auto b = testing::random_document(rng, 1, 2, 10).text;
            CHECK(count_tokens(a + " " + b) == count_tokens(a) + count_tokens(b));
        }
    }

    TEST_CASE("backend mode delegates to the gateway") {
        const StubGateway stub;
        const TokenCounter counter(CountMode::backend, &stub);
        CHECK(counter("a b c") == stub.token_count("a b c"));
        CHECK_THROWS_AS(TokenCounter(CountMode::backend, nullptr)("x"), GatewayError);
        CHECK(parse_count_mode("word") == CountMode::word);
        CHECK_THROWS_AS(parse_count_mode("chars"), std::invalid_argument);
    }
}

TEST_SUITE("documents") {
    TEST_CASE("content-derived doc id") {
        const auto d = make_document("T", "body text.");
        CHECK(d.doc_id == sha256_hex(std::string("T") + '\0' + "body text.").substr(0, 16));
        CHECK(make_document("T", "body text.").doc_id == d.doc_id);
        CHECK(make_document("U", "body text.").doc_id != d.doc_id);
        CHECK_THROWS_AS(make_document("T", ""), std::invalid_argument);
        CHECK_THROWS_AS(make_document("T", "bad \xFF byte"), std::invalid_argument);
    }

    TEST_CASE("load_document uses the file stem as the default title") {
        const auto dir = std::filesystem::temp_directory_path() / "lexqa_ingest_test";
        std::filesystem::create_directories(dir);
        const auto path = dir / "contract.txt";
        std::ofstream(path) << "Clause one. Clause two.";
        const auto d = load_document(path);
        CHECK(d.title == "contract");
        CHECK(d.raw_text == "Clause one. Clause two.");
        CHECK_THROWS_AS(load_document(dir / "missing.txt"), NotFoundError);
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("normalize_document carries the ruleset id") {
        const auto rules = AbbreviationRules::legal_defaults();
        const auto n = normalize_document(make_document("t", "Art. 1 applies. Art. 2 too."), rules);
        CHECK(n.normalized_text == "Art 1 applies. Art 2 too.");
        CHECK(n.sentences.size() == 2);
        CHECK(n.abbreviation_ruleset_id == rules.id());
        CHECK(rules.id() == "abbr-d66f74c250f3");
    }
}
