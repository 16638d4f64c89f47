#include <doctest.h>

#include "lexqa/errors.hpp"
#include "lexqa/scoring.hpp"
#include "oracles.hpp"
#include "scripted_gateway.hpp"

#include <random>

using namespace lexqa;
using lexqa::testing::ScriptedGateway;

namespace {

/// One span per paragraph-free text, each text a single paragraph.
std::vector<ContextSpan> spans_of(const std::vector<std::string>& texts) {
    std::vector<ContextSpan> out;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        NormalizedDocument doc;
        doc.doc_id = "doc";
        doc.normalized_text = texts[i];
        doc.sentences = split_sentences(texts[i]);
        auto spans = partition(doc, 100000);
        REQUIRE(spans.size() == 1);
        spans[0].ordinal = i;
        spans[0].span_id = make_span_id("doc", i);
        out.push_back(std::move(spans[0]));
    }
    return out;
}

}  // namespace

TEST_SUITE("corpus statistics") {
    TEST_CASE("document frequency counts spans") {
        const auto stats = CorpusStatistics::build(spans_of({"a b", "a c"}));
        CHECK(stats.span_count() == 2);
        CHECK(stats.df("a") == 2);
        CHECK(stats.df("b") == 1);
        CHECK(stats.df("c") == 1);
        CHECK(stats.df("zzz") == 0);

        const auto single = CorpusStatistics::build(spans_of({"x"}));
        CHECK(single.df("x") == 1);
        CHECK(single.span_count() == 1);

        CHECK(CorpusStatistics::build(spans_of({"A a"})).df("a") == 1);
        CHECK_THROWS_AS(CorpusStatistics::build({}), std::invalid_argument);
    }

    TEST_CASE("smoothed idf") {
        const auto stats = CorpusStatistics::build(spans_of({"a b", "a c", "d"}));
        CHECK(stats.idf("a") == doctest::Approx(std::log(4.0 / 3.0) + 1.0).epsilon(1e-12));
        CHECK(stats.idf("unseen") == doctest::Approx(std::log(4.0) + 1.0).epsilon(1e-12));
    }
}

TEST_SUITE("tf-idf scorer") {
    TEST_CASE("identity and disjoint vocabulary") {
        const auto spans = spans_of({"The controller shall notify the authority.", "Fines apply."});
        const auto stats = CorpusStatistics::build(spans);
        const auto same = score_span_tfidf("The controller shall notify the authority.", spans[0], stats);
        CHECK(same.score == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(same.scorer_id == kTfidfScorerId);
        CHECK(same.span_id == "doc#0");
        CHECK(score_span_tfidf("supply of goods", spans[1], stats).score == 0.0);
        CHECK(score_span_tfidf("...", spans[0], stats).score == 0.0);
    }

    TEST_CASE("three-span toy corpus matches the brute-force oracle") {
        const std::vector<std::string> texts = {"A personal data breach shall be notified. Fines apply.",
                                                "The data subject has rights.", "Breach of contract by the seller."};
        const auto spans = spans_of(texts);
        const auto stats = CorpusStatistics::build(spans);
        for (const auto& span : spans) {
            double expected = 0.0;
            for (const auto& s : span.sentence_texts()) {
                expected = std::max(expected, testing::tfidf_oracle(texts, "data breach", s));
            }
            CHECK(std::abs(score_span_tfidf("data breach", span, stats).score - expected) < 1e-9);
        }
    }

    TEST_CASE("random corpora match the oracle") {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<std::string> texts;
            const int n = 1 + static_cast<int>(rng() % 6);
            for (int i = 0; i < n; ++i) texts.push_back(testing::random_document(rng, 1, 3, 8).text);
            const auto spans = spans_of(texts);
            const auto stats = CorpusStatistics::build(spans);
            const std::string question = testing::random_document(rng, 1, 1, 5).text;
            for (const auto& span : spans) {
                double expected = 0.0;
                for (const auto& s : span.sentence_texts()) {
                    expected = std::max(expected, testing::tfidf_oracle(texts, question, s));
                }
                CHECK(std::abs(score_span_tfidf(question, span, stats).score - expected) < 1e-9);
            }
        }
    }
}

TEST_SUITE("semantic scorer") {
    TEST_CASE("max over sentences") {
        ScriptedGateway gw;
        gw.on_similarity = [](std::string_view, const std::vector<std::string>& c) {
            REQUIRE(c.size() == 3);
            return std::vector<double>{0.2, 0.9, 0.4};
        };
        const auto spans = spans_of({"One. Two. Three."});
        const auto score = score_span_semantic("q", spans[0], gw);
        CHECK(score.score == 0.9);
        CHECK(score.scorer_id == "scripted");
        CHECK(gw.similarity_calls == 1);

        gw.on_similarity = [](std::string_view, const std::vector<std::string>&) { return std::vector<double>{0.8}; };
        CHECK(score_span_semantic("q", spans_of({"Only one."})[0], gw).score == 0.8);
    }

    TEST_CASE("stub jaccard over sentences") {
        const StubGateway stub;
        const auto spans = spans_of({"the data breach must be notified. fines apply."});
        // {data, breach} shared; union {data, breach, notification, the, must, be, notified}.
        CHECK(score_span_semantic("data breach notification", spans[0], stub).score ==
              doctest::Approx(2.0 / 7.0).epsilon(1e-12));
    }

    TEST_CASE("bad gateway output is rejected with the span id") {
        const auto spans = spans_of({"One. Two."});
        ScriptedGateway gw;
        gw.on_similarity = [](std::string_view, const std::vector<std::string>&) { return std::vector<double>{0.1}; };
        try {
            score_span_semantic("q", spans[0], gw);
            FAIL("expected a length mismatch");
        } catch (const GatewayError& e) {
            CHECK(e.kind() == GatewayErrorKind::length_mismatch);
            CHECK(e.span_id() == "doc#0");
        }
        gw.on_similarity = [](std::string_view, const std::vector<std::string>&) {
            return std::vector<double>{0.1, 1.5};
        };
        CHECK_THROWS_AS(score_span_semantic("q", spans[0], gw), GatewayError);
        gw.on_similarity = [](std::string_view, const std::vector<std::string>&) -> std::vector<double> {
            throw GatewayError(GatewayErrorKind::timeout, "slow");
        };
        try {
            score_span_semantic("q", spans[0], gw);
            FAIL("expected a timeout");
        } catch (const GatewayError& e) {
            CHECK(e.kind() == GatewayErrorKind::timeout);
            CHECK(e.span_id() == "doc#0");
        }
    }
}
