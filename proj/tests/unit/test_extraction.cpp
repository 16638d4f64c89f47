#include <doctest.h>

#include "lexqa/errors.hpp"
#include "lexqa/extraction.hpp"
#include "scripted_gateway.hpp"

using namespace lexqa;
using lexqa::testing::ScriptedGateway;

namespace {

ContextSpan span_with(const std::string& text) {
    NormalizedDocument doc;
    doc.doc_id = "doc";
    doc.normalized_text = text;
    doc.sentences = split_sentences(text);
    return partition(doc, 100000).front();
}

GatewayErrorKind kind_of(const ContextSpan& span, QaResponse response) {
    ScriptedGateway gw;
    gw.on_qa = [=](std::string_view, std::string_view) { return response; };
    try {
        extract_answer("q", span, gw);
    } catch (const GatewayError& e) {
        CHECK(e.span_id() == span.span_id);
        return e.kind();
    }
    FAIL("expected a gateway error");
    return GatewayErrorKind::not_configured;
}

}  // namespace

TEST_CASE("answer text is exactly the returned slice") {
    const std::string text = "0123456789abcdefghijklmnopqrstuvwxyz" + std::string(64, 'x');
    REQUIRE(text.size() == 100);
    const auto span = span_with(text);
    ScriptedGateway gw;
    gw.on_qa = [](std::string_view, std::string_view) { return QaResponse{10, 25, 0.93}; };
    const auto a = extract_answer("q", span, gw);
    CHECK(a.answer_text == "abcdefghijklmno");
    CHECK(a.answer_text.size() == 15);
    CHECK(a.confidence == 0.93);
    CHECK_FALSE(a.empty);
    CHECK(a.span_id == "doc#0");
}

TEST_CASE("stub extractor picks the best-overlap sentence") {
    const auto span = span_with("Fines are set by law. The authority must be notified within 72 hours.");
    const StubGateway stub;
    const auto a = extract_answer("when must the authority be notified", span, stub);
    CHECK(a.answer_text == "The authority must be notified within 72 hours.");
    // {the, authority, must, be, notified} shared; union has 9 terms.
    CHECK(a.confidence == doctest::Approx(5.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("no-answer response") {
    const auto span = span_with("Nothing relevant here.");
    ScriptedGateway gw;
    gw.on_qa = [](std::string_view, std::string_view) { return QaResponse{0, 0, 0.0}; };
    const auto a = extract_answer("q", span, gw);
    CHECK(a.empty);
    CHECK(a.answer_text.empty());
    CHECK(extract_answer("zebra", span, StubGateway{}).empty);
}

TEST_CASE("invalid responses are protocol violations") {
    const auto span = span_with("Short span.");
    CHECK(kind_of(span, {3, 100, 0.5}) == GatewayErrorKind::protocol_violation);
    CHECK(kind_of(span, {5, 2, 0.5}) == GatewayErrorKind::protocol_violation);
    CHECK(kind_of(span, {4, 4, 0.5}) == GatewayErrorKind::protocol_violation);
    CHECK(kind_of(span, {0, 5, 1.5}) == GatewayErrorKind::protocol_violation);
    CHECK(kind_of(span_with("caf\xC3\xA9 ok."), {0, 4, 0.5}) == GatewayErrorKind::protocol_violation);
}

TEST_CASE("transport failures carry the span id") {
    const auto span = span_with("Some text.");
    ScriptedGateway gw;
    gw.on_qa = [](std::string_view, std::string_view) -> QaResponse {
        throw GatewayError(GatewayErrorKind::transport, "connection refused");
    };
    try {
        extract_answer("q", span, gw);
        FAIL("expected an error");
    } catch (const GatewayError& e) {
        CHECK(e.kind() == GatewayErrorKind::transport);
        CHECK(e.span_id() == "doc#0");
    }
}
