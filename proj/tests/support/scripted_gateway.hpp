#pragma once

#include "lexqa/gateway.hpp"

#include <functional>

namespace lexqa::testing {

/// A gateway whose answers come from test-supplied functions. Unset hooks
/// fall back to the stub backend.
struct ScriptedGateway final : ModelGateway {
    std::function<std::vector<double>(std::string_view, const std::vector<std::string>&)> on_similarity;
    std::function<QaResponse(std::string_view, std::string_view)> on_qa;
    std::function<std::size_t(std::string_view)> on_token_count;
    std::string scorer_id = "scripted";
    mutable int similarity_calls = 0;

    std::vector<double> similarity(std::string_view q, const std::vector<std::string>& c) const override {
        ++similarity_calls;
        return on_similarity ? on_similarity(q, c) : stub.similarity(q, c);
    }
    QaResponse qa(std::string_view q, std::string_view c) const override {
        return on_qa ? on_qa(q, c) : stub.qa(q, c);
    }
    std::size_t token_count(std::string_view t) const override {
        return on_token_count ? on_token_count(t) : stub.token_count(t);
    }
    GatewayHealth health() const override { return stub.health(); }
    std::string similarity_scorer_id() const override { return scorer_id; }

    StubGateway stub;
};

}  // namespace lexqa::testing
