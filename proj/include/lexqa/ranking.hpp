#pragma once

#include "lexqa/scoring.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace lexqa {

inline constexpr std::size_t kDefaultTopN = 5;

struct RankedSpan {
    std::size_t rank = 0;  // 1-based
    std::string span_id;
    std::size_t ordinal = 0;  // position of the span in its document
    double score = 0.0;

    friend bool operator==(const RankedSpan&, const RankedSpan&) = default;
};

/// Top min(n, |scores|) spans by descending score; equal scores keep
/// document order (ascending ordinal, then span id). Throws
/// std::invalid_argument for n < 1 or a non-finite score.
std::vector<RankedSpan> rank_spans(const std::vector<RelevanceScore>& scores, std::size_t n = kDefaultTopN);

}  // namespace lexqa
