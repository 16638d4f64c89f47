#include "lexqa/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lexqa {

std::vector<RankedSpan> rank_spans(const std::vector<RelevanceScore>& scores, std::size_t n) {
    if (n < 1) throw std::invalid_argument("top-n must be at least 1");
    for (const auto& s : scores) {
        if (!std::isfinite(s.score)) throw std::invalid_argument("non-finite score for span " + s.span_id);
    }

    std::vector<const RelevanceScore*> order;
    order.reserve(scores.size());
    for (const auto& s : scores) order.push_back(&s);

    const std::size_t k = std::min(n, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [](const RelevanceScore* a, const RelevanceScore* b) {
                          if (a->score != b->score) return a->score > b->score;
                          if (a->ordinal != b->ordinal) return a->ordinal < b->ordinal;
                          return a->span_id < b->span_id;
                      });

    std::vector<RankedSpan> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.push_back({i + 1, order[i]->span_id, order[i]->ordinal, order[i]->score});
    }
    return out;
}

}  // namespace lexqa
