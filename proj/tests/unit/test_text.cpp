#include <doctest.h>

#include "lexqa/text.hpp"

using namespace lexqa;

TEST_CASE("sha256 of known inputs") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("terms are lowercased alphanumeric runs") {
    CHECK(terms("The Data-Breach, Art 33(1)!") ==
          std::vector<std::string>{"the", "data", "breach", "art", "33", "1"});
    CHECK(terms("  ...  ").empty());
    // Non-ASCII letters stay inside the term.
    CHECK(terms("Verordnung über Daten") == std::vector<std::string>{"verordnung", "über", "daten"});
}

TEST_CASE("whitespace tokens and ranges agree") {
    const std::string s = " a  bc\td\n";
    const auto toks = whitespace_tokens(s);
    const auto ranges = whitespace_token_ranges(s);
    REQUIRE(toks.size() == 3);
    REQUIRE(ranges.size() == 3);
    for (std::size_t i = 0; i < toks.size(); ++i) {
        CHECK(s.substr(ranges[i].first, ranges[i].second - ranges[i].first) == toks[i]);
    }
}

TEST_CASE("trim") {
    CHECK(trim("  x y \n") == "x y");
    CHECK(trim(" \t ").empty());
}

TEST_CASE("utf-8 validation and code point arithmetic") {
    const std::string s = "a\xC3\xA9z\xE2\x82\xAC";  // a é z €
    CHECK(valid_utf8(s));
    CHECK_FALSE(valid_utf8("\xC3"));
    CHECK_FALSE(valid_utf8("\xC0\x80"));  // overlong
    CHECK_FALSE(valid_utf8("\xED\xA0\x80"));  // surrogate
    CHECK(codepoint_count(s) == 4);
    CHECK(byte_to_codepoint(s, 3) == 2);
    CHECK(codepoint_to_byte(s, 2) == std::optional<std::size_t>(3));
    CHECK(codepoint_to_byte(s, 4) == std::optional<std::size_t>(s.size()));
    CHECK_FALSE(codepoint_to_byte(s, 5).has_value());
    CHECK(on_codepoint_boundary(s, 1));
    CHECK_FALSE(on_codepoint_boundary(s, 2));
    CHECK(on_codepoint_boundary(s, s.size()));
}
