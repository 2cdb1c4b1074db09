#include "mole/document.hpp"
#include "mole/errors.hpp"
#include "mole/text.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

using namespace mole;

TEST_CASE("make_document normalizes and counts code points") {
    auto d = make_document("p1", SourceFormat::plain_text, "line1\r\nline2\rend");
    CHECK(d.id == "p1");
    CHECK(d.text == "line1\nline2\nend");
    CHECK(d.char_count == d.text.size());

    auto arabic = make_document("p2", SourceFormat::plain_text, "\xd8\xb9\xd8\xb1\xd8\xa8");
    CHECK(arabic.char_count == 3);
    CHECK(arabic.text.size() == 6);
}

TEST_CASE("load_document reads plain text files") {
    testutil::TempDir tmp("doc");
    auto file = tmp.path() / "paper.txt";
    testutil::write_file(file, "The dataset has 12,000 sentences.\r\n");

    auto d = load_document(file, SourceFormat::plain_text);
    CHECK(d.id == "paper");
    CHECK(d.source_format == SourceFormat::plain_text);
    CHECK(d.text == "The dataset has 12,000 sentences.\n");
}

TEST_CASE("load_document errors") {
    testutil::TempDir tmp("doc");
    CHECK_THROWS_AS(load_document(tmp.path() / "missing.txt", SourceFormat::plain_text),
                    IoError);

    auto empty = tmp.path() / "empty.txt";
    testutil::write_file(empty, "");
    CHECK_THROWS_AS(load_document(empty, SourceFormat::plain_text), IoError);

    // A directory without any .tex file cannot be a latex paper.
    CHECK_THROWS_AS(load_document(tmp.path(), SourceFormat::latex), IoError);
}

TEST_CASE("latex directory puts the main file first") {
    testutil::TempDir tmp("tex");
    testutil::write_file(tmp.path() / "zz_main.tex",
                         "\\documentclass{article}\\begin{document}MAIN\\end{document}");
    testutil::write_file(tmp.path() / "a_intro.tex", "INTRO");
    testutil::write_file(tmp.path() / "b_eval.tex", "EVAL");
    testutil::write_file(tmp.path() / "notes.txt", "ignored");

    auto d = load_document(tmp.path(), SourceFormat::latex);
    CHECK(d.source_format == SourceFormat::latex);
    auto main_pos = d.text.find("MAIN");
    auto intro_pos = d.text.find("INTRO");
    auto eval_pos = d.text.find("EVAL");
    REQUIRE(main_pos != std::string::npos);
    REQUIRE(intro_pos != std::string::npos);
    REQUIRE(eval_pos != std::string::npos);
    CHECK(main_pos < intro_pos);
    CHECK(intro_pos < eval_pos);
    CHECK(d.text.find("ignored") == std::string::npos);
}

TEST_CASE("truncate_context arithmetic") {
    std::string text(1001, 'x');
    auto d = make_document("long", SourceFormat::plain_text, text);
    REQUIRE(d.char_count == 1001);

    auto quarter = truncate_context(d, 0.25);
    CHECK(quarter.char_count == 251); // ceil(0.25 * 1001)
    CHECK(quarter.id == d.id);
    CHECK(quarter.source_format == d.source_format);

    auto full = truncate_context(d, 1.0);
    CHECK(full.text == d.text);

    CHECK_THROWS_AS(truncate_context(d, 0.0), Error);
    CHECK_THROWS_AS(truncate_context(d, 1.5), Error);
}

TEST_CASE("truncate_context never splits multibyte characters") {
    std::string text;
    for (int i = 0; i < 10; ++i) text += "\xd8\xb9"; // 10 two-byte letters
    auto d = make_document("ar", SourceFormat::plain_text, text);
    auto half = truncate_context(d, 0.5);
    CHECK(half.char_count == 5);
    CHECK(half.text.size() == 10);
    CHECK(utf8_length(half.text) == 5);
}

TEST_CASE("truncation prefix and ceil-composition properties") {
    std::mt19937_64 rng(424242);
    auto random_text = [&] {
        // Mix single and multibyte characters so byte and code point
        // counts diverge.
        static const std::string pieces[] = {"a", "b", " ", "\xc3\xa9", "\xd8\xb9", "\n"};
        std::string out;
        const std::size_t n = rng() % 400;
        for (std::size_t i = 0; i < n; ++i) out += pieces[rng() % 6];
        return out;
    };
    auto random_fraction = [&] {
        // Uniform in (0, 1].
        return (static_cast<double>(rng() % 10000) + 1.0) / 10000.0;
    };

    for (int trial = 0; trial < 1000; ++trial) {
        auto d = make_document("t", SourceFormat::plain_text, random_text());
        if (d.char_count == 0) continue;
        const double a = random_fraction();
        const double b = random_fraction();

        auto once = truncate_context(d, a);
        // Prefix property, in both bytes and code points.
        CHECK(d.text.compare(0, once.text.size(), once.text) == 0);
        CHECK(once.char_count == static_cast<std::size_t>(
                                     std::ceil(a * static_cast<double>(d.char_count))));

        // Composition matches the fused fraction to within one character.
        auto twice = truncate_context(once, b);
        auto fused = truncate_context(d, a * b);
        const auto lhs = static_cast<std::int64_t>(twice.char_count);
        const auto rhs = static_cast<std::int64_t>(fused.char_count);
        CHECK(std::abs(lhs - rhs) <= 1);
        CHECK(d.text.compare(0, twice.text.size(), twice.text) == 0);
        CHECK(d.text.compare(0, fused.text.size(), fused.text) == 0);
    }
}

TEST_CASE("source format names") {
    CHECK(to_string(SourceFormat::latex) == "latex");
    CHECK(to_string(SourceFormat::plain_text) == "plain_text");
    CHECK(parse_source_format("plain_text") == SourceFormat::plain_text);
    CHECK(parse_source_format("latex") == SourceFormat::latex);
    CHECK(parse_source_format("text") == SourceFormat::plain_text);
    CHECK_FALSE(parse_source_format("pdf").has_value());
}
