#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

namespace mole {

enum class SourceFormat { latex, plain_text };

std::string to_string(SourceFormat f);
std::optional<SourceFormat> parse_source_format(std::string_view s);

/// Normalized paper text plus its identity. char_count is in Unicode code
/// points; the text never contains NUL bytes and uses "\n" line endings.
struct Document {
    std::string id;
    SourceFormat source_format = SourceFormat::plain_text;
    std::string text;
    std::size_t char_count = 0;
    std::optional<int> publication_year;
};

/// Builds a Document from already-loaded content (normalizes it).
Document make_document(std::string id, SourceFormat format, std::string_view raw);

/// Loads a paper from a file or, for latex, a directory of .tex files. In a
/// directory the main file (the one carrying \begin{document}) comes first,
/// the rest follow in name order. Throws IoError on missing files,
/// directories without .tex files, or empty content.
Document load_document(const std::filesystem::path& path, SourceFormat format);

/// First ceil(fraction * char_count) characters of the document, fraction
/// in (0, 1]. Identity at 1.0; id and format are preserved.
Document truncate_context(const Document& d, double fraction);

} // namespace mole
