#include "mole/document.hpp"

#include "mole/errors.hpp"
#include "mole/text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

namespace mole {

namespace fs = std::filesystem;

std::string to_string(SourceFormat f) {
    return f == SourceFormat::latex ? "latex" : "plain_text";
}

std::optional<SourceFormat> parse_source_format(std::string_view s) {
    if (s == "latex") return SourceFormat::latex;
    if (s == "text" || s == "plain_text") return SourceFormat::plain_text;
    return std::nullopt;
}

Document make_document(std::string id, SourceFormat format, std::string_view raw) {
    Document d;
    d.id = std::move(id);
    d.source_format = format;
    NormalizeResult normalized = normalize_text(raw);
    if (normalized.had_invalid_utf8)
        std::cerr << "warning: document '" << d.id
                  << "' contained invalid UTF-8, bytes replaced with U+FFFD\n";
    d.text = std::move(normalized.text);
    d.char_count = utf8_length(d.text);
    return d;
}

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool has_document_begin(std::string_view text) {
    return text.find("\\begin{document}") != std::string_view::npos;
}

// Main .tex file first (the one with \begin{document}), the rest in name
// order, joined with newlines.
std::string read_latex_tree(const fs::path& dir) {
    std::vector<fs::path> tex_files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".tex")
            tex_files.push_back(entry.path());
    }
    if (tex_files.empty())
        throw IoError("directory has no .tex file: " + dir.string());
    std::sort(tex_files.begin(), tex_files.end());

    std::vector<std::string> contents;
    contents.reserve(tex_files.size());
    std::size_t main_index = 0;
    bool main_found = false;
    for (std::size_t i = 0; i < tex_files.size(); ++i) {
        contents.push_back(read_file(tex_files[i]));
        if (!main_found && has_document_begin(contents.back())) {
            main_index = i;
            main_found = true;
        }
    }

    std::string joined = contents[main_index];
    for (std::size_t i = 0; i < contents.size(); ++i) {
        if (i == main_index) continue;
        joined += "\n";
        joined += contents[i];
    }
    return joined;
}

} // namespace

Document load_document(const fs::path& path, SourceFormat format) {
    if (!fs::exists(path)) throw IoError("no such file: " + path.string());

    std::string raw;
    if (fs::is_directory(path)) {
        if (format != SourceFormat::latex)
            throw IoError("directory input requires latex format: " + path.string());
        raw = read_latex_tree(path);
    } else {
        raw = read_file(path);
    }

    Document d = make_document(path.stem().string(), format, raw);
    if (d.text.empty()) throw IoError("empty document: " + path.string());
    return d;
}

Document truncate_context(const Document& d, double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw Error("context fraction must be in (0, 1], got " +
                    std::to_string(fraction));
    if (fraction == 1.0) return d;

    auto keep = static_cast<std::size_t>(
        std::ceil(fraction * static_cast<double>(d.char_count)));
    keep = std::min(keep, d.char_count);

    Document out = d;
    out.text = utf8_prefix(d.text, keep);
    out.char_count = utf8_length(out.text);
    return out;
}

} // namespace mole
