#pragma once

// UTF-8 tokenization shared by documents and the query parser.

#include <string>
#include <string_view>
#include <vector>

namespace hnsir {

/// True for code points that belong inside a term.
bool is_term_char(char32_t cp) noexcept;

/// Simple case folding for ASCII, Latin-1, Greek and Cyrillic capitals.
char32_t fold_case(char32_t cp) noexcept;

/// Decodes UTF-8; malformed bytes decode to U+FFFD one byte at a time.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);

/// Lowercased tokens split on every non-alphanumeric code point, in order.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace hnsir
