#pragma once

#include <string>
#include <string_view>

namespace pmc::text {

/// Decodes UTF-8 into code points. Throws InputError naming the byte offset
/// of the first ill-formed sequence (overlongs and surrogates included).
std::u32string decode_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view code_points);

/// Canonical text form: valid UTF-8, NFC, every whitespace run (line breaks
/// included) collapsed to one U+0020, no leading or trailing whitespace.
/// Idempotent.
std::string normalize(std::string_view raw);

/// Simple (length-preserving) Unicode case folding. Code points without case
/// are returned unchanged.
std::u32string fold_case(std::u32string_view text);
std::string fold_case(std::string_view utf8);

bool is_space(char32_t c);

/// Letters, digits and combining marks.
bool is_word_char(char32_t c);

/// Ideographs are segmented one per token in uncovered spans.
bool is_ideograph(char32_t c);

}  // namespace pmc::text
