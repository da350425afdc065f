#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace histtext::utf8 {

/// Strict decode. Returns nullopt on malformed input, overlong forms,
/// surrogates or values above U+10FFFF.
std::optional<std::u32string> decode(std::string_view bytes);

/// Decode or throw Error(ParseError) naming `what`.
std::u32string decode_or_throw(std::string_view bytes, std::string_view what);

std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);

}  // namespace histtext::utf8
