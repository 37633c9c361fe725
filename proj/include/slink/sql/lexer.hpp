#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace slink::sql {

enum class TokenKind { Keyword, Identifier, Number, String, Operator, Punct, Star, End };

/// A lexical token. `text` is the raw input slice (quotes included), so the
/// original statement can be reconstructed from offsets and texts.
struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::size_t offset = 0;
};

/// Case-insensitive keyword/text comparison against the raw token text.
bool token_is(const Token& tok, std::string_view lower_text);

/// Lex a statement into tokens (trailing End token appended).
/// Keywords are recognized case-insensitively; quoted identifiers stay single
/// tokens; '*' always lexes as Star and the parser decides star-vs-multiply.
/// Single- and double-quoted literals are values ('' doubles as the escape);
/// backtick/bracket quoting marks identifiers.
/// Throws LexError (with byte offset) on unterminated quotes or stray bytes.
std::vector<Token> tokenize_sql(std::string_view sql);

}  // namespace slink::sql
