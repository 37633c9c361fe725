#pragma once

#include <string>
#include <string_view>
#include <utility>

namespace slink {

/// Canonicalize a raw identifier: trim, strip one or more levels of matching
/// surrounding quotes ("", '', ``, []), and lowercase. Internal characters,
/// including whitespace, are preserved verbatim. Idempotent.
/// Throws ConfigError when the result is empty.
std::string normalize_identifier(std::string_view raw);

/// "table.column" from two normalized identifiers.
std::string qualify_column(std::string_view table, std::string_view column);

/// Inverse of qualify_column; splits at the first '.'.
std::pair<std::string, std::string> split_qualified(std::string_view qualified);

}  // namespace slink
