// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "araucaria/diagnostics.hpp"

namespace araucaria::intent {

enum class TokenKind {
  kKwCreate,
  kKwDelete,
  kKwUpdate,
  kKwRead,
  kKwIntent,
  kKwFunctionality,
  kKwAvailability,
  kKwConsistency,
  kKwTolerates,
  kKwFailures,
  kKwStrong,
  kKwEventual,
  kKwAdd,
  kKwMergeMax,  // "max" or the fused "max[hdr.value]" form
  kIdent,
  kInt,
  kString,
  kLBrace,
  kRBrace,
  kLBracket,
  kRBracket,
  kColon,
  kComma,
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;        // lexeme as written
  std::int64_t int_value = 0;  // valid for kInt
  SourceLoc loc;

  bool operator==(const Token&) const = default;
};

const char* token_kind_name(TokenKind kind);

}  // namespace araucaria::intent
