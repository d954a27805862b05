// SPDX-License-Identifier: Apache-2.0

#include "araucaria/intent/ast.hpp"

#include "araucaria/intent/token.hpp"

namespace araucaria::intent {

const char* operation_name(Operation op) {
  switch (op) {
    case Operation::kCreate: return "Create";
    case Operation::kDelete: return "Delete";
    case Operation::kUpdate: return "Update";
    case Operation::kRead: return "Read";
  }
  return "?";
}

const char* merge_fn_name(MergeFn fn) {
  switch (fn) {
    case MergeFn::kMaxHdrValue: return "max[hdr.value]";
    case MergeFn::kAdd: return "add";
  }
  return "?";
}

const char* token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::kKwCreate: return "'Create'";
    case TokenKind::kKwDelete: return "'Delete'";
    case TokenKind::kKwUpdate: return "'Update'";
    case TokenKind::kKwRead: return "'Read'";
    case TokenKind::kKwIntent: return "'intent'";
    case TokenKind::kKwFunctionality: return "'functionality'";
    case TokenKind::kKwAvailability: return "'availability'";
    case TokenKind::kKwConsistency: return "'consistency'";
    case TokenKind::kKwTolerates: return "'tolerates'";
    case TokenKind::kKwFailures: return "'failures'";
    case TokenKind::kKwStrong: return "'strong'";
    case TokenKind::kKwEventual: return "'eventual'";
    case TokenKind::kKwAdd: return "'add'";
    case TokenKind::kKwMergeMax: return "'max[hdr.value]'";
    case TokenKind::kIdent: return "identifier";
    case TokenKind::kInt: return "integer";
    case TokenKind::kString: return "string";
    case TokenKind::kLBrace: return "'{'";
    case TokenKind::kRBrace: return "'}'";
    case TokenKind::kLBracket: return "'['";
    case TokenKind::kRBracket: return "']'";
    case TokenKind::kColon: return "':'";
    case TokenKind::kComma: return "','";
    case TokenKind::kEnd: return "end of input";
  }
  return "?";
}

}  // namespace araucaria::intent
