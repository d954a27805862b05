// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "araucaria/diagnostics.hpp"

namespace araucaria::intent {

enum class Operation { kCreate, kDelete, kUpdate, kRead };

enum class MergeFn { kMaxHdrValue, kAdd };

// A functionality input literal: integer, bare identifier, or quoted string.
struct InputValue {
  enum class Kind { kInt, kIdent, kString };
  Kind kind = Kind::kInt;
  std::int64_t int_value = 0;
  std::string text;

  bool operator==(const InputValue&) const = default;
};

struct FunctionalityInput {
  std::string name;
  InputValue value;

  bool operator==(const FunctionalityInput&) const = default;
};

struct FunctionalitySpec {
  std::string fname;
  std::vector<FunctionalityInput> inputs;

  bool operator==(const FunctionalitySpec&) const = default;
};

struct AvailabilityReq {
  std::int64_t tolerated_failures = 0;

  bool operator==(const AvailabilityReq&) const = default;
};

enum class ConsistencyLevel { kStrong, kEventual };

struct ConsistencyReq {
  ConsistencyLevel level = ConsistencyLevel::kEventual;
  std::optional<MergeFn> merge;

  bool operator==(const ConsistencyReq&) const = default;
};

struct Requirement {
  std::variant<AvailabilityReq, ConsistencyReq> value;
  SourceLoc loc;

  bool is_availability() const { return std::holds_alternative<AvailabilityReq>(value); }
  bool is_consistency() const { return std::holds_alternative<ConsistencyReq>(value); }

  bool operator==(const Requirement& other) const { return value == other.value; }
};

struct IntentAst {
  Operation operation = Operation::kCreate;
  std::string name;
  FunctionalitySpec functionality;
  std::vector<Requirement> requirements;

  bool operator==(const IntentAst&) const = default;
};

const char* operation_name(Operation op);
const char* merge_fn_name(MergeFn fn);  // "max[hdr.value]" / "add"

}  // namespace araucaria::intent
