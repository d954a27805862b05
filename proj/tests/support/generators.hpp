// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>
#include <string>

#include "araucaria/intent/ast.hpp"
#include "araucaria/p4/ast.hpp"

namespace testsupport {

// Random but well formed intent declaration: any operation, one to three
// requirements (duplicates allowed, the analyzer owns uniqueness), inputs
// covering all three literal kinds. Built for print/parse round trips, so
// semantic validity (merge idempotence and the like) is not guaranteed.
araucaria::intent::IntentAst random_intent(std::mt19937_64& rng);

// Random program with a computation parser: an optional protocol prefix
// (ethernet, ipv4, udp), then one to four levels of one or two computation
// states wired level to level with plain and select transitions, matching
// header declarations, and one small control block. Always validates
// cleanly and keeps every computation state reachable; two states in one
// level share a chain depth, which exercises the multi parent weave.
araucaria::p4::Program random_inc_program(std::mt19937_64& rng);

}  // namespace testsupport
