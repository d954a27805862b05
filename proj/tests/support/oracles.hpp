// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "araucaria/intent/ast.hpp"
#include "araucaria/p4/ast.hpp"
#include "araucaria/sim/trace.hpp"
#include "araucaria/sim/types.hpp"

namespace testsupport {

// Plain three color depth first search over the parser state graph,
// independent of anything the instrumenter computes.
bool parser_is_acyclic(const araucaria::p4::Program& program);

// Every state name path from the entry to accept or reject, with woven
// states (reserved prefix names) erased. Traversal into a woven state only
// follows arms inherited from the state it was entered from, mirroring the
// parent metadata written on the wire. Returns nullopt when the graph has
// a cycle or more than max_paths paths.
std::optional<std::set<std::vector<std::string>>> parser_path_language(
    const araucaria::p4::Program& program, std::size_t max_paths = 20000);

// Unique data packets a trace says the servers produced: first send per
// (server, clock), resends excluded.
struct SendRecord {
  int server = 0;
  std::int64_t clock = 0;
  std::int64_t value = 0;
};

std::vector<SendRecord> unique_sends(const araucaria::sim::SimTrace& trace);

// Single process replay in global (clock, server) order. Returns nullopt
// when some server's clocks are not a contiguous 1..max range, which would
// mean the switches lost data for good.
std::optional<araucaria::sim::IncState> oracle_total_order(const std::vector<SendRecord>& sends);

// Order independent fold: applies the records in a seed driven random
// permutation. Folding with several seeds must give identical states for a
// commutative merge.
araucaria::sim::IncState oracle_merge_fold(std::vector<SendRecord> sends, std::uint64_t seed,
                                           araucaria::intent::MergeFn fn);

}  // namespace testsupport
