// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "araucaria/p4/validate.hpp"

namespace testsupport {

namespace {

using araucaria::p4::ParserState;
using araucaria::p4::Program;

const ParserState* entry_state(const Program& program) {
  if (program.parser.states.empty()) return nullptr;
  if (const auto* start = program.parser.find_state("start")) return start;
  return &program.parser.states.front();
}

bool is_terminal(const std::string& name) { return name == "accept" || name == "reject"; }

bool is_woven(const std::string& name) {
  return name.rfind(araucaria::p4::kReservedStateName, 0) == 0;
}

enum class Color { kWhite, kGray, kBlack };

bool dfs_acyclic(const Program& program, const std::string& name,
                 std::map<std::string, Color>& color) {
  if (is_terminal(name)) return true;
  const auto* state = program.parser.find_state(name);
  if (state == nullptr) return true;  // dangling targets are not cycles
  auto& c = color[name];
  if (c == Color::kGray) return false;
  if (c == Color::kBlack) return true;
  c = Color::kGray;
  for (const auto& arm : state->transitions) {
    if (!dfs_acyclic(program, arm.target, color)) return false;
  }
  c = Color::kBlack;
  return true;
}

struct PathWalk {
  const Program& program;
  std::size_t max_paths;
  std::set<std::vector<std::string>> paths;
  std::vector<std::string> current;
  bool overflow = false;
  bool cycle = false;

  // from: the non woven state we arrived from, used to pick arms inside a
  // woven state. depth guards against cycles that three color search on
  // the projected graph would miss.
  void visit(const std::string& name, const std::string& from, int depth) {
    if (overflow || cycle) return;
    if (depth > 256) {
      cycle = true;
      return;
    }
    if (is_terminal(name)) {
      current.push_back(name);
      if (paths.size() >= max_paths) {
        overflow = true;
      } else {
        paths.insert(current);
      }
      current.pop_back();
      return;
    }
    const auto* state = program.parser.find_state(name);
    if (state == nullptr) return;

    bool woven = is_woven(name);
    if (!woven) current.push_back(name);
    for (const auto& arm : state->transitions) {
      if (woven && !arm.synthetic_parent.empty() && arm.synthetic_parent != from) continue;
      visit(arm.target, woven ? from : name, depth + 1);
      if (overflow || cycle) break;
    }
    if (!woven) current.pop_back();
  }
};

}  // namespace

bool parser_is_acyclic(const Program& program) {
  const auto* entry = entry_state(program);
  if (entry == nullptr) return true;
  std::map<std::string, Color> color;
  for (const auto& state : program.parser.states) {
    if (!dfs_acyclic(program, state.name, color)) return false;
  }
  return true;
}

std::optional<std::set<std::vector<std::string>>> parser_path_language(const Program& program,
                                                                       std::size_t max_paths) {
  const auto* entry = entry_state(program);
  if (entry == nullptr) return std::set<std::vector<std::string>>{};
  PathWalk walk{program, max_paths, {}, {}, false, false};
  walk.visit(entry->name, "", 0);
  if (walk.overflow || walk.cycle) return std::nullopt;
  return walk.paths;
}

std::vector<SendRecord> unique_sends(const araucaria::sim::SimTrace& trace) {
  std::map<std::pair<int, std::int64_t>, std::int64_t> seen;
  for (const auto& event : trace.events) {
    if (event.kind != araucaria::sim::EventKind::kDataSent || !event.aux.empty()) continue;
    seen.emplace(std::make_pair(event.server, event.clock), event.value);
  }
  std::vector<SendRecord> sends;
  sends.reserve(seen.size());
  for (const auto& [key, value] : seen) {
    sends.push_back({key.first, key.second, value});
  }
  return sends;
}

std::optional<araucaria::sim::IncState> oracle_total_order(const std::vector<SendRecord>& sends) {
  std::map<int, std::int64_t> max_clock;
  for (const auto& record : sends) {
    max_clock[record.server] = std::max(max_clock[record.server], record.clock);
  }
  std::map<int, std::int64_t> count;
  for (const auto& record : sends) count[record.server] += 1;
  for (const auto& [server, clocks] : count) {
    if (clocks != max_clock[server]) return std::nullopt;  // gap in 1..max
  }

  std::vector<SendRecord> ordered = sends;
  std::sort(ordered.begin(), ordered.end(), [](const SendRecord& a, const SendRecord& b) {
    return std::tie(a.clock, a.server) < std::tie(b.clock, b.server);
  });
  araucaria::sim::IncState inc;
  for (const auto& record : ordered) {
    auto& psc = inc.per_server_clock[record.server];
    if (record.clock != psc + 1) return std::nullopt;
    psc = record.clock;
    inc.value = std::max(inc.value, record.value);
  }
  return inc;
}

araucaria::sim::IncState oracle_merge_fold(std::vector<SendRecord> sends, std::uint64_t seed,
                                           araucaria::intent::MergeFn fn) {
  std::mt19937_64 rng(seed);
  std::shuffle(sends.begin(), sends.end(), rng);
  araucaria::sim::IncState inc;
  for (const auto& record : sends) {
    auto& psc = inc.per_server_clock[record.server];
    psc = std::max(psc, record.clock);
    inc.value = fn == araucaria::intent::MergeFn::kMaxHdrValue
                    ? std::max(inc.value, record.value)
                    : inc.value + record.value;
  }
  return inc;
}

}  // namespace testsupport
