// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "araucaria/instrument/instrument.hpp"
#include "araucaria/instrument/templates.hpp"
#include "araucaria/p4/emit.hpp"
#include "araucaria/p4/parser.hpp"
#include "araucaria/p4/validate.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace araucaria;
using namespace araucaria::instrument;

namespace {

const TemplateSet& templates() {
  static TemplateSet set = [] {
    auto loaded = builtin_templates();
    REQUIRE(loaded.ok());
    return *loaded.templates;
  }();
  return set;
}

p4::Program parse_ok(const std::string& source) {
  auto result = p4::parse_program(source);
  REQUIRE_MESSAGE(result.ok(), format_diagnostics("test", result.diagnostics));
  return *result.program;
}

// bare "instrument" would be ambiguous with the namespace name
InstrumentResult weave_call(const p4::Program& program, const intent::RefinementPlan& plan,
                            const TemplateSet& set) {
  return araucaria::instrument::instrument(program, plan, set);
}

// state name -> sorted successor targets
std::map<std::string, std::vector<std::string>> adjacency(const p4::Program& program) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& state : program.parser.states) {
    auto& targets = out[state.name];
    for (const auto& arm : state.transitions) targets.push_back(arm.target);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  }
  return out;
}

const p4::ParserState& state_named(const p4::Program& program, const std::string& name) {
  const auto* state = program.parser.find_state(name);
  REQUIRE_MESSAGE(state != nullptr, "missing state ", name);
  return *state;
}

bool has_code(const std::vector<Diagnostic>& diags, const std::string& code) {
  for (const auto& d : diags) {
    if (d.code == code) return true;
  }
  return false;
}

// Two computation states fed from one protocol fan out, so they share a
// chain depth.
const char* kTwoParentSource =
    "header ethernet_t { bit<16> ether_type; }\n"
    "header a_t { bit<8> f0; }\n"
    "header b_t { bit<8> f0; }\n"
    "parser p {\n"
    "    state start { transition parse_ethernet; }\n"
    "    state parse_ethernet {\n"
    "        extract(hdr.ethernet);\n"
    "        transition select(hdr.ethernet.ether_type) {\n"
    "            1 : parse_a;\n"
    "            default : parse_b;\n"
    "        }\n"
    "    }\n"
    "    state parse_a { extract(hdr.a); transition accept; }\n"
    "    state parse_b {\n"
    "        extract(hdr.b);\n"
    "        transition select(hdr.b.f0) {\n"
    "            5 : accept;\n"
    "            default : reject;\n"
    "        }\n"
    "    }\n"
    "}\n"
    "control ingress { apply { } }\n";

}  // namespace

TEST_CASE("builtin templates load and carry the expected shapes") {
  const auto& set = templates();
  REQUIRE(set.declarations.size() == 3);
  CHECK(set.declarations[0].name == "araucaria_h");
  CHECK(set.declarations[0].kind == p4::DeclKind::kHeader);
  CHECK(set.declarations[1].name == "araucaria_slot_t");
  CHECK(set.declarations[1].kind == p4::DeclKind::kStruct);
  CHECK(set.declarations[2].name == "araucaria_meta");
  CHECK(set.declarations[2].kind == p4::DeclKind::kMetadata);
  CHECK(set.araucaria_state.name == p4::kReservedStateName);
  CHECK(set.araucaria_state.extracts == std::vector<std::string>{"hdr.araucaria"});
  REQUIRE_FALSE(set.preparation.apply.empty());
  const auto* guard = std::get_if<p4::IfStmt>(&set.preparation.apply.back().node);
  REQUIRE(guard != nullptr);
  CHECK(guard->then_branch.empty());
}

TEST_CASE("template files on disk match the builtin copy") {
  auto from_disk = load_templates(testsupport::template_dir());
  REQUIRE_MESSAGE(from_disk.ok(), format_diagnostics("templates", from_disk.diagnostics));
  CHECK(from_disk.templates->declarations == templates().declarations);
  CHECK(from_disk.templates->araucaria_state == templates().araucaria_state);
  CHECK(from_disk.templates->preparation == templates().preparation);
  CHECK(from_disk.templates->completion == templates().completion);
}

TEST_CASE("declaration weaving prepends the three protocol declarations") {
  auto program = testsupport::load_netgvt();
  auto result = instrument_declarations(program, testsupport::listing_one_plan(), templates());
  REQUIRE(result.ok());
  CHECK(result.record.inserted_declarations == 3);
  REQUIRE(result.program->types.size() == program.types.size() + 3);
  CHECK(result.program->types[0].name == "araucaria_h");
  CHECK(result.program->types[1].name == "araucaria_slot_t");
  CHECK(result.program->types[2].name == "araucaria_meta");
  // original declarations follow unchanged
  for (std::size_t i = 0; i < program.types.size(); ++i) {
    CHECK(result.program->types[i + 3] == program.types[i]);
  }
}

TEST_CASE("weaving the gvt parser produces the expected graph") {
  auto program = testsupport::load_netgvt();
  auto result = weave_call(program, testsupport::listing_one_plan(), templates());
  REQUIRE_MESSAGE(result.ok(), format_diagnostics("netgvt", result.diagnostics));

  std::map<std::string, std::vector<std::string>> expected = {
      {"start", {"parse_ethernet"}},
      {"parse_ethernet", {"accept", "parse_ipv4"}},
      {"parse_ipv4", {"accept", "parse_udp"}},
      {"parse_udp", {"parse_gvt"}},
      {"parse_gvt", {"parse_araucaria"}},
      {"parse_araucaria", {"accept"}},
  };
  CHECK(adjacency(*result.program) == expected);

  const auto& rewired = state_named(*result.program, "parse_gvt");
  CHECK(rewired.extracts == std::vector<std::string>{"hdr.gvt"});
  CHECK(rewired.select_expr.empty());
  REQUIRE(rewired.transitions.size() == 1);
  CHECK(rewired.transitions[0].key.empty());
  CHECK_FALSE(rewired.transitions[0].is_default);

  const auto& shared = state_named(*result.program, "parse_araucaria");
  CHECK(shared.extracts == std::vector<std::string>{"hdr.araucaria"});
  REQUIRE(shared.transitions.size() == 1);
  CHECK(shared.transitions[0].target == "accept");
  CHECK(shared.transitions[0].synthetic_parent == "parse_gvt");

  CHECK(result.record.redirected_transitions == 1);
  CHECK(result.record.wrapped_apply_blocks == 1);
}

TEST_CASE("computation states at different depths get numbered shared states") {
  auto program = parse_ok(
      "header a_t { bit<8> f0; }\n"
      "header b_t { bit<8> f0; }\n"
      "parser p {\n"
      "    state start { transition parse_a; }\n"
      "    state parse_a { extract(hdr.a); transition parse_b; }\n"
      "    state parse_b { extract(hdr.b); transition accept; }\n"
      "}\n"
      "control ingress { apply { } }\n");
  auto result = weave_call(program, testsupport::listing_one_plan(), templates());
  REQUIRE_MESSAGE(result.ok(), format_diagnostics("chain", result.diagnostics));

  std::map<std::string, std::vector<std::string>> expected = {
      {"start", {"parse_a"}},
      {"parse_a", {"parse_araucaria"}},
      {"parse_araucaria", {"parse_b"}},
      {"parse_b", {"parse_araucaria_2"}},
      {"parse_araucaria_2", {"accept"}},
  };
  CHECK(adjacency(*result.program) == expected);
  CHECK(result.record.redirected_transitions == 2);
}

TEST_CASE("states sharing a depth share one select keyed by parent") {
  auto program = parse_ok(kTwoParentSource);
  auto result = weave_call(program, testsupport::listing_one_plan(), templates());
  REQUIRE_MESSAGE(result.ok(), format_diagnostics("two-parent", result.diagnostics));

  const auto& shared = state_named(*result.program, "parse_araucaria");
  CHECK(shared.select_expr == "araucaria_meta.araucaria_parent");
  REQUIRE(shared.transitions.size() == 3);
  CHECK(shared.transitions[0].key == "araucaria_from_parse_a__k_default");
  CHECK(shared.transitions[0].target == "accept");
  CHECK(shared.transitions[0].synthetic_parent == "parse_a");
  CHECK(shared.transitions[1].key == "araucaria_from_parse_b__k_5");
  CHECK(shared.transitions[1].target == "accept");
  CHECK(shared.transitions[1].synthetic_parent == "parse_b");
  CHECK(shared.transitions[2].key == "araucaria_from_parse_b__k_default");
  CHECK(shared.transitions[2].target == "reject");
  CHECK(shared.transitions[2].synthetic_parent == "parse_b");

  for (const auto& name : {"parse_a", "parse_b"}) {
    const auto& rewired = state_named(*result.program, name);
    REQUIRE(rewired.transitions.size() == 1);
    CHECK(rewired.transitions[0].target == "parse_araucaria");
  }
}

TEST_CASE("parent metadata never appears in emitted text") {
  auto result = weave_call(parse_ok(kTwoParentSource), testsupport::listing_one_plan(),
                           templates());
  REQUIRE(result.ok());
  auto emitted = p4::emit_program(*result.program);
  CHECK(emitted.find("synthetic") == std::string::npos);
  // the woven select itself must survive
  CHECK(emitted.find("araucaria_meta.araucaria_parent") != std::string::npos);
  CHECK(emitted.find("araucaria_from_parse_b__k_5") != std::string::npos);
}

TEST_CASE("control weaving wraps the original apply inside the guard") {
  auto program = testsupport::load_netgvt();
  auto original_apply = program.controls.front().apply;
  auto result = weave_call(program, testsupport::listing_one_plan(), templates());
  REQUIRE(result.ok());

  const auto& control = result.program->controls.front();
  std::size_t prep = templates().preparation.apply.size();
  std::size_t comp = templates().completion.apply.size();
  REQUIRE(control.apply.size() == prep + comp);

  const auto* guard = std::get_if<p4::IfStmt>(&control.apply[prep - 1].node);
  REQUIRE(guard != nullptr);
  CHECK(guard->condition == "araucaria_meta.araucaria_bypass == 0");
  CHECK(guard->then_branch == original_apply);

  // template registers, actions and tables were appended after the originals
  CHECK(control.registers.front().name == "clock_store");
  bool has_consistency_register = false;
  for (const auto& reg : control.registers) {
    if (reg.name == "araucaria_consistency_model") has_consistency_register = true;
  }
  CHECK(has_consistency_register);
}

TEST_CASE("merge plans gain a merge action and its dispatch") {
  auto program = testsupport::load_netgvt();
  auto merge_plan = testsupport::make_plan(1, intent::ConsistencyMode::kStrongEventual, true);
  auto result = weave_call(program, merge_plan, templates());
  REQUIRE(result.ok());

  const auto& control = result.program->controls.front();
  bool has_merge_action = false;
  for (const auto& action : control.actions) {
    if (action.name == "araucaria_merge") has_merge_action = true;
  }
  CHECK(has_merge_action);
  std::size_t prep = templates().preparation.apply.size();
  std::size_t comp = templates().completion.apply.size();
  CHECK(control.apply.size() == prep + comp + 1);

  auto no_merge = weave_call(testsupport::load_netgvt(), testsupport::listing_one_plan(),
                             templates());
  REQUIRE(no_merge.ok());
  for (const auto& action : no_merge.program->controls.front().actions) {
    CHECK(action.name != "araucaria_merge");
  }
}

TEST_CASE("woven programs carry the exact replication primitive budget") {
  auto result = weave_call(testsupport::load_netgvt(), testsupport::listing_one_plan(),
                           templates());
  REQUIRE(result.ok());
  auto counts = p4::count_primitives(*result.program);
  CHECK(counts.clones == 4);
  CHECK(counts.multicasts == 1);
  CHECK(counts.recirculates == 1);
}

TEST_CASE("woven output validates once reserved names are allowed") {
  auto result = weave_call(testsupport::load_netgvt(), testsupport::listing_one_plan(),
                           templates());
  REQUIRE(result.ok());
  CHECK_FALSE(p4::validate_program(*result.program).ok());
  auto relaxed = p4::validate_program(*result.program, "");
  CHECK_MESSAGE(relaxed.ok(), format_diagnostics("woven", relaxed.diagnostics));
}

TEST_CASE("weaving twice is refused") {
  auto once = weave_call(testsupport::load_netgvt(), testsupport::listing_one_plan(),
                         templates());
  REQUIRE(once.ok());
  CHECK(is_instrumented(*once.program));
  auto twice = weave_call(*once.program, testsupport::listing_one_plan(), templates());
  CHECK_FALSE(twice.ok());
  CHECK(twice.record.already_instrumented);
  CHECK(has_code(twice.diagnostics, "ALREADY_INSTRUMENTED"));
}

TEST_CASE("a parser without computation states cannot be woven") {
  auto program = parse_ok(
      "header ethernet_t { bit<16> ether_type; }\n"
      "parser p {\n"
      "    state start { transition parse_ethernet; }\n"
      "    state parse_ethernet { extract(hdr.ethernet); transition accept; }\n"
      "}\n"
      "control ingress { apply { } }\n");
  auto result = weave_call(program, testsupport::listing_one_plan(), templates());
  CHECK_FALSE(result.ok());
  CHECK(has_code(result.diagnostics, "NO_INC_STATE"));
}

TEST_CASE("record serializes to json") {
  InstrumentationRecord record;
  record.inserted_declarations = 3;
  record.redirected_transitions = 2;
  record.wrapped_apply_blocks = 1;
  auto json = instrumentation_record_to_json(record);
  CHECK(json.find("\"inserted_declarations\": 3") != std::string::npos);
  CHECK(json.find("\"redirected_transitions\": 2") != std::string::npos);
}

TEST_CASE("generated programs stay acyclic and path equivalent after weaving") {
  std::mt19937_64 rng(20240819);
  int woven_multi_parent = 0;
  for (int i = 0; i < 1000; ++i) {
    auto program = testsupport::random_inc_program(rng);
    auto before_paths = testsupport::parser_path_language(program);
    REQUIRE_MESSAGE(before_paths.has_value(), "iteration ", i, " original graph unusable");

    auto result = weave_call(program, testsupport::listing_one_plan(), templates());
    REQUIRE_MESSAGE(result.ok(), "iteration ", i, ":\n",
                    format_diagnostics("gen", result.diagnostics));
    REQUIRE_MESSAGE(testsupport::parser_is_acyclic(*result.program), "iteration ", i,
                    " woven graph has a cycle:\n", p4::emit_program(*result.program));

    auto after_paths = testsupport::parser_path_language(*result.program);
    REQUIRE_MESSAGE(after_paths.has_value(), "iteration ", i, " woven graph unusable");
    REQUIRE_MESSAGE(*before_paths == *after_paths, "iteration ", i,
                    " changed the path language:\n", p4::emit_program(*result.program));

    auto report = p4::validate_program(*result.program, "");
    REQUIRE_MESSAGE(report.ok(), "iteration ", i, ":\n",
                    format_diagnostics("gen", report.diagnostics));

    for (const auto& state : result.program->parser.states) {
      if (state.select_expr == "araucaria_meta.araucaria_parent") ++woven_multi_parent;
    }
  }
  // the generator must actually exercise the multi parent weave
  CHECK(woven_multi_parent > 100);
}
