// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <string>
#include <vector>

#include "araucaria/p4/ast.hpp"
#include "araucaria/p4/emit.hpp"
#include "araucaria/p4/parser.hpp"
#include "araucaria/p4/validate.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace araucaria;
using namespace araucaria::p4;

namespace {

Program parse_ok(const std::string& source) {
  auto result = parse_program(source);
  REQUIRE_MESSAGE(result.ok(), format_diagnostics("test", result.diagnostics));
  return *result.program;
}

bool has_code(const std::vector<Diagnostic>& diags, const std::string& code) {
  for (const auto& d : diags) {
    if (d.code == code) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("gvt sample round trips through emit and parse") {
  auto program = testsupport::load_netgvt();
  CHECK(program.has_parser);
  CHECK(program.parser.name == "gvt_parser");
  CHECK(program.types.size() == 5);
  CHECK(program.controls.size() == 1);

  auto emitted = emit_program(program);
  auto reparsed = parse_ok(emitted);
  CHECK(reparsed == program);
  // emission is a fixed point
  CHECK(emit_program(reparsed) == emitted);
}

TEST_CASE("emitted text uses canonical expression spacing") {
  auto program = testsupport::load_netgvt();
  auto emitted = emit_program(program);
  CHECK(emitted.find("hdr.gvt.local_clock > gvt_meta.stored_clock") != std::string::npos);
  CHECK(emitted.find("clock_store.write(hdr.gvt.server_id, hdr.gvt.local_clock);") !=
        std::string::npos);
  CHECK(emitted.find("hdr .") == std::string::npos);
}

TEST_CASE("expression normalization collapses whitespace to the canonical form") {
  CHECK(normalize_expr("hdr . gvt . value>0") == "hdr.gvt.value > 0");
  CHECK(normalize_expr("f ( a , b )") == "f(a, b)");
  CHECK(normalize_expr("select ( hdr.ipv4.protocol )") == "select(hdr.ipv4.protocol)");
}

TEST_CASE("state classification splits structural protocol and computation") {
  CHECK(classify_state("start") == StateRole::kStructural);
  CHECK(classify_state("accept") == StateRole::kStructural);
  CHECK(classify_state("reject") == StateRole::kStructural);
  CHECK(classify_state("parse_ethernet") == StateRole::kProtocol);
  CHECK(classify_state("parse_ipv4") == StateRole::kProtocol);
  CHECK(classify_state("udp") == StateRole::kProtocol);
  CHECK(classify_state("parse_tcp") == StateRole::kProtocol);
  CHECK(classify_state("parse_gvt") == StateRole::kInc);
  CHECK(classify_state("parse_araucaria") == StateRole::kInc);
  CHECK(is_inc_state("parse_gvt"));
  CHECK_FALSE(is_inc_state("parse_ipv4"));
}

TEST_CASE("program equality ignores the source name") {
  auto a = testsupport::load_netgvt();
  auto b = a;
  b.source_name = "elsewhere.p4s";
  CHECK(a == b);
  b.parser.states.front().name = "renamed";
  CHECK_FALSE(a == b);
}

TEST_CASE("generated programs validate and round trip") {
  std::mt19937_64 rng(20240818);
  for (int i = 0; i < 1000; ++i) {
    auto program = testsupport::random_inc_program(rng);
    auto report = validate_program(program);
    REQUIRE_MESSAGE(report.ok(), "iteration ", i, ":\n",
                    format_diagnostics("gen", report.diagnostics), "\n", emit_program(program));
    auto emitted = emit_program(program);
    auto reparse = parse_program(emitted);
    REQUIRE_MESSAGE(reparse.ok(), "iteration ", i, ":\n", emitted);
    REQUIRE_MESSAGE(*reparse.program == program, "iteration ", i, " changed shape:\n", emitted);
  }
}

TEST_CASE("parser rejects structural duplicates") {
  auto dup_state = parse_program(
      "header h_t { bit<8> f; }\n"
      "parser p {\n"
      "    state start { transition accept; }\n"
      "    state start { transition accept; }\n"
      "}\n");
  CHECK_FALSE(dup_state.ok());
  CHECK(has_code(dup_state.diagnostics, "DUPLICATE_STATE"));

  auto two_parsers = parse_program(
      "parser p { state start { transition accept; } }\n"
      "parser q { state start { transition accept; } }\n");
  CHECK_FALSE(two_parsers.ok());
  CHECK(has_code(two_parsers.diagnostics, "DUPLICATE_PARSER"));
}

TEST_CASE("full programs need a parser but fragments do not") {
  const char* source = "control ingress { apply { } }\n";
  auto full = parse_program(source);
  CHECK_FALSE(full.ok());

  auto fragment = parse_program(source, {.fragment = true});
  CHECK(fragment.ok());
  CHECK_FALSE(fragment.program->has_parser);
}

TEST_CASE("validator flags dangling and cyclic parser graphs") {
  auto dangling = parse_ok(
      "header h_t { bit<8> f; }\n"
      "parser p {\n"
      "    state start { transition parse_h; }\n"
      "    state parse_h { extract(hdr.h); transition nowhere; }\n"
      "}\n");
  auto report = validate_program(dangling);
  CHECK_FALSE(report.ok());
  CHECK(has_code(report.diagnostics, "DANGLING_STATE"));

  auto cyclic = parse_ok(
      "header h_t { bit<8> f; }\n"
      "parser p {\n"
      "    state start { transition parse_h; }\n"
      "    state parse_h { extract(hdr.h); transition start; }\n"
      "}\n");
  auto cycle_report = validate_program(cyclic);
  CHECK_FALSE(cycle_report.ok());
  CHECK(has_code(cycle_report.diagnostics, "CYCLE"));
  CHECK_FALSE(testsupport::parser_is_acyclic(cyclic));
}

TEST_CASE("validator flags unknown references") {
  auto unknown_header = parse_ok(
      "header h_t { bit<8> f; }\n"
      "parser p {\n"
      "    state start { extract(hdr.mystery); transition accept; }\n"
      "}\n");
  CHECK(has_code(validate_program(unknown_header).diagnostics, "UNKNOWN_HEADER"));

  auto unknown_refs = parse_ok(
      "header h_t { bit<8> f; }\n"
      "parser p { state start { transition accept; } }\n"
      "control ingress {\n"
      "    apply {\n"
      "        ghost_reg.write(0, 1);\n"
      "        ghost_table.apply();\n"
      "    }\n"
      "}\n");
  auto report = validate_program(unknown_refs);
  CHECK(has_code(report.diagnostics, "UNKNOWN_REGISTER"));
  CHECK(has_code(report.diagnostics, "UNKNOWN_TABLE"));

  auto unknown_action = parse_ok(
      "header h_t { bit<8> f; }\n"
      "parser p { state start { transition accept; } }\n"
      "control ingress {\n"
      "    table t { key = { hdr.h.f : exact; } actions = { missing; } }\n"
      "    apply { t.apply(); }\n"
      "}\n");
  CHECK(has_code(validate_program(unknown_action).diagnostics, "UNKNOWN_ACTION"));
}

TEST_CASE("validator flags duplicate select keys") {
  auto program = parse_ok(
      "header h_t { bit<8> f; }\n"
      "parser p {\n"
      "    state start {\n"
      "        extract(hdr.h);\n"
      "        transition select(hdr.h.f) {\n"
      "            1 : accept;\n"
      "            1 : reject;\n"
      "            default : accept;\n"
      "        }\n"
      "    }\n"
      "}\n");
  CHECK(has_code(validate_program(program).diagnostics, "DUPLICATE_SELECT_KEY"));
}

TEST_CASE("reserved prefix is refused unless the check is disabled") {
  auto program = parse_ok(
      "header araucaria_h { bit<8> f; }\n"
      "parser p { state start { transition accept; } }\n");
  auto report = validate_program(program);
  CHECK_FALSE(report.ok());
  CHECK(has_code(report.diagnostics, "RESERVED_IDENTIFIER"));
  CHECK_FALSE(report.reserved_prefix_violations.empty());

  auto relaxed = validate_program(program, "");
  CHECK(relaxed.ok());
  CHECK(relaxed.reserved_prefix_violations.empty());
}

TEST_CASE("primitive counting covers apply blocks and action bodies") {
  auto program = parse_ok(
      "header h_t { bit<8> f; }\n"
      "parser p { state start { transition accept; } }\n"
      "control ingress {\n"
      "    action replicate() { clone(500); clone(500); }\n"
      "    apply {\n"
      "        replicate();\n"
      "        if (hdr.h.f > 0) { multicast(1); } else { recirculate(); }\n"
      "        clone(7);\n"
      "    }\n"
      "}\n");
  auto counts = count_primitives(program);
  CHECK(counts.clones == 3);
  CHECK(counts.multicasts == 1);
  CHECK(counts.recirculates == 1);
}

TEST_CASE("header names map to extract instance bases") {
  CHECK(header_instance_base("ethernet_t") == "ethernet");
  CHECK(header_instance_base("gvt_h") == "gvt");
  CHECK(header_instance_base("plain") == "plain");
  CHECK(extract_base("hdr.gvt") == "gvt");
  CHECK(extract_base("hdr.ipv4") == "ipv4");
}
