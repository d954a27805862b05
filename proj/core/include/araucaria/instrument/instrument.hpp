// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "araucaria/diagnostics.hpp"
#include "araucaria/instrument/templates.hpp"
#include "araucaria/intent/analyzer.hpp"
#include "araucaria/p4/ast.hpp"

namespace araucaria::instrument {

struct InstrumentationRecord {
  int inserted_declarations = 0;
  // number of computation states whose transitions were rerouted through
  // the fault tolerance parser states
  int redirected_transitions = 0;
  int wrapped_apply_blocks = 0;
  bool already_instrumented = false;
};

struct InstrumentResult {
  std::optional<p4::Program> program;
  InstrumentationRecord record;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return program.has_value(); }
};

// A program is considered instrumented when any of its declarations carries
// the reserved prefix.
bool is_instrumented(const p4::Program& program);

// Step one: protocol header, struct and metadata declarations are placed
// before every original declaration.
InstrumentResult instrument_declarations(const p4::Program& program,
                                         const intent::RefinementPlan& plan,
                                         const TemplateSet& templates);

// Step two: each computation state keeps its extraction and hands its
// former transitions to a fault tolerance state that extracts the protocol
// header. Computation states at the same chain depth share one such state;
// the first is parse_araucaria, deeper ones are numbered. When a shared
// state serves several parents the inherited arms get synthetic keys
// recording the parent so the successor stays unambiguous.
InstrumentResult instrument_parser(const p4::Program& program, const intent::RefinementPlan& plan,
                                   const TemplateSet& templates);

// Step three: the first control block is treated as the computation
// ingress. Template registers, actions and tables are appended, and the
// original apply block moves, contiguous and unmodified, into the guard
// conditional between the preparation and completion statements. Plans
// with a merge function additionally get an araucaria_merge action and a
// dispatch on the strong-eventual consistency code.
InstrumentResult instrument_control(const p4::Program& program, const intent::RefinementPlan& plan,
                                    const TemplateSet& templates);

// The three steps composed, with validation before and after. Refuses
// already instrumented input and never double-weaves.
InstrumentResult instrument(const p4::Program& program, const intent::RefinementPlan& plan,
                            const TemplateSet& templates);

std::string instrumentation_record_to_json(const InstrumentationRecord& record);

}  // namespace araucaria::instrument
