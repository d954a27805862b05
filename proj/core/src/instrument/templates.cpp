// SPDX-License-Identifier: Apache-2.0

#include "araucaria/instrument/templates.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "araucaria/p4/parser.hpp"
#include "araucaria/p4/validate.hpp"

namespace araucaria::instrument {

namespace detail {
extern const char* const kInitializationText;
extern const char* const kPreparationText;
extern const char* const kCompletionText;
}  // namespace detail

namespace {

bool has_prefix(const std::string& name) {
  return name.rfind(p4::kReservedPrefix, 0) == 0;
}

void check_prefixed(const std::string& name, const char* what, const char* fragment,
                    std::vector<Diagnostic>& diags) {
  if (!has_prefix(name)) {
    diags.push_back(make_error({}, "TEMPLATE_SHAPE",
                               std::string(fragment) + " fragment " + what + " '" + name +
                                   "' lacks the reserved prefix"));
  }
}

std::optional<p4::Program> parse_fragment(const std::string& text, const char* name,
                                          std::vector<Diagnostic>& diags) {
  p4::ParseOptions options;
  options.fragment = true;
  options.source_name = name;
  p4::ParseResult parsed = p4::parse_program(text, options);
  diags.insert(diags.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
  return parsed.program;
}

std::optional<std::string> read_file(const std::filesystem::path& path,
                                     std::vector<Diagnostic>& diags) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    diags.push_back(
        make_error({}, "TEMPLATE_IO", "cannot read template file '" + path.string() + "'"));
    return std::nullopt;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TemplateLoadResult load_templates_from_text(const std::string& initialization,
                                            const std::string& preparation,
                                            const std::string& completion) {
  TemplateLoadResult result;
  auto& diags = result.diagnostics;

  auto init = parse_fragment(initialization, "initialization.p4s", diags);
  auto prep = parse_fragment(preparation, "preparation.p4s", diags);
  auto comp = parse_fragment(completion, "completion.p4s", diags);
  if (!init || !prep || !comp) return result;

  TemplateSet set;

  // initialization: type declarations plus the template parser state
  if (init->types.empty()) {
    diags.push_back(make_error({}, "TEMPLATE_SHAPE",
                               "initialization fragment declares no header or metadata"));
  }
  bool has_protocol_header = false;
  for (const auto& type : init->types) {
    check_prefixed(type.name, "declaration", "initialization", diags);
    for (const auto& field : type.fields)
      check_prefixed(field.name, "field", "initialization", diags);
    if (type.kind == p4::DeclKind::kHeader && type.name == "araucaria_h")
      has_protocol_header = true;
  }
  if (!has_protocol_header) {
    diags.push_back(
        make_error({}, "TEMPLATE_SHAPE", "initialization fragment must declare araucaria_h"));
  }
  if (!init->has_parser || init->parser.states.size() != 1 ||
      init->parser.states[0].name != p4::kReservedStateName) {
    diags.push_back(make_error({}, "TEMPLATE_SHAPE",
                               "initialization fragment must declare exactly one parser state "
                               "named parse_araucaria"));
  } else {
    set.araucaria_state = init->parser.states[0];
    if (set.araucaria_state.extracts.empty()) {
      diags.push_back(make_error({}, "TEMPLATE_SHAPE",
                                 "parse_araucaria template must extract the protocol header"));
    }
  }
  set.declarations = init->types;

  // preparation and completion: one control each, no parser
  auto take_control = [&](p4::Program& fragment, const char* name,
                          p4::ControlBlock& out) {
    if (fragment.has_parser) {
      diags.push_back(make_error({}, "TEMPLATE_SHAPE",
                                 std::string(name) + " fragment must not declare a parser"));
    }
    if (fragment.controls.size() != 1) {
      diags.push_back(make_error({}, "TEMPLATE_SHAPE",
                                 std::string(name) + " fragment must declare exactly one control"));
      return;
    }
    out = std::move(fragment.controls[0]);
    check_prefixed(out.name, "control", name, diags);
    for (const auto& reg : out.registers) check_prefixed(reg.name, "register", name, diags);
    for (const auto& action : out.actions) check_prefixed(action.name, "action", name, diags);
    for (const auto& table : out.tables) check_prefixed(table.name, "table", name, diags);
  };
  take_control(*prep, "preparation", set.preparation);
  take_control(*comp, "completion", set.completion);

  // the guard the weaver fills: a trailing if with an empty then branch
  if (set.preparation.apply.empty()) {
    diags.push_back(make_error({}, "TEMPLATE_SHAPE", "preparation apply block is empty"));
  } else {
    const auto* guard = std::get_if<p4::IfStmt>(&set.preparation.apply.back().node);
    if (guard == nullptr || !guard->then_branch.empty() || guard->has_else) {
      diags.push_back(make_error({}, "TEMPLATE_SHAPE",
                                 "preparation apply must end with an empty guard conditional"));
    }
  }

  if (!has_errors(diags)) result.templates = std::move(set);
  return result;
}

TemplateLoadResult load_templates(const std::string& directory) {
  std::vector<Diagnostic> diags;
  std::filesystem::path dir(directory);
  auto init = read_file(dir / "initialization.p4s", diags);
  auto prep = read_file(dir / "preparation.p4s", diags);
  auto comp = read_file(dir / "completion.p4s", diags);
  if (!init || !prep || !comp) {
    TemplateLoadResult result;
    result.diagnostics = std::move(diags);
    return result;
  }
  return load_templates_from_text(*init, *prep, *comp);
}

TemplateLoadResult builtin_templates() {
  return load_templates_from_text(detail::kInitializationText, detail::kPreparationText,
                                  detail::kCompletionText);
}

}  // namespace araucaria::instrument
