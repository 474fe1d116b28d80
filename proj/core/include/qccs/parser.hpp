// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qccs/process.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qccs {

struct ParseResult {
    std::optional<Program> program; // present iff no error diagnostics
    std::vector<Diagnostic> diagnostics;
};

/// Parse a source file into a Program. On success the program additionally
/// passes well_formed; all failures are reported as diagnostics with spans
/// (never exceptions), including on arbitrary byte input.
ParseResult parse_source(const std::string& text, const std::string& filename = "<input>");
ParseResult parse_file(const std::string& path);

/// Parse a single process expression against an existing program's
/// declarations. Used by tests and the round-trip property.
struct ParseTermResult {
    TermPtr term; // null iff diagnostics contain errors
    std::vector<Diagnostic> diagnostics;
};
ParseTermResult parse_proc_expression(const std::string& text, const Program& program);

/// Render a program back to concrete syntax (builtin operators are implied
/// and not re-declared). parse_source(render_program(p)) reconstructs an
/// equivalent program.
std::string render_program(const Program& program);

/// Names predeclared as unitaries in every program.
const std::vector<std::string>& builtin_unitary_names();
Program empty_program_with_builtins();

/// Parse a bare matrix literal ("[[...],[...]]" of complex entries), as used
/// for inline initial-state files.
std::optional<ComplexMatrix> parse_matrix_literal(const std::string& text,
                                                  std::vector<Diagnostic>& diagnostics);

} // namespace qccs
