#pragma once

#include <istream>
#include <string>
#include <string_view>

#include "jitbp/program.hpp"

namespace jitbp {

/// Parses and validates a Boolean program.
///
/// Grammar (all statements end in `;`, `//` starts a line comment):
///
///     prog     ::= { "decl" varlist ";" | "init" expr ";" } func*
///     func     ::= "void" name "(" [varlist] ")" "begin" { "decl" varlist ";" }
///                  { [label ":"] stmt ";" } "end"
///     stmt     ::= seqstmt | "start_thread" label | "end_thread"
///                | "atomic" "{" { seqstmt ";" } "}" | "wait" | "signal" | "broadcast"
///     seqstmt  ::= "skip" | "goto" label { "," label } | "assume" "(" expr ")"
///                | varlist ":=" exprlist [ "constrain" expr ] | "assert" "(" expr ")"
///     expr     ::= or ; or ::= xor { ("||"|"|") xor } ; xor ::= and { "^" and }
///     and      ::= eq { ("&&"|"&") eq } ; eq ::= unary [ ("=="|"!=") unary ]
///     unary    ::= "!" unary | "(" expr ")" | "0" | "1" | "*" | name
///
/// Numeric labels must equal the statement's flattened pc; symbolic labels
/// are resolved to pcs. Function parameters are treated as locals. Throws
/// ParseError with a `file:line:col` prefix.
BoolProgram parse(std::string_view text, DirectionMode mode, const std::string& file = "<input>");
BoolProgram parse(std::istream& in, DirectionMode mode, const std::string& file = "<input>");
BoolProgram parse_file(const std::string& path, DirectionMode mode);

/// Canonical program text; parse(print(p)) is structurally equal to p.
std::string print(const BoolProgram& p);

}  // namespace jitbp
