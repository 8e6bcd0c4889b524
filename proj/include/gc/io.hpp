#pragma once

// Line-oriented text format for structures and forest structures.
//
//   # comment
//   rel <name> <arity>
//   elem <id>
//   tuple <rel> <id>...
//   point <id>
//
// Forest files additionally accept
//
//   parent <child> <parent>
//   pebble <elem> <index>
//   pebbles <bound>
//
// Element ids match [A-Za-z0-9_]+. Relation names are either ids or runs of the operator
// characters < > ~ ! + * / ^ & | - (so that orders can be written as `<`).

#include "gc/forest.hpp"
#include "gc/structure.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace gc {

/// Throws ParseError with the offending line and column.
Structure parse_structure(std::string_view text);
ForestStructure parse_forest(std::string_view text);

/// Declaration order throughout; tuples in lexicographic element order.
std::string render_structure(const Structure& s);
std::string render_forest(const ForestStructure& f);

/// Element names usable in the text format: names that are already valid identifiers are
/// kept; others are rewritten (brackets dropped, separators turned into '_'); on any
/// collision every element falls back to `e<index>`.
std::vector<std::string> file_safe_names(const Structure& s);

bool is_identifier(std::string_view token);
bool is_relation_name(std::string_view token);

std::string read_file(const std::string& path);

} // namespace gc
