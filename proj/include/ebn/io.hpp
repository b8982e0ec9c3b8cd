#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ebn/graph.hpp"
#include "ebn/joint_table.hpp"
#include "ebn/statement.hpp"

namespace ebn {

// Text formats.  All three parsers accept '#' comments and flexible
// whitespace; the formatters emit one canonical form so that
// format(parse(format(parse(f)))) == format(parse(f)) byte for byte.
//
// .edg   graph:       vars a b c        then lines  a -> b   /   b <-> c
// .jpt   joint table: vars a:2 b:2      then rows   0 1 0.25 (missing = 0)
// .ind   statements:  optional vars line, then      I(a,b ; c | d)

EDag parse_edg(std::string_view text);
std::string format_edg(const EDag& g);

JointTable parse_jpt(std::string_view text);
std::string format_jpt(const JointTable& p);

Statement parse_statement(std::string_view text, const Universe& u);
std::string format_statement(const Statement& s, const Universe& u);

struct StatementFile {
    Universe universe;
    std::vector<Statement> statements;
};

// Universe comes from the optional leading "vars" line, otherwise from the
// names in order of first appearance.
StatementFile parse_statements(std::string_view text);
// Canonical: explicit vars line, statements sorted, duplicates collapsed.
std::string format_statements(const StatementFile& f);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

} // namespace ebn
