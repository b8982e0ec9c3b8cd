#include "ebn/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "ebn/error.hpp"

namespace ebn {

namespace {

// Strips the '#' comment and surrounding blanks.
std::string_view clean_line(std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front())))
        line.remove_prefix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
        line.remove_suffix(1);
    return line;
}

std::vector<std::string_view> content_lines(std::string_view text) {
    std::vector<std::string_view> out;
    while (!text.empty()) {
        std::size_t nl = text.find('\n');
        std::string_view raw = nl == std::string_view::npos ? text : text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        std::string_view line = clean_line(raw);
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

int parse_int(std::string_view tok) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        fail("not an integer: '" + std::string(tok) + "'");
    return value;
}

double parse_double(std::string_view tok) {
    double value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        fail("not a number: '" + std::string(tok) + "'");
    return value;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

// The first content line when it starts with "vars", else nothing.
std::vector<std::string_view> vars_line(const std::vector<std::string_view>& lines) {
    if (lines.empty()) return {};
    auto toks = split_ws(lines[0]);
    if (toks.empty() || toks[0] != "vars") return {};
    return toks;
}

} // namespace

EDag parse_edg(std::string_view text) {
    auto lines = content_lines(text);
    auto head = vars_line(lines);
    if (head.empty()) fail("a graph file starts with a 'vars' line");

    std::vector<std::string> names(head.begin() + 1, head.end());
    Universe u(std::move(names));

    std::vector<std::pair<VarId, VarId>> directed, bidirected;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        auto toks = split_ws(lines[li]);
        if (toks.size() != 3)
            fail("expected 'a -> b' or 'a <-> b', got '" + std::string(lines[li]) + "'");
        VarId a = u.require(toks[0]);
        VarId b = u.require(toks[2]);
        if (toks[1] == "->")
            directed.push_back({a, b});
        else if (toks[1] == "<->")
            bidirected.push_back({a, b});
        else
            fail("unknown edge kind '" + std::string(toks[1]) + "'");
    }
    return validate_edag(std::move(u), std::move(directed), std::move(bidirected));
}

std::string format_edg(const EDag& g) {
    const Universe& u = g.universe();
    std::string out = "vars";
    for (const std::string& n : u.names()) {
        out += ' ';
        out += n;
    }
    out += '\n';
    for (auto [a, b] : g.directed_edges()) out += u.name(a) + " -> " + u.name(b) + '\n';
    for (auto [a, b] : g.bidirected_edges()) out += u.name(a) + " <-> " + u.name(b) + '\n';
    return out;
}

JointTable parse_jpt(std::string_view text) {
    auto lines = content_lines(text);
    auto head = vars_line(lines);
    if (head.empty()) fail("a table file starts with a 'vars' line");

    std::vector<Variable> variables;
    for (std::size_t i = 1; i < head.size(); ++i) {
        auto tok = head[i];
        auto colon = tok.find(':');
        if (colon == std::string_view::npos)
            fail("expected name:domain, got '" + std::string(tok) + "'");
        int domain = parse_int(tok.substr(colon + 1));
        if (domain < 2) fail("domain of '" + std::string(tok.substr(0, colon)) +
                             "' must be at least 2");
        variables.push_back({std::string(tok.substr(0, colon)), domain});
    }

    std::uint64_t rows = 1;
    std::vector<std::size_t> strides(variables.size());
    for (std::size_t i = variables.size(); i-- > 0;) {
        strides[i] = rows;
        rows *= static_cast<std::uint64_t>(variables[i].domain);
        if (rows > (std::uint64_t{1} << 24)) fail("table too large");
    }

    std::vector<double> probs(rows, 0.0);
    std::vector<char> seen(rows, 0);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        auto toks = split_ws(lines[li]);
        if (toks.size() != variables.size() + 1)
            fail("expected " + std::to_string(variables.size()) +
                 " values and a probability, got '" + std::string(lines[li]) + "'");
        std::size_t index = 0;
        for (std::size_t i = 0; i < variables.size(); ++i) {
            int v = parse_int(toks[i]);
            if (v < 0 || v >= variables[i].domain)
                fail("value " + std::string(toks[i]) + " out of range for " +
                     variables[i].name);
            index += static_cast<std::size_t>(v) * strides[i];
        }
        if (seen[index]) fail("duplicate row '" + std::string(lines[li]) + "'");
        seen[index] = 1;
        probs[index] = parse_double(toks.back());
    }
    return JointTable(std::move(variables), std::move(probs));
}

std::string format_jpt(const JointTable& p) {
    std::string out = "vars";
    for (const Variable& v : p.variables())
        out += ' ' + v.name + ':' + std::to_string(v.domain);
    out += '\n';

    const int n = p.var_count();
    std::vector<int> assignment(static_cast<size_t>(n), 0);
    for (std::size_t idx = 0; idx < p.rows(); ++idx) {
        if (p.probs()[idx] != 0.0) {
            for (int v : assignment) {
                out += std::to_string(v);
                out += ' ';
            }
            out += format_double(p.probs()[idx]);
            out += '\n';
        }
        for (int i = n; i-- > 0;) { // row-major: last variable fastest
            if (++assignment[static_cast<size_t>(i)] < p.variable(i).domain) break;
            assignment[static_cast<size_t>(i)] = 0;
        }
    }
    return out;
}

namespace {

// Raw pieces of one I(X ; Y | Z) line, names still unresolved.
struct StatementParts {
    std::vector<std::string> x, y, z;
};

StatementParts split_statement(std::string_view text) {
    std::vector<std::string> toks;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '(' || c == ')' || c == ',' || c == ';' || c == '|') {
            toks.push_back(std::string(1, c));
            ++i;
        } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            toks.push_back(std::string(text.substr(i, j - i)));
            i = j;
        } else {
            fail(std::string("unexpected character '") + c + "' in statement");
        }
    }

    std::size_t pos = 0;
    auto expect = [&](std::string_view t) {
        if (pos >= toks.size() || toks[pos] != t)
            fail("malformed statement '" + std::string(text) + "', expected '" +
                 std::string(t) + "'");
        ++pos;
    };
    auto parse_names = [&]() {
        std::vector<std::string> out;
        while (true) {
            if (pos >= toks.size() || !Universe::valid_name(toks[pos]))
                fail("expected a variable name in '" + std::string(text) + "'");
            out.push_back(toks[pos++]);
            if (pos < toks.size() && toks[pos] == ",") {
                ++pos;
                continue;
            }
            break;
        }
        return out;
    };

    StatementParts parts;
    expect("I");
    expect("(");
    parts.x = parse_names();
    expect(";");
    parts.y = parse_names();
    if (pos < toks.size() && toks[pos] == "|") {
        ++pos;
        parts.z = parse_names();
    }
    expect(")");
    if (pos != toks.size()) fail("trailing tokens in '" + std::string(text) + "'");
    return parts;
}

Statement resolve(const StatementParts& parts, const Universe& u) {
    auto to_set = [&](const std::vector<std::string>& names) {
        VarSet s;
        for (const std::string& n : names) s.insert(u.require(n));
        return s;
    };
    return Statement(to_set(parts.x), to_set(parts.z), to_set(parts.y));
}

} // namespace

Statement parse_statement(std::string_view text, const Universe& u) {
    return resolve(split_statement(text), u);
}

std::string format_statement(const Statement& s, const Universe& u) {
    auto join = [&](VarSet vs) {
        std::string out;
        for (VarId v : vs) {
            if (!out.empty()) out += ',';
            out += u.name(v);
        }
        return out;
    };
    std::string out = "I(" + join(s.x) + " ; " + join(s.y);
    if (!s.z.empty()) out += " | " + join(s.z);
    out += ')';
    return out;
}

StatementFile parse_statements(std::string_view text) {
    auto lines = content_lines(text);
    auto head = vars_line(lines);

    std::vector<StatementParts> parts;
    for (std::size_t li = head.empty() ? 0 : 1; li < lines.size(); ++li)
        parts.push_back(split_statement(lines[li]));

    std::vector<std::string> names;
    if (!head.empty()) {
        names.assign(head.begin() + 1, head.end());
    } else {
        // No vars line: universe is the names in order of first appearance.
        std::set<std::string> known;
        for (const StatementParts& p : parts)
            for (const auto* side : {&p.x, &p.y, &p.z})
                for (const std::string& n : *side)
                    if (known.insert(n).second) names.push_back(n);
    }

    StatementFile f{Universe(std::move(names)), {}};
    for (const StatementParts& p : parts) f.statements.push_back(resolve(p, f.universe));
    return f;
}

std::string format_statements(const StatementFile& f) {
    std::string out = "vars";
    for (const std::string& n : f.universe.names()) {
        out += ' ';
        out += n;
    }
    out += '\n';
    std::set<Statement> sorted(f.statements.begin(), f.statements.end());
    for (const Statement& s : sorted) out += format_statement(s, f.universe) + '\n';
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail("cannot open " + path + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail("failed writing " + path);
}

} // namespace ebn
