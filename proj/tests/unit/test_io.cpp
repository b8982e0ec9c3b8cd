#include <doctest.h>

#include <cstdio>
#include <string>

#include "ebn/error.hpp"
#include "ebn/io.hpp"

using namespace ebn;

TEST_CASE("graph files round trip through the canonical form") {
    std::string text = "# a small mixed graph\n"
                       "vars a b c d   # names in order\n"
                       "\n"
                       "c <-> d\n"
                       "  b ->   c\n"
                       "a -> b\n";
    EDag g = parse_edg(text);
    CHECK(g.size() == 4);
    CHECK(g.has_directed(0, 1));
    CHECK(g.has_directed(1, 2));
    CHECK(g.has_bidirected(2, 3));

    std::string canon = format_edg(g);
    CHECK(canon == "vars a b c d\na -> b\nb -> c\nc <-> d\n");
    CHECK(format_edg(parse_edg(canon)) == canon);

    // formatter sorts within each edge kind, directed first
    EDag shuffled = make_edag({"a", "b", "c"}, {{"b", "c"}, {"a", "b"}}, {});
    CHECK(format_edg(shuffled) == "vars a b c\na -> b\nb -> c\n");

    CHECK(format_edg(parse_edg("vars a\n")) == "vars a\n");
}

TEST_CASE("graph parsing reports malformed input") {
    CHECK_THROWS_WITH_AS(parse_edg("a -> b\n"), doctest::Contains("vars"), Error);
    CHECK_THROWS_WITH_AS(parse_edg("vars a b\na -> q\n"),
                         doctest::Contains("UnknownVertex"), Error);
    CHECK_THROWS_WITH_AS(parse_edg("vars a b\na => b\n"),
                         doctest::Contains("edge kind"), Error);
    CHECK_THROWS_WITH_AS(parse_edg("vars a b c\na -> b -> c\n"),
                         doctest::Contains("ParseError"), Error);
    // structural problems surface as graph errors, not parse errors
    CHECK_THROWS_WITH_AS(parse_edg("vars a\na -> a\n"), doctest::Contains("SelfLoop"), Error);
    CHECK_THROWS_WITH_AS(parse_edg("vars a b\na -> b\na <-> b\n"),
                         doctest::Contains("ParallelEdge"), Error);
    CHECK_THROWS_WITH_AS(parse_edg("vars a b\na -> b\nb -> a\n"),
                         doctest::Contains("ParallelEdge"), Error);
    CHECK_THROWS_WITH_AS(parse_edg("vars a b c\na -> b\nb -> c\nc -> a\n"),
                         doctest::Contains("DirectedCycle"), Error);
}

TEST_CASE("table files round trip with zero rows omitted") {
    std::string text = "vars a:2 b:2 c:2\n"
                       "0 0 0 0.392\n"
                       "0 0 1 0.168\n"
                       "0 1 0 0.056\n"
                       "0 1 1 0.084\n"
                       "1 0 0 0.042\n"
                       "1 0 1 0.018\n"
                       "1 1 0 0.096\n"
                       "1 1 1 0.144\n";
    JointTable p = parse_jpt(text);
    CHECK(p.var_count() == 3);
    CHECK(p.probs()[0] == doctest::Approx(.392));
    CHECK(p.probs()[7] == doctest::Approx(.144));

    std::string canon = format_jpt(p);
    CHECK(canon == text); // already canonical
    CHECK(format_jpt(parse_jpt(canon)) == canon);

    // missing rows read back as zero and zero rows are not written
    std::string sparse = "vars a:2 b:2\n# only the diagonal\n1 1 0.75\n0 0 0.25\n";
    JointTable q = parse_jpt(sparse);
    CHECK(q.probs()[0] == doctest::Approx(.25));
    CHECK(q.probs()[1] == 0.0);
    CHECK(q.probs()[2] == 0.0);
    CHECK(q.probs()[3] == doctest::Approx(.75));
    CHECK(format_jpt(q) == "vars a:2 b:2\n0 0 0.25\n1 1 0.75\n");

    // mixed domains: the last variable runs fastest
    JointTable m = parse_jpt("vars coin:2 die:3\n0 0 0.1\n0 1 0.1\n0 2 0.1\n"
                             "1 0 0.2\n1 1 0.2\n1 2 0.3\n");
    CHECK(m.rows() == 6);
    std::vector<int> asg = {1, 2};
    CHECK(m.prob(asg) == doctest::Approx(.3));
}

TEST_CASE("table parsing reports malformed input") {
    CHECK_THROWS_WITH_AS(parse_jpt("0 0.5\n1 0.5\n"), doctest::Contains("vars"), Error);
    CHECK_THROWS_WITH_AS(parse_jpt("vars a\n0 1\n"), doctest::Contains("name:domain"), Error);
    CHECK_THROWS_WITH_AS(parse_jpt("vars a:1\n0 1\n"), doctest::Contains("at least 2"), Error);
    CHECK_THROWS_WITH_AS(parse_jpt("vars a:2\n2 0.5\n"), doctest::Contains("out of range"),
                         Error);
    CHECK_THROWS_WITH_AS(parse_jpt("vars a:2\n0 0.5 0.5\n"), doctest::Contains("expected"),
                         Error);
    CHECK_THROWS_WITH_AS(parse_jpt("vars a:2\n0 0.5\n0 0.5\n"),
                         doctest::Contains("duplicate row"), Error);
    CHECK_THROWS_WITH_AS(parse_jpt("vars a:2\n0 x\n"), doctest::Contains("not a number"),
                         Error);
    CHECK_THROWS_WITH_AS(parse_jpt("vars a:2\n0 0.5\n1 0.4\n"),
                         doctest::Contains("BadTable"), Error);
    CHECK_THROWS_WITH_AS(parse_jpt("vars a:2\n0 -0.5\n1 1.5\n"),
                         doctest::Contains("BadTable"), Error);

    std::string big = "vars";
    for (int i = 0; i < 25; ++i) big += " v" + std::to_string(i) + ":2";
    CHECK_THROWS_WITH_AS(parse_jpt(big + "\n"), doctest::Contains("too large"), Error);
}

TEST_CASE("statement text round trips") {
    Universe u({"a", "b", "c", "d"});

    Statement s = parse_statement("I(a ; b)", u);
    CHECK(s == Statement::marginal(VarSet::single(0), VarSet::single(1)));
    CHECK(format_statement(s, u) == "I(a ; b)");

    Statement full = parse_statement("I(a,b ; c | d)", u);
    CHECK(full == Statement(VarSet::of({0, 1}), VarSet::single(3), VarSet::single(2)));
    CHECK(format_statement(full, u) == "I(a,b ; c | d)");

    // whitespace and member order do not matter; output is canonical
    CHECK(parse_statement("  I( b , a ;  c |d )  ", u) == full);
    CHECK(format_statement(parse_statement("I(b,a ; c | d)", u), u) == "I(a,b ; c | d)");
}

TEST_CASE("statement parsing reports malformed input") {
    Universe u({"a", "b", "c"});
    CHECK_THROWS_WITH_AS(parse_statement("J(a ; b)", u), doctest::Contains("expected 'I'"),
                         Error);
    CHECK_THROWS_WITH_AS(parse_statement("I(a ; b", u), doctest::Contains("expected ')'"),
                         Error);
    CHECK_THROWS_WITH_AS(parse_statement("I(a b ; c)", u), doctest::Contains("expected ';'"),
                         Error);
    CHECK_THROWS_WITH_AS(parse_statement("I(a, ; b)", u),
                         doctest::Contains("expected a variable name"), Error);
    CHECK_THROWS_WITH_AS(parse_statement("I(a ; )", u),
                         doctest::Contains("expected a variable name"), Error);
    CHECK_THROWS_WITH_AS(parse_statement("I(a ; b) extra", u),
                         doctest::Contains("trailing"), Error);
    CHECK_THROWS_WITH_AS(parse_statement("I(a ; b) ?", u),
                         doctest::Contains("unexpected character"), Error);
    CHECK_THROWS_WITH_AS(parse_statement("I(a ; q)", u), doctest::Contains("UnknownVertex"),
                         Error);
    // structurally invalid statements are statement errors, not parse errors
    CHECK_THROWS_WITH_AS(parse_statement("I(a ; a)", u),
                         doctest::Contains("InvalidStatement"), Error);
    CHECK_THROWS_WITH_AS(parse_statement("I(a ; b | a)", u),
                         doctest::Contains("InvalidStatement"), Error);
}

TEST_CASE("statement files carry their universe") {
    StatementFile f = parse_statements("vars a b c\nI(c ; a)\nI(a ; b | c)\n");
    CHECK(f.universe.names() == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(f.statements.size() == 2);
    CHECK(f.statements[0] == Statement::marginal(VarSet::single(2), VarSet::single(0)));

    // without a vars line the universe is first-appearance order
    StatementFile g = parse_statements("I(x ; y)\nI(z ; x)\n");
    CHECK(g.universe.names() == std::vector<std::string>{"x", "y", "z"});

    // canonical form: explicit vars line, sorted, duplicates collapsed
    StatementFile h = parse_statements("vars a b c\nI(c ; a)\nI(a ; b)\nI(c ; a)\n");
    std::string canon = format_statements(h);
    CHECK(canon == "vars a b c\nI(a ; b)\nI(c ; a)\n");
    StatementFile h2 = parse_statements(canon);
    CHECK(format_statements(h2) == canon);

    CHECK(format_statements(parse_statements("vars a b\n")) == "vars a b\n");
}

TEST_CASE("file io reads back what it wrote") {
    std::string path = "ebn_io_test.tmp";
    write_file(path, "vars a b\na -> b\n");
    CHECK(read_file(path) == "vars a b\na -> b\n");
    std::remove(path.c_str());

    CHECK_THROWS_WITH_AS(read_file("definitely/not/here.edg"),
                         doctest::Contains("cannot open"), Error);
}
