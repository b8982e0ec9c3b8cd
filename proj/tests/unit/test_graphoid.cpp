#include "doctest.h"

#include "ebn/error.hpp"
#include "ebn/graphoid.hpp"

using namespace ebn;

namespace {

Statement stmt(std::initializer_list<VarId> x, std::initializer_list<VarId> z,
               std::initializer_list<VarId> y) {
    return Statement(VarSet::of(x), VarSet::of(z), VarSet::of(y));
}

} // namespace

TEST_CASE("axiom set names") {
    CHECK(axiom_set_from_name("semi-graphoid") == AxiomSet::SemiGraphoid);
    CHECK(axiom_set_from_name("semigraphoid") == AxiomSet::SemiGraphoid);
    CHECK(axiom_set_from_name("positive") == AxiomSet::Positive);
    CHECK(axiom_set_from_name("marginal") == AxiomSet::Marginal);
    CHECK(axiom_set_from_name("sdw") == AxiomSet::Sdw);
    CHECK(!axiom_set_from_name("nope").has_value());
    CHECK(axiom_set_from_name(axiom_set_name(AxiomSet::Positive)) == AxiomSet::Positive);
}

TEST_CASE("unary rules") {
    // symmetry, decomposition, weak union from one statement
    ClosureResult r = closure(StatementSet{stmt({0}, {}, {1, 2})}, AxiomSet::SemiGraphoid, 3);
    CHECK(r.contains(stmt({1, 2}, {}, {0})));
    CHECK(r.contains(stmt({0}, {}, {1})));
    CHECK(r.contains(stmt({0}, {}, {2})));
    CHECK(r.contains(stmt({0}, {1}, {2})));
    CHECK(r.contains(stmt({0}, {2}, {1})));
    CHECK(r.contains(stmt({2}, {1}, {0})));
    CHECK(r.size() == 10);
}

TEST_CASE("contraction") {
    // I(X,Z,Y) & I(X,Z u Y,W) => I(X,Z,Y u W), either presentation order
    StatementSet given{stmt({0}, {3}, {1}), stmt({0}, {1, 3}, {2})};
    CHECK(derives(given, stmt({0}, {3}, {1, 2}), AxiomSet::SemiGraphoid, 4));

    StatementSet swapped{stmt({0}, {1, 3}, {2}), stmt({0}, {3}, {1})};
    CHECK(derives(swapped, stmt({0}, {3}, {1, 2}), AxiomSet::SemiGraphoid, 4));
}

TEST_CASE("intersection only under the positive rules") {
    StatementSet given{stmt({0}, {2}, {1}), stmt({0}, {1}, {2})};
    Statement joint = stmt({0}, {}, {1, 2});
    CHECK(derives(given, joint, AxiomSet::Positive, 3));
    CHECK(!derives(given, joint, AxiomSet::SemiGraphoid, 3));
}

TEST_CASE("marginal rules") {
    StatementSet given{stmt({0}, {}, {1}), stmt({0, 1}, {}, {2})};
    CHECK(derives(given, stmt({0}, {}, {1, 2}), AxiomSet::Marginal, 3));
    CHECK(derives(given, stmt({1, 2}, {}, {0}), AxiomSet::Marginal, 3));

    // mixing with the premises swapped
    StatementSet swapped{stmt({0, 1}, {}, {2}), stmt({0}, {}, {1})};
    CHECK(derives(swapped, stmt({0}, {}, {1, 2}), AxiomSet::Marginal, 3));

    // non-marginal statements are inert under the marginal rules
    ClosureResult r = closure(StatementSet{stmt({0}, {2}, {1})}, AxiomSet::Marginal, 3);
    CHECK(r.size() == 1);

    // no conditional statement ever appears
    ClosureResult m = closure(StatementSet{stmt({0}, {}, {1, 2})}, AxiomSet::Marginal, 3);
    for (const Statement& s : m.statements()) CHECK(s.is_marginal());
    CHECK(m.contains(stmt({0}, {}, {1})));
    CHECK(!m.contains(stmt({0}, {1}, {2}))); // weak union is not a marginal rule
}

TEST_CASE("spec'd closure example") {
    // telling independences of the four-vertex alarm-style dag
    StatementSet given{stmt({1}, {}, {0}), stmt({3}, {1}, {0, 2})};
    CHECK(derives(given, stmt({0}, {}, {3}), AxiomSet::SemiGraphoid, 4));
    CHECK(derives(given, stmt({3}, {}, {0}), AxiomSet::SemiGraphoid, 4));
}

TEST_CASE("closure budget") {
    StatementSet given{stmt({0}, {}, {1, 2, 3})};
    ClosureOptions tiny{5};
    CHECK_THROWS_WITH_AS(closure(given, AxiomSet::SemiGraphoid, 4, tiny),
                         doctest::Contains("BudgetExceeded"), Error);
    CHECK_THROWS_AS(derives(given, stmt({9}, {}, {1}), AxiomSet::SemiGraphoid, 4), Error);
}

TEST_CASE("derivation traces replay") {
    StatementSet given{stmt({0}, {3}, {1}), stmt({0}, {1, 3}, {2})};
    Statement target = stmt({2}, {3}, {0});
    auto steps = derivation(given, target, AxiomSet::SemiGraphoid, 4);
    REQUIRE(!steps.empty());
    CHECK(steps.back().stmt == target);
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const DerivationStep& s = steps[i];
        if (s.rule == Rule::Given) {
            CHECK(given.contains(s.stmt));
            continue;
        }
        REQUIRE(s.premise1 >= 0);
        REQUIRE(s.premise1 < static_cast<int>(i));
        if (s.premise2 >= 0) REQUIRE(s.premise2 < static_cast<int>(i));
    }

    CHECK(derivation(given, stmt({0}, {}, {2}), AxiomSet::SemiGraphoid, 4).empty());
}

TEST_CASE("simple fragment") {
    Statement sigma = stmt({0, 1}, {2}, {3});
    StatementSet frag = simple_fragment(sigma, 4);
    CHECK(frag.contains(stmt({0}, {1, 2}, {3})));
    CHECK(frag.contains(stmt({0}, {2}, {3})));
    CHECK(frag.contains(stmt({3}, {1, 2}, {0})));
    CHECK(!frag.contains(stmt({0}, {}, {3}))); // cannot drop the conditioning set
    for (const Statement& s : frag) CHECK(s.is_simple());

    // a simple statement's fragment holds itself and its symmetric twin
    StatementSet self = simple_fragment(stmt({0}, {}, {1}), 2);
    CHECK(self.size() == 2);
}
