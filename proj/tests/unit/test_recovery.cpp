#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "ebn/error.hpp"
#include "ebn/recovery.hpp"
#include "ebn/sampler.hpp"
#include "ebn/tree_basis.hpp"

using namespace ebn;

namespace {

std::vector<Variable> abc() { return {{"a", 2}, {"b", 2}, {"c", 2}}; }

JointTable chain_table() {
    return JointTable(abc(), {.392, .168, .056, .084, .042, .018, .096, .144});
}

JointTable collider_table() {
    return JointTable(abc(), {.224, .126, .056, .294, .048, .162, .072, .018});
}

JointTable parity_table() {
    return JointTable({{"x1", 2}, {"x2", 2}, {"x3", 2}},
                      {.225, .025, .025, .225, .125, .125, .125, .125});
}

JointTable product3_table() {
    return JointTable(abc(), {.21, .21, .14, .14, .09, .09, .06, .06});
}

JointTable xor_table() {
    return JointTable(abc(), {.25, 0, 0, .25, 0, .25, .25, 0});
}

Skeleton path_skeleton(std::vector<std::string> names) {
    Skeleton s{Universe(names), std::vector<VarSet>(names.size())};
    for (std::size_t i = 0; i + 1 < names.size(); ++i) {
        s.adj[i].insert(static_cast<VarId>(i + 1));
        s.adj[i + 1].insert(static_cast<VarId>(i));
    }
    return s;
}

// Star with the first name as centre.
Skeleton star_skeleton(std::vector<std::string> names, VarId centre) {
    Skeleton s{Universe(names), std::vector<VarSet>(names.size())};
    for (VarId v = 0; v < s.size(); ++v)
        if (v != centre) {
            s.adj[static_cast<size_t>(centre)].insert(v);
            s.adj[static_cast<size_t>(v)].insert(centre);
        }
    return s;
}

} // namespace

TEST_CASE("skeleton structure helpers") {
    Skeleton path = path_skeleton({"a", "b", "c"});
    CHECK(path.is_tree());
    CHECK(path.edges() == std::vector<std::pair<VarId, VarId>>{{0, 1}, {1, 2}});

    Skeleton lonely{Universe({"a", "b", "c"}), std::vector<VarSet>(3)};
    CHECK_FALSE(lonely.is_tree()); // disconnected, no edges

    // right edge count but disconnected: a 3-cycle plus an isolated vertex
    Skeleton cyc{Universe({"a", "b", "c", "d"}), std::vector<VarSet>(4)};
    auto link = [&](VarId x, VarId y) {
        cyc.adj[static_cast<size_t>(x)].insert(y);
        cyc.adj[static_cast<size_t>(y)].insert(x);
    };
    link(0, 1);
    link(1, 2);
    link(2, 0);
    CHECK_FALSE(cyc.is_tree());
}

TEST_CASE("skeleton construction keeps exactly the coupled pairs") {
    std::vector<CiQuery> log;
    Skeleton coll = build_skeleton(collider_table(), 1e-9, &log);
    CHECK(coll.is_tree());
    CHECK(coll.edges() == std::vector<std::pair<VarId, VarId>>{{0, 1}, {1, 2}});
    CHECK(log.size() == 6); // two queries per pair, nothing short-circuits

    log.clear();
    Skeleton chain = build_skeleton(chain_table(), 1e-9, &log);
    CHECK(chain.edges() == std::vector<std::pair<VarId, VarId>>{{0, 1}, {1, 2}});
    // the a-c full-conditioning query holds, so its marginal query is skipped
    CHECK(log.size() == 5);

    Skeleton par = build_skeleton(parity_table());
    CHECK_FALSE(par.is_tree());
    CHECK(par.edges() == std::vector<std::pair<VarId, VarId>>{{1, 2}});

    Skeleton prod = build_skeleton(product3_table());
    CHECK(prod.edges().empty());

    CHECK_THROWS_WITH_AS(build_skeleton(xor_table()), doctest::Contains("NotPositive"), Error);
}

TEST_CASE("orientation realises required sinks canonically") {
    Skeleton path = path_skeleton({"a", "b", "c"});

    ETree coll = orient({path, {{{0, 1, 2}}}});
    CHECK(coll.graph().directed_edges() ==
          std::vector<std::pair<VarId, VarId>>{{0, 1}, {2, 1}});
    CHECK(coll.graph().bidirected_edges().empty());

    ETree chain = orient({path, {}});
    CHECK(chain.graph().directed_edges() ==
          std::vector<std::pair<VarId, VarId>>{{0, 1}, {1, 2}});

    // adjacent required sinks share an edge, which must come out bidirected
    Skeleton path4 = path_skeleton({"a", "b", "c", "d"});
    ETree two = orient({path4, {{{0, 1, 2}}, {{1, 2, 3}}}});
    CHECK(two.graph().directed_edges() ==
          std::vector<std::pair<VarId, VarId>>{{0, 1}, {3, 2}});
    CHECK(two.graph().bidirected_edges() ==
          std::vector<std::pair<VarId, VarId>>{{1, 2}});

    // a required sink forces the remaining star edge outward
    Skeleton star = star_skeleton({"b", "a", "c", "d"}, 0);
    ETree s = orient({star, {{{1, 0, 2}}}});
    CHECK(s.graph().directed_edges() ==
          std::vector<std::pair<VarId, VarId>>{{0, 3}, {1, 0}, {2, 0}});
}

TEST_CASE("orientation output satisfies its constraint exactly") {
    // every required chain has a sink, every other chain does not
    Skeleton star = star_skeleton({"b", "a", "c", "d", "e"}, 0);
    SinkConstraint c{star, {{{1, 0, 2}}, {{3, 0, 4}}, {{1, 0, 3}}, {{1, 0, 4}}, {{2, 0, 3}},
                            {{2, 0, 4}}}};
    ETree t = orient(c);
    // all chains through b are required, so every edge points into b
    CHECK(t.graph().directed_edges() ==
          std::vector<std::pair<VarId, VarId>>{{1, 0}, {2, 0}, {3, 0}, {4, 0}});
    for (const auto& triple : c.required) {
        Trail chain = make_trail(t.graph(), {triple[0], triple[1], triple[2]});
        CHECK(sinks_on_trail(t.graph(), chain) == VarSet::single(triple[1]));
    }
}

TEST_CASE("orientation conflicts name a witness chain") {
    // centre b: chains (a,b,c) and (d,b,e) required, (a,b,d) not satisfiable
    Skeleton star = star_skeleton({"a", "b", "c", "d", "e"}, 1);
    SinkConstraint c{star, {{{0, 1, 2}}, {{3, 1, 4}}}};
    CHECK_THROWS_WITH_AS(orient(c), doctest::Contains("(a, b, d)"), Error);
    try {
        orient(c);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OrientationConflict);
    }

    // malformed constraint: (a, b, c) is not a chain of a star centred at a
    Skeleton star_a = star_skeleton({"a", "b", "c"}, 0);
    CHECK_THROWS_WITH_AS(orient({star_a, {{{0, 1, 2}}}}),
                         doctest::Contains("InvalidConstraint"), Error);

    Skeleton not_tree{Universe({"a", "b"}), std::vector<VarSet>(2)};
    CHECK_THROWS_WITH_AS(orient({not_tree, {}}), doctest::Contains("NotATree"), Error);
}

TEST_CASE("well-representation checks trek pairs only") {
    ETree coll(make_edag({"a", "b", "c"}, {{"a", "b"}, {"c", "b"}}, {}));

    WellRepCheck bad = check_well_represented(coll, xor_table());
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.witness_pair.has_value());
    CHECK(*bad.witness_pair == std::pair<VarId, VarId>{0, 1});
    CHECK(bad.witness_residual <= 1e-9);
    CHECK_FALSE(well_represented(coll, xor_table()));

    // a and c are marginally independent in the collider table, but their
    // trail has a sink, so that pair is exempt
    std::vector<CiQuery> log;
    WellRepCheck good = check_well_represented(coll, collider_table(), 1e-9, &log);
    CHECK(good.ok);
    CHECK(log.size() == 2); // pairs (a,b) and (b,c) only

    ETree chain(make_edag({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, {}));
    CHECK(well_represented(chain, chain_table()));

    JointTable wrong({{"x", 2}, {"y", 2}, {"z", 2}},
                     std::vector<double>(8, .125));
    CHECK_THROWS_WITH_AS(check_well_represented(chain, wrong),
                         doctest::Contains("VariableMismatch"), Error);
}

TEST_CASE("recovery rebuilds the generating tree") {
    RecoveryOutcome coll = recover(collider_table());
    REQUIRE(coll.ok());
    CHECK(coll.tree->graph().directed_edges() ==
          std::vector<std::pair<VarId, VarId>>{{0, 1}, {2, 1}});
    CHECK_FALSE(coll.failure.has_value());
    CHECK_FALSE(coll.queries.empty());

    RecoveryOutcome chain = recover(chain_table());
    REQUIRE(chain.ok());
    CHECK(chain.tree->graph().directed_edges() ==
          std::vector<std::pair<VarId, VarId>>{{0, 1}, {1, 2}});

    // self-consistency: the returned tree passes verification when re-run
    for (const RecoveryOutcome* out : {&coll, &chain}) {
        const JointTable& p = out == &coll ? collider_table() : chain_table();
        CHECK(verify_etree_imap(*out->tree, p).imap);
        CHECK(well_represented(*out->tree, p));
        // minimality: every kept edge is a real marginal dependence
        for (auto [a, b] : out->tree->graph().directed_edges())
            CHECK_FALSE(
                ci_holds(p, Statement::marginal(VarSet::single(a), VarSet::single(b))).holds);
    }
}

TEST_CASE("recovery diagnoses failures by stage") {
    RecoveryOutcome par = recover(parity_table());
    CHECK_FALSE(par.ok());
    REQUIRE(par.failure.has_value());
    CHECK(par.failure->stage == RecoveryStage::NotTree);
    CHECK(std::string(recovery_stage_name(par.failure->stage)) == "NOT_TREE");
    CHECK(par.failure->detail.find("1 edge") != std::string::npos);

    RecoveryOutcome prod = recover(product3_table());
    REQUIRE(prod.failure.has_value());
    CHECK(prod.failure->stage == RecoveryStage::NotTree);

    RecoveryOutcome xr = recover(xor_table());
    REQUIRE(xr.failure.has_value());
    CHECK(xr.failure->stage == RecoveryStage::NotPositive);
    CHECK(xr.queries.empty());
    CHECK(std::string(recovery_stage_name(xr.failure->stage)) == "NOT_POSITIVE");
}

TEST_CASE("recovery is deterministic") {
    RecoveryOutcome r1 = recover(collider_table());
    RecoveryOutcome r2 = recover(collider_table());
    REQUIRE(r1.queries.size() == r2.queries.size());
    for (std::size_t i = 0; i < r1.queries.size(); ++i) {
        CHECK(r1.queries[i].stmt == r2.queries[i].stmt);
        CHECK(r1.queries[i].holds == r2.queries[i].holds);
        CHECK(r1.queries[i].residual == r2.queries[i].residual);
    }
}

TEST_CASE("sampled trees survive the round trip") {
    std::vector<ETree> trees;
    trees.push_back(ETree(make_edag({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, {})));
    trees.push_back(ETree(make_edag({"a", "b", "c"}, {{"a", "b"}, {"c", "b"}}, {})));
    trees.push_back(ETree(make_edag({"a", "b"}, {}, {{"a", "b"}})));
    trees.push_back(ETree(make_edag({"p", "q", "x", "s", "t"},
                                    {{"p", "x"}, {"q", "x"}, {"x", "s"}}, {{"s", "t"}})));

    SamplerConfig cfg;
    cfg.seed = 3;
    for (const ETree& t : trees) {
        JointTable p = sample_from_etree(t, cfg);
        RecoveryOutcome out = recover(p);
        REQUIRE_MESSAGE(out.ok(), recovery_stage_name(out.failure->stage));
        CHECK(etree_isomorphic(*out.tree, t));
        // the skeleton itself is recovered edge for edge
        auto skel_edges = [](const EDag& g) {
            auto d = g.directed_edges();
            std::vector<std::pair<VarId, VarId>> all;
            for (auto [a, b] : d) all.push_back({std::min(a, b), std::max(a, b)});
            for (auto e : g.bidirected_edges()) all.push_back(e);
            std::sort(all.begin(), all.end());
            return all;
        };
        CHECK(skel_edges(out.tree->graph()) == skel_edges(t.graph()));
    }
}
