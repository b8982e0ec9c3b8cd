#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ebn/statement.hpp"

namespace ebn {

// Inference rules over independence statements.
enum class Rule {
    Given,          // input statement, no premises
    Symmetry,       // I(X,Z,Y)                      => I(Y,Z,X)
    Decomposition,  // I(X,Z,Y u W)                  => I(X,Z,Y)
    WeakUnion,      // I(X,Z,Y u W)                  => I(X,Z u W,Y)
    Contraction,    // I(X,Z,Y) & I(X,Z u Y,W)       => I(X,Z,Y u W)
    Intersection,   // I(X,Z u W,Y) & I(X,Z u Y,W)   => I(X,Z,Y u W)
    MSymmetry,      // I(X,0,Y)                      => I(Y,0,X)
    MDecomposition, // I(X,0,Y u W)                  => I(X,0,Y)
    MMixing,        // I(X,0,Y) & I(X u Y,0,W)       => I(X,0,Y u W)
};

const char* rule_name(Rule r);

// The four rule systems used throughout.  SEMI_GRAPHOID is Eqs. symmetry/
// decomposition/weak-union/contraction; POSITIVE adds intersection (sound
// only for strictly positive distributions); MARGINAL works purely on
// unconditional statements; SDW is the trimmed system under which a tree
// basis element expands into its derivable fragment.
enum class AxiomSet { SemiGraphoid, Positive, Marginal, Sdw };

const char* axiom_set_name(AxiomSet ax);
std::optional<AxiomSet> axiom_set_from_name(std::string_view name);

struct ClosureOptions {
    // Hard cap on the number of distinct statements the fixpoint may hold;
    // exceeding it throws BudgetExceeded (message reports the partial count).
    std::size_t budget = 2'000'000;
};

// One node of the derivation DAG: the statement plus how it was obtained.
struct DerivationStep {
    Statement stmt;
    Rule rule;
    int premise1 = -1; // indices into the step list; -1 when absent
    int premise2 = -1;
};

class ClosureResult {
public:
    explicit ClosureResult(std::vector<DerivationStep> steps);

    const std::vector<DerivationStep>& steps() const { return steps_; }
    std::size_t size() const { return steps_.size(); }

    bool contains(const Statement& s) const;
    StatementSet statements() const;

    // Minimal derivation of `target` (premises before conclusions), or empty
    // if the target was not derived.
    std::vector<DerivationStep> trace(const Statement& target) const;

private:
    std::vector<DerivationStep> steps_;
    StatementSet set_;
};

// Worklist fixpoint of `s` under the rule system.  `universe_size` bounds
// the variables statements may mention (validation only; rules never invent
// variables).
ClosureResult closure(const StatementSet& s, AxiomSet ax, int universe_size,
                      const ClosureOptions& options = {});

// Membership of target in closure(s); stops early once the target appears.
bool derives(const StatementSet& s, const Statement& target, AxiomSet ax,
             int universe_size, const ClosureOptions& options = {});

// Like derives() but hands back the derivation steps (empty if not derivable).
std::vector<DerivationStep> derivation(const StatementSet& s, const Statement& target,
                                       AxiomSet ax, int universe_size,
                                       const ClosureOptions& options = {});

// Simple statements (singleton X and Y) derivable from sigma alone under SDW.
StatementSet simple_fragment(const Statement& sigma, int universe_size);

} // namespace ebn
