#include "ebn/graphoid.hpp"

#include <deque>
#include <unordered_map>

#include "ebn/error.hpp"

namespace ebn {

const char* rule_name(Rule r) {
    switch (r) {
    case Rule::Given: return "given";
    case Rule::Symmetry: return "symmetry";
    case Rule::Decomposition: return "decomposition";
    case Rule::WeakUnion: return "weak-union";
    case Rule::Contraction: return "contraction";
    case Rule::Intersection: return "intersection";
    case Rule::MSymmetry: return "m-symmetry";
    case Rule::MDecomposition: return "m-decomposition";
    case Rule::MMixing: return "m-mixing";
    }
    return "?";
}

const char* axiom_set_name(AxiomSet ax) {
    switch (ax) {
    case AxiomSet::SemiGraphoid: return "semi-graphoid";
    case AxiomSet::Positive: return "positive";
    case AxiomSet::Marginal: return "marginal";
    case AxiomSet::Sdw: return "sdw";
    }
    return "?";
}

std::optional<AxiomSet> axiom_set_from_name(std::string_view name) {
    if (name == "semi-graphoid" || name == "semigraphoid") return AxiomSet::SemiGraphoid;
    if (name == "positive") return AxiomSet::Positive;
    if (name == "marginal") return AxiomSet::Marginal;
    if (name == "sdw") return AxiomSet::Sdw;
    return std::nullopt;
}

namespace {

struct RuleFlags {
    bool symmetry = false, decomposition = false, weak_union = false;
    bool contraction = false, intersection = false;
    bool m_symmetry = false, m_decomposition = false, m_mixing = false;
};

RuleFlags flags_for(AxiomSet ax) {
    RuleFlags f;
    switch (ax) {
    case AxiomSet::SemiGraphoid:
        f.symmetry = f.decomposition = f.weak_union = f.contraction = true;
        break;
    case AxiomSet::Positive:
        f.symmetry = f.decomposition = f.weak_union = f.contraction = f.intersection = true;
        break;
    case AxiomSet::Marginal:
        f.m_symmetry = f.m_decomposition = f.m_mixing = true;
        break;
    case AxiomSet::Sdw:
        f.symmetry = f.decomposition = f.weak_union = true;
        break;
    }
    return f;
}

// Worklist fixpoint.  Binary rules look partners up through two hash
// indexes (first component; x|y of marginal statements) instead of scanning
// the whole store, which keeps big closures tractable.
class Engine {
public:
    Engine(AxiomSet ax, int universe_size, std::size_t budget, const Statement* target)
        : flags_(flags_for(ax)), all_(VarSet::full(universe_size)), budget_(budget),
          target_(target) {}

    void add_given(const Statement& s) {
        if (!s.support().subset_of(all_))
            throw Error(ErrorCode::VariableMismatch,
                        "statement mentions variables outside the universe");
        add(s, Rule::Given, -1, -1);
    }

    bool target_found() const { return target_found_; }

    std::vector<DerivationStep> run() {
        while (!work_.empty() && !(target_ && target_found_)) {
            int i = work_.front();
            work_.pop_front();
            process(i);
        }
        return std::move(steps_);
    }

private:
    void process(int i) {
        const Statement s = steps_[static_cast<size_t>(i)].stmt;

        if (flags_.symmetry) add(s.symmetric(), Rule::Symmetry, i, -1);
        if (flags_.m_symmetry && s.is_marginal()) add(s.symmetric(), Rule::MSymmetry, i, -1);

        // Subset splits of the third component: W moves out entirely
        // (decomposition) or into the conditioning set (weak union).
        bool dec = flags_.decomposition || (flags_.m_decomposition && s.is_marginal());
        if (dec || flags_.weak_union) {
            for_each_subset(s.y, [&](VarSet w) {
                if (w.empty() || w == s.y) return;
                if (dec) {
                    Rule r = flags_.decomposition ? Rule::Decomposition : Rule::MDecomposition;
                    add(Statement(s.x, s.z, s.y - w), r, i, -1);
                }
                if (flags_.weak_union) add(Statement(s.x, s.z | w, s.y - w), Rule::WeakUnion, i, -1);
            });
        }

        if (flags_.contraction) {
            // as I(X,Z,Y):  partner I(X, Z u Y, W)   gives I(X, Z, Y u W)
            // as I(X,Z',W): partner I(X, Z, Y) with Z u Y == Z'
            for (int j : bucket(by_x_, s.x.bits())) {
                const Statement o = steps_[static_cast<size_t>(j)].stmt;
                if (o.z == (s.z | s.y)) add(Statement(s.x, s.z, s.y | o.y), Rule::Contraction, i, j);
                if ((o.z | o.y) == s.z) add(Statement(s.x, o.z, o.y | s.y), Rule::Contraction, j, i);
            }
        }

        if (flags_.intersection) {
            // I(X, Z u W, Y) & I(X, Z u Y, W) => I(X, Z, Y u W); the partner
            // condition is symmetric, so one scan covers both roles.
            for (int j : bucket(by_x_, s.x.bits())) {
                const Statement o = steps_[static_cast<size_t>(j)].stmt;
                if (o.y.subset_of(s.z) && s.y.subset_of(o.z) && (s.z - o.y) == (o.z - s.y))
                    add(Statement(s.x, s.z - o.y, s.y | o.y), Rule::Intersection, i, j);
            }
        }

        if (flags_.m_mixing && s.is_marginal()) {
            // as gamma1 = I(X,0,Y): partner I(X u Y, 0, W) gives I(X, 0, Y u W)
            for (int j : bucket(by_x_, (s.x | s.y).bits())) {
                const Statement o = steps_[static_cast<size_t>(j)].stmt;
                if (o.is_marginal()) add(Statement(s.x, VarSet(), s.y | o.y), Rule::MMixing, i, j);
            }
            // as gamma2 = I(X2,0,W): partners gamma1 with x|y == X2
            for (int j : bucket(by_xy_marginal_, s.x.bits())) {
                const Statement o = steps_[static_cast<size_t>(j)].stmt;
                add(Statement(o.x, VarSet(), o.y | s.y), Rule::MMixing, j, i);
            }
        }
    }

    // add() below appends to these buckets while callers iterate, so hand
    // out a snapshot rather than a live reference.
    std::vector<int> bucket(const std::unordered_map<std::uint64_t, std::vector<int>>& index,
                            std::uint64_t key) const {
        auto it = index.find(key);
        return it == index.end() ? std::vector<int>() : it->second;
    }

    void add(const Statement& s, Rule rule, int p1, int p2) {
        auto [it, fresh] = seen_.emplace(s, static_cast<int>(steps_.size()));
        if (!fresh) return;
        if (steps_.size() >= budget_)
            throw Error(ErrorCode::BudgetExceeded,
                        "closure exceeded the budget of " + std::to_string(budget_) +
                            " statements (partial count " + std::to_string(steps_.size()) + ")");
        int id = static_cast<int>(steps_.size());
        steps_.push_back({s, rule, p1, p2});
        by_x_[s.x.bits()].push_back(id);
        if (s.is_marginal()) by_xy_marginal_[(s.x | s.y).bits()].push_back(id);
        work_.push_back(id);
        if (target_ && s == *target_) target_found_ = true;
    }

    RuleFlags flags_;
    VarSet all_;
    std::size_t budget_;
    const Statement* target_;
    bool target_found_ = false;

    std::vector<DerivationStep> steps_;
    std::unordered_map<Statement, int, StatementHash> seen_;
    std::unordered_map<std::uint64_t, std::vector<int>> by_x_;
    std::unordered_map<std::uint64_t, std::vector<int>> by_xy_marginal_;
    std::deque<int> work_;
};

std::vector<DerivationStep> run_engine(const StatementSet& s, AxiomSet ax, int universe_size,
                                       const ClosureOptions& options, const Statement* target) {
    Engine engine(ax, universe_size, options.budget, target);
    for (const Statement& stmt : s) engine.add_given(stmt);
    return engine.run();
}

} // namespace

ClosureResult::ClosureResult(std::vector<DerivationStep> steps) : steps_(std::move(steps)) {
    for (const DerivationStep& step : steps_) set_.insert(step.stmt);
}

bool ClosureResult::contains(const Statement& s) const { return set_.contains(s); }

StatementSet ClosureResult::statements() const { return set_; }

std::vector<DerivationStep> ClosureResult::trace(const Statement& target) const {
    int target_id = -1;
    for (std::size_t i = 0; i < steps_.size(); ++i)
        if (steps_[i].stmt == target) { target_id = static_cast<int>(i); break; }
    if (target_id < 0) return {};

    // Collect the premise cone of the target, premises before conclusions.
    std::vector<int> order;
    std::vector<char> marked(steps_.size(), 0);
    std::vector<int> stack{target_id};
    while (!stack.empty()) {
        int i = stack.back();
        if (marked[static_cast<size_t>(i)] == 1) {
            marked[static_cast<size_t>(i)] = 2;
            order.push_back(i);
            stack.pop_back();
            continue;
        }
        if (marked[static_cast<size_t>(i)] == 2) { stack.pop_back(); continue; }
        marked[static_cast<size_t>(i)] = 1;
        const DerivationStep& step = steps_[static_cast<size_t>(i)];
        if (step.premise2 >= 0 && !marked[static_cast<size_t>(step.premise2)])
            stack.push_back(step.premise2);
        if (step.premise1 >= 0 && !marked[static_cast<size_t>(step.premise1)])
            stack.push_back(step.premise1);
    }

    // Renumber premises into the compact trace.
    std::unordered_map<int, int> renumber;
    std::vector<DerivationStep> trace;
    trace.reserve(order.size());
    for (int i : order) {
        DerivationStep step = steps_[static_cast<size_t>(i)];
        if (step.premise1 >= 0) step.premise1 = renumber.at(step.premise1);
        if (step.premise2 >= 0) step.premise2 = renumber.at(step.premise2);
        renumber[i] = static_cast<int>(trace.size());
        trace.push_back(step);
    }
    return trace;
}

ClosureResult closure(const StatementSet& s, AxiomSet ax, int universe_size,
                      const ClosureOptions& options) {
    return ClosureResult(run_engine(s, ax, universe_size, options, nullptr));
}

namespace {

void check_target(const Statement& target, int universe_size) {
    if (!target.support().subset_of(VarSet::full(universe_size)))
        throw Error(ErrorCode::VariableMismatch, "target mentions variables outside the universe");
}

} // namespace

bool derives(const StatementSet& s, const Statement& target, AxiomSet ax, int universe_size,
             const ClosureOptions& options) {
    check_target(target, universe_size);
    Engine engine(ax, universe_size, options.budget, &target);
    for (const Statement& stmt : s) engine.add_given(stmt);
    engine.run();
    return engine.target_found();
}

std::vector<DerivationStep> derivation(const StatementSet& s, const Statement& target,
                                       AxiomSet ax, int universe_size,
                                       const ClosureOptions& options) {
    check_target(target, universe_size);
    ClosureResult result(run_engine(s, ax, universe_size, options, &target));
    return result.trace(target);
}

StatementSet simple_fragment(const Statement& sigma, int universe_size) {
    ClosureResult all = closure(StatementSet{sigma}, AxiomSet::Sdw, universe_size);
    StatementSet simple;
    for (const DerivationStep& step : all.steps())
        if (step.stmt.is_simple()) simple.insert(step.stmt);
    return simple;
}

} // namespace ebn
