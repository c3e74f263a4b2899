#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "regrelax/knowledge_base.hpp"
#include "regrelax/rule.hpp"

namespace regrelax {

class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(std::size_t cap)
        : std::runtime_error("derived fact cap of " + std::to_string(cap) +
                             " exceeded"),
          cap_(cap) {}

    std::size_t cap() const { return cap_; }

    /// Simulation step during which the limit was hit, when applicable.
    std::optional<int> step_index() const { return step_index_; }
    void set_step_index(int step) { step_index_ = step; }

private:
    std::size_t cap_;
    std::optional<int> step_index_;
};

struct SaturationOptions {
    std::size_t derived_fact_cap = 100000;
};

struct SaturationResult {
    KnowledgeBase kb;
    /// Facts present in `kb` but not in the input knowledge base.
    std::set<Fact> derived;
    /// Index of the last round that added a fact; 0 when nothing fired.
    int rounds = 0;
};

/// All total bindings of the atoms' variables under which every class and
/// property atom holds in `kb` and every DifferentFrom atom binds two
/// distinct individuals. Sorted; independent of atom order. Throws RuleError
/// if a DifferentFrom operand is not bound by any positive atom.
std::vector<Binding> match_body(const KnowledgeBase& kb,
                                const std::vector<Atom>& atoms);

/// Runs the rules to a least fixpoint. Each round fires every rule against
/// the round's snapshot; head facts (and their inverse mirrors) that are new
/// join the knowledge base with a provenance record for that round. Throws
/// RuleError on an unsafe or undeclared rule, ResourceLimitError once more
/// than options.derived_fact_cap facts have been added.
SaturationResult saturate(const KnowledgeBase& kb, const std::vector<Rule>& rules,
                          const SaturationOptions& options = {});

}  // namespace regrelax
