#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regrelax/regulation.hpp"

namespace regrelax {

/// One node of a derivation tree. Rule nodes list the grounded body facts as
/// children and the DifferentFrom checks as rendered builtin lines; Inverse
/// nodes point at the mirrored assertion; Subsumed nodes point at the stored
/// most-specific class assertion.
struct ExplanationNode {
    enum class Kind { Asserted, Rule, Inverse, Subsumed };

    Fact fact;
    Kind kind = Kind::Asserted;
    /// Rule name for Kind::Rule; source property for Kind::Inverse.
    std::optional<Identifier> rule;
    Binding binding;
    int round = 0;
    std::vector<std::string> builtins;
    std::vector<ExplanationNode> children;
};

/// Explains why `fact` holds in a saturated knowledge base, or nullopt when
/// it does not hold. `rules` must contain the rules the KB was saturated
/// with for rule nodes to expand into their body facts.
std::optional<ExplanationNode> explain_fact(const KnowledgeBase& kb,
                                            const RuleSet& rules, const Fact& fact);

/// Indented one-node-per-line tree.
std::string render_explanation(const ExplanationNode& node);

}  // namespace regrelax
