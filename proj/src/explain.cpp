#include "regrelax/explain.hpp"

#include <algorithm>

namespace regrelax {

namespace {

const Rule* find_rule(const RuleSet& rules, const Identifier& name) {
    for (const auto& rule : rules.rules) {
        if (rule.name == name) return &rule;
    }
    return nullptr;
}

std::optional<Identifier> bound_value(const Term& term, const Binding& binding) {
    if (const auto* r = std::get_if<IndividualRef>(&term)) return r->individual;
    auto it = binding.find(std::get<Variable>(term).name);
    if (it == binding.end()) return std::nullopt;
    return it->second;
}

ExplanationNode build(const KnowledgeBase& kb, const RuleSet& rules,
                      const Fact& fact) {
    ExplanationNode node{fact, ExplanationNode::Kind::Asserted,
                         std::nullopt,  {},
                         0,             {},
                         {}};

    if (!kb.contains(fact)) {
        // Holds only through subsumption: expand via a stored assertion into
        // a subclass.
        const auto& c = std::get<ClassAssertion>(fact);
        for (const auto& sub : kb.schema().subclasses_of(c.cls)) {
            const Fact stored = class_fact(sub, c.individual);
            if (sub != c.cls && kb.contains(stored)) {
                node.kind = ExplanationNode::Kind::Subsumed;
                node.children.push_back(build(kb, rules, stored));
                return node;
            }
        }
        return node;  // unreachable when kb.holds(fact)
    }

    auto it = kb.provenance().find(fact);
    if (it == kb.provenance().end() || it->second.empty()) {
        node.kind = ExplanationNode::Kind::Asserted;
        return node;
    }
    const DerivationRecord& record = *std::ranges::min_element(
        it->second, [](const DerivationRecord& a, const DerivationRecord& b) {
            return a.round < b.round;
        });
    node.rule = record.rule;
    node.round = record.round;

    if (record.kind == DerivationRecord::Kind::Inverse) {
        node.kind = ExplanationNode::Kind::Inverse;
        const auto& p = std::get<PropertyAssertion>(fact);
        node.children.push_back(
            build(kb, rules, property_fact(record.rule, p.object, p.subject)));
        return node;
    }

    node.kind = ExplanationNode::Kind::Rule;
    node.binding = record.binding;
    const Rule* rule = find_rule(rules, record.rule);
    if (rule == nullptr) return node;  // rule set changed; leave unexpanded
    for (const auto& atom : rule->body) {
        if (const auto* d = std::get_if<DifferentFromAtom>(&atom)) {
            auto left = bound_value(d->left, record.binding);
            auto right = bound_value(d->right, record.binding);
            node.builtins.push_back("DifferentFrom(" +
                                    (left ? left->str() : to_string(d->left)) + ", " +
                                    (right ? right->str() : to_string(d->right)) +
                                    ")");
            continue;
        }
        if (auto grounded = ground_atom(atom, record.binding)) {
            node.children.push_back(build(kb, rules, *grounded));
        }
    }
    return node;
}

void render(const ExplanationNode& node, int depth, std::string& out) {
    const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    out += indent + to_string(node.fact);
    switch (node.kind) {
        case ExplanationNode::Kind::Asserted:
            out += "  [asserted]";
            break;
        case ExplanationNode::Kind::Rule: {
            out += "  [rule " + node.rule->str() + ", round " +
                   std::to_string(node.round);
            for (const auto& [name, value] : node.binding) {
                out += ", " + name + "=" + value.str();
            }
            out += "]";
            break;
        }
        case ExplanationNode::Kind::Inverse:
            out += "  [inverse of " + node.rule->str() + "]";
            break;
        case ExplanationNode::Kind::Subsumed:
            out += "  [subsumed]";
            break;
    }
    out += "\n";
    for (const auto& builtin : node.builtins) {
        out += indent + "  " + builtin + "  [builtin]\n";
    }
    for (const auto& child : node.children) {
        render(child, depth + 1, out);
    }
}

}  // namespace

std::optional<ExplanationNode> explain_fact(const KnowledgeBase& kb,
                                            const RuleSet& rules, const Fact& fact) {
    if (!kb.holds(fact)) return std::nullopt;
    return build(kb, rules, fact);
}

std::string render_explanation(const ExplanationNode& node) {
    std::string out;
    render(node, 0, out);
    return out;
}

}  // namespace regrelax
