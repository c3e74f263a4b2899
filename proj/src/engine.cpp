#include "regrelax/engine.hpp"

#include <algorithm>
#include <map>

namespace regrelax {

namespace {

/// Growing fact store indexed for atom matching. `members` and `pairs` hold
/// facts as asserted; subsumption is resolved through the schema at match
/// time, so the class of the supporting fact stays visible.
struct Index {
    const Schema* schema = nullptr;
    std::set<Fact> facts;
    std::map<Identifier, std::set<Identifier>> members;
    std::map<Identifier, std::vector<std::pair<Identifier, Identifier>>> pairs;

    void insert(const Fact& fact) {
        if (!facts.insert(fact).second) return;
        if (const auto* c = std::get_if<ClassAssertion>(&fact)) {
            members[c->cls].insert(c->individual);
        } else {
            const auto& p = std::get<PropertyAssertion>(fact);
            pairs[p.property].emplace_back(p.subject, p.object);
        }
    }
};

enum class Mode { Old, Delta, Full };

bool unify(const Term& term, const Identifier& value, Binding& binding) {
    if (const auto* r = std::get_if<IndividualRef>(&term)) {
        return r->individual == value;
    }
    auto [it, inserted] = binding.try_emplace(std::get<Variable>(term).name, value);
    return inserted || it->second == value;
}

/// Extends `seed` with every match of one positive atom whose supporting
/// fact passes the mode filter. `delta` may be null in Full mode.
void match_atom(const Index& ix, const Atom& atom, const Binding& seed, Mode mode,
                const std::set<Fact>* delta, std::vector<Binding>& out) {
    auto keep = [&](const Fact& support) {
        switch (mode) {
            case Mode::Full: return true;
            case Mode::Delta: return delta->contains(support);
            case Mode::Old: return !delta->contains(support);
        }
        return true;
    };
    if (const auto* c = std::get_if<ClassAtom>(&atom)) {
        for (const auto& sub : ix.schema->subclasses_of(c->cls)) {
            auto it = ix.members.find(sub);
            if (it == ix.members.end()) continue;
            for (const auto& ind : it->second) {
                if (!keep(class_fact(sub, ind))) continue;
                Binding next = seed;
                if (unify(c->arg, ind, next)) out.push_back(std::move(next));
            }
        }
    } else if (const auto* p = std::get_if<PropertyAtom>(&atom)) {
        auto it = ix.pairs.find(p->property);
        if (it == ix.pairs.end()) return;
        for (const auto& [subject, object] : it->second) {
            if (!keep(property_fact(p->property, subject, object))) continue;
            Binding next = seed;
            if (unify(p->subject, subject, next) && unify(p->object, object, next)) {
                out.push_back(std::move(next));
            }
        }
    }
}

std::optional<Identifier> value_of(const Term& term, const Binding& binding) {
    if (const auto* r = std::get_if<IndividualRef>(&term)) return r->individual;
    auto it = binding.find(std::get<Variable>(term).name);
    if (it == binding.end()) return std::nullopt;
    return it->second;
}

/// Distinct individuals by name: byte inequality of the two identifiers.
bool passes_builtins(const std::vector<Atom>& atoms, const Binding& binding) {
    for (const auto& atom : atoms) {
        const auto* d = std::get_if<DifferentFromAtom>(&atom);
        if (d == nullptr) continue;
        auto left = value_of(d->left, binding);
        auto right = value_of(d->right, binding);
        if (!left || !right) {
            const auto& term = !left ? d->left : d->right;
            throw RuleError(RuleError::Code::UnsafeVariable, to_string(term),
                            "DifferentFrom operand " + to_string(term) +
                                " is not bound by a positive atom");
        }
        if (*left == *right) return false;
    }
    return true;
}

std::vector<const Atom*> positive_atoms(const std::vector<Atom>& atoms) {
    std::vector<const Atom*> out;
    for (const auto& atom : atoms) {
        if (!std::holds_alternative<DifferentFromAtom>(atom)) out.push_back(&atom);
    }
    return out;
}

/// Bindings a rule yields this round. Each pivot restricts earlier atoms to
/// pre-round facts and the pivot atom to the round's delta, so a binding is
/// enumerated exactly once, at its first delta position. Rules without a
/// positive atom can only fire with the empty binding, in the first round.
std::set<Binding> round_bindings(const Index& ix, const Rule& rule,
                                 const std::set<Fact>& delta, bool first_round) {
    const std::vector<const Atom*> positives = positive_atoms(rule.body);
    std::set<Binding> result;
    if (positives.empty()) {
        if (first_round && passes_builtins(rule.body, Binding{})) {
            result.insert(Binding{});
        }
        return result;
    }
    for (std::size_t pivot = 0; pivot < positives.size(); ++pivot) {
        std::vector<Binding> seeds{Binding{}};
        for (std::size_t i = 0; i < positives.size() && !seeds.empty(); ++i) {
            Mode mode = i < pivot   ? Mode::Old
                        : i == pivot ? Mode::Delta
                                     : Mode::Full;
            std::vector<Binding> next;
            for (const auto& seed : seeds) {
                match_atom(ix, *positives[i], seed, mode, &delta, next);
            }
            seeds = std::move(next);
        }
        for (auto& binding : seeds) {
            if (passes_builtins(rule.body, binding)) result.insert(std::move(binding));
        }
    }
    return result;
}

Index index_of(const KnowledgeBase& kb) {
    Index ix;
    ix.schema = &kb.schema();
    for (const auto& fact : kb.facts()) ix.insert(fact);
    return ix;
}

}  // namespace

std::vector<Binding> match_body(const KnowledgeBase& kb,
                                const std::vector<Atom>& atoms) {
    const Index ix = index_of(kb);
    std::vector<Binding> seeds{Binding{}};
    for (const Atom* atom : positive_atoms(atoms)) {
        std::vector<Binding> next;
        for (const auto& seed : seeds) {
            match_atom(ix, *atom, seed, Mode::Full, nullptr, next);
        }
        seeds = std::move(next);
        if (seeds.empty()) break;
    }
    std::set<Binding> result;
    for (auto& binding : seeds) {
        if (passes_builtins(atoms, binding)) result.insert(std::move(binding));
    }
    return {result.begin(), result.end()};
}

SaturationResult saturate(const KnowledgeBase& kb, const std::vector<Rule>& rules,
                          const SaturationOptions& options) {
    const Schema& schema = kb.schema();
    for (const auto& rule : rules) check_safety(rule, schema);

    Index ix = index_of(kb);
    ProvenanceMap provenance = kb.provenance();
    std::set<Fact> delta = kb.facts();
    std::size_t added = 0;
    int rounds = 0;

    for (int round = 1; !delta.empty(); ++round) {
        std::map<Fact, std::vector<DerivationRecord>> fresh;
        for (const auto& rule : rules) {
            for (const auto& binding : round_bindings(ix, rule, delta, round == 1)) {
                for (const auto& head : rule.head) {
                    auto fact = ground_atom(head, binding);
                    if (!fact || ix.facts.contains(*fact)) continue;
                    fresh[*fact].push_back(
                        {DerivationRecord::Kind::Rule, rule.name, binding, round});
                }
            }
        }
        if (fresh.empty()) break;
        rounds = round;

        std::set<Fact> next_delta;
        for (auto& [fact, records] : fresh) {
            ix.insert(fact);
            next_delta.insert(fact);
            auto& dest = provenance[fact];
            dest.insert(dest.end(), records.begin(), records.end());
            if (++added > options.derived_fact_cap) {
                throw ResourceLimitError(options.derived_fact_cap);
            }
        }
        for (const auto& [fact, records] : fresh) {
            auto mirror = inverse_mirror(schema, fact);
            if (!mirror || ix.facts.contains(*mirror)) continue;
            ix.insert(*mirror);
            next_delta.insert(*mirror);
            const auto& source = std::get<PropertyAssertion>(fact);
            provenance[*mirror].push_back(
                {DerivationRecord::Kind::Inverse, source.property, Binding{}, round});
            if (++added > options.derived_fact_cap) {
                throw ResourceLimitError(options.derived_fact_cap);
            }
        }
        delta = std::move(next_delta);
    }

    std::set<Fact> derived;
    std::ranges::set_difference(ix.facts, kb.facts(),
                                std::inserter(derived, derived.end()));
    KnowledgeBase out(kb.schema_ptr(), std::move(ix.facts), std::move(provenance));
    return {std::move(out), std::move(derived), rounds};
}

}  // namespace regrelax
