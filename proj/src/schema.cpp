#include "regrelax/schema.hpp"

namespace regrelax {

namespace {

// Depth-first search over the sub -> super edges. Grey nodes on the stack
// mean a cycle; black nodes already carry their full closure.
void close_superclasses(const Identifier& c,
                        const std::map<Identifier, std::set<Identifier>>& direct_supers,
                        std::map<Identifier, std::set<Identifier>>& closure,
                        std::set<Identifier>& on_stack) {
    if (closure.contains(c)) return;
    if (!on_stack.insert(c).second)
        throw SchemaError(SchemaError::Code::Cycle,
                          "subclass cycle through '" + c.str() + "'");
    std::set<Identifier> supers{c};
    if (auto it = direct_supers.find(c); it != direct_supers.end()) {
        for (const Identifier& parent : it->second) {
            close_superclasses(parent, direct_supers, closure, on_stack);
            const auto& parent_closure = closure.at(parent);
            supers.insert(parent_closure.begin(), parent_closure.end());
        }
    }
    on_stack.erase(c);
    closure.emplace(c, std::move(supers));
}

}  // namespace

Schema Schema::build(const std::vector<Identifier>& classes,
                     const std::vector<std::pair<Identifier, Identifier>>& subclass_axioms,
                     const std::vector<Identifier>& properties,
                     const std::vector<std::pair<Identifier, Identifier>>& inverse_axioms) {
    Schema s;
    s.classes_.insert(classes.begin(), classes.end());
    s.properties_.insert(properties.begin(), properties.end());

    std::map<Identifier, std::set<Identifier>> direct_supers;
    for (const auto& [sub, super] : subclass_axioms) {
        if (!s.classes_.contains(sub) || !s.classes_.contains(super))
            throw SchemaError(SchemaError::Code::Undeclared,
                              "subclass axiom (" + sub.str() + ", " + super.str() +
                                  ") references an undeclared class");
        if (sub == super)
            throw SchemaError(SchemaError::Code::Cycle,
                              "subclass cycle through '" + sub.str() + "'");
        s.subclass_axioms_.emplace(sub, super);
        direct_supers[sub].insert(super);
    }

    std::set<Identifier> on_stack;
    for (const Identifier& c : s.classes_)
        close_superclasses(c, direct_supers, s.superclasses_, on_stack);
    for (const auto& [c, supers] : s.superclasses_)
        for (const Identifier& super : supers) s.subclasses_[super].insert(c);

    for (const auto& [p, q] : inverse_axioms) {
        if (!s.properties_.contains(p) || !s.properties_.contains(q))
            throw SchemaError(SchemaError::Code::Undeclared,
                              "inverse axiom (" + p.str() + ", " + q.str() +
                                  ") references an undeclared property");
        if (s.inverse_.contains(p) || (p != q && s.inverse_.contains(q)))
            throw SchemaError(SchemaError::Code::DoubleInverse,
                              "property '" + (s.inverse_.contains(p) ? p : q).str() +
                                  "' already participates in an inverse axiom");
        s.inverse_.emplace(p, q);
        s.inverse_.emplace(q, p);
        s.inverse_axioms_.emplace(std::min(p, q), std::max(p, q));
    }
    return s;
}

const std::set<Identifier>& Schema::superclasses_of(const Identifier& c) const {
    auto it = superclasses_.find(c);
    if (it == superclasses_.end())
        throw SchemaError(SchemaError::Code::UnknownClass,
                          "unknown class '" + c.str() + "'");
    return it->second;
}

const std::set<Identifier>& Schema::subclasses_of(const Identifier& c) const {
    if (!classes_.contains(c))
        throw SchemaError(SchemaError::Code::UnknownClass,
                          "unknown class '" + c.str() + "'");
    static const std::set<Identifier> empty;
    auto it = subclasses_.find(c);
    return it == subclasses_.end() ? empty : it->second;
}

std::optional<Identifier> Schema::inverse_of(const Identifier& p) const {
    auto it = inverse_.find(p);
    if (it == inverse_.end()) return std::nullopt;
    return it->second;
}

}  // namespace regrelax
