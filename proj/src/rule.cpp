#include "regrelax/rule.hpp"

#include <set>

namespace regrelax {

std::string to_string(const Term& term) {
    if (const auto* v = std::get_if<Variable>(&term)) return v->name;
    return std::get<IndividualRef>(term).individual.str();
}

std::string to_string(const Atom& atom) {
    if (const auto* c = std::get_if<ClassAtom>(&atom)) {
        return c->cls.str() + "(" + to_string(c->arg) + ")";
    }
    if (const auto* p = std::get_if<PropertyAtom>(&atom)) {
        return p->property.str() + "(" + to_string(p->subject) + ", " +
               to_string(p->object) + ")";
    }
    const auto& d = std::get<DifferentFromAtom>(atom);
    return "DifferentFrom(" + to_string(d.left) + ", " + to_string(d.right) + ")";
}

namespace {

void collect_vars(const Term& term, std::set<std::string>& out) {
    if (const auto* v = std::get_if<Variable>(&term)) out.insert(v->name);
}

/// Variables of the positive (class/property) part of an atom list.
std::set<std::string> positive_vars(const std::vector<Atom>& atoms) {
    std::set<std::string> vars;
    for (const auto& atom : atoms) {
        if (const auto* c = std::get_if<ClassAtom>(&atom)) {
            collect_vars(c->arg, vars);
        } else if (const auto* p = std::get_if<PropertyAtom>(&atom)) {
            collect_vars(p->subject, vars);
            collect_vars(p->object, vars);
        }
    }
    return vars;
}

void check_declared(const Atom& atom, const Schema& schema, const Identifier& rule) {
    if (const auto* c = std::get_if<ClassAtom>(&atom)) {
        if (!schema.has_class(c->cls)) {
            throw RuleError(RuleError::Code::Undeclared, c->cls.str(),
                            "rule " + rule.str() + ": unknown class " + c->cls.str());
        }
    } else if (const auto* p = std::get_if<PropertyAtom>(&atom)) {
        if (!schema.has_property(p->property)) {
            throw RuleError(RuleError::Code::Undeclared, p->property.str(),
                            "rule " + rule.str() + ": unknown property " +
                                p->property.str());
        }
    }
}

void require_bound(const Term& term, const std::set<std::string>& bound,
                   const Identifier& rule, const char* where) {
    if (const auto* v = std::get_if<Variable>(&term)) {
        if (!bound.contains(v->name)) {
            throw RuleError(RuleError::Code::UnsafeVariable, v->name,
                            "rule " + rule.str() + ": variable " + v->name + " in " +
                                where + " is not bound by a positive body atom");
        }
    }
}

}  // namespace

void check_safety(const Rule& rule, const Schema& schema) {
    for (const auto& atom : rule.body) check_declared(atom, schema, rule.name);
    for (const auto& atom : rule.head) {
        if (std::holds_alternative<DifferentFromAtom>(atom)) {
            throw RuleError(RuleError::Code::BuiltinInHead, rule.name.str(),
                            "rule " + rule.name.str() +
                                ": DifferentFrom may not appear in a head");
        }
        check_declared(atom, schema, rule.name);
    }

    const std::set<std::string> bound = positive_vars(rule.body);
    for (const auto& atom : rule.body) {
        if (const auto* d = std::get_if<DifferentFromAtom>(&atom)) {
            require_bound(d->left, bound, rule.name, "DifferentFrom");
            require_bound(d->right, bound, rule.name, "DifferentFrom");
        }
    }
    for (const auto& atom : rule.head) {
        if (const auto* c = std::get_if<ClassAtom>(&atom)) {
            require_bound(c->arg, bound, rule.name, "the head");
        } else if (const auto* p = std::get_if<PropertyAtom>(&atom)) {
            require_bound(p->subject, bound, rule.name, "the head");
            require_bound(p->object, bound, rule.name, "the head");
        }
    }
}

namespace {

std::optional<Identifier> resolve(const Term& term, const Binding& binding) {
    if (const auto* r = std::get_if<IndividualRef>(&term)) return r->individual;
    const auto& name = std::get<Variable>(term).name;
    auto it = binding.find(name);
    if (it == binding.end()) return std::nullopt;
    return it->second;
}

}  // namespace

std::optional<Fact> ground_atom(const Atom& atom, const Binding& binding) {
    if (const auto* c = std::get_if<ClassAtom>(&atom)) {
        auto arg = resolve(c->arg, binding);
        if (!arg) return std::nullopt;
        return class_fact(c->cls, *arg);
    }
    if (const auto* p = std::get_if<PropertyAtom>(&atom)) {
        auto subject = resolve(p->subject, binding);
        auto object = resolve(p->object, binding);
        if (!subject || !object) return std::nullopt;
        return property_fact(p->property, *subject, *object);
    }
    return std::nullopt;
}

}  // namespace regrelax
