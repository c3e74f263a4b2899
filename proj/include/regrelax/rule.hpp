#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "regrelax/fact.hpp"
#include "regrelax/schema.hpp"

namespace regrelax {

/// `?a`, `?l1`, ... — the name keeps its `?` prefix.
struct Variable {
    std::string name;
    auto operator<=>(const Variable&) const = default;
};

struct IndividualRef {
    Identifier individual;
    auto operator<=>(const IndividualRef&) const = default;
};

using Term = std::variant<Variable, IndividualRef>;

inline Term var(std::string name) { return Variable{std::move(name)}; }
inline Term ref(Identifier individual) { return IndividualRef{std::move(individual)}; }

struct ClassAtom {
    Identifier cls;
    Term arg;
    auto operator<=>(const ClassAtom&) const = default;
};

struct PropertyAtom {
    Identifier property;
    Term subject;
    Term object;
    auto operator<=>(const PropertyAtom&) const = default;
};

/// Builtin: true when both terms denote distinct individuals.
struct DifferentFromAtom {
    Term left;
    Term right;
    auto operator<=>(const DifferentFromAtom&) const = default;
};

using Atom = std::variant<ClassAtom, PropertyAtom, DifferentFromAtom>;

std::string to_string(const Term& term);
std::string to_string(const Atom& atom);

/// A conjunctive rule `body -> head`. Heads hold class and property atoms
/// only; every head or builtin variable must occur in a positive body atom
/// (safety), so firing a rule never invents individuals.
struct Rule {
    Identifier name;
    std::vector<Atom> body;
    std::vector<Atom> head;

    friend bool operator==(const Rule&, const Rule&) = default;
};

class RuleError : public std::runtime_error {
public:
    enum class Code { UnsafeVariable, Undeclared, BuiltinInHead };

    RuleError(Code code, std::string subject, const std::string& message)
        : std::runtime_error(message), code_(code), subject_(std::move(subject)) {}

    Code code() const { return code_; }
    /// The offending variable (`?x`) or identifier, depending on the code.
    const std::string& subject() const { return subject_; }

private:
    Code code_;
    std::string subject_;
};

/// Throws RuleError unless `rule` satisfies the Rule invariants and every
/// class/property it mentions is declared in `schema`.
void check_safety(const Rule& rule, const Schema& schema);

/// Instantiates a class or property atom under a total binding. Returns
/// nullopt for builtins and for atoms with unbound variables.
std::optional<Fact> ground_atom(const Atom& atom, const Binding& binding);

}  // namespace regrelax
