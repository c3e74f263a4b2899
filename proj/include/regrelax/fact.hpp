#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "regrelax/identifier.hpp"

namespace regrelax {

/// `C(i)`: individual `i` is asserted into class `C`.
struct ClassAssertion {
    Identifier cls;
    Identifier individual;
    auto operator<=>(const ClassAssertion&) const = default;
};

/// `p(s, o)`: subject `s` is related to object `o` by property `p`.
struct PropertyAssertion {
    Identifier property;
    Identifier subject;
    Identifier object;
    auto operator<=>(const PropertyAssertion&) const = default;
};

using Fact = std::variant<ClassAssertion, PropertyAssertion>;

inline Fact class_fact(Identifier cls, Identifier individual) {
    return ClassAssertion{std::move(cls), std::move(individual)};
}

inline Fact property_fact(Identifier property, Identifier subject, Identifier object) {
    return PropertyAssertion{std::move(property), std::move(subject), std::move(object)};
}

/// Renders `Car(CyberCar1)` / `isOn(CyberCar1, AvenueDeLaLiberteUp)`.
std::string to_string(const Fact& fact);

/// Variable-to-individual assignment produced by matching a rule body.
/// Keys carry the `?` prefix.
using Binding = std::map<std::string, Identifier>;

/// Records how a fact entered the knowledge base, for `explain`.
/// `Rule` records name the rule and the binding its body matched under;
/// `Inverse` records mark the mirror of an assertion whose property has a
/// declared inverse (`rule` then holds the source property name).
struct DerivationRecord {
    enum class Kind { Rule, Inverse };

    Kind kind = Kind::Rule;
    Identifier rule;
    Binding binding;
    int round = 0;

    friend bool operator==(const DerivationRecord&, const DerivationRecord&) = default;
};

class FactError : public std::runtime_error {
public:
    enum class Code { UnknownClass, UnknownProperty };

    FactError(Code code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Code code() const { return code_; }

private:
    Code code_;
};

}  // namespace regrelax
