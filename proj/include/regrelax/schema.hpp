#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "regrelax/identifier.hpp"

namespace regrelax {

class SchemaError : public std::runtime_error {
public:
    enum class Code { Cycle, Undeclared, DoubleInverse, UnknownClass };

    SchemaError(Code code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Code code() const { return code_; }

private:
    Code code_;
};

/// The terminological half of a knowledge base: declared classes and
/// properties, subclass axioms (whose transitive closure must be acyclic)
/// and inverse-property axioms (at most one per property).
///
/// Subclass closures are computed once at build time; lookups are O(log n).
class Schema {
public:
    static Schema build(const std::vector<Identifier>& classes,
                        const std::vector<std::pair<Identifier, Identifier>>& subclass_axioms,
                        const std::vector<Identifier>& properties,
                        const std::vector<std::pair<Identifier, Identifier>>& inverse_axioms);

    bool has_class(const Identifier& c) const { return classes_.contains(c); }
    bool has_property(const Identifier& p) const { return properties_.contains(p); }

    const std::set<Identifier>& classes() const { return classes_; }
    const std::set<Identifier>& properties() const { return properties_; }
    const std::set<std::pair<Identifier, Identifier>>& subclass_axioms() const {
        return subclass_axioms_;
    }
    const std::set<std::pair<Identifier, Identifier>>& inverse_axioms() const {
        return inverse_axioms_;
    }

    /// Reflexive-transitive superclass closure of `c`.
    const std::set<Identifier>& superclasses_of(const Identifier& c) const;

    /// Reflexive-transitive subclass closure of `c`.
    const std::set<Identifier>& subclasses_of(const Identifier& c) const;

    /// The declared inverse of `p`, if any.
    std::optional<Identifier> inverse_of(const Identifier& p) const;

    friend bool operator==(const Schema&, const Schema&) = default;

private:
    Schema() = default;

    std::set<Identifier> classes_;
    std::set<Identifier> properties_;
    std::set<std::pair<Identifier, Identifier>> subclass_axioms_;
    std::set<std::pair<Identifier, Identifier>> inverse_axioms_;
    std::map<Identifier, std::set<Identifier>> superclasses_;
    std::map<Identifier, std::set<Identifier>> subclasses_;
    std::map<Identifier, Identifier> inverse_;
};

}  // namespace regrelax
