#pragma once

#include <map>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "regrelax/fact.hpp"
#include "regrelax/schema.hpp"

namespace regrelax {

using ProvenanceMap = std::map<Fact, std::vector<DerivationRecord>>;

/// One symbolic situation: a schema plus a set of asserted and derived
/// facts. Values are immutable once constructed; mutating operations
/// return a new value, so any number of readers may share one safely.
///
/// Two closures are maintained eagerly:
///   - inverse closure: `p(a, b)` is stored iff its declared mirror
///     `q(b, a)` is stored (the mirror carries an `Inverse` record);
///   - nothing else. Class subsumption is resolved at query time from
///     the as-asserted (most specific) class assertions.
class KnowledgeBase {
public:
    explicit KnowledgeBase(std::shared_ptr<const Schema> schema);

    /// Bulk constructor; validates every fact, applies inverse closure,
    /// and keeps the given provenance (extended with records for any
    /// mirrors the closure adds).
    KnowledgeBase(std::shared_ptr<const Schema> schema, std::set<Fact> facts,
                  ProvenanceMap provenance);

    const Schema& schema() const { return *schema_; }
    const std::shared_ptr<const Schema>& schema_ptr() const { return schema_; }
    const std::set<Fact>& facts() const { return facts_; }
    const ProvenanceMap& provenance() const { return provenance_; }

    /// Returns a knowledge base additionally holding `fact` (and its
    /// inverse mirror where the schema declares one). Asserting a fact
    /// that is already present clears any derivation records it carried:
    /// an explicit assertion outranks a derivation.
    KnowledgeBase assert_fact(const Fact& fact) const;

    /// Property assertions hold iff literally stored; a class assertion
    /// `C(i)` holds iff some stored `D(i)` has `C` among D's superclasses.
    bool holds(const Fact& fact) const;

    bool contains(const Fact& fact) const { return facts_.contains(fact); }

    /// Present with no derivation record, i.e. explicitly asserted.
    bool is_asserted(const Fact& fact) const;

    /// Facts that entered through a rule or an inverse axiom rather than
    /// an explicit assertion.
    std::set<Fact> derived_facts() const;

    /// Every identifier occurring in an individual position.
    const std::set<Identifier>& individuals() const { return individuals_; }

    /// As-asserted members per class (no subsumption applied).
    const std::map<Identifier, std::set<Identifier>>& members_by_class() const {
        return members_by_class_;
    }

    /// (subject, object) pairs per property, in fact order.
    const std::map<Identifier, std::vector<std::pair<Identifier, Identifier>>>&
    pairs_by_property() const {
        return pairs_by_property_;
    }

    /// Members of `cls` including everything asserted into a subclass.
    std::set<Identifier> members_of(const Identifier& cls) const;

private:
    void validate(const Fact& fact) const;
    void insert(const Fact& fact);

    std::shared_ptr<const Schema> schema_;
    std::set<Fact> facts_;
    ProvenanceMap provenance_;
    std::set<Identifier> individuals_;
    std::map<Identifier, std::set<Identifier>> members_by_class_;
    std::map<Identifier, std::vector<std::pair<Identifier, Identifier>>> pairs_by_property_;
};

/// Mirror of a property assertion under the schema's inverse axiom, if
/// the property has one.
std::optional<Fact> inverse_mirror(const Schema& schema, const Fact& fact);

}  // namespace regrelax
