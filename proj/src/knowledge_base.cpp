#include "regrelax/knowledge_base.hpp"

namespace regrelax {

std::string to_string(const Fact& fact) {
    if (const auto* ca = std::get_if<ClassAssertion>(&fact))
        return ca->cls.str() + "(" + ca->individual.str() + ")";
    const auto& pa = std::get<PropertyAssertion>(fact);
    return pa.property.str() + "(" + pa.subject.str() + ", " + pa.object.str() + ")";
}

std::optional<Fact> inverse_mirror(const Schema& schema, const Fact& fact) {
    const auto* pa = std::get_if<PropertyAssertion>(&fact);
    if (!pa) return std::nullopt;
    auto inv = schema.inverse_of(pa->property);
    if (!inv) return std::nullopt;
    return property_fact(*inv, pa->object, pa->subject);
}

KnowledgeBase::KnowledgeBase(std::shared_ptr<const Schema> schema)
    : schema_(std::move(schema)) {}

KnowledgeBase::KnowledgeBase(std::shared_ptr<const Schema> schema, std::set<Fact> facts,
                             ProvenanceMap provenance)
    : schema_(std::move(schema)), provenance_(std::move(provenance)) {
    for (const Fact& f : facts) {
        validate(f);
        insert(f);
    }
    // Close under inverse axioms; mirrors added here are derived facts.
    for (const Fact& f : facts) {
        if (auto mirror = inverse_mirror(*schema_, f); mirror && !facts_.contains(*mirror)) {
            insert(*mirror);
            const auto& src = std::get<PropertyAssertion>(f);
            provenance_[*mirror].push_back(
                DerivationRecord{DerivationRecord::Kind::Inverse, src.property, {}, 0});
        }
    }
}

void KnowledgeBase::validate(const Fact& fact) const {
    if (const auto* ca = std::get_if<ClassAssertion>(&fact)) {
        if (!schema_->has_class(ca->cls))
            throw FactError(FactError::Code::UnknownClass,
                            "unknown class '" + ca->cls.str() + "'");
    } else {
        const auto& pa = std::get<PropertyAssertion>(fact);
        if (!schema_->has_property(pa.property))
            throw FactError(FactError::Code::UnknownProperty,
                            "unknown property '" + pa.property.str() + "'");
    }
}

void KnowledgeBase::insert(const Fact& fact) {
    if (!facts_.insert(fact).second) return;
    if (const auto* ca = std::get_if<ClassAssertion>(&fact)) {
        members_by_class_[ca->cls].insert(ca->individual);
        individuals_.insert(ca->individual);
    } else {
        const auto& pa = std::get<PropertyAssertion>(fact);
        pairs_by_property_[pa.property].emplace_back(pa.subject, pa.object);
        individuals_.insert(pa.subject);
        individuals_.insert(pa.object);
    }
}

KnowledgeBase KnowledgeBase::assert_fact(const Fact& fact) const {
    validate(fact);
    KnowledgeBase next(*this);
    if (next.facts_.contains(fact)) {
        next.provenance_.erase(fact);
        return next;
    }
    next.insert(fact);
    if (auto mirror = inverse_mirror(*schema_, fact); mirror && !next.facts_.contains(*mirror)) {
        next.insert(*mirror);
        const auto& src = std::get<PropertyAssertion>(fact);
        next.provenance_[*mirror].push_back(
            DerivationRecord{DerivationRecord::Kind::Inverse, src.property, {}, 0});
    }
    return next;
}

bool KnowledgeBase::holds(const Fact& fact) const {
    validate(fact);
    if (const auto* ca = std::get_if<ClassAssertion>(&fact)) {
        for (const Identifier& sub : schema_->subclasses_of(ca->cls)) {
            auto it = members_by_class_.find(sub);
            if (it != members_by_class_.end() && it->second.contains(ca->individual))
                return true;
        }
        return false;
    }
    return facts_.contains(fact);
}

bool KnowledgeBase::is_asserted(const Fact& fact) const {
    if (!facts_.contains(fact)) return false;
    auto it = provenance_.find(fact);
    return it == provenance_.end() || it->second.empty();
}

std::set<Fact> KnowledgeBase::derived_facts() const {
    std::set<Fact> out;
    for (const Fact& f : facts_)
        if (!is_asserted(f)) out.insert(f);
    return out;
}

std::set<Identifier> KnowledgeBase::members_of(const Identifier& cls) const {
    std::set<Identifier> out;
    for (const Identifier& sub : schema_->subclasses_of(cls)) {
        auto it = members_by_class_.find(sub);
        if (it != members_by_class_.end())
            out.insert(it->second.begin(), it->second.end());
    }
    return out;
}

}  // namespace regrelax
