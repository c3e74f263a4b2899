#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "regrelax/knowledge_base.hpp"
#include "regrelax/schema.hpp"

namespace regrelax {

/// The fixed traffic schema: road graph, zones, motions, emotions. Built
/// once; repeated calls return the same object.
const std::shared_ptr<const Schema>& traffic_schema();

/// Individuals pre-asserted in every scene.
struct DesignatedIndividuals {
    std::set<Identifier> motions;   // Forward, Stopped, Backward
    std::set<Identifier> emotions;  // Nervous, Relaxed
};

const DesignatedIndividuals& designated_individuals();

/// Empty scene over traffic_schema() holding only the designated
/// individuals' class assertions.
KnowledgeBase new_scene();

struct ValidationIssue {
    std::string code;
    Identifier subject;
    std::string message;

    friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

struct ValidationReport {
    std::vector<ValidationIssue> errors;
    std::vector<ValidationIssue> warnings;

    bool ok() const { return errors.empty(); }
};

/// Structural checks on a scene KB. Errors: a Car with zero or several isOn
/// objects; hasMotion/hasEmotion object not a designated individual;
/// hasBesides subject not a RoadConnection; isIllegal endpoints not
/// (RoadConnection, RoadConnection-or-ZoneOnTheSide); connects endpoints not
/// (RoadConnection, RoadNode); a connection with more than two endpoints.
/// Warnings: a Car without hasEmotion; a Lane without hasBesides.
ValidationReport validate_scene(const KnowledgeBase& kb);

}  // namespace regrelax
