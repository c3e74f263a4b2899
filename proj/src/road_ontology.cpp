#include "regrelax/road_ontology.hpp"

#include <map>

namespace regrelax {

const std::shared_ptr<const Schema>& traffic_schema() {
    static const std::shared_ptr<const Schema> schema = [] {
        std::vector<Identifier> classes;
        for (const char* name :
             {"Car", "DriverEmotion", "Motion", "CurrentMotion", "NextMotion",
              "TrafficRegulation", "Infrastructure", "RoadNetwork", "RoadNode",
              "RoadConnection", "Lane", "ZoneOnTheSide", "DrivableZone",
              "CrossableZone", "Sidewalk", "ZebraZone", "ContinuousLine",
              "DashedLine", "SignAtCrossing", "isClear"}) {
            classes.push_back(id(name));
        }
        std::vector<std::pair<Identifier, Identifier>> subclass_axioms;
        for (auto [sub, super] :
             std::initializer_list<std::pair<const char*, const char*>>{
                 {"CurrentMotion", "Motion"},
                 {"NextMotion", "Motion"},
                 {"RoadNode", "RoadNetwork"},
                 {"RoadConnection", "RoadNetwork"},
                 {"Lane", "RoadConnection"},
                 {"ZoneOnTheSide", "Infrastructure"},
                 {"RoadNetwork", "Infrastructure"},
                 {"SignAtCrossing", "Infrastructure"},
                 {"DrivableZone", "ZoneOnTheSide"},
                 {"CrossableZone", "ZoneOnTheSide"},
                 {"Sidewalk", "DrivableZone"},
                 {"ZebraZone", "DrivableZone"},
                 {"ContinuousLine", "CrossableZone"},
                 {"DashedLine", "CrossableZone"}}) {
            subclass_axioms.emplace_back(id(sub), id(super));
        }
        std::vector<Identifier> properties;
        for (const char* name : {"isOn", "isNextOn", "hasMotion", "hasNextMotion",
                                 "hasBesides", "isAfter", "isBefore", "isIllegal",
                                 "hasEmotion", "connects"}) {
            properties.push_back(id(name));
        }
        std::vector<std::pair<Identifier, Identifier>> inverse_axioms{
            {id("isAfter"), id("isBefore")}};
        return std::make_shared<const Schema>(
            Schema::build(classes, subclass_axioms, properties, inverse_axioms));
    }();
    return schema;
}

const DesignatedIndividuals& designated_individuals() {
    static const DesignatedIndividuals designated{
        {id("Forward"), id("Stopped"), id("Backward")},
        {id("Nervous"), id("Relaxed")}};
    return designated;
}

KnowledgeBase new_scene() {
    KnowledgeBase kb(traffic_schema());
    const auto& designated = designated_individuals();
    for (const auto& motion : designated.motions) {
        kb = kb.assert_fact(class_fact(id("Motion"), motion));
    }
    for (const auto& emotion : designated.emotions) {
        kb = kb.assert_fact(class_fact(id("DriverEmotion"), emotion));
    }
    return kb;
}

namespace {

void issue(std::vector<ValidationIssue>& out, const char* code,
           const Identifier& subject, std::string message) {
    out.push_back({code, subject, std::move(message)});
}

}  // namespace

ValidationReport validate_scene(const KnowledgeBase& kb) {
    ValidationReport report;
    const auto& designated = designated_individuals();

    auto is_a = [&](const Identifier& ind, const char* cls) {
        return kb.holds(class_fact(id(cls), ind));
    };

    std::map<Identifier, std::vector<Identifier>> car_locations;
    std::set<Identifier> cars_with_emotion;
    std::set<Identifier> lanes_with_besides;
    std::map<Identifier, std::size_t> endpoint_counts;

    const auto& pairs = kb.pairs_by_property();
    auto pairs_of = [&](const char* property)
        -> const std::vector<std::pair<Identifier, Identifier>>& {
        static const std::vector<std::pair<Identifier, Identifier>> none;
        auto it = pairs.find(id(property));
        return it == pairs.end() ? none : it->second;
    };

    for (const auto& [subject, object] : pairs_of("isOn")) {
        if (is_a(subject, "Car")) car_locations[subject].push_back(object);
    }
    for (const auto& [subject, object] : pairs_of("hasMotion")) {
        if (!designated.motions.contains(object)) {
            issue(report.errors, "BadMotion", subject,
                  "hasMotion object " + object.str() + " is not a Motion individual");
        }
    }
    for (const auto& [subject, object] : pairs_of("hasEmotion")) {
        if (!designated.emotions.contains(object)) {
            issue(report.errors, "BadEmotion", subject,
                  "hasEmotion object " + object.str() +
                      " is not a DriverEmotion individual");
        }
        cars_with_emotion.insert(subject);
    }
    for (const auto& [subject, object] : pairs_of("hasBesides")) {
        if (!is_a(subject, "RoadConnection")) {
            issue(report.errors, "BadBesides", subject,
                  "hasBesides subject " + subject.str() + " is not a RoadConnection");
        }
        lanes_with_besides.insert(subject);
        (void)object;
    }
    for (const auto& [subject, object] : pairs_of("isIllegal")) {
        if (!is_a(subject, "RoadConnection")) {
            issue(report.errors, "BadIllegal", subject,
                  "isIllegal subject " + subject.str() + " is not a RoadConnection");
        } else if (!is_a(object, "RoadConnection") && !is_a(object, "ZoneOnTheSide")) {
            issue(report.errors, "BadIllegal", subject,
                  "isIllegal object " + object.str() +
                      " is neither a RoadConnection nor a ZoneOnTheSide");
        }
    }
    for (const auto& [subject, object] : pairs_of("connects")) {
        if (!is_a(subject, "RoadConnection") || !is_a(object, "RoadNode")) {
            issue(report.errors, "BadConnects", subject,
                  "connects endpoints must be a RoadConnection and a RoadNode");
        }
        ++endpoint_counts[subject];
    }
    for (const auto& [connection, count] : endpoint_counts) {
        if (count > 2) {
            issue(report.errors, "TooManyEndpoints", connection,
                  connection.str() + " connects " + std::to_string(count) +
                      " nodes; at most 2 allowed");
        }
    }

    for (const auto& car : kb.members_of(id("Car"))) {
        auto it = car_locations.find(car);
        const std::size_t count = it == car_locations.end() ? 0 : it->second.size();
        if (count == 0) {
            issue(report.errors, "NoLocation", car,
                  "Car " + car.str() + " has no isOn fact");
        } else if (count > 1) {
            issue(report.errors, "MultipleLocation", car,
                  "Car " + car.str() + " has " + std::to_string(count) +
                      " isOn facts");
        }
        if (!cars_with_emotion.contains(car)) {
            issue(report.warnings, "NoEmotion", car,
                  "Car " + car.str() + " has no hasEmotion fact");
        }
    }
    for (const auto& lane : kb.members_of(id("Lane"))) {
        if (!lanes_with_besides.contains(lane)) {
            issue(report.warnings, "NoBesides", lane,
                  "Lane " + lane.str() + " has no hasBesides fact");
        }
    }
    return report;
}

}  // namespace regrelax
