#include "regrelax/regulation.hpp"

#include <set>

namespace regrelax {

namespace {

Atom cls(const char* name, Term arg) { return ClassAtom{id(name), std::move(arg)}; }

Atom prop(const char* name, Term subject, Term object) {
    return PropertyAtom{id(name), std::move(subject), std::move(object)};
}

Atom different(Term left, Term right) {
    return DifferentFromAtom{std::move(left), std::move(right)};
}

}  // namespace

RuleSet default_ruleset() {
    RuleSet set;
    set.version = "builtin-1";

    // R1: nervous and blocked on a lane, a clear lane lies across a crossable
    // delimiter; take it even though the crossing is illegal.
    set.rules.push_back(Rule{
        id("R1"),
        {cls("CrossableZone", var("?s")), cls("Car", var("?a")),
         cls("Car", var("?b")), cls("Lane", var("?l1")), cls("Lane", var("?l2")),
         prop("hasEmotion", var("?a"), ref(id("Nervous"))),
         prop("isAfter", var("?a"), var("?b")),
         prop("hasBesides", var("?l1"), var("?s")),
         prop("hasBesides", var("?l2"), var("?s")),
         prop("hasMotion", var("?a"), ref(id("Stopped"))),
         prop("isOn", var("?a"), var("?l1")), prop("isOn", var("?b"), var("?l1")),
         different(var("?l1"), var("?l2")),
         prop("isIllegal", var("?l1"), var("?l2")), cls("isClear", var("?l2"))},
        {prop("isNextOn", var("?a"), var("?l2"))}});

    // R2: nervous and blocked, a drivable zone (sidewalk, zebra) borders the
    // lane; move onto it even though that is illegal.
    set.rules.push_back(Rule{
        id("R2"),
        {cls("DrivableZone", var("?s")), cls("Car", var("?a")),
         cls("Car", var("?b")), cls("Lane", var("?l")),
         prop("hasEmotion", var("?a"), ref(id("Nervous"))),
         prop("isAfter", var("?a"), var("?b")),
         prop("hasBesides", var("?l"), var("?s")),
         prop("hasMotion", var("?a"), ref(id("Stopped"))),
         prop("isOn", var("?a"), var("?l")), prop("isOn", var("?b"), var("?l")),
         prop("isIllegal", var("?l"), var("?s"))},
        {prop("isNextOn", var("?a"), var("?s"))}});

    // R3: relaxed behind a stopped vehicle on the same lane; keep waiting.
    set.rules.push_back(Rule{
        id("R3"),
        {cls("Car", var("?a")), cls("Car", var("?b")),
         prop("hasEmotion", var("?a"), ref(id("Relaxed"))),
         prop("isAfter", var("?a"), var("?b")),
         prop("hasMotion", var("?a"), ref(id("Stopped"))),
         prop("hasMotion", var("?b"), ref(id("Stopped"))),
         prop("isOn", var("?a"), var("?l")), prop("isOn", var("?b"), var("?l")),
         cls("Lane", var("?l"))},
        {prop("hasNextMotion", var("?a"), ref(id("Stopped")))}});

    // R4: a vehicle right behind a stopped vehicle is itself stopped.
    set.rules.push_back(Rule{
        id("R4"),
        {cls("Car", var("?a")), cls("Car", var("?b")),
         prop("hasMotion", var("?a"), ref(id("Stopped"))),
         prop("isBefore", var("?a"), var("?b"))},
        {prop("hasMotion", var("?b"), ref(id("Stopped")))}});

    // R5: once the vehicle ahead will move forward, so will its follower.
    set.rules.push_back(Rule{
        id("R5"),
        {cls("Car", var("?a")), cls("Car", var("?b")),
         prop("hasNextMotion", var("?a"), ref(id("Forward"))),
         prop("isBefore", var("?a"), var("?b"))},
        {prop("hasNextMotion", var("?b"), ref(id("Forward")))}});

    // R6: a vehicle with a relocation target moves forward onto it.
    set.rules.push_back(Rule{
        id("R6"),
        {cls("Car", var("?a")), prop("isNextOn", var("?a"), var("?z"))},
        {prop("hasNextMotion", var("?a"), ref(id("Forward")))}});

    return set;
}

DecisionSet decide_next(const KnowledgeBase& kb, const RuleSet& rules,
                        const SaturationOptions& options) {
    SaturationResult result = saturate(kb, rules.rules, options);

    std::map<Identifier, std::set<Identifier>> next_motions;
    std::map<Identifier, std::set<Identifier>> next_locations;
    const auto& pairs = result.kb.pairs_by_property();
    if (auto it = pairs.find(id("hasNextMotion")); it != pairs.end()) {
        for (const auto& [subject, object] : it->second) {
            next_motions[subject].insert(object);
        }
    }
    if (auto it = pairs.find(id("isNextOn")); it != pairs.end()) {
        for (const auto& [subject, object] : it->second) {
            next_locations[subject].insert(object);
        }
    }

    auto conflict = [](const Identifier& vehicle, const char* property,
                       const std::set<Identifier>& objects) {
        std::vector<Fact> facts;
        std::string values;
        for (const auto& object : objects) {
            facts.push_back(property_fact(id(property), vehicle, object));
            if (!values.empty()) values += ", ";
            values += object.str();
        }
        return ConflictError(vehicle, std::move(facts),
                             "vehicle " + vehicle.str() + " has conflicting " +
                                 property + " values: " + values);
    };

    std::map<Identifier, Decision> decisions;
    for (const auto& car : kb.members_of(id("Car"))) {
        Decision decision{car, std::nullopt, std::nullopt};
        if (auto it = next_motions.find(car); it != next_motions.end()) {
            if (it->second.size() > 1) throw conflict(car, "hasNextMotion", it->second);
            decision.next_motion = *it->second.begin();
        }
        if (auto it = next_locations.find(car); it != next_locations.end()) {
            if (it->second.size() > 1) throw conflict(car, "isNextOn", it->second);
            decision.next_location = *it->second.begin();
        }
        decisions.emplace(car, std::move(decision));
    }
    return DecisionSet{std::move(decisions), std::move(result)};
}

}  // namespace regrelax
