#include "regrelax/simulation.hpp"

#include <algorithm>
#include <set>

#include "regrelax/road_ontology.hpp"

namespace regrelax {

std::pair<KnowledgeBase, std::map<Identifier, int>> update_phase(
    const KnowledgeBase& kb, const DecisionSet& decisions,
    const std::map<Identifier, int>& counters, const SimulationConfig& config) {
    const Identifier is_on = id("isOn");
    const Identifier has_motion = id("hasMotion");
    const Identifier has_emotion = id("hasEmotion");
    const Identifier stopped = id("Stopped");

    std::map<Identifier, Identifier> moved_to;
    std::map<Identifier, Identifier> new_motion;
    for (const auto& [vehicle, decision] : decisions.decisions) {
        if (decision.next_location) moved_to.emplace(vehicle, *decision.next_location);
        if (decision.next_motion) new_motion.emplace(vehicle, *decision.next_motion);
    }

    // Carry over the surviving facts. Emotions are held back until the
    // counters below have decided the rewrites.
    KnowledgeBase next = new_scene();
    std::map<Identifier, std::vector<Identifier>> emotions;
    for (const auto& fact : kb.facts()) {
        if (auto it = kb.provenance().find(fact);
            it != kb.provenance().end() && !it->second.empty()) {
            continue;  // derived; reconstructed by the next saturation
        }
        if (const auto* c = std::get_if<ClassAssertion>(&fact)) {
            if (c->cls == id("isClear")) continue;
            next = next.assert_fact(fact);
            continue;
        }
        const auto& p = std::get<PropertyAssertion>(fact);
        if (p.property == id("hasNextMotion") || p.property == id("isNextOn")) continue;
        if (p.property == is_on && moved_to.contains(p.subject)) continue;
        if (p.property == has_motion && new_motion.contains(p.subject)) continue;
        if (p.property == has_emotion) {
            emotions[p.subject].push_back(p.object);
            continue;
        }
        next = next.assert_fact(fact);
    }
    for (const auto& [vehicle, location] : moved_to) {
        next = next.assert_fact(property_fact(is_on, vehicle, location));
    }
    for (const auto& [vehicle, motion] : new_motion) {
        next = next.assert_fact(property_fact(has_motion, vehicle, motion));
    }

    // Closed world: a road connection is clear iff no car is on it.
    const std::set<Identifier> cars = next.members_of(id("Car"));
    std::set<Identifier> occupied;
    if (auto it = next.pairs_by_property().find(is_on);
        it != next.pairs_by_property().end()) {
        for (const auto& [subject, object] : it->second) {
            if (cars.contains(subject)) occupied.insert(object);
        }
    }
    for (const auto& connection : next.members_of(id("RoadConnection"))) {
        if (!occupied.contains(connection)) {
            next = next.assert_fact(class_fact(id("isClear"), connection));
        }
    }

    auto motion_of = [&](const Identifier& vehicle) -> std::optional<Identifier> {
        auto it = next.pairs_by_property().find(has_motion);
        if (it == next.pairs_by_property().end()) return std::nullopt;
        for (const auto& [subject, object] : it->second) {
            if (subject == vehicle) return object;
        }
        return std::nullopt;
    };
    auto waiting_behind_stopped = [&](const Identifier& vehicle) {
        auto it = next.pairs_by_property().find(id("isAfter"));
        if (it == next.pairs_by_property().end()) return false;
        for (const auto& [subject, object] : it->second) {
            if (subject == vehicle && motion_of(object) == stopped) return true;
        }
        return false;
    };

    std::map<Identifier, int> next_counters;
    std::set<Identifier> to_nervous;
    std::set<Identifier> to_relaxed;
    for (const auto& car : cars) {
        const auto motion = motion_of(car);
        const bool waiting = motion == stopped && waiting_behind_stopped(car);
        if (waiting) {
            auto it = counters.find(car);
            const int count = (it == counters.end() ? 0 : it->second) + 1;
            next_counters[car] = count;
            if (count >= config.nervous_after) to_nervous.insert(car);
        } else {
            next_counters[car] = 0;
            const auto& current = emotions[car];
            if (motion != stopped &&
                std::find(current.begin(), current.end(), id("Nervous")) !=
                    current.end()) {
                to_relaxed.insert(car);
            }
        }
    }

    for (const auto& [subject, objects] : emotions) {
        if (to_nervous.contains(subject) || to_relaxed.contains(subject)) continue;
        for (const auto& object : objects) {
            next = next.assert_fact(property_fact(has_emotion, subject, object));
        }
    }
    for (const auto& vehicle : to_nervous) {
        next = next.assert_fact(property_fact(has_emotion, vehicle, id("Nervous")));
    }
    for (const auto& vehicle : to_relaxed) {
        next = next.assert_fact(property_fact(has_emotion, vehicle, id("Relaxed")));
    }

    return {std::move(next), std::move(next_counters)};
}

std::vector<StepTrace> run_simulation(const KnowledgeBase& scene,
                                      const RuleSet& rules,
                                      const SimulationConfig& config) {
    {
        const ValidationReport report = validate_scene(scene);
        if (!report.ok()) {
            throw std::invalid_argument("scene is not valid: " +
                                        report.errors.front().message);
        }
    }

    std::vector<StepTrace> trace;
    KnowledgeBase kb = scene;
    std::map<Identifier, int> counters;
    for (const auto& car : kb.members_of(id("Car"))) counters.emplace(car, 0);

    for (int step = 0; step < config.max_steps; ++step) {
        DecisionSet decisions = [&] {
            try {
                return decide_next(kb, rules, {config.derived_fact_cap});
            } catch (ConflictError& e) {
                e.set_step_index(step);
                throw;
            } catch (ResourceLimitError& e) {
                e.set_step_index(step);
                throw;
            }
        }();
        auto [next, next_counters] = update_phase(kb, decisions, counters, config);
        if (!validate_scene(next).ok()) {
            throw std::logic_error("update phase produced an invalid scene at step " +
                                   std::to_string(step));
        }
        const bool fixed = next.facts() == kb.facts() && next_counters == counters;
        trace.push_back(
            {step, std::move(decisions), next_counters, next});
        kb = std::move(next);
        counters = std::move(next_counters);
        if (fixed) break;
    }
    return trace;
}

}  // namespace regrelax
