#include <algorithm>
#include <random>

#include "doctest.h"

#include "regrelax/regulation.hpp"
#include "regrelax/road_ontology.hpp"
#include "support/fixtures.hpp"
#include "support/scene_gen.hpp"

namespace regrelax {
namespace {

using testsupport::load_scene_fixture;

TEST_CASE("the builtin ruleset is well formed") {
    const RuleSet rules = default_ruleset();
    CHECK(rules.version == "builtin-1");
    REQUIRE(rules.rules.size() == 6);
    for (int i = 0; i < 6; ++i) {
        CHECK(rules.rules[i].name == id("R" + std::to_string(i + 1)));
        CHECK_NOTHROW(check_safety(rules.rules[i], *traffic_schema()));
    }
    CHECK(rules.rules[0].head ==
          std::vector<Atom>{PropertyAtom{id("isNextOn"), var("?a"), var("?l2")}});
    CHECK(rules.rules[1].head ==
          std::vector<Atom>{PropertyAtom{id("isNextOn"), var("?a"), var("?s")}});
}

TEST_CASE("a nervous blocked vehicle relocates and moves") {
    const KnowledgeBase scene = load_scene_fixture("scenario1.scene");
    const DecisionSet result = decide_next(scene, default_ruleset());

    REQUIRE(result.decisions.contains(id("CyberCar1")));
    const Decision& car = result.decisions.at(id("CyberCar1"));
    CHECK(car.next_motion == id("Forward"));
    CHECK(car.next_location == id("AvenueDeLaLiberteDown"));

    REQUIRE(result.decisions.contains(id("UnloadingTruck1")));
    const Decision& truck = result.decisions.at(id("UnloadingTruck1"));
    CHECK(truck.next_motion == std::nullopt);
    CHECK(truck.next_location == std::nullopt);
}

TEST_CASE("a relaxed blocked vehicle waits in place") {
    const KnowledgeBase scene = load_scene_fixture("scenario1_relaxed.scene");
    const DecisionSet result = decide_next(scene, default_ruleset());

    const Decision& car = result.decisions.at(id("CyberCar1"));
    CHECK(car.next_motion == id("Stopped"));
    CHECK(car.next_location == std::nullopt);
}

TEST_CASE("contradictory emotions raise a conflict") {
    KnowledgeBase scene = load_scene_fixture("scenario1.scene");
    scene = scene.assert_fact(
        property_fact(id("hasEmotion"), id("CyberCar1"), id("Relaxed")));

    try {
        decide_next(scene, default_ruleset());
        FAIL("expected a conflict");
    } catch (const ConflictError& e) {
        CHECK(e.vehicle() == id("CyberCar1"));
        CHECK(e.facts() == std::vector<Fact>{
                  property_fact(id("hasNextMotion"), id("CyberCar1"), id("Forward")),
                  property_fact(id("hasNextMotion"), id("CyberCar1"), id("Stopped"))});
        CHECK_FALSE(e.step_index().has_value());
    }
}

TEST_CASE("decisions cover exactly the vehicles") {
    const KnowledgeBase scene = load_scene_fixture("scenario2.scene");
    const DecisionSet result = decide_next(scene, default_ruleset());
    REQUIRE(result.decisions.size() == 2);
    CHECK(result.decisions.contains(id("CyberCar2")));
    CHECK(result.decisions.contains(id("UnloadingTruck2")));
    CHECK(result.decisions.at(id("CyberCar2")).next_location ==
          id("SwRueDu22Septembre"));
}

TEST_CASE("decisions ignore rule order") {
    const KnowledgeBase scene = load_scene_fixture("scenario1.scene");
    const auto expected = decide_next(scene, default_ruleset()).decisions;

    std::mt19937 rng(5150);
    RuleSet rules = default_ruleset();
    for (int i = 0; i < 10; ++i) {
        std::ranges::shuffle(rules.rules, rng);
        CHECK(decide_next(scene, rules).decisions == expected);
    }
}

TEST_CASE("queued scenes never conflict") {
    std::mt19937 rng(424242);
    for (int i = 0; i < 100; ++i) {
        const KnowledgeBase scene = testsupport::queue_scene(rng);
        CHECK_NOTHROW(decide_next(scene, default_ruleset()));
    }
}

}  // namespace
}  // namespace regrelax
