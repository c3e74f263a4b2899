#include "doctest.h"

#include "regrelax/knowledge_base.hpp"
#include "regrelax/road_ontology.hpp"

namespace regrelax {
namespace {

Schema mini_schema() {
    return Schema::build({id("A"), id("B"), id("C")}, {{id("B"), id("A")}},
                         {id("p"), id("q"), id("r")}, {{id("p"), id("q")}});
}

TEST_CASE("identifier charset") {
    CHECK(Identifier::valid("CyberCar1"));
    CHECK(Identifier::valid("a_b_3"));
    CHECK_FALSE(Identifier::valid(""));
    CHECK_FALSE(Identifier::valid("has space"));
    CHECK_FALSE(Identifier::valid("dash-ed"));
    CHECK_FALSE(Identifier::valid("quest?"));
    CHECK_THROWS_AS(Identifier("bad id"), std::invalid_argument);
}

TEST_CASE("schema closures are reflexive and transitive") {
    const Schema& schema = *traffic_schema();
    const auto& supers = schema.superclasses_of(id("Sidewalk"));
    CHECK(supers.contains(id("Sidewalk")));
    CHECK(supers.contains(id("DrivableZone")));
    CHECK(supers.contains(id("ZoneOnTheSide")));
    CHECK(supers.contains(id("Infrastructure")));
    CHECK_FALSE(supers.contains(id("CrossableZone")));

    const auto& subs = schema.subclasses_of(id("RoadConnection"));
    CHECK(subs.contains(id("RoadConnection")));
    CHECK(subs.contains(id("Lane")));
    CHECK_FALSE(subs.contains(id("RoadNode")));
}

TEST_CASE("schema build rejects bad input") {
    CHECK_THROWS_AS(Schema::build({id("A")}, {{id("A"), id("A")}}, {}, {}),
                    SchemaError);
    CHECK_THROWS_AS(
        Schema::build({id("A"), id("B")}, {{id("A"), id("B")}, {id("B"), id("A")}},
                      {}, {}),
        SchemaError);
    CHECK_THROWS_AS(Schema::build({id("A")}, {{id("A"), id("Missing")}}, {}, {}),
                    SchemaError);
    CHECK_THROWS_AS(Schema::build({}, {}, {id("p")}, {{id("p"), id("missing")}}),
                    SchemaError);
    CHECK_THROWS_AS(
        Schema::build({}, {}, {id("p"), id("q"), id("r")},
                      {{id("p"), id("q")}, {id("p"), id("r")}}),
        SchemaError);

    const Schema self = Schema::build({}, {}, {id("p")}, {{id("p"), id("p")}});
    CHECK(self.inverse_of(id("p")) == id("p"));

    const Schema& traffic = *traffic_schema();
    CHECK_THROWS_AS(traffic.superclasses_of(id("NoSuchClass")), SchemaError);
}

TEST_CASE("holds applies subsumption, contains does not") {
    KnowledgeBase kb(traffic_schema());
    kb = kb.assert_fact(class_fact(id("Lane"), id("L")));
    CHECK(kb.holds(class_fact(id("Lane"), id("L"))));
    CHECK(kb.holds(class_fact(id("RoadConnection"), id("L"))));
    CHECK(kb.holds(class_fact(id("RoadNetwork"), id("L"))));
    CHECK(kb.holds(class_fact(id("Infrastructure"), id("L"))));
    CHECK_FALSE(kb.holds(class_fact(id("Sidewalk"), id("L"))));
    CHECK_FALSE(kb.holds(class_fact(id("RoadNode"), id("L"))));
    CHECK(kb.contains(class_fact(id("Lane"), id("L"))));
    CHECK_FALSE(kb.contains(class_fact(id("RoadConnection"), id("L"))));

    CHECK(kb.members_of(id("RoadConnection")).contains(id("L")));
    CHECK_FALSE(kb.members_by_class().contains(id("RoadConnection")));
}

TEST_CASE("assert_fact returns a new value") {
    const KnowledgeBase kb(traffic_schema());
    const KnowledgeBase kb2 = kb.assert_fact(class_fact(id("Car"), id("X")));
    CHECK(kb.facts().empty());
    CHECK(kb2.facts().size() == 1);
}

TEST_CASE("inverse closure materializes the mirror with provenance") {
    KnowledgeBase kb = new_scene();
    kb = kb.assert_fact(property_fact(id("isBefore"), id("A"), id("B")));

    const Fact mirror = property_fact(id("isAfter"), id("B"), id("A"));
    REQUIRE(kb.contains(mirror));
    CHECK(kb.holds(mirror));
    CHECK_FALSE(kb.is_asserted(mirror));
    REQUIRE(kb.provenance().contains(mirror));
    const auto& records = kb.provenance().at(mirror);
    REQUIRE(records.size() == 1);
    CHECK(records[0].kind == DerivationRecord::Kind::Inverse);
    CHECK(records[0].rule == id("isBefore"));
    CHECK(records[0].round == 0);
    CHECK(kb.derived_facts() == std::set<Fact>{mirror});

    SUBCASE("re-asserting the mirror clears its derivation record") {
        kb = kb.assert_fact(mirror);
        CHECK(kb.is_asserted(mirror));
        CHECK(kb.derived_facts().empty());
    }
}

TEST_CASE("asserting over a property with no inverse adds one fact") {
    KnowledgeBase kb = new_scene();
    kb = kb.assert_fact(property_fact(id("isOn"), id("A"), id("B")));
    CHECK(kb.facts().size() == 5 + 1);  // designated individuals + the fact
}

TEST_CASE("assert_fact validates against the schema") {
    const KnowledgeBase kb(traffic_schema());
    CHECK_THROWS_AS(kb.assert_fact(class_fact(id("NoSuchClass"), id("X"))),
                    FactError);
    CHECK_THROWS_AS(kb.assert_fact(property_fact(id("noSuchProp"), id("X"), id("Y"))),
                    FactError);
}

TEST_CASE("fact rendering") {
    CHECK(to_string(class_fact(id("Car"), id("CyberCar1"))) == "Car(CyberCar1)");
    CHECK(to_string(property_fact(id("isOn"), id("CyberCar1"),
                                  id("AvenueDeLaLiberteUp"))) ==
          "isOn(CyberCar1, AvenueDeLaLiberteUp)");
}

TEST_CASE("bulk constructor applies inverse closure") {
    std::set<Fact> facts{property_fact(id("isAfter"), id("A"), id("B"))};
    const KnowledgeBase kb(traffic_schema(), facts, {});
    CHECK(kb.contains(property_fact(id("isBefore"), id("B"), id("A"))));
    CHECK(kb.facts().size() == 2);
}

TEST_CASE("mini schema inverse lookup") {
    const Schema schema = mini_schema();
    CHECK(schema.inverse_of(id("p")) == id("q"));
    CHECK(schema.inverse_of(id("q")) == id("p"));
    CHECK_FALSE(schema.inverse_of(id("r")).has_value());
}

}  // namespace
}  // namespace regrelax
