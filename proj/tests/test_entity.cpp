#include "doctest.h"

#include <random>

#include "testutil.hpp"

using namespace corefud;

TEST_CASE("parse_entity_attr handles the basic unit shapes") {
  auto events = parse_entity_attr("(e1)");
  REQUIRE(events.size() == 1);
  CHECK(events[0] == single_event("e1"));

  events = parse_entity_attr("(e5-_-1");
  REQUIRE(events.size() == 1);
  CHECK(events[0] == open_event("e5", "_", 1));

  events = parse_entity_attr("e5)(e7-_-2-Appos:attrib");
  REQUIRE(events.size() == 2);
  CHECK(events[0] == close_event("e5"));
  CHECK(events[1] == open_event("e7", "_", 2, "Appos:attrib"));
}

TEST_CASE("parse_entity_attr keeps textual order across many units") {
  auto events = parse_entity_attr("e3)e1)(e2-person(e4)");
  REQUIRE(events.size() == 4);
  CHECK(events[0] == close_event("e3"));
  CHECK(events[1] == close_event("e1"));
  CHECK(events[2] == open_event("e2", "person"));
  CHECK(events[3] == single_event("e4"));
}

TEST_CASE("parse_entity_attr rejects grammar violations") {
  for (const char* bad : {
           "",            // empty where units are required
           "(x1)",        // bad cluster id
           "(e)",         // id without digits
           "e1",          // close without ')'
           "(e1-",        // empty etype
           "(e1--2",      // empty etype before head
           "(e1-_-x",     // head not digits
           "(e1-_-0",     // head must be positive
           "(e1-_-1-",    // empty other
           "garbage",     // not a unit at all
           "(e1)x",       // trailing junk
           "(e99999999999999999999)",  // id overflow
       }) {
    INFO("input: ", bad);
    try {
      parse_entity_attr(bad);
      FAIL("expected MalformedEntity");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MalformedEntity);
    }
  }
}

TEST_CASE("serialize_entity_attr inverts the parse examples") {
  CHECK(serialize_entity_attr({single_event("e1")}) == "(e1)");
  CHECK(serialize_entity_attr({close_event("e5"), open_event("e7", "_", 2)}) == "e5)(e7-_-2");
  CHECK(serialize_entity_attr({}) == "");
}

TEST_CASE("serialize_entity_attr enforces the canonical kind order") {
  try {
    serialize_entity_attr({open_event("e1"), close_event("e2")});
    FAIL("expected BadOrdering");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadOrdering);
  }
  try {
    serialize_entity_attr({single_event("e1"), open_event("e2")});
    FAIL("expected BadOrdering");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadOrdering);
  }
}

TEST_CASE("serialize_entity_attr rejects events it cannot encode") {
  EntityEvent bad_close = close_event("e1");
  bad_close.head = 2;
  EntityEvent dash_etype = open_event("e1", "a-b");
  EntityEvent other_no_head = open_event("e1", "_");
  other_no_head.other = "Appos:head";
  for (const EntityEvent& ev : {bad_close, dash_etype, other_no_head}) {
    try {
      serialize_entity_attr({ev});
      FAIL("expected MalformedEntity");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MalformedEntity);
    }
  }
}

TEST_CASE("entity attribute round-trips on generated event lists") {
  std::mt19937 rng(7);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int round = 0; round < 500; ++round) {
    std::vector<EntityEvent> events;
    int closes = uniform(0, 3), opens = uniform(0, 3), singles = uniform(0, 2);
    for (int i = 0; i < closes; ++i) events.push_back(close_event("e" + std::to_string(uniform(1, 30))));
    auto fielded = [&](EntityEventKind kind) {
      EntityEvent ev;
      ev.kind = kind;
      ev.cluster_id = "e" + std::to_string(uniform(1, 30));
      int shape = uniform(0, 3);
      if (shape >= 1) ev.etype = uniform(0, 1) ? "_" : "org";
      if (shape >= 2) ev.head = uniform(1, 9);
      if (shape >= 3) ev.other = uniform(0, 1) ? "Appos:head" : "Appos:attrib";
      return ev;
    };
    for (int i = 0; i < opens; ++i) events.push_back(fielded(EntityEventKind::open));
    for (int i = 0; i < singles; ++i) events.push_back(fielded(EntityEventKind::single));
    if (events.empty()) continue;
    std::string text = serialize_entity_attr(events);
    CHECK(parse_entity_attr(text) == events);
  }
}

TEST_CASE("parse_entity_attr survives random input") {
  std::mt19937 rng(12345);
  const std::string alphabet = "()e0123456789-_Apos:h ite";
  for (int round = 0; round < 5000; ++round) {
    int len = std::uniform_int_distribution<int>(0, 64)(rng);
    std::string input;
    for (int i = 0; i < len; ++i)
      input.push_back(alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)]);
    try {
      parse_entity_attr(input);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MalformedEntity);
    }
  }
}
