#include "doctest.h"

#include "testutil.hpp"

using namespace corefud;
using testutil::make_doc;
using testutil::make_sentence;

namespace {

Mention span_only(int sentence, NodeId start, NodeId end) {
  Mention m;
  m.sentence = sentence;
  m.start = start;
  m.end = end;
  return m;
}

}  // namespace

TEST_CASE("node ids order lexicographically") {
  CHECK(NodeId{1, 0} < NodeId{1, 1});
  CHECK(NodeId{1, 1} < NodeId{2, 0});
  CHECK(NodeId{0, 1} < NodeId{1, 0});
  CHECK(NodeId{2, 3} < NodeId{2, 10});
  CHECK_FALSE(NodeId{0, 0}.valid());
  CHECK(NodeId{0, 1}.valid());
  CHECK(to_string(NodeId{3, 0}) == "3");
  CHECK(to_string(NodeId{3, 2}) == "3.2");
}

TEST_CASE("add_mention creates cluster and mention") {
  Document doc = make_doc({2});
  Document out = add_mention(doc, "e1", 0, NodeId{1, 0}, NodeId{2, 0});
  CHECK(doc.mentions.empty());  // input untouched
  CHECK(out.clusters.size() == 1);
  CHECK(out.mentions.size() == 1);
  const Mention& m = out.mentions.begin()->second;
  CHECK(m.cluster_id == "e1");
  CHECK(m.head == 2);  // defaults to the last node
  CHECK(out.clusters.at("e1").mention_ids == std::vector<std::string>{m.id});
}

TEST_CASE("add_mention rejects duplicates") {
  Document doc = make_doc({3});
  doc = add_mention(doc, "e1", 0, NodeId{1, 0}, NodeId{2, 0});
  CHECK_THROWS_AS(add_mention(doc, "e1", 0, NodeId{1, 0}, NodeId{2, 0}), Error);
  try {
    add_mention(doc, "e1", 0, NodeId{1, 0}, NodeId{2, 0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateMention);
  }
  // same span in another cluster is fine
  CHECK_NOTHROW(add_mention(doc, "e2", 0, NodeId{1, 0}, NodeId{2, 0}));
}

TEST_CASE("add_mention rejects spans outside the sentence") {
  Document doc = make_doc({4});
  try {
    add_mention(doc, "e1", 0, NodeId{3, 0}, NodeId{5, 0});
    FAIL("expected SpanOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SpanOutOfRange);
  }
  try {
    add_mention(doc, "e1", 1, NodeId{1, 0}, NodeId{1, 0});
    FAIL("expected SpanOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SpanOutOfRange);
  }
}

TEST_CASE("add_mention validates the head position") {
  Document doc = make_doc({4});
  try {
    add_mention(doc, "e1", 0, NodeId{1, 0}, NodeId{2, 0}, 3);
    FAIL("expected BadHead");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadHead);
  }
  CHECK_NOTHROW(add_mention(doc, "e1", 0, NodeId{1, 0}, NodeId{2, 0}, 1));
}

TEST_CASE("add_mention rejects malformed cluster ids") {
  Document doc = make_doc({2});
  for (const char* bad : {"x1", "e", "1", "e1x", ""}) {
    INFO("cluster id: ", bad);
    try {
      add_mention(doc, bad, 0, NodeId{1, 0}, NodeId{1, 0});
      FAIL("expected MalformedEntity");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MalformedEntity);
    }
  }
}

TEST_CASE("nesting_relation classifies the spec examples") {
  CHECK(nesting_relation(span_only(0, {1, 0}, {3, 0}), span_only(0, {2, 0}, {2, 0})) ==
        Nesting::b_inside_a);
  CHECK(nesting_relation(span_only(0, {2, 0}, {2, 0}), span_only(0, {1, 0}, {3, 0})) ==
        Nesting::a_inside_b);
  CHECK(nesting_relation(span_only(0, {1, 0}, {2, 0}), span_only(0, {2, 0}, {3, 0})) ==
        Nesting::crossing);
  CHECK(nesting_relation(span_only(0, {1, 0}, {2, 0}), span_only(0, {1, 0}, {2, 0})) ==
        Nesting::equal);
  CHECK(nesting_relation(span_only(0, {1, 0}, {2, 0}), span_only(1, {1, 0}, {2, 0})) ==
        Nesting::disjoint);
  CHECK(nesting_relation(span_only(0, {1, 0}, {2, 0}), span_only(0, {3, 0}, {4, 0})) ==
        Nesting::disjoint);
}

TEST_CASE("nesting_relation is symmetric up to label swap") {
  testutil::DocGen gen(41);
  for (int round = 0; round < 300; ++round) {
    Document doc = gen.random_doc(true);
    std::vector<const Mention*> mentions;
    for (const auto& [_, m] : doc.mentions) mentions.push_back(&m);
    for (const Mention* a : mentions)
      for (const Mention* b : mentions) {
        Nesting ab = nesting_relation(*a, *b);
        Nesting ba = nesting_relation(*b, *a);
        switch (ab) {
          case Nesting::a_inside_b: CHECK(ba == Nesting::b_inside_a); break;
          case Nesting::b_inside_a: CHECK(ba == Nesting::a_inside_b); break;
          default: CHECK(ab == ba); break;
        }
      }
  }
}

TEST_CASE("nesting_relation matches the node-set oracle on short sentences") {
  // All span pairs over sentences of length <= 8, with and without an empty
  // node in the middle.
  for (int len = 1; len <= 8; ++len) {
    for (int variant = 0; variant < 2; ++variant) {
      Document doc = make_doc({len});
      if (variant == 1) testutil::add_empty_node(doc.sentences[0], len / 2, 1);
      std::vector<NodeId> nodes;
      for (const Token& t : doc.sentences[0].tokens) nodes.push_back(t.id);
      for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i; j < nodes.size(); ++j)
          for (std::size_t p = 0; p < nodes.size(); ++p)
            for (std::size_t q = p; q < nodes.size(); ++q) {
              Mention a = span_only(0, nodes[i], nodes[j]);
              Mention b = span_only(0, nodes[p], nodes[q]);
              CHECK(nesting_relation(a, b) == testutil::oracle_nesting(doc, a, b));
            }
    }
  }
}

TEST_CASE("cluster_of returns the unique owning cluster") {
  Document doc = make_doc({4});
  doc = add_mention(doc, "e1", 0, NodeId{1, 0}, NodeId{1, 0});
  std::string m1 = doc.clusters.at("e1").mention_ids.front();
  CHECK(cluster_of(doc, m1).id == "e1");

  try {
    cluster_of(doc, "m99");
    FAIL("expected UnknownMention");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownMention);
  }

  // two mentions in the same cluster: both listed
  doc = add_mention(doc, "e1", 0, NodeId{2, 0}, NodeId{3, 0});
  const EntityCluster& cluster = cluster_of(doc, doc.clusters.at("e1").mention_ids.back());
  CHECK(cluster.id == "e1");
  CHECK(cluster.mention_ids.size() == 2);
}

TEST_CASE("documents built through add_mention satisfy the one-cluster rule") {
  testutil::DocGen gen(97);
  for (int round = 0; round < 200; ++round) {
    Document doc = gen.random_doc(true);
    // every mention id appears in exactly one cluster's list
    std::map<std::string, int> listed;
    for (const auto& [_, cluster] : doc.clusters)
      for (const std::string& mid : cluster.mention_ids) ++listed[mid];
    CHECK(listed.size() == doc.mentions.size());
    for (const auto& [mid, count] : listed) {
      CHECK(count == 1);
      CHECK(doc.mentions.count(mid) == 1);
    }
    // bidirectional consistency
    for (const auto& [mid, m] : doc.mentions) {
      const EntityCluster& cluster = doc.clusters.at(m.cluster_id);
      CHECK(std::count(cluster.mention_ids.begin(), cluster.mention_ids.end(), mid) == 1);
    }
  }
}

TEST_CASE("normalize_ids renumbers clusters by first appearance") {
  Document doc = make_doc({5, 5});
  doc = add_mention(doc, "e7", 1, NodeId{1, 0}, NodeId{2, 0});
  doc = add_mention(doc, "e3", 0, NodeId{2, 0}, NodeId{3, 0});
  doc = add_mention(doc, "e3", 1, NodeId{4, 0}, NodeId{4, 0});
  doc = add_mention(doc, "e9", 0, NodeId{1, 0}, NodeId{4, 0});
  normalize_ids(doc);
  // first mention in document order is e9's [1,4], then e3's [2,3], then e7's
  REQUIRE(doc.clusters.size() == 3);
  CHECK(doc.clusters.count("e1") == 1);
  CHECK(doc.clusters.count("e2") == 1);
  CHECK(doc.clusters.count("e3") == 1);
  const Mention& first = doc.mentions.at("m1");
  CHECK(first.cluster_id == "e1");
  CHECK(first.sentence == 0);
  CHECK(first.start == NodeId{1, 0});
  CHECK(first.end == NodeId{4, 0});
  for (const auto& [_, cluster] : doc.clusters) CHECK_FALSE(cluster.mention_ids.empty());
}
