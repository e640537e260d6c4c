#include <gtest/gtest.h>

#include <map>
#include <set>

#include "tqa/builtins.hpp"
#include "tqa/parse.hpp"
#include "tqa/quiver.hpp"

using namespace tqa;

namespace {

std::vector<std::string> labels(const Quiver& q, const std::vector<Path>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(format_path(q, p));
  return out;
}

const char* kThreeVertex = R"(# three vertices, one loop
vertices: v1 v2 v3
arrow a: v1 -> v2
arrow x: v2 -> v2
arrow b: v2 -> v3
truncation: 3
)";

}  // namespace

TEST(Parse, ThreeVertexFile) {
  auto spec = parse_quiver(kThreeVertex);
  EXPECT_EQ(spec.quiver.num_vertices(), 3);
  EXPECT_EQ(spec.quiver.num_arrows(), 3);
  ASSERT_TRUE(spec.N.has_value());
  EXPECT_EQ(*spec.N, 3);
  EXPECT_EQ(spec.quiver, builtin::example83());
}

TEST(Parse, SingleVertexNoArrows) {
  auto spec = parse_quiver("vertices: p\n");
  EXPECT_EQ(spec.quiver.num_vertices(), 1);
  EXPECT_EQ(spec.quiver.num_arrows(), 0);
  EXPECT_FALSE(spec.N.has_value());
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_quiver("vertices: v1\narrow a: v1 -> v9\n"), ValidationError);
  EXPECT_THROW(parse_quiver("vertices: v1 v1\n"), ValidationError);
  EXPECT_THROW(parse_quiver("vertices: v1\narrow a: v1 -> v1\narrow a: v1 -> v1\n"), ValidationError);
  EXPECT_THROW(parse_quiver("vertices: v1\ntruncation: 1\n"), ValidationError);
  try {
    parse_quiver("vertices: v1\narrow a v1 -> v1\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 9u);
  }
  try {
    parse_quiver("vertices: v1\n  frob: 3\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
  EXPECT_THROW(parse_quiver("vertices: v1 $\n"), ParseError);
}

TEST(Parse, JsonForm) {
  auto spec = parse_quiver(R"({"vertices":["v1","v2","v3"],
    "arrows":[{"label":"a","source":"v1","target":"v2"},{"label":"x","source":"v2","target":"v2"},
              {"label":"b","source":"v2","target":"v3"}],"N":4})");
  EXPECT_EQ(spec.quiver, builtin::example83());
  EXPECT_EQ(*spec.N, 4);
  EXPECT_THROW(parse_quiver(R"({"vertices":["v1"],"arrows":[{"label":"a","source":"v1","target":"zz"}]})"),
               ValidationError);
  EXPECT_THROW(parse_quiver("{not json"), ValidationError);
}

TEST(Paths, ThreeVertexLengthTwo) {
  auto q = builtin::example83();
  EXPECT_EQ(labels(q, paths(q, 2)), (std::vector<std::string>{"ax", "ab", "x^2", "xb"}));
}

TEST(Paths, LengthZeroIsVertices) {
  auto q = builtin::example83();
  EXPECT_EQ(labels(q, paths(q, 0)), (std::vector<std::string>{"v1", "v2", "v3"}));
}

TEST(Paths, LoopLengthFive) {
  auto q = builtin::loop();
  auto ps = paths(q, 5);
  ASSERT_EQ(ps.size(), 1u);
  EXPECT_EQ(format_path(q, ps[0]), "x^5");
}

TEST(Paths, SortedAndDuplicateFree) {
  auto q = builtin::tensor(2);
  for (int n = 0; n <= 6; ++n) {
    auto ps = paths(q, n);
    EXPECT_EQ(ps.size(), n == 0 ? 1u : (1u << n));
    for (std::size_t i = 1; i < ps.size(); ++i) EXPECT_LT(ps[i - 1], ps[i]);
  }
}

TEST(Paths, CapIsAnError) { EXPECT_THROW(paths(builtin::tensor(2), 12, 100), ResourceLimit); }

TEST(Concat, Basics) {
  auto q = builtin::example83();
  auto a = parse_path(q, "a"), x = parse_path(q, "x"), b = parse_path(q, "b"), v2 = parse_path(q, "v2");
  EXPECT_EQ(format_path(q, *concat(a, x)), "ax");
  EXPECT_FALSE(concat(b, a).has_value());
  EXPECT_EQ(*concat(v2, x), x);
  EXPECT_EQ(*concat(x, v2), x);
}

TEST(Concat, AssociativeAndGraded) {
  auto q = builtin::example83();
  std::vector<Path> all;
  for (int n = 0; n <= 3; ++n)
    for (auto& p : paths(q, n)) all.push_back(p);
  for (const auto& p : all)
    for (const auto& r : all) {
      auto pr = concat(p, r);
      if (pr) EXPECT_EQ(pr->length(), p.length() + r.length());
      for (const auto& s : all) {
        std::optional<Path> left, right;
        if (pr) left = concat(*pr, s);
        if (auto rs = concat(r, s)) right = concat(p, *rs);
        EXPECT_EQ(left, right);
      }
    }
}

TEST(ParsePath, PowersAndVertices) {
  auto q = builtin::example83();
  EXPECT_EQ(parse_path(q, "ax^3b").length(), 5);
  EXPECT_EQ(format_path(q, parse_path(q, "axxxb")), "ax^3b");
  EXPECT_TRUE(parse_path(q, "v2").is_vertex());
  EXPECT_THROW(parse_path(q, "ba"), ValidationError);
  EXPECT_THROW(parse_path(q, "y"), ValidationError);
  auto t = builtin::tensor(2);
  EXPECT_EQ(format_path(t, parse_path(t, "x1x2^2x1")), "x1x2^2x1");
}

TEST(ParallelPairs, ThreeVertexRowTwo) {
  auto q = builtin::example83();
  auto pp = parallel_pairs(q, 2, 3);
  std::set<std::pair<std::string, std::string>> got;
  for (const auto& p : pp) got.insert({format_path(q, p.first), format_path(q, p.second)});
  std::set<std::pair<std::string, std::string>> want{{"ax", "ax^2"}, {"x^2", "x^3"}, {"xb", "x^2b"}, {"ab", "axb"}};
  EXPECT_EQ(got, want);
  for (std::size_t i = 1; i < pp.size(); ++i) EXPECT_LT(pp[i - 1], pp[i]);
}

TEST(ParallelPairs, VertexPairs) {
  auto q = builtin::example83();
  auto pp = parallel_pairs(q, 0, 0);
  ASSERT_EQ(pp.size(), 3u);
  for (int v = 0; v < 3; ++v) EXPECT_EQ(pp[v], (ParallelPair{Path::vertex(v), Path::vertex(v)}));
}

TEST(ParallelPairs, SingleArrowHasNone) { EXPECT_TRUE(parallel_pairs(builtin::linear(2), 0, 1).empty()); }

TEST(ParallelPairs, CountMatchesEndpointProducts) {
  for (const auto& q : {builtin::example83(), builtin::two_cycles(), builtin::cycle(3), builtin::tensor(2)}) {
    for (int i = 0; i <= 3; ++i)
      for (int m = 0; m <= 5; ++m) {
        std::map<std::pair<int, int>, std::size_t> ci, cm;
        for (const auto& p : paths(q, i)) ++ci[{p.src, p.dst}];
        for (const auto& p : paths(q, m)) ++cm[{p.src, p.dst}];
        std::size_t expect = 0;
        for (const auto& [k, c] : ci) expect += c * cm[k];
        EXPECT_EQ(parallel_pairs(q, i, m).size(), expect);
      }
  }
}

TEST(Structure, Flags) {
  auto c4 = structure_flags(builtin::cycle(4));
  EXPECT_TRUE(c4.is_oriented_cycle);
  EXPECT_FALSE(c4.is_acyclic);
  auto e = structure_flags(builtin::example83());
  EXPECT_TRUE(e.has_source);
  EXPECT_TRUE(e.has_sink);
  EXPECT_FALSE(e.is_oriented_cycle);
  EXPECT_TRUE(is_source(builtin::example83(), 0));
  EXPECT_TRUE(is_sink(builtin::example83(), 2));
  auto l = structure_flags(builtin::loop());
  EXPECT_FALSE(l.has_sink);
  EXPECT_FALSE(l.has_source);
  EXPECT_TRUE(l.is_oriented_cycle);
  EXPECT_TRUE(structure_flags(builtin::linear(3)).is_acyclic);
  EXPECT_FALSE(structure_flags(builtin::tensor(2)).is_oriented_cycle);
  EXPECT_FALSE(structure_flags(parse_quiver("vertices: p q\n").quiver).is_connected);
}

TEST(Builtins, Names) {
  EXPECT_EQ(builtin_quiver("cycle5").num_arrows(), 5);
  EXPECT_EQ(builtin_quiver("a4").num_arrows(), 3);
  EXPECT_EQ(builtin_quiver("tensor3").num_vertices(), 1);
  EXPECT_EQ(builtin_quiver("example7-1"), builtin::cycle(4));
  EXPECT_THROW(builtin_quiver("nope"), ValidationError);
  EXPECT_THROW(builtin_quiver("cyclex"), ValidationError);
}
