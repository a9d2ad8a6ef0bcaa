#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = affina::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

TEST(Cli, CanonTree) {
  const auto r = run({"canon", "--tree", "--sigma=abcd", "--tau=(c.d)", "--v=a", "(((c.d)._).(c.d))"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out), "((a._).a)");
  EXPECT_NE(r.out.find("# op: "), std::string::npos);
}

TEST(Cli, ReduceWord) {
  const auto r = run({"reduce", "--tau=aba", "ababa"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "ba\n# op: Red_{tau,v}: replace the leftmost occurrence of tau by v\n");
  EXPECT_EQ(run({"reduce", "--tau=aba", "bb"}).code, 1);
}

TEST(Cli, CuratedSet) {
  EXPECT_EQ(run({"ct", "--word", "--sigma=ab", "aababb"}).code, 0);
  EXPECT_EQ(run({"ct", "--word", "--sigma=ab", "aba"}).code, 1);
  EXPECT_EQ(run({"ct", "--tree", "(a.b)"}).code, 0);
}

TEST(Cli, Equiv) {
  EXPECT_EQ(run({"equiv", "--tau=aababb", "--v=a", "aababbb", "ab"}).code, 0);
  EXPECT_EQ(run({"equiv", "--tau=aababb", "ab", "ba"}).code, 1);
  const auto refused = run({"equiv", "--tau=aba", "ab", "ababa"});
  EXPECT_EQ(refused.code, 2);
  EXPECT_NE(refused.err.find("curated"), std::string::npos);
  // The bounded closure sees what Red* cannot for a non-curated pattern.
  EXPECT_EQ(run({"equiv", "--oracle", "--max-len=3", "--tau=aa", "--v=b", "ab", "ba"}).code, 0);
}

TEST(Cli, Strong) {
  const auto r = run({"strong", "--tau=aabb", "aaab"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("verdict: overlap-suffix-prefix\noverlap: aab\n"), std::string::npos);
  EXPECT_EQ(run({"strong", "--tau=aabb", "abab"}).code, 0);
}

TEST(Cli, Occurs) {
  EXPECT_EQ(first_line(run({"occurs", "ababa", "aba"}).out), "yba");
  EXPECT_EQ(run({"occurs", "ab", "ba"}).code, 1);
}

TEST(Cli, Eval) {
  EXPECT_EQ(first_line(run({"eval", "--tree", "--sigma=abcd", "((b.x1).x2)", "_", "(c.d)"}).out), "((b._).(c.d))");
  EXPECT_EQ(first_line(run({"eval", "ax1x1b", "ba"}).out), "ababab");
  EXPECT_EQ(run({"eval", "ax1x2", "b"}).code, 2);
}

TEST(Cli, Multidegree) {
  const auto r = run({"mdeg", "--builtin=reverse"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out), "<1>");
  EXPECT_EQ(first_line(run({"mdeg", "--tree", "--poly=((b.x1).(x2.x1))"}).out), "<2 1>");
}

TEST(Cli, Synth) {
  const auto ok = run({"synth", "--poly=ax1bx2x1"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(first_line(ok.out), "ax1bx2x1");
  const auto bad = run({"synth", "--builtin=reverse"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(first_line(bad.out), "failure");
  EXPECT_NE(bad.out.find("witness: (_)"), std::string::npos);
}

TEST(Cli, Refute) {
  const auto sorted = run({"refute", "--builtin=sort-letters", "--family=first-letter"});
  EXPECT_EQ(sorted.code, 1);
  EXPECT_EQ(first_line(sorted.out), "refuted");
  const auto mirror = run({"refute", "--tree", "--builtin=mirror", "--family=principal:(a.(b.b)),a"});
  EXPECT_EQ(mirror.code, 1);
  const auto poly = run({"refute", "--poly=x1ab", "--family=first-letter", "--family=length", "--family=letter-count:b", "--family=length-mod:2"});
  EXPECT_EQ(poly.code, 0);
  EXPECT_EQ(run({"refute", "--poly=x1", "--family=nonsense"}).code, 2);
}

TEST(Cli, Closure) {
  const auto r = run({"closure", "aa", "b", "--max-len=3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("class 4: ab ba aaa\n"), std::string::npos);
}

TEST(Cli, Demos) {
  EXPECT_EQ(first_line(run({"demo", "fig2"}).out), "((b.x1).x2)");
  EXPECT_EQ(first_line(run({"demo", "fig3"}).out), "((a._).a)");
  EXPECT_EQ(first_line(run({"demo", "remark-nonunique"}).out), "ab ba");
  const auto aba = run({"demo", "aba-failure"});
  EXPECT_EQ(first_line(aba.out), "false");
  EXPECT_NE(aba.out.find("Red*(C(tau)): ba\nRed*(C(v)): ab\n"), std::string::npos);
  const auto aabb = run({"demo", "aabb-failure"});
  EXPECT_NE(aabb.out.find("aaab overlap-suffix-prefix aab\n"), std::string::npos);
  EXPECT_NE(aabb.out.find("abbb overlap-prefix-suffix abb\n"), std::string::npos);
  const auto nat = run({"demo", "nat-counterexample"});
  EXPECT_EQ(nat.code, 0);
  EXPECT_NE(nat.out.find("\n3 16 49 212\n"), std::string::npos);
  EXPECT_NE(run({"demo", "nat2-synthesis"}).out.find("round trip: true"), std::string::npos);
  EXPECT_EQ(run({"demo", "nope"}).code, 2);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"closure", "--tree", "(a.b)", "a", "--max-len=4"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, Json) {
  const auto r = run({"strong", "--json", "--tau=aabb", "abbb"});
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["result"], "false");
  EXPECT_EQ(j["details"]["verdict"], "overlap-prefix-suffix");
  EXPECT_EQ(j["details"]["overlap"], "abb");
  EXPECT_EQ(j["exit"], 1);
}

TEST(Cli, Errors) {
  const auto parse = run({"canon", "--tau=aababb", "ab(c"});
  EXPECT_EQ(parse.code, 2);
  EXPECT_NE(parse.err.find("position 2"), std::string::npos);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"canon", "ab"}).code, 2);  // --tau missing
  EXPECT_EQ(run({"canon", "--tree", "--word", "--tau=aababb", "ab"}).code, 2);
  EXPECT_EQ(run({"ct", "--sigma=aa", "a"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

}  // namespace
