#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "lfg/corpus.hpp"
#include "lfg/mtable_io.hpp"
#include "lfg/suite.hpp"

using namespace lfg;

#ifndef LFG_SOURCE_DIR
#define LFG_SOURCE_DIR "."
#endif

TEST_CASE("mtable parsing on the worked examples") {
  CHECK(parse_group_text("mtable 1\n0\n").order() == 1);
  FiniteGroup z2 = parse_group_text("mtable 2\n0 1\n1 0\n");
  CHECK(z2.order() == 2);
  CHECK_THROWS_WITH_AS(parse_group_text("mtable 2\n0 1\n1 1\n"), "NoInverse: element 1", Error);
  CHECK_THROWS_AS(parse_group_text("mtable 2\n0 1\n"), Error);       // missing row
  CHECK_THROWS_AS(parse_group_text("mtable 2\n0 1 0\n1 0\n"), Error);  // row length
  CHECK_THROWS_AS(parse_group_text("table 2\n0 1\n1 0\n"), Error);   // bad header
  // comments and blank lines are ignored
  FiniteGroup z2c = parse_group_text("# a comment\nmtable 2\n\n0 1\n# another\n1 0\n");
  CHECK(z2c.same_table(z2));
}

TEST_CASE("round-trip: parse(format(G)) is identical for every corpus group") {
  for (const auto& e : builtin_corpus()) {
    FiniteGroup back = parse_group_text(format_group(e.group));
    CHECK(back.same_table(e.group));
  }
}

TEST_CASE("the checked-in corpus files match the builders exactly") {
  auto dir = std::filesystem::path(LFG_SOURCE_DIR) / "data" / "corpus";
  auto loaded = load_corpus_dir(dir.string());
  REQUIRE(loaded.size() == builtin_corpus().size());
  for (const auto& e : builtin_corpus()) {
    bool found = false;
    for (const auto& f : loaded)
      if (f.name == e.name) {
        found = true;
        CHECK(f.group.same_table(e.group));
      }
    CHECK(found);
  }
}

TEST_CASE("corpus loading errors name the offending file") {
  auto dir = std::filesystem::temp_directory_path() / "lfg_bad_corpus";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "broken.mtable") << "mtable 2\n0 1\n1 1\n";
  try {
    load_corpus_dir(dir.string());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CorpusLoadError);
    CHECK(std::string(e.what()).find("broken.mtable") != std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("permutation formatting uses sorted disjoint cycles") {
  CHECK(format_permutation(std::vector<PIdx>{0, 1, 2}) == "()");
  CHECK(format_permutation(std::vector<PIdx>{1, 0}) == "(0 1)");
  CHECK(format_permutation(std::vector<PIdx>{0, 1, 3, 4, 2}) == "(2 3 4)");
  CHECK(format_permutation(std::vector<PIdx>{1, 0, 3, 2}) == "(0 1)(2 3)");
}

TEST_CASE("unknown suites and empty corpora are input errors") {
  CHECK_THROWS_AS(run_suite("nope", builtin_corpus(), {}), Error);
  CHECK_THROWS_AS(run_suite("types", {}, {}), Error);
}

TEST_CASE("suite reports are byte-identical across reruns") {
  SuiteConfig cfg;
  for (const char* name : {"types", "schemes"}) {
    auto a = serialize_report(run_suite(name, builtin_corpus(), cfg), false);
    auto b = serialize_report(run_suite(name, builtin_corpus(), cfg), false);
    CHECK(a == b);
    CHECK(!a.empty());
  }
}

TEST_CASE("embedding configurations deduplicate up to automorphism") {
  const FiniteGroup& z2 = corpus_group("o2_z2");
  const FiniteGroup& v4 = corpus_group("o4b_v4");
  const FiniteGroup& d4 = corpus_group("o8d_d4");
  // all three involutions of V4 are equivalent
  CHECK(embedding_configurations(z2, v4, v4).size() == 1);
  // D4 has a central and a non-central class on each side
  auto configs = embedding_configurations(z2, d4, d4);
  CHECK(configs.size() == 4);
  // no embedding at all gives the empty family
  CHECK(embedding_configurations(corpus_group("o3_z3"), v4, v4).empty());
}
