#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "jacobi/alg_jacobi.hpp"
#include "jacobi/catalog.hpp"
#include "jacobi/report.hpp"

using namespace jacobi;

TEST_CASE("catalog files carry the version header") {
  std::string content = catalog_file("algebras.cat");
  CHECK(content.find("jacobi-catalog v1") != std::string::npos);
  CHECK_THROWS(catalog_file("no-such-file.cat"));
}

#ifdef JACOBI_REPO_DATA_DIR
TEST_CASE("embedded catalogs match the files shipped in data/") {
  for (const char* name : {"algebras.cat", "automorphisms.cat", "jacobi_tables.cat",
                           "vielbeins.cat", "examples.cat"}) {
    std::string embedded = catalog_file(name);
    std::ifstream in(std::string(JACOBI_REPO_DATA_DIR) + "/" + name);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    CHECK(embedded == ss.str());
  }
}

TEST_CASE("JACOBI_CATALOG_DIR overrides the embedded data") {
  setenv("JACOBI_CATALOG_DIR", JACOBI_REPO_DATA_DIR, 1);
  std::string from_dir = catalog_file("vielbeins.cat");
  unsetenv("JACOBI_CATALOG_DIR");
  std::string embedded = catalog_file("vielbeins.cat");
  CHECK(from_dir == embedded);

  setenv("JACOBI_CATALOG_DIR", "/nonexistent-dir-for-test", 1);
  CHECK_THROWS(catalog_file("vielbeins.cat"));
  unsetenv("JACOBI_CATALOG_DIR");
}
#endif

TEST_CASE("report rendering and exit semantics") {
  Report r;
  r.command = "demo";
  r.add("a", Verdict::Pass);
  r.add("b", Verdict::NumericPass, "certified at 20 points");
  r.add("c", Verdict::Discrepancy, "print differs");
  CHECK(r.ok());  // discrepancy does not fail a run
  r.add("d", Verdict::Fail, "boom");
  CHECK_FALSE(r.ok());
  std::string text = render_text(r);
  CHECK(text.find("[numeric-pass] b") != std::string::npos);
  CHECK(text.find("summary: 1 pass, 1 numeric-pass, 1 discrepancy, 1 fail") != std::string::npos);
  std::string json = render_json(r);
  CHECK(json.find("\"verdict\": \"discrepancy\"") != std::string::npos);
}

TEST_CASE("every table row id resolves and class ids are well-formed") {
  for (const FamilyRecord& fr : jacobi_table()) {
    for (const ClassRep& c : fr.classes) {
      const AlgJacobiStructure& rep = find_class(fr.algebra, std::to_string(fr.row) + c.id);
      CHECK(rep.dim == fr.family.dim);
    }
  }
  CHECK_THROWS(find_class("III", "9a"));
  CHECK_THROWS(find_class("III", "2z"));
}

TEST_CASE("side conditions are carried as data") {
  const FamilyRecord& i1 = find_family("I", 1);
  REQUIRE(!i1.family.conditions.empty());
  CHECK(i1.family.conditions[0].inferred);  // the e3 denominator
  const AlgJacobiStructure& iii2a = find_class("III", "2a");
  REQUIRE(iii2a.conditions.size() == 2);
  CHECK_FALSE(iii2a.conditions[0].inferred);
}
