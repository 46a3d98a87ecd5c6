#include <sstream>

#include "doctest.h"
#include "qstat/dataset.hpp"
#include "qstat/sim.hpp"

TEST_CASE("load_csv parses a small long-format file") {
  std::istringstream in(
      "subject,condition,score\n"
      "s1,c1,4\n"
      "s2,c1,5\n"
      "s3,c1,3.5\n"
      "s1,c2,2\n"
      "s2,c2,1\n"
      "s3,c2,2.5\n");
  const auto ds = qstat::load_csv(in, "mem");
  CHECK(ds.records.size() == 6);
  const auto groups = ds.groups();
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].id == "c1");
  CHECK(groups[0].scores.size() == 3);
  CHECK(groups[1].scores.size() == 3);
  CHECK(ds.group("c2").scores == std::vector<double>{2.0, 1.0, 2.5});
  CHECK_THROWS_AS(ds.group("nope"), std::invalid_argument);
}

TEST_CASE("load_csv rejects a bad header") {
  std::istringstream in("subject,cond,score\ns1,c1,4\n");
  CHECK_THROWS_WITH_AS(qstat::load_csv(in, "mem"),
                       doctest::Contains("line 1"), std::runtime_error);
}

TEST_CASE("load_csv reports duplicate pairs with the row number") {
  std::istringstream in(
      "subject,condition,score\n"
      "s1,c1,4\n"
      "s1,c1,5\n");
  CHECK_THROWS_WITH_AS(qstat::load_csv(in, "mem"), doctest::Contains("line 3"),
                       std::runtime_error);
}

TEST_CASE("load_csv reports non-numeric scores with row and column") {
  std::istringstream in(
      "subject,condition,score\n"
      "s1,c1,abc\n");
  CHECK_THROWS_WITH_AS(qstat::load_csv(in, "mem"),
                       doctest::Contains("column 'score'"), std::runtime_error);
}

TEST_CASE("load_csv rejects empty and row-less files") {
  std::istringstream empty("");
  CHECK_THROWS_AS(qstat::load_csv(empty, "mem"), std::runtime_error);
  std::istringstream header_only("subject,condition,score\n");
  CHECK_THROWS_AS(qstat::load_csv(header_only, "mem"), std::runtime_error);
}

TEST_CASE("load_csv rejects rows with the wrong column count") {
  std::istringstream in(
      "subject,condition,score\n"
      "s1,c1\n");
  CHECK_THROWS_WITH_AS(qstat::load_csv(in, "mem"),
                       doctest::Contains("expected 3 columns"), std::runtime_error);
}

TEST_CASE("generated treatment data survives a CSV round trip exactly") {
  qstat::TreatmentConfig cfg;
  cfg.mu_org = 4.0;
  cfg.effects = {0.0, -1.2, -3.1};
  cfg.noise_sigma = 0.5;
  cfg.n_subjects = 26;
  cfg.seed = {99, 0};
  const auto groups = qstat::generate_treatment_groups(cfg);
  qstat::OpinionDataset ds;
  for (const auto& g : groups)
    for (std::size_t i = 0; i < g.scores.size(); ++i)
      ds.records.push_back({"s" + std::to_string(i + 1), g.id, g.scores[i]});
  std::ostringstream os;
  qstat::write_csv(ds, os);
  std::istringstream in(os.str());
  const auto reloaded = qstat::load_csv(in, "mem");
  const auto back = reloaded.groups();
  REQUIRE(back.size() == groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    CHECK(back[i].id == groups[i].id);
    CHECK(back[i].scores == groups[i].scores);
  }
}
