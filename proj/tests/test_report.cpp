#include <gtest/gtest.h>

#include <sstream>

#include "regmaps/report.hpp"

namespace regmaps {
namespace {

TEST(Report, CensusJsonSchema) {
  std::ostringstream os;
  write_census_json(os, {CensusRow{5, 1, 0, 1, 0, 0, 0, 0}});
  const json j = json::parse(os.str());
  ASSERT_EQ(j.size(), 1U);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j[0].items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"q", "maps", "none", "sd_only", "sp_only", "sd_sp", "sp_mr", "sd_sp_mr"}));
  EXPECT_EQ(j[0]["sd_only"], 1);
}

TEST(Report, CsvAndMarkdown) {
  const std::vector<CensusRow> rows{CensusRow{7, 5, 4, 1, 0, 0, 0, 0}};
  std::ostringstream csv, md;
  write_census_csv(csv, rows);
  write_census_md(md, rows);
  EXPECT_EQ(csv.str(), "q,maps,none,sd_only,sp_only,sd_sp,sp_mr,sd_sp_mr\n7,5,4,1,0,0,0,0\n");
  EXPECT_NE(md.str().find("| q | Maps | None | SD only | SP only | SD+SP | SP+MR | SD+SP+MR |"), std::string::npos);
  EXPECT_NE(md.str().find("| 7 | 5 | 4 | 1 | 0 | 0 | 0 | 0 |"), std::string::npos);
}

TEST(Report, ListingSchema) {
  const FieldCtx ctx(11, 1);
  const auto classes = enumerate_maps(ctx, {ClassifyMode::validate, false, nullptr});
  std::ostringstream os;
  write_listing_json(os, ctx, classes);
  const json j = json::parse(os.str());
  ASSERT_EQ(j.size(), 16U);
  for (const auto& rec : j) {
    for (const char* key : {"q", "k", "l", "family", "xi_k", "xi_l", "omega_k", "omega_l", "sd", "sp", "mr"})
      EXPECT_TRUE(rec.contains(key)) << key;
    EXPECT_EQ(rec["omega_k"].get<std::string>().rfind("g^", 0), 0U);
    if (rec["sd"].get<bool>()) { EXPECT_TRUE(rec.contains("sd_witness")); }
  }
  int sd_sp = 0;
  for (const auto& rec : j) sd_sp += rec["sd"].get<bool>() && rec["sp"].get<bool>() && rec["k"] == 5 && rec["l"] == 5;
  EXPECT_EQ(sd_sp, 1);
}

TEST(Report, DiffJson) {
  DiffReport d;
  d.q = 7;
  d.entries.push_back({3, 7, "sp_only", 1, 0});
  const json j = to_json(d);
  EXPECT_FALSE(j["empty"].get<bool>());
  EXPECT_EQ(j["mismatches"][0]["what"], "sp_only");
}

TEST(Report, FieldDump) {
  const json j = field_to_json(FieldCtx(3, 2));
  EXPECT_EQ(j["q"], 9);
  EXPECT_EQ(j["exp"].size(), 80U);
}

}  // namespace
}  // namespace regmaps
