#include <gtest/gtest.h>

#include <set>
#include <string>

#include "patternforge/assets.hpp"
#include "patternforge/classify.hpp"
#include "patternforge/errors.hpp"
#include "patternforge/families.hpp"
#include "patternforge/io.hpp"

using namespace patternforge;

TEST(Classify, A3IsIapButNotRiap) {
  ClassificationRecord r = classify(an_pattern(3));
  EXPECT_EQ(r.iap.verdict, Verdict::ProvenYes);
  EXPECT_EQ(r.riap.verdict, Verdict::ProvenNo);
  EXPECT_EQ(r.sap.verdict, Verdict::ProvenNo);
  EXPECT_TRUE(audit(r).empty());
}

TEST(Classify, P31IsRiapWithoutSapCertificate) {
  ClassificationRecord r = classify(path_pattern(3, 1));
  EXPECT_EQ(r.riap.verdict, Verdict::ProvenYes);
  EXPECT_FALSE(r.sap_certified());
  EXPECT_TRUE(audit(r).empty());
}

TEST(Classify, CompanionIsSap) {
  ClassificationRecord r = classify(companion_pattern(3));
  EXPECT_EQ(r.sap.verdict, Verdict::ProvenYes);
  EXPECT_EQ(r.riap.verdict, Verdict::ProvenYes);
  EXPECT_EQ(r.iap.verdict, Verdict::ProvenYes);
  EXPECT_TRUE(r.sap_certified());
}

TEST(Classify, TransversalObstructionDecidesP52) {
  ClassificationRecord r = classify(path_pattern(5, 2));
  EXPECT_EQ(r.iap.verdict, Verdict::ProvenNo);
  EXPECT_EQ(r.riap.verdict, Verdict::ProvenNo);
  bool found = false;
  for (const auto& o : r.obstructions) found = found || o.kind == ObstructionKind::NoNonzeroTransversal;
  EXPECT_TRUE(found);
}

TEST(Classify, TraceZeroArgumentForP42) {
  // The only loop is forced to 0, which leaves E_3 identically zero.
  auto args = trace_zero_arguments(path_pattern(4, 2));
  ASSERT_FALSE(args.empty());
  EXPECT_EQ(args.front().name(), "trace-zero-forces-E3");
  EXPECT_TRUE(trace_zero_arguments(companion_pattern(4)).empty());
}

TEST(Classify, HierarchyPropagatesVerdicts) {
  ClassificationRecord r;
  r.pattern = companion_pattern(3);
  r.sap = {Verdict::ProvenYes, "given"};
  enforce_hierarchy(r);
  EXPECT_EQ(r.riap.verdict, Verdict::ProvenYes);
  EXPECT_EQ(r.iap.verdict, Verdict::ProvenYes);
  ClassificationRecord s;
  s.pattern = an_pattern(3);
  s.iap = {Verdict::ProvenNo, "given"};
  enforce_hierarchy(s);
  EXPECT_EQ(s.riap.verdict, Verdict::ProvenNo);
  EXPECT_EQ(s.sap.verdict, Verdict::ProvenNo);
  ClassificationRecord bad;
  bad.pattern = companion_pattern(3);
  bad.sap = {Verdict::ProvenYes, "given"};
  bad.iap = {Verdict::ProvenNo, "given"};
  EXPECT_FALSE(audit(bad).empty());
}

TEST(Enumerate, CountsAndCanonicalDistinctness) {
  std::size_t order3 = 0;
  for (int nnz = 0; nnz <= 9; ++nnz) order3 += enumerate_patterns(3, nnz, true).size();
  EXPECT_EQ(order3, 26u);
  auto n4 = enumerate_patterns(4, 7, true);
  EXPECT_EQ(n4.size(), 64u);
  std::set<std::uint64_t> codes;
  for (const auto& p : n4) {
    EXPECT_EQ(canonicalize(p).pattern, p);
    EXPECT_TRUE(is_irreducible(p));
    EXPECT_EQ(p.nnz(), 7);
    codes.insert(p.code());
  }
  EXPECT_EQ(codes.size(), n4.size());
}

TEST(Census, ReportIsIndependentOfWorkerCount) {
  CensusOptions one;
  one.jobs = 1;
  CensusOptions two;
  two.jobs = 2;
  CensusReport a = census_report(3, 5, one);
  CensusReport b = census_report(3, 5, two);
  EXPECT_EQ(render_census(a, OutputFormat::Json), render_census(b, OutputFormat::Json));
  EXPECT_EQ(render_census(a, OutputFormat::Csv), render_census(b, OutputFormat::Csv));
}

TEST(Census, OrderFourSixEntriesFailRiap) {
  CensusReport r = census_report(4, 6);
  ASSERT_FALSE(r.census.records.empty());
  for (const auto& rec : r.census.records) EXPECT_EQ(rec.riap.verdict, Verdict::ProvenNo) << format_pattern(rec.pattern);
}

TEST(Census, RecordsAreAuditClean) {
  CensusReport r = census_report(3, 6);
  for (const auto& rec : r.census.records) {
    EXPECT_TRUE(audit(rec).empty()) << format_pattern(rec.pattern);
    EXPECT_TRUE(rec.contradictions.empty());
    for (const auto& [ri, w] : rec.witnesses) EXPECT_FALSE(any_refutes(rec.obstructions, ri));
  }
}

TEST(Appendix, AllRowsReproduce) {
  auto rows = verify_appendix();
  ASSERT_EQ(rows.size(), 54u);
  for (const auto& row : rows) {
    EXPECT_TRUE(row.pass) << row.pattern << " row " << row.row;
    EXPECT_TRUE(row.conforms);
    EXPECT_EQ(row.stated, row.computed);
  }
}

TEST(Appendix, CorruptedRowFails) {
  std::string table(assets::appendix_json());
  const std::string needle = "\"inertia\": [4, 0, 0]";
  auto pos = table.find(needle);
  ASSERT_NE(pos, std::string::npos);
  table.replace(pos, needle.size(), "\"inertia\": [3, 1, 0]");
  auto rows = verify_appendix(table);
  int failures = 0;
  for (const auto& row : rows) failures += row.pass ? 0 : 1;
  EXPECT_EQ(failures, 1);
  EXPECT_THROW(verify_appendix("{\"rows\": [{]}"), ParseError);
}
