#include <gtest/gtest.h>

#include <random>

#include "pftest/generators.hpp"
#include "patternforge/classify.hpp"
#include "patternforge/errors.hpp"
#include "patternforge/explicit_solution.hpp"
#include "patternforge/families.hpp"
#include "patternforge/io.hpp"
#include "patternforge/nests.hpp"

using namespace patternforge;

TEST(Io, PatternRoundTripProperty) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    ZeroPattern p = pftest::random_pattern(rng, pftest::uniform_int(rng, 1, 7));
    EXPECT_EQ(pattern_from_json(pattern_to_json(p)), p);
    EXPECT_EQ(read_pattern(pattern_to_json(p)), p);
    EXPECT_EQ(read_pattern(format_pattern(p)), p);
  }
}

TEST(Io, MatrixRoundTripProperty) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    RationalMatrix a = pftest::random_matrix(rng, pftest::uniform_int(rng, 1, 6));
    EXPECT_EQ(matrix_from_json(matrix_to_json(a)), a);
    EXPECT_EQ(read_matrix(matrix_to_json(a)), a);
    EXPECT_EQ(read_matrix(format_matrix(a)), a);
  }
}

TEST(Io, RationalsAreJsonStrings) {
  RationalMatrix a = RationalMatrix::from_rows({{Rational(1, 2), 0}, {-3, Rational(-7, 3)}});
  std::string j = matrix_to_json(a);
  EXPECT_NE(j.find("\"1/2\""), std::string::npos);
  EXPECT_NE(j.find("\"-7/3\""), std::string::npos);
  EXPECT_THROW(matrix_from_json("[[0.5, 1], [0, 1]]"), ParseError);
}

TEST(Io, ParseErrors) {
  EXPECT_THROW(pattern_from_json("{\"n\": 2, \"support\": [[3, 1]]}"), ParseError);
  EXPECT_THROW(pattern_from_json("{\"n\": 2}"), ParseError);
  EXPECT_THROW(pattern_from_json("not json"), ParseError);
  EXPECT_THROW(matrix_from_json("[[\"1\", \"2\"], [\"3\"]]"), ParseError);
  EXPECT_THROW(matrix_from_json("[[\"1/0\"]]"), ParseError);
  EXPECT_THROW(read_matrix("1 2\nx 4\n"), ParseError);
  EXPECT_THROW(read_pattern("* *\n* q\n"), ParseError);
  EXPECT_THROW(certificate_from_json("{\"pattern\": {}}"), ParseError);
  EXPECT_THROW(parse_output_format("yaml"), std::invalid_argument);
  EXPECT_EQ(parse_output_format("JSON"), OutputFormat::Json);
}

TEST(Io, WitnessRoundTrip) {
  for (const auto& ri : all_refined_inertias(3)) {
    auto w = realize_refined_inertia(companion_pattern(3), ri);
    ASSERT_TRUE(w.has_value());
    std::string j = witness_to_json(*w);
    RealizationWitness back = witness_from_json(j);
    EXPECT_EQ(back.matrix, w->matrix);
    EXPECT_EQ(back.charpoly, w->charpoly);
    EXPECT_EQ(back.refined_inertia, w->refined_inertia);
    EXPECT_EQ(back.method, w->method);
    EXPECT_TRUE(verify_witness(back));
    EXPECT_EQ(witness_to_json(back), j);
  }
}

TEST(Io, CertificateRoundTripIncludingQuadraticField) {
  for (const auto& p : {companion_pattern(3), t_pattern(5)}) {
    auto c = certify_sap(p);
    ASSERT_TRUE(c.has_value());
    std::string j = certificate_to_json(*c);
    NcCertificate back = certificate_from_json(j);
    EXPECT_EQ(back.nilpotent, c->nilpotent);
    EXPECT_EQ(back.verdict, c->verdict);
    EXPECT_TRUE(verify_certificate(back));
    EXPECT_EQ(certificate_to_json(back), j);
  }
}

TEST(Io, SolutionRoundTrip) {
  auto c = triangular_solution(pattern_from_name("Y-1"));
  ASSERT_TRUE(c.has_value());
  std::string j = solution_to_json(*c);
  SolutionCertificate back = solution_from_json(j);
  EXPECT_TRUE(verify_solution_certificate(back));
  EXPECT_EQ(solution_to_json(back), j);
}

TEST(Io, ObstructionAndNestRoundTrip) {
  for (const auto& o : run_all_obstructions(path_pattern(5, 2))) {
    std::string j = obstruction_to_json(o);
    Obstruction back = obstruction_from_json(j);
    EXPECT_EQ(back.kind, o.kind);
    EXPECT_EQ(back.refuted_targets, o.refuted_targets);
    EXPECT_EQ(obstruction_to_json(back), j);
  }
  RationalMatrix b = canonical_path_matrix(4, 1);
  NestReport r = nest_implies_inertia_check(b, *find_nest(b));
  std::string j = nest_report_to_json(r);
  NestReport back = nest_report_from_json(j);
  EXPECT_EQ(back.ordering, r.ordering);
  EXPECT_EQ(back.signs, r.signs);
  EXPECT_EQ(back.verdict, r.verdict);
  EXPECT_EQ(nest_report_to_json(back), j);
}

TEST(Io, RecordRoundTrip) {
  for (const auto& p : {an_pattern(3), path_pattern(3, 1), companion_pattern(3), pattern_from_name("Y-1")}) {
    ClassificationRecord r = classify(p);
    std::string j = record_to_json(r);
    ClassificationRecord back = record_from_json(j);
    EXPECT_EQ(back.pattern, r.pattern);
    EXPECT_EQ(back.sap, r.sap);
    EXPECT_EQ(back.riap, r.riap);
    EXPECT_EQ(back.iap, r.iap);
    EXPECT_EQ(back.witnesses.size(), r.witnesses.size());
    EXPECT_TRUE(audit(back).empty());
    EXPECT_EQ(record_to_json(back), j);
  }
}

TEST(Io, RenderFormats) {
  ClassificationRecord r = classify(an_pattern(3));
  std::string md = render_analysis(r, OutputFormat::Markdown);
  EXPECT_NE(md.find("## Verdicts"), std::string::npos);
  std::string csv = render_analysis(r, OutputFormat::Csv);
  EXPECT_EQ(csv.rfind("section,key,value", 0), 0u);
  std::string json = render_analysis(r, OutputFormat::Json);
  EXPECT_EQ(json.front(), '{');
  EXPECT_NE(json.find("\"record\""), std::string::npos);
  RationalMatrix rot = RationalMatrix::from_rows({{0, 1}, {-1, 0}});
  std::string cp_md = render_charpoly(rot, OutputFormat::Markdown);
  EXPECT_NE(cp_md.find(RefinedInertia{0, 0, 0, 2}.to_string()), std::string::npos);
  std::string cp_json = render_charpoly(rot, OutputFormat::Json);
  EXPECT_NE(cp_json.find("\"agrees\": true"), std::string::npos);
}
