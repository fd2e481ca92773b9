#include <gtest/gtest.h>

#include <cmath>

#include "patternforge/families.hpp"
#include "patternforge/nilpotent_nc.hpp"

using namespace patternforge;

namespace {

RationalMatrix shift(int n) {
  RationalMatrix a(n);
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = 1;
  return a;
}

}  // namespace

TEST(Nilpotent, Index) {
  EXPECT_EQ(nilpotent_index(shift(4)), 4);
  EXPECT_EQ(nilpotent_index(RationalMatrix(3)), 1);
  EXPECT_THROW(nilpotent_index(RationalMatrix::identity(2)), std::invalid_argument);
}

TEST(Nilpotent, T4HasQuadraticNilpotent) {
  // Subdiagonal ones, loops (1, -1), superdiagonal (1 - sqrt2, -3 + 2 sqrt2, 1 - sqrt2).
  QuadMatrix a(4);
  for (int i = 0; i < 3; ++i) a(i + 1, i) = 1;
  a(0, 0) = 1;
  a(3, 3) = -1;
  a(0, 1) = QuadraticNumber(1, -1, 2);
  a(1, 2) = QuadraticNumber(-3, 2, 2);
  a(2, 3) = QuadraticNumber(1, -1, 2);
  EXPECT_EQ(nilpotent_index(a), 4);
  EXPECT_EQ(a.radicand(), 2);
}

TEST(NcTest, ShiftCertifiesCompanion) {
  for (int n = 2; n <= 6; ++n) {
    NcCertificate c = nc_test(companion_pattern(n), shift(n));
    EXPECT_EQ(c.verdict, NcVerdict::SapCertified) << n;
    EXPECT_EQ(c.index, n);
    EXPECT_EQ(c.centralizer_rank_deficiency, 0);
    EXPECT_TRUE(verify_certificate(c));
  }
}

TEST(NcTest, LowIndexIsIndeterminate) {
  NcCertificate c = nc_test(companion_pattern(3), RationalMatrix(3));
  EXPECT_EQ(c.verdict, NcVerdict::Indeterminate);
  EXPECT_EQ(c.index, 1);
}

TEST(NcTest, SuperdiagonalPatternFails) {
  // Q(shift pattern) has only two free entries; I, N and N^2 all survive the centralizer test.
  ZeroPattern p(3, {{1, 2}, {2, 3}});
  NcCertificate c = nc_test(p, shift(3));
  EXPECT_EQ(c.verdict, NcVerdict::TestFailed);
  EXPECT_GT(c.centralizer_rank_deficiency, 0);
}

TEST(NcTest, RejectsBadInput) {
  // Not nilpotent.
  EXPECT_THROW(nc_test(companion_pattern(3), RationalMatrix::identity(3)), std::invalid_argument);
  // Nilpotent but (3,2) lies off the support of C3.
  EXPECT_THROW(nc_test(companion_pattern(3), shift(3).transpose()), std::invalid_argument);
}

TEST(NcTest, TamperedCertificateFailsVerification) {
  auto c = certify_sap(t_pattern(3));
  ASSERT_TRUE(c.has_value());
  ASSERT_EQ(c->verdict, NcVerdict::SapCertified);
  EXPECT_TRUE(verify_certificate(*c));
  NcCertificate bad = *c;
  bad.nilpotent(0, 0) = bad.nilpotent(0, 0) + QuadraticNumber(1);
  EXPECT_FALSE(verify_certificate(bad));
  NcCertificate wrong_pattern = *c;
  wrong_pattern.pattern = path_pattern(3, 2);
  EXPECT_FALSE(verify_certificate(wrong_pattern));
}

TEST(CertifySap, SmallFamiliesAreRational) {
  for (const auto& p : {companion_pattern(4), t_pattern(2), t_pattern(4), w_pattern(3), w_pattern(4)}) {
    auto c = certify_sap(p);
    ASSERT_TRUE(c.has_value()) << format_pattern(p);
    EXPECT_EQ(c->verdict, NcVerdict::SapCertified) << format_pattern(p);
    EXPECT_EQ(c->field_radicand(), 1);
    EXPECT_TRUE(verify_certificate(*c));
  }
}

TEST(CertifySap, QuadraticFields) {
  auto t5 = certify_sap(t_pattern(5));
  ASSERT_TRUE(t5.has_value());
  EXPECT_EQ(t5->verdict, NcVerdict::SapCertified);
  EXPECT_EQ(t5->field_radicand(), 5);
  EXPECT_TRUE(verify_certificate(*t5));
  auto w5 = certify_sap(w_pattern(5));
  ASSERT_TRUE(w5.has_value());
  EXPECT_EQ(w5->verdict, NcVerdict::SapCertified);
  EXPECT_EQ(w5->field_radicand(), 2);
}

TEST(CertifySap, BorderedExtendsIndex) {
  auto t5 = certify_sap(t_pattern(5));
  ASSERT_TRUE(t5.has_value());
  QuadMatrix b = bordered_nilpotent(t5->nilpotent);
  EXPECT_EQ(b.order(), 6);
  EXPECT_EQ(nilpotent_index(b), 6);
}

TEST(CertifySap, ObstructedPatternNotCertified) {
  auto c = certify_sap(path_pattern(3, 2));
  if (c) EXPECT_NE(c->verdict, NcVerdict::SapCertified);
}

TEST(RecognizeQuadratic, RecoversSurds) {
  auto x = recognize_quadratic(1.0L - std::sqrt(2.0L), 2);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(*x, QuadraticNumber(1, -1, 2));
  auto y = recognize_quadratic((1.0L + std::sqrt(5.0L)) / 2.0L, 5);
  ASSERT_TRUE(y.has_value());
  EXPECT_EQ(*y, QuadraticNumber(Rational(1, 2), Rational(1, 2), 5));
  EXPECT_FALSE(recognize_quadratic(3.14159265358979L, 2, 16).has_value());
}
