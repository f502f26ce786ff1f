#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "fixtures.hpp"
#include "lovewave/error.hpp"
#include "lovewave/material.hpp"

using namespace lovewave;
using lovewave::testing::foam;

namespace {

constexpr const char* kFoamDoc = R"(# foam
mu_e = 104
mu_c = 4.3331
lambda_e = 0
a1 = 79.9552
a2 = 10.6496
a3 = -53.3035
J = 10
rho = 340e-6
)";

ErrorCode code_of(const std::string& text) {
  try {
    parse_material(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ErrorCode::Io;
}

}  // namespace

TEST(Material, ParsesFoamDocument) {
  EXPECT_EQ(parse_material(kFoamDoc), foam());
}

TEST(Material, MissingRho) {
  std::string doc = kFoamDoc;
  doc.erase(doc.find("rho"));
  try {
    parse_material(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingKey);
    EXPECT_NE(e.detail().find("rho"), std::string::npos);
  }
}

TEST(Material, NaNIsNonFinite) {
  std::string doc = kFoamDoc;
  doc.replace(doc.find("104"), 3, "NaN");
  try {
    parse_material(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFinite);
    EXPECT_NE(e.detail().find("mu_e"), std::string::npos);
  }
}

TEST(Material, RejectsDuplicatesUnknownKeysAndGarbage) {
  EXPECT_EQ(code_of(std::string(kFoamDoc) + "mu_c = 1\n"), ErrorCode::Duplicate);
  EXPECT_EQ(code_of(std::string(kFoamDoc) + "L_c = 1\nfoo = 2\n"), ErrorCode::UnknownKey);
  EXPECT_EQ(code_of(std::string(kFoamDoc) + "just words\n"), ErrorCode::Syntax);
  EXPECT_EQ(code_of("mu_e = 1x\n"), ErrorCode::Syntax);
  EXPECT_EQ(code_of(std::string(kFoamDoc) + "mu_e2 = inf\n"), ErrorCode::UnknownKey);
}

TEST(Material, UnknownKeysAreAllListed) {
  try {
    parse_material(std::string(kFoamDoc) + "L_c = 1\nfoo = 2\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(e.detail().find("L_c"), std::string::npos);
    EXPECT_NE(e.detail().find("foo"), std::string::npos);
  }
}

TEST(Material, LambdaIsOptional) {
  std::string doc = kFoamDoc;
  doc.erase(doc.find("lambda_e"), std::string("lambda_e = 0\n").size());
  EXPECT_EQ(parse_material(doc).lambda_e, 0.0);
}

TEST(Material, RoundTripIsIdentity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 50; ++i) {
    MaterialParams p{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng) * 1e-5, u(rng) * 1e-9};
    EXPECT_EQ(parse_material(serialize_material(p)), p);
  }
  EXPECT_EQ(parse_material(serialize_material(foam())), foam());
}

TEST(Material, WaveConditionsOnFoam) {
  const auto r = validate_wave_conditions(foam());
  EXPECT_TRUE(r.overall);
  ASSERT_EQ(r.rows.size(), 4u);
  ASSERT_NE(r.find("2*a1+a3 > 0"), nullptr);
  EXPECT_NEAR(r.find("2*a1+a3 > 0")->margin, 106.6069, 1e-10);
}

TEST(Material, WaveConditionFailures) {
  auto p = foam();
  p.mu_c = 0;
  auto r = validate_wave_conditions(p);
  EXPECT_FALSE(r.overall);
  EXPECT_FALSE(r.find("mu_c > 0")->pass);

  p = foam();
  p.a1 = 1;
  p.a2 = -2;
  r = validate_wave_conditions(p);
  EXPECT_FALSE(r.overall);
  EXPECT_FALSE(r.find("a1+a2 > 0")->pass);
  EXPECT_THROW(require_wave_conditions(p), Error);
}

TEST(Material, ToleranceFlagsNearDegenerate) {
  auto p = foam();
  p.mu_c = 1e-9;
  EXPECT_TRUE(validate_wave_conditions(p).overall);
  EXPECT_FALSE(validate_wave_conditions(p, 1e-6).overall);
}

TEST(Material, PositiveDefinitenessOnFoam) {
  const auto r = check_positive_definiteness(foam());
  EXPECT_TRUE(r.find("2*mu_e+3*lambda_e > 0")->pass);
  EXPECT_DOUBLE_EQ(r.find("2*mu_e+3*lambda_e > 0")->margin, 208.0);
  EXPECT_FALSE(r.find("2*a1+3*a3 > 0")->pass);
  EXPECT_NEAR(r.find("2*a1+3*a3 > 0")->margin, -0.0001, 1e-9);
  EXPECT_FALSE(r.overall);
}

TEST(Material, PositiveDefinitenessAllOnes) {
  const MaterialParams ones{1, 1, 1, 1, 1, 1, 1, 1};
  EXPECT_TRUE(check_positive_definiteness(ones).overall);
}

TEST(Material, WaveContextNeedsPositiveK) {
  EXPECT_THROW(make_wave_context(foam(), 0.0), Error);
  EXPECT_THROW(make_wave_context(foam(), -1.0), Error);
  EXPECT_EQ(make_wave_context(foam(), 0.5).k, 0.5);
}

TEST(Material, ReadFile) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / "lovewave_test_foam.mat";
  {
    std::ofstream out(path);
    out << kFoamDoc;
  }
  EXPECT_EQ(read_material_file(path), foam());
  std::filesystem::remove(path);
  try {
    read_material_file(dir / "lovewave_does_not_exist.mat");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}
