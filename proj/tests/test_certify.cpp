#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "dilates/acceptance.hpp"
#include "dilates/certify.hpp"

using namespace dilates;

#ifndef DILATES_DATA_DIR
#error "DILATES_DATA_DIR must point at the bundled data directory"
#endif

namespace {

std::string bundled() {
  std::ifstream in(std::string(DILATES_DATA_DIR) + "/flagship_certificate.json", std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Certify, PublishedCertificateIsAccepted) {
  auto rep = verify_certificate(acceptance::published_certificate());
  EXPECT_TRUE(rep.accepted) << rep.detail;
  EXPECT_EQ(rep.atom_count, 53u);
  ASSERT_TRUE(rep.min_slack.has_value());
  EXPECT_EQ(*rep.min_slack, Rational(0));
  EXPECT_NE(rep.applicability.find("n >= 11"), std::string::npos);
  // 7 divides 9 - 2, so Z_7 is outside the class.
  EXPECT_NE(std::find(rep.excluded_moduli.begin(), rep.excluded_moduli.end(), 7), rep.excluded_moduli.end());
}

TEST(Certify, FirstDualEntryRaisedMatchesDirectCheck) {
  auto c = acceptance::published_certificate();
  c.dual[0] = Rational(3);
  EXPECT_EQ(verify_certificate(c).accepted, acceptance::detail::direct_verdict(c));
}

TEST(Certify, BoundBelowOptimumIsRejected) {
  auto c = acceptance::published_certificate();
  c.bound_num = 1;
  c.bound_den = 4;
  auto rep = verify_certificate(c);
  EXPECT_FALSE(rep.accepted);
  EXPECT_LT(rep.min_slack->sign(), 0);
}

TEST(Certify, TwoElementWitness) {
  Certificate c;
  c.coeffs = {1, 1, -2};
  c.d = 6;
  c.witness = {0, 3};
  c.objective = 0;
  c.congruences = {CertCongruence{{3}, {0}, -3}};
  c.dual = {Rational(-1)};
  c.bound_num = 1;
  c.bound_den = 2;
  EXPECT_TRUE(verify_certificate(c).accepted);
  c.dual = {Rational(0)};
  EXPECT_FALSE(verify_certificate(c).accepted);
}

TEST(Certify, StructuralFailuresAreRejectedNotThrown) {
  auto base = acceptance::published_certificate();
  auto expect_reject = [](Certificate c, const char* what) {
    auto rep = verify_certificate(c);
    EXPECT_FALSE(rep.accepted) << what;
    EXPECT_FALSE(rep.detail.empty()) << what;
  };
  auto c = base;
  c.version = 2;
  expect_reject(c, "version");
  c = base;
  c.congruences[0].shift = 5;
  expect_reject(c, "inconsistent shift");
  c = base;
  c.congruences[0].rhs = {11};
  c.congruences[0].shift = 1;
  expect_reject(c, "element outside witness");
  c = base;
  c.dual.pop_back();
  expect_reject(c, "dual length");
  c = base;
  c.bound_num = 4;
  c.bound_den = 14;
  expect_reject(c, "unreduced bound");
  c = base;
  c.bound_den = 0;
  expect_reject(c, "zero denominator");
  c = base;
  c.objective = 1;
  expect_reject(c, "objective");
  c = base;
  c.witness = {0, 2, 2, 4, 7, 8, 9, 10};
  expect_reject(c, "repeated witness element");
  c = base;
  c.mode = "modular";
  expect_reject(c, "missing modulus");
  c = base;
  // {0, 3} contains the forbidden set 3 + 3 - 2*0 = 6, so this row is vacuous.
  c.congruences[0] = CertCongruence{{0, 3}, {7, 10}, 7};
  expect_reject(c, "vacuous congruence");
}

TEST(Certify, DuplicatedCongruenceIsAllowed) {
  auto c = acceptance::published_certificate();
  c.congruences.push_back(c.congruences[0]);
  c.dual.emplace_back(0);
  auto text = serialize(c);
  auto back = parse_certificate(text);
  EXPECT_EQ(back.congruences.size(), 23u);
  EXPECT_TRUE(verify_certificate(back).accepted);
}

TEST(Certify, BundledFileRoundTripsByteForByte) {
  auto text = bundled();
  ASSERT_FALSE(text.empty());
  auto c = parse_certificate(text);
  EXPECT_EQ(serialize(c), text);
  EXPECT_EQ(serialize(acceptance::published_certificate()), text);
  EXPECT_TRUE(verify_certificate(c).accepted);
}

TEST(Certify, ParseErrorsCarryLocations) {
  auto text = bundled();
  EXPECT_THROW(parse_certificate(text.substr(0, text.size() / 2)), ParseError);
  EXPECT_THROW(parse_certificate(""), ParseError);
  auto j = nlohmann::json::parse(text);
  j["version"] = 9;
  EXPECT_THROW(parse_certificate(j.dump()), ParseError);
  j = nlohmann::json::parse(text);
  j["congruences"][3]["lhs"] = "ten";
  try {
    parse_certificate(j.dump());
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("/congruences/3/lhs"), std::string::npos) << e.what();
  }
  j = nlohmann::json::parse(text);
  j["dual"][0] = "2/x";
  EXPECT_THROW(parse_certificate(j.dump()), ParseError);
}

TEST(Certify, RationalDualsAndLargeBoundsSerialize) {
  auto c = acceptance::published_certificate();
  for (auto& y : c.dual) y = y * Rational(1, 3);
  c.bound_num = BigInt("200000000000000000000000");
  c.bound_den = BigInt("700000000000000000000001");
  auto back = parse_certificate(serialize(c));
  EXPECT_EQ(back.dual, c.dual);
  EXPECT_EQ(back.bound_num, c.bound_num);
  EXPECT_EQ(back.bound_den, c.bound_den);
}

TEST(Certify, PipelineCertificatesForSeveralSeedsAreAccepted) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    BoundOptions opts;
    opts.prune_opts.seed = seed;
    opts.prune_opts.restarts = 3;
    auto out = run_bound_pipeline(acceptance::flagship_problem(), opts);
    EXPECT_TRUE(out.report.accepted) << out.report.detail;
    EXPECT_EQ(out.certificate.bound(), Rational(2, 7));
    EXPECT_TRUE(verify_certificate(parse_certificate(serialize(out.certificate))).accepted);
  }
}

TEST(Certify, MakeCertificateRefusesInvalidBound) {
  auto p = acceptance::flagship_problem();
  auto lp = build_lp(p);
  std::vector<Rational> zeros(lp.num_rows(), Rational(0));
  EXPECT_THROW(make_certificate(p, lp, zeros, Rational(2, 7)), Error);
}

// Every accepted modular certificate must dominate the true maximum density.
TEST(Certify, SoundAgainstExhaustiveMaximumForSmallPrimes) {
  const auto eq = DilateEquation::canonical();
  for (std::int64_t p : {7, 11, 13, 17, 19}) {
    for (std::int64_t d : {1, 2, 6}) {
      const auto dm = floor_mod(d, p);
      WitnessSet x(acceptance::detail::reduced_witness(p));
      BoundOptions opts;
      opts.prune_opts.restarts = 2;
      auto out = run_bound_pipeline(LpProblem{x, eq, dm, ModeSpec::modular(p), x[0]}, opts);
      ASSERT_TRUE(out.report.accepted);
      auto best = max_excluding_set(p, eq, dm);
      EXPECT_LE(Rational(best.optimum, p), out.certificate.bound()) << "p=" << p << " d=" << d;
    }
  }
}
