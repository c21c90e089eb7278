#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#ifndef DILATES_CLI
#error "DILATES_CLI must name the command-line binary"
#endif

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  std::string cmd = std::string(DILATES_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string tmp(const std::string& name) { return ::testing::TempDir() + name; }

const std::string kBundled = std::string(DILATES_DATA_DIR) + "/flagship_certificate.json";

}  // namespace

TEST(Cli, VerifyBundledCertificate) {
  auto r = run("verify " + kBundled);
  EXPECT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "accepted");
  EXPECT_EQ(j["atoms"], 53);
  auto h = run("verify --human " + kBundled);
  EXPECT_NE(h.out.find("53 atoms"), std::string::npos);
}

TEST(Cli, VerifyCorruptedAndEmpty) {
  std::ifstream in(kBundled);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto pos = text.find("\"-7\"");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 4, "\"-6\"");
  std::ofstream(tmp("corrupt.json")) << text;
  EXPECT_EQ(run("verify " + tmp("corrupt.json")).status, 1);
  std::ofstream(tmp("empty.json")).close();
  EXPECT_EQ(run("verify " + tmp("empty.json")).status, 2);
  EXPECT_EQ(run("verify " + tmp("does-not-exist.json")).status, 2);
}

TEST(Cli, BoundTrivialWitness) {
  auto r = run("bound --witness 0 --d 6 --human");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.substr(0, 4), "1/1\n");
}

TEST(Cli, BoundFlagshipEmitsVerifiableCertificate) {
  auto cert = tmp("flagship.json");
  auto r = run("bound --witness 0,2,3,4,7,8,9,10 --d 6 --coeffs 1,1,-2 --mode integer --restarts 3 --emit-cert " + cert +
               " --dump-lp " + tmp("flagship_lp"));
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["bound"], "2/7");
  EXPECT_EQ(j["atoms"], 53);
  EXPECT_EQ(run("verify " + cert).status, 0);
  std::ifstream txt(tmp("flagship_lp.txt"));
  std::string first;
  std::getline(txt, first);
  EXPECT_EQ(first.rfind("e:", 0), 0u);
}

TEST(Cli, BoundModular) {
  auto r = run("bound --witness 0,1,2,3,10,11,12,20,21 --d 2 --mode modular --modulus 31 --restarts 2");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["bound"], "2/7");
}

TEST(Cli, InvalidInputExitsTwo) {
  EXPECT_EQ(run("bound --witness 3,1").status, 2);
  EXPECT_EQ(run("bound --witness x").status, 2);
  EXPECT_EQ(run("bound --witness 0,1 --mode modular").status, 2);
  EXPECT_EQ(run("nonsense").status, 2);
  EXPECT_EQ(run("delta --interval 0..70").status, 2);
}

TEST(Cli, BruteDeltaCountIdentities) {
  auto b = run("brute --p 13 --coeffs 1,1,-2 --human");
  EXPECT_EQ(b.status, 0);
  EXPECT_EQ(b.out.rfind("M=3, witness {1,2,3}", 0), 0u);
  auto d = nlohmann::json::parse(run("delta --d 6 --interval 0..41").out);
  EXPECT_EQ(d["delta"], 12);
  EXPECT_EQ(d["density_bound"], "2/7");
  EXPECT_EQ(nlohmann::json::parse(run("count --m 14 --k 3 --diffs 1,2").out)["count"], 120);
  auto ids = nlohmann::json::parse(run("identities --coeffs 10,12,15,20,30,-87 --target 60 --gaps 1..6").out);
  ASSERT_EQ(ids.size(), 6u);
  for (const auto& e : ids) EXPECT_TRUE(e["verified"].get<bool>());
}

TEST(Cli, FourierSearchPlot) {
  auto f = nlohmann::json::parse(run("fourier --p 29 --witness 0,2,3,4").out);
  EXPECT_EQ(f["base_bound"], "1/2");
  auto s1 = run("search --budget 60 --seed 3");
  auto s2 = run("search --budget 60 --seed 3");
  EXPECT_EQ(s1.status, 0);
  EXPECT_EQ(s1.out, s2.out);
  auto svg = tmp("w.svg");
  EXPECT_EQ(run("plot --modulus 151 --elements 0,1,5 --out " + svg).status, 0);
  std::ifstream in(svg);
  std::string head;
  std::getline(in, head);
  EXPECT_EQ(head.rfind("<svg", 0), 0u);
}

TEST(Cli, ReproSingleCheck) {
  auto r = run("repro --only 6");
  EXPECT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_TRUE(j[0]["passed"].get<bool>());
}
