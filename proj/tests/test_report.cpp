#include <gtest/gtest.h>

#include <sstream>

#include "dtmwb/certificate_io.hpp"
#include "dtmwb/instances.hpp"
#include "dtmwb/report.hpp"
#include "dtmwb/suites.hpp"

using namespace dtmwb;

TEST(Csv, QuotesOnlyWhenNeeded) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
  EXPECT_EQ(csv_field(""), "");
}

TEST(Csv, TimingColumnIsOptional) {
  std::vector<ReportRow> rows = {{"nutil", "p1", "lebesgue", Verdict::pass, "", 1.5}};
  const std::string plain = to_csv(rows);
  EXPECT_EQ(plain.substr(0, plain.find('\n')), "suite,statement,instance,verdict,witness");
  EXPECT_NE(plain.find("nutil,p1,lebesgue,pass,"), std::string::npos);
  const std::string timed = to_csv(rows, true);
  EXPECT_NE(timed.substr(0, timed.find('\n')).find("wall_ms"), std::string::npos);
}

TEST(Csv, ExitCodes) {
  ReportRow pass{"s", "a", "i", Verdict::pass, "", 0};
  ReportRow fail{"s", "b", "i", Verdict::fail, "w", 0};
  ReportRow bound{"s", "c", "i", Verdict::bound_only, "w", 0};
  ReportRow skip{"s", "d", "i", Verdict::skipped, "w", 0};
  EXPECT_EQ(exit_code({}), 0);
  EXPECT_EQ(exit_code({pass, skip}), 0);
  EXPECT_EQ(exit_code({pass, bound}), 3);
  EXPECT_EQ(exit_code({bound, fail}), 1);
}

TEST(CertificateIo, CoverAndPackingRoundTrip) {
  auto g = make_grid_space(2);
  SetFunction nu = make_instance(g, "mix:1/2*lebesgue+1/2*aarnes").fn;
  CoverCertificate c = tilde(nu, g->universe());
  SetFunction lam = make_instance(g, "signed:lebesgue-aarnes").fn;
  PackingCertificate p = PackingSolver(lam).solve(g->universe());
  std::string text = format_certificate({g->label(), nu.name(), c}) + format_certificate({g->label(), lam.name(), p});
  auto back = parse_certificates(text);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].model, g->label());
  EXPECT_EQ(back[0].function, nu.name());
  const auto& c2 = std::get<CoverCertificate>(back[0].cert);
  EXPECT_EQ(c2.target, c.target);
  EXPECT_EQ(c2.pieces, c.pieces);
  EXPECT_EQ(c2.total, c.total);
  EXPECT_EQ(c2.lower, c.lower);
  EXPECT_EQ(c2.optimal, c.optimal);
  std::string why;
  EXPECT_TRUE(validate_cover(nu, c2, &why)) << why;
  const auto& p2 = std::get<PackingCertificate>(back[1].cert);
  EXPECT_EQ(p2.pieces, p.pieces);
  EXPECT_EQ(p2.total, p.total);
  EXPECT_EQ(p2.upper, p.upper);
  EXPECT_TRUE(validate_packing(lam, p2, &why)) << why;
}

TEST(CertificateIo, RejectsMalformedText) {
  EXPECT_THROW(parse_certificates("cover\nmodel x\ntotal 1\n"), ParseError);
  EXPECT_THROW(parse_certificates("triangle\nend\n"), ParseError);
  EXPECT_THROW(parse_certificates("cover\nmodel x\nfunction f\ntarget zz\ntotal 1\nbound 0\noptimal 1\nend\n"),
               ParseError);
  EXPECT_TRUE(parse_certificates("").empty());
}

TEST(Suites, InfiniteInstanceSkipsModularity) {
  auto g = make_grid_space(2);
  auto rows = run_suite(g, "modularity", "infdtm", DecomposeOptions{});
  ASSERT_FALSE(rows.empty());
  for (const auto& r : rows) EXPECT_EQ(r.verdict, Verdict::skipped) << r.statement << ": " << r.witness;
}

TEST(Suites, PairInstanceForOrder) {
  auto g = make_grid_space(2);
  auto rows = run_suite(g, "order", "pair:mix:1/2*lebesgue<=lebesgue", DecomposeOptions{});
  ASSERT_FALSE(rows.empty());
  for (const auto& r : rows) {
    EXPECT_NE(r.verdict, Verdict::fail) << r.statement << ": " << r.witness;
    EXPECT_EQ(r.suite, "order");
  }
  EXPECT_THROW(run_suite(g, "order", "pair:lebesgue", DecomposeOptions{}), ParseError);
}

TEST(Suites, ConfigErrorsPropagate) {
  auto g = make_grid_space(2);
  EXPECT_THROW(run_suite(g, "nosuch", "lebesgue", DecomposeOptions{}), ParseError);
  EXPECT_THROW(run_suite(g, "nutil", "aarnes:(0,0),(0,1),(3,3)", DecomposeOptions{}), BadMarkedCells);
}

TEST(Suites, SignedInstanceSkipsNutil) {
  auto g = make_grid_space(2);
  auto rows = run_suite(g, "nutil", "signed:lebesgue-aarnes", DecomposeOptions{});
  ASSERT_FALSE(rows.empty());
  for (const auto& r : rows) EXPECT_EQ(r.verdict, Verdict::skipped);
}

TEST(Suites, ThreadCountDoesNotChangeRows) {
  SuiteConfig cfg;
  cfg.space = make_grid_space(2);
  cfg.instances = {"lebesgue", "aarnes", "zero"};
  cfg.suites = {"nutil", "proper"};
  auto one = run_suites(cfg);
  cfg.threads = 3;
  auto three = run_suites(cfg);
  EXPECT_EQ(to_csv(one), to_csv(three));
  ASSERT_FALSE(one.empty());
  EXPECT_EQ(one.front().instance, "lebesgue");
  EXPECT_EQ(one.back().instance, "zero");
  EXPECT_EQ(exit_code(one), 0);
}
