#include <gtest/gtest.h>

#include <json.hpp>

#include <sstream>

#include "cli.hpp"

using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = vincstat::cli::dispatch(std::move(args), in, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  const auto r = run(std::move(args));
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  return json::parse(r.out);
}

}  // namespace

TEST(Cli, CountWorkedExample) {
  const auto r = run({"count", "--pattern", "3|1,2", "--perm", "5,8,2,1,3,4,7,6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"count\":5}\n");
}

TEST(Cli, CountListing) {
  const auto j = run_json({"count", "--pattern", "2,1", "--n", "4", "--list"});
  EXPECT_EQ(j["position_count"], 3);
  EXPECT_EQ(j["positions"], json::parse("[[1,2],[2,3],[3,4]]"));
  EXPECT_EQ(j["truncated"], false);
  const auto capped = run_json({"count", "--pattern", "2,1", "--n", "4", "--list", "--limit", "2"});
  EXPECT_EQ(capped["positions"].size(), 2u);
  EXPECT_EQ(capped["truncated"], true);
}

TEST(Cli, VarPoly) {
  const auto j = run_json({"var-poly", "--pattern", "2,1"});
  EXPECT_EQ(j["coefficients"], json::parse(R"(["1/12","1/12"])"));
  EXPECT_EQ(j["valid_from"], 2);
  EXPECT_EQ(j["degree"], 1);
  EXPECT_EQ(j["leading_coefficient"], "1/12");
}

TEST(Cli, Moments) {
  const auto j = run_json({"moments", "--pattern", "1|2", "--n", "3"});
  EXPECT_EQ(j["mean"], "3/2");
  EXPECT_EQ(j["variance"], "11/12");
  // Large n goes through the polynomial: 1000*999*2005/72.
  const auto big = run_json({"moments", "--pattern", "1|2", "--n", "1000"});
  EXPECT_EQ(big["variance"], "27819375/1");
  EXPECT_EQ(big["source"], "polynomial");
}

TEST(Cli, Depgraph) {
  const auto j = run_json({"depgraph", "--pattern", "2,1", "--n", "5"});
  EXPECT_EQ(j["N"], 4);
  EXPECT_EQ(j["D"], 3);
  EXPECT_EQ(j["edge_count"], 3);
  const auto capped = run_json({"depgraph", "--pattern", "1|2", "--n", "100", "--edge-cap", "10"});
  EXPECT_FALSE(capped.contains("edge_count"));
}

TEST(Cli, Bounds) {
  const auto j = run_json({"bounds", "--N", "1", "--D", "1", "--B", "1", "--sigma2", "1", "--r",
                           "2", "--delta", "4.242640687119285"});
  EXPECT_DOUBLE_EQ(j["stein"].get<double>(), 16.0);
  EXPECT_DOUBLE_EQ(j["cumulant"]["bound"].get<double>(), 2.0);
  EXPECT_NEAR(j["saulis"]["bound"].get<double>(), 108.0, 1e-9);
  const auto computed = run_json({"bounds", "--pattern", "2,1", "--n", "11"});
  EXPECT_DOUBLE_EQ(computed["N"].get<double>(), 10.0);
  EXPECT_DOUBLE_EQ(computed["D"].get<double>(), 3.0);
  EXPECT_DOUBLE_EQ(computed["sigma2"].get<double>(), 1.0);
  // A user-supplied upper bound on D replaces the computed value.
  const auto loose = run_json({"bounds", "--pattern", "2,1", "--n", "11", "--D", "5"});
  EXPECT_DOUBLE_EQ(loose["D"].get<double>(), 5.0);
  EXPECT_EQ(run({"bounds", "--N", "3"}).code, 2);
}

TEST(Cli, Sample) {
  const auto j = run_json({"sample", "--n", "10", "--seed", "42", "--count", "2"});
  EXPECT_EQ(j["permutations"][0], json::parse("[5,8,10,2,1,6,3,7,4,9]"));
  const auto r = run_json({"sample", "--n", "10", "--seed", "42", "--method", "reduction"});
  EXPECT_EQ(r["permutations"][0], json::parse("[9,6,7,5,10,1,3,4,8,2]"));
}

TEST(Cli, CltJsonAndCsv) {
  const std::vector<std::string> base{"clt", "--pattern", "2,1", "--n", "50", "--samples", "2000",
                                      "--seed", "9", "--resamples", "20"};
  const auto j = run_json(base);
  EXPECT_EQ(j["m"], 2000);
  EXPECT_EQ(j["exact_moments"], true);
  EXPECT_EQ(j["cumulants"].size(), 4u);
  auto csv_args = base;
  csv_args.insert(csv_args.end(), {"--format", "csv"});
  const auto csv = run(csv_args);
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')),
            "pattern,n,m,seed,d_K,k1,k2,k3,k4,se3,se4,exact_moments");
  EXPECT_NE(csv.out.find("\n\"2,1\",50,2000,9,"), std::string::npos);
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
  const std::vector<std::string> base{"clt", "--pattern", "1|2", "--n", "30", "--samples", "3000",
                                      "--seed", "5", "--resamples", "30", "--threads"};
  auto one = base, four = base;
  one.push_back("1");
  four.push_back("4");
  EXPECT_EQ(run(one).out, run(four).out);
}

TEST(Cli, RateFromCsv) {
  const std::string input =
      "n,d_K\n"
      "100,0.1\n"
      "400,0.05\n"
      "\"1600\",0.025\n";
  const auto r = run({"rate"}, input);
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["slope"].get<double>(), -0.5, 1e-12);
  EXPECT_EQ(j["points"].size(), 3u);

  // Headerless input, and concatenated clt outputs with repeated headers.
  EXPECT_EQ(run({"rate"}, "10,1\n20,0.5\n40,0.25\n").code, 0);
  const std::string clt_rows =
      "pattern,n,m,seed,d_K,k1\n\"2,1\",100,10,1,0.1,0\n"
      "pattern,n,m,seed,d_K,k1\n\"2,1\",400,10,1,0.05,0\n"
      "pattern,n,m,seed,d_K,k1\n\"2,1\",1600,10,1,0.025,0\n";
  const auto k = run({"rate"}, clt_rows);
  ASSERT_EQ(k.code, 0) << k.out;
  EXPECT_NEAR(json::parse(k.out)["slope"].get<double>(), -0.5, 1e-12);
}

TEST(Cli, Oracle) {
  const auto d = run_json({"oracle", "--pattern", "2,1", "--n", "3", "--distribution"});
  EXPECT_EQ(d["distribution"], json::parse(R"({"0":"1/6","1":"2/3","2":"1/6"})"));
  const auto m = run_json({"oracle", "--pattern", "1|2", "--n", "3"});
  EXPECT_EQ(m["mean"], "3/2");
  EXPECT_EQ(m["variance"], "11/12");
  const auto l = run_json({"oracle", "--pattern", "2,1", "--n", "4", "--ltv", "1"});
  EXPECT_EQ(l["total"], "5/12");
  EXPECT_EQ(l["matches"], true);
  EXPECT_EQ(run({"oracle", "--pattern", "2,1", "--n", "4", "--ltv", "1", "--moments"}).code, 2);
}

TEST(Cli, UsageErrorsExitTwo) {
  auto r = run({});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("UnknownCommand"), std::string::npos);

  r = run({"frobnicate"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("UnknownCommand"), std::string::npos);

  r = run({"count", "--pattern", "2,1", "--bogus"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("BadFlag"), std::string::npos);

  EXPECT_EQ(run({"moments", "--pattern", "2,1"}).code, 2);
  EXPECT_EQ(run({"sample", "--n", "3", "--method", "bogus"}).code, 2);
  EXPECT_EQ(run({"count", "--pattern", "2,1"}).code, 2);
}

TEST(Cli, ComputationErrorsExitOneWithErrorObject) {
  auto r = run({"oracle", "--pattern", "2,1", "--n", "12"});
  EXPECT_EQ(r.code, 1);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["error"]["kind"], "SizeLimitExceeded");
  EXPECT_FALSE(j["error"]["message"].get<std::string>().empty());

  r = run({"count", "--pattern", "1||2", "--perm", "1,2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["error"]["kind"], "EmptyBlock");

  r = run({"var-poly", "--pattern", "1,2,3,4,5,6"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["error"]["kind"], "SizeLimitExceeded");

  r = run({"clt", "--pattern", "1", "--n", "10", "--samples", "100"});
  EXPECT_EQ(json::parse(r.out)["error"]["kind"], "PatternTooSmall");

  r = run({"rate"}, "10,0.1\n20,0.05\n");
  EXPECT_EQ(json::parse(r.out)["error"]["kind"], "DegenerateInput");
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("var-poly"), std::string::npos);
}
