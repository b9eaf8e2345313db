#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include "scv/cli.hpp"

using namespace scv;
using namespace scv::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "scv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t column_of(const std::string& text) {
  try {
    parse_domain(text);
  } catch (const ParseError& e) {
    return e.column();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse_domain examples") {
  const auto e = parse_domain("ellipsoid:p=2,3");
  REQUIRE(e.get_if<Ellipsoid>());
  CHECK(e.get_if<Ellipsoid>()->exponents == std::vector<double>{2, 3});
  const auto p = parse_domain("product(disc:c=0+0i,r=1;disc:c=0+0i,r=1)");
  REQUIRE(p.get_if<Product>());
  CHECK(p.dim() == 2);
  CHECK(p.is_balanced());
  CHECK_THROWS_AS(parse_domain("ball:n=0"), ParseError);
}

TEST_CASE("parse errors carry columns") {
  CHECK(column_of("elipsoid:p=2") == 1);
  CHECK(column_of("ball:n=0") == 8);
  CHECK(column_of("disc:c=0+0i,r=-1") == 15);
  CHECK(column_of("ball:n=9") == 8);
  CHECK(column_of("product(ball:n=2;") == 18);
  CHECK(column_of("polydisc:r=1,x") == 14);
  CHECK(column_of("ball:n=2 junk") > 0);
  CHECK_THROWS_AS(parse_complex("1+"), ParseError);
  CHECK_THROWS_AS(parse_poly("1_1"), ParseError);
  CHECK_THROWS_AS(parse_multi_index("1_-1"), ParseError);
}

TEST_CASE("parsing is whitespace-insensitive") {
  CHECK(print_domain(parse_domain(" product( disc : c = 0.5 - 1i , r = 2 ; ball:n=2 ) ")) ==
        "product(disc:c=0.5-1i,r=2;ball:n=2)");
  CHECK(parse_complex(" 1 - 2i ") == Complex(1, -2));
}

TEST_CASE("complex and point syntax") {
  CHECK(parse_complex("0.5") == Complex(0.5, 0));
  CHECK(parse_complex("-0.5+2i") == Complex(-0.5, 2));
  CHECK(parse_complex("1e-3-2.5e1i") == Complex(1e-3, -25));
  CHECK(parse_complex("i") == Complex(0, 1));
  CHECK(parse_complex("-i") == Complex(0, -1));
  CHECK(parse_complex("3i") == Complex(0, 3));
  CHECK(parse_point("0+0i,0.5").dim() == 2);
  CHECK(parse_grid("-3,-2,-1,-0.25") == std::vector<double>{-3, -2, -1, -0.25});
  CHECK(parse_multi_index("2_0_1") == MultiIndex{2, 0, 1});
}

TEST_CASE("domain and polynomial text round-trip") {
  for (const std::string s :
       {"disc:c=0+0i,r=1", "disc:c=0.20000000000000001-0.5i,r=1.5", "ball:n=3", "polydisc:r=1,2",
        "ellipsoid:p=2,3", "gauge:model-z1z2", "product(disc:c=0+0i,r=1;product(ball:n=2;polydisc:r=0.5))"}) {
    CHECK(print_domain(parse_domain(s)) == s);
  }
  for (const std::string s : {"1_1:1+0i", "2_0:1+0i,1_1:-0.5+2i", "0_0:0+1i"}) {
    CHECK(print_poly(parse_poly(s)) == s);
  }
}

TEST_CASE("csv quoting") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  Table t;
  t.columns = {"x", "y"};
  t.add({1.0 / 3.0, "a,b"});
  CHECK(to_csv(t) == "x,y\r\n0.33333333333333331,\"a,b\"\r\n");
}

TEST_CASE("kernel subcommand example") {
  const auto r = invoke({"kernel", "--domain", "disc:c=0+0i,r=1", "--point", "0+0i"});
  CHECK(r.code == 0);
  CHECK(r.out.find(",0.31830988618379069,") != std::string::npos);
  CHECK(r.out.rfind("domain,point,", 0) == 0);
  CHECK(r.out.find(",seed\r\n") != std::string::npos);
}

TEST_CASE("dimension subcommand example") {
  const auto r = invoke({"dimension", "--domain", "gauge:model-z1z2", "--cap", "10"});
  CHECK(r.code == 0);
  CHECK(r.out.find("gauge:model-z1z2,10,0,66,trivial") != std::string::npos);
}

TEST_CASE("json mirrors csv") {
  const auto r = invoke({"metric", "--domain", "disc:c=0+0i,r=1", "--point", "0.5", "--vector", "1", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0]["value"].get<double>() == doctest::Approx(std::sqrt(2.0) / 0.75).epsilon(1e-8));
  CHECK(j["columns"].back() == "seed");
}

TEST_CASE("exit codes") {
  CHECK(invoke({"kernel", "--domain", "ball:n=0", "--point", "0"}).code == 2);
  CHECK(invoke({"kernel", "--domain", "disc:c=0+0i,r=1"}).code == 2);
  CHECK(invoke({"no-such-command"}).code == 2);
  CHECK(invoke({"kernel", "--domain", "disc:c=0+0i,r=1", "--point", "2"}).code == 3);
  CHECK(invoke({"azukawa", "--domain", "ellipsoid:p=2,3", "--point", "0.1,0", "--vector", "1,0"}).code == 3);
  const auto bad = invoke({"kernel", "--domain", "ball:n=0", "--point", "0"});
  CHECK(bad.out.empty());
  CHECK(bad.err.find("column 8") != std::string::npos);
}

TEST_CASE("probe verdicts set the exit code") {
  const auto ok = invoke({"scan-monotone", "--domain", "disc:c=0+0i,r=1", "--pole", "0.5", "--poly", "0:1",
                          "--grid", "-3,-2,-1,-0.25"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("pass") != std::string::npos);
  const auto lc = invoke({"probe-logconvex", "--domain", "disc:c=0+0i,r=1", "--pole", "0.5", "--poly", "0:1",
                          "--grid", "-1,0"});
  CHECK(lc.code == 2);
}

TEST_CASE("output file option") {
  const std::string path = "test_cli_out.csv";
  const auto r = invoke({"kernel", "--domain", "disc:c=0+0i,r=1", "--point", "0", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::FILE* f = std::fopen(path.c_str(), "rb");
  REQUIRE(f);
  char buf[16] = {};
  CHECK(std::fread(buf, 1, 6, f) == 6);
  std::fclose(f);
  std::remove(path.c_str());
  CHECK(std::string(buf) == "domain");
}

TEST_CASE("every library operation has exactly one subcommand") {
  const auto& subs = subcommands();
  const std::set<std::string> sub_set(subs.begin(), subs.end());
  CHECK(sub_set.size() == subs.size());
  std::set<std::string> ops, used;
  for (const auto& [op, sub] : operation_coverage()) {
    CHECK(ops.insert(op).second);
    CHECK(sub_set.count(sub) == 1);
    used.insert(sub);
  }
  for (const std::string required :
       {"kernel", "kernel-h", "kernel-k", "metric", "azukawa", "indicatrix-vol", "suita", "scan-monotone",
        "probe-logconvex", "probe-convexity", "probe-psh", "boundary-scan", "dimension", "suite"}) {
    CHECK(sub_set.count(required) == 1);
  }
  for (const auto& s : subs) CHECK_MESSAGE(used.count(s) == 1, s);
  for (const std::string op : {"gauge", "contains", "bounding_box", "green", "sublevel_set", "scaled_sublevel",
                               "moment", "kernel", "kernel_on_sublevel", "kernel_h_balanced", "kernel_h", "kernel_k",
                               "bergman_metric", "azukawa", "indicatrix_contains", "indicatrix_volume", "cr_lower",
                               "suita_functional", "monotonicity_scan", "log_convexity_probe",
                               "volume_convexity_probe", "volume_psh_probe", "boundary_limit_scan", "dimension_probe",
                               "run_suite"}) {
    CHECK_MESSAGE(ops.count(op) == 1, op);
  }
}

TEST_CASE("every subcommand answers --help") {
  for (const auto& s : subcommands()) {
    const auto r = invoke({s, "--help"});
    CHECK_MESSAGE(r.code == 0, s);
    CHECK_MESSAGE(!r.out.empty(), s);
  }
}

TEST_CASE("outputs do not depend on the worker count") {
  const std::vector<std::string> args = {"indicatrix-vol", "--domain", "ball:n=2", "--point", "0.2,0.1",
                                         "--samples", "50000", "--seed", "5"};
  setenv("SCV_WORKERS", "1", 1);
  const auto a = invoke(args);
  setenv("SCV_WORKERS", "3", 1);
  const auto b = invoke(args);
  unsetenv("SCV_WORKERS");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find(",5\r\n") != std::string::npos);
}
