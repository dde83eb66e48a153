#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "conelab/cli.hpp"
#include "conelab/io.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = conelab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(CONELAB_DATA_DIR) + "/" + name; }

conelab::io::Json report(const Run& r) { return conelab::io::parse_json(r.out); }

}  // namespace

TEST_CASE("extreme-rays") {
  const auto sq = run({"extreme-rays", data("square-cone.json")});
  CHECK(sq.code == 0);
  CHECK(report(sq)["extreme_rays"].size() == 4);
  CHECK(report(sq)["seed"] == 0);
  CHECK(report(sq)["samples"] == 10000);
  CHECK(report(run({"extreme-rays", data("orthant3.json")}))["extreme_rays"].size() == 3);
  const auto ws = run({"extreme-rays", data("whole-space.json")});
  CHECK(ws.code == 3);
  CHECK(report(ws)["error"]["kind"] == "NotPointed");
}

TEST_CASE("classify and hypothesis") {
  const auto sq = run({"classify", data("square-cone.json")});
  CHECK(sq.code == 0);
  for (const auto& r : report(sq)["extreme_rays"]) {
    CHECK(r["engaged"] == true);
    CHECK(r["certificate_verified"] == true);
  }
  CHECK(report(sq)["hypothesis"]["holds"] == true);
  const auto o3 = run({"classify", data("orthant3.json")});
  CHECK(o3.code == 1);
  for (const auto& r : report(o3)["extreme_rays"]) CHECK(r["engaged"] == false);
  const auto tn = run({"classify", data("twonorm2d.json")});
  CHECK(tn.code == 1);
  CHECK(report(tn)["extreme_rays"].size() == 2);
  CHECK(run({"classify", data("whole-space.json")}).code == 3);
  CHECK(run({"hypothesis", data("square-cone.json")}).code == 0);
  CHECK(run({"hypothesis", data("twonorm2d.json")}).code == 1);
}

TEST_CASE("check-iso exit codes") {
  const auto cube = run({"check-iso", data("orthant2.json"), data("cube-diagonal.json"), "--samples", "2000"});
  CHECK(cube.code == 1);
  CHECK(report(cube)["affine"] == false);
  CHECK(report(cube)["samples"] == 2000);
  const auto lin = run({"check-iso", data("square-cone.json"), data("square-linear.json"), "--samples", "2000"});
  CHECK(lin.code == 0);
  CHECK(report(lin)["affine"] == true);
  const auto forged = run({"check-iso", data("square-cone.json"), data("square-forged.json"), "--samples", "2000"});
  CHECK(forged.code == 4);
  const auto battery = report(forged)["order_iso_battery"];
  CHECK(battery["verdict"] == "violation");
  CHECK(battery["witnesses_reverified"] == true);
  CHECK(battery["order_preserving_violations"].size() + battery["inverse_violations"].size() > 0);
  CHECK(run({"check-iso", data("twonorm2d.json"), data("twonorm-lift.json"), "--samples", "2000"}).code == 1);
}

TEST_CASE("lattice commands") {
  const auto s = run({"supremum", data("square-cone.json"), data("square-sup-exists.json")});
  CHECK(s.code == 0);
  CHECK(report(s)["result"]["value"].dump() == R"(["0","0","2"])");
  const auto o = run({"supremum", data("orthant2.json"), data("orthant2-points.json")});
  CHECK(report(o)["result"]["value"].dump() == R"(["1","1"])");
  const auto u = run({"supremum", data("square-cone.json"), data("square-sup-undefined.json")});
  CHECK(u.code == 5);
  CHECK(report(u)["result"]["witnesses"].size() == 2);
  CHECK(run({"infimum", data("square-cone.json"), data("square-sup-exists.json")}).code == 0);
  const auto e = run({"evalexpr", data("square-cone.json"), data("square-expr.json")});
  CHECK(e.code == 0);
  CHECK(report(e)["value"].dump() == R"(["0","0","2"])");
  const auto eu = run({"evalexpr", data("square-cone.json"), data("square-expr-undefined.json")});
  CHECK(eu.code == 5);
  CHECK(report(eu)["undefined"]["path"].dump() == "[1]");
  const auto n = run({"unitnorm", data("square-cone.json"), "--u", "0,0,1", "--x", "1,2,0"});
  CHECK(n.code == 0);
  CHECK(report(n)["norm"] == "2");
  CHECK(run({"unitnorm", data("square-cone.json"), "--u", "1,0,1", "--x", "1,2,0"}).code == 2);
}

TEST_CASE("psd commands") {
  const auto w = run({"psd", "witness", "--n", "3", "--x", "e1"});
  CHECK(w.code == 0);
  CHECK(report(w)["residual"].get<double>() <= 1e-10);
  const auto s = run({"psd", "supcheck", "--n", "2", "--b", "diag:1,0.5", "--samples", "500"});
  CHECK(s.code == 1);
  CHECK(report(s)["verdict"] == "not_upper_bound");
  CHECK(report(s)["witness"].is_array());
  const auto c = run({"psd", "conj", "--a", "diag:4,1", "--q", "proj:e1"});
  CHECK(c.code == 0);
  const auto img = report(c)["image"]["rows"];
  CHECK(img[0][0].get<double>() == doctest::Approx(4.0));
  CHECK(std::abs(img[1][1].get<double>()) < 1e-15);
  CHECK(std::abs(img[0][1].get<double>()) < 1e-15);
  CHECK(run({"psd", "conj", "--a", "diag:1,0", "--q", "proj:e1"}).code == 6);
  const auto a = run({"psd", "approx", "--a", data("psd-diag.json"), "--k", "4"});
  CHECK(a.code == 0);
  CHECK(a.out.rfind("k,d_k,e_k\n", 0) == 0);
  CHECK(run({"psd", "approx", "--a", "diag:1,-1"}).code == 6);
}

TEST_CASE("input errors map to exit code 2") {
  CHECK(run({"extreme-rays", data("missing.json")}).code == 2);
  CHECK(run({"extreme-rays"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"supremum", data("square-cone.json"), data("orthant2-points.json")}).code == 2);
  CHECK(run({"check-iso", data("square-cone.json"), data("cube-diagonal.json")}).code == 2);
  CHECK(run({"extreme-rays", data("square-cone.json"), "--samples", "many"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("reports are reproducible") {
  const std::vector<std::string> args{"check-iso", data("square-cone.json"), data("square-forged.json"), "--samples",
                                      "1500", "--seed", "9"};
  const auto a = run(args), b = run(args);
  CHECK(a.out == b.out);
  auto par = args;
  par.push_back("--parallel");
  CHECK(run(par).out == a.out);
  auto other = args;
  other[6] = "10";
  CHECK(run(other).out != a.out);

  const std::string path = (std::filesystem::temp_directory_path() / "conelab-cli-test-out.json").string();
  const auto f = run({"--out", path, "classify", data("square-cone.json")});
  CHECK(f.code == 0);
  CHECK(f.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == run({"classify", data("square-cone.json")}).out);
  std::remove(path.c_str());

  const auto sum = run({"--summary", "hypothesis", data("square-cone.json")});
  CHECK(sum.err.find("hypothesis holds") != std::string::npos);
}
