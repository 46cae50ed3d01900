#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rfsep/cli/run.hpp"
#include "rfsep/separate/separate.hpp"
#include "test_util.hpp"

using namespace rfsep;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("rfsep_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

const std::string kSanov = test::data_path("sanov.grp");

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("separate emits a verifiable record") {
    const auto r = call({"separate", kSanov, "A"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("rfsep-certificate: 1\n", 0) == 0);
    CHECK(r.out.find("order_bound: 81\n") != std::string::npos);
    const auto cert = parse_certificate(r.out);
    CHECK(verify_certificate(test::load("sanov.grp"), cert));

    const std::string path = temp_file("cert.txt", r.out);
    const auto v = call({"verify", kSanov, path});
    CHECK(v.code == 0);
    CHECK(v.out == "ok\n");

    std::string tampered = r.out;
    tampered.replace(tampered.find("order_bound: 81"), 15, "order_bound: 80");
    const auto t = call({"verify", kSanov, temp_file("bad.txt", tampered)});
    CHECK(t.code == 1);
    CHECK(t.out.find("rejected") != std::string::npos);
  }

  TEST_CASE("record round trip over random words") {
    for (const char* word : {"A B", "[A,B]", "A^3 B^-2", "B A^-1 B"}) {
      const auto r = call({"separate", kSanov, word});
      REQUIRE(r.code == 0);
      const auto cert = parse_certificate(r.out);
      CHECK(serialize(cert) == r.out);
      CHECK(verify_certificate(test::load("sanov.grp"), cert));
    }
    const auto s = call({"separate", kSanov, "A", "--mode", "semisimple"});
    CHECK(s.code == 0);
    CHECK(verify_certificate(test::load("sanov.grp"), parse_certificate(s.out)));
  }

  TEST_CASE("human format") {
    const auto r = call({"separate", kSanov, "A", "--format", "human"});
    CHECK(r.code == 0);
    CHECK(r.out.find("81") != std::string::npos);
    CHECK(r.out.find("rfsep-certificate") == std::string::npos);
  }

  TEST_CASE("depth") {
    const auto r = call({"depth", "--free-rank", "2", "[x,y]"});
    CHECK(r.code == 0);
    CHECK(r.out.find("order: 6\n") != std::string::npos);
    CHECK(r.out.find("exhaustive: true\n") != std::string::npos);
    const auto lie = call({"depth", "--free-rank", "2", "[x,y]", "--class", "lie"});
    CHECK(lie.out.find("order: 60\n") != std::string::npos);

    // Catalog files extend the default catalog.
    const std::string cat = temp_file("cat.txt", "group Z2 degree 2 : (1,2)\n");
    const auto extended = call({"depth", "--free-rank", "2", "x", "--catalog", cat});
    CHECK(extended.code == 0);
    CHECK(extended.out.find("order: 2\n") != std::string::npos);
    const std::string broken = temp_file("broken.txt", "group Z2 : (1,2)\n");
    CHECK(call({"depth", "--free-rank", "2", "x", "--catalog", broken}).code == 1);

    const std::string aut = temp_file("aut.txt", "swap: x -> y, y -> x\nmul: x -> x y\n");
    const auto inv = call({"depth", "--free-rank", "2", "x", "--aut", aut});
    CHECK(inv.code == 0);
    CHECK(inv.out.find("order: 4\n") != std::string::npos);
  }

  TEST_CASE("curve csv") {
    const auto r = call({"curve", "--pipeline", kSanov, "--n", "5", "--format", "csv"});
    CHECK(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == "n,value");
    CHECK(rows[1] == "1,81");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].rfind(std::to_string(i) + ",", 0) == 0);
    }

    const auto o = call({"curve", "--oracle", "--free-rank", "2", "--n", "2", "--format", "csv"});
    CHECK(o.out == "n,value\n1,2\n2,3\n");
  }

  TEST_CASE("other subcommands") {
    const auto lt = call({"lietype", "info", "A1", "q=7"});
    CHECK(lt.code == 0);
    CHECK(lt.out.find("order: 168\n") != std::string::npos);

    const auto w = call({"witness", "x", "--n", "1", "--free-rank", "2"});
    CHECK(w.code == 0);
    CHECK(w.out.find("length: 8\n") != std::string::npos);

    const auto l = call({"lcm", "x", "y", "--free-rank", "2"});
    CHECK(l.code == 0);
    CHECK(l.out.find("word: x y x^-1 y^-1\n") != std::string::npos);

    const auto c = call({"check", kSanov, "--samples", "5"});
    CHECK(c.code == 0);
    for (const auto& line : lines(c.out)) CHECK(line.rfind("PASS", 0) == 0);
  }

  TEST_CASE("exit codes") {
    CHECK(call({}).code == 2);
    CHECK(call({"bogus"}).code == 2);
    CHECK(call({"separate", kSanov}).code == 2);
    CHECK(call({"separate", kSanov, "A", "--format", "xml"}).code == 2);
    CHECK(call({"separate", kSanov, "A", "--kappa-max", "0"}).code == 2);
    CHECK(call({"lcm", "x", "--bogus"}).code == 2);

    const auto trivial = call({"separate", kSanov, "A A^-1"});
    CHECK(trivial.code == 1);
    CHECK(!trivial.err.empty());
    CHECK(call({"separate", "/nonexistent/file.grp", "A"}).code == 1);
    CHECK(call({"separate", kSanov, "C"}).code == 1);
  }

  TEST_CASE("identical inputs give identical output") {
    const std::vector<std::vector<std::string>> cmds{
        {"separate", kSanov, "[A,B] A"},
        {"separate", kSanov, "A B", "--mode", "semisimple"},
        {"curve", "--pipeline", kSanov, "--n", "3", "--format", "csv"},
        {"depth", "--free-rank", "2", "[x,y^2]"}};
    for (const auto& cmd : cmds) {
      const auto a = call(cmd);
      const auto b = call(cmd);
      CHECK(a.code == 0);
      CHECK(a.out == b.out);
    }
  }
}
