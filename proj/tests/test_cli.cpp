#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <vector>
#include <algorithm>

#include "support/corpus.h"

using namespace vcp::testing;

namespace {

struct Outcome {
  int code;
  std::string out;
};

/// Runs the CLI through the shell; stderr is discarded.
Outcome cli(const std::string& args) {
  std::string cmd = std::string(VCP_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string c(const std::string& name) { return std::string(VCP_CORPUS_DIR) + "/" + name; }

std::string scratch(const std::string& name, const std::string& contents) {
  auto path = std::filesystem::temp_directory_path() / ("vcp_cli_test_" + name);
  std::ofstream(path) << contents;
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("check") {
  auto r = cli("check --schema " + c("books_schema.txt") + " --script " + c("nest_authors.vcp"));
  CHECK(r.code == 0);
  CHECK(r.out == corpus("nested_books_schema.txt"));
  r = cli("check --schema " + c("books_schema.txt") + " --script " + scratch("empty.vcp", ""));
  CHECK(r.code == 0);
  CHECK(r.out == corpus("books_schema.txt"));
  r = cli("check --schema " + c("books_schema.txt") + " --script " +
          scratch("bad.vcp", "elimtuple .\n"));
  CHECK(r.code == 2);
  r = cli("check --trace --schema " + c("books_schema.txt") + " --script " + c("nest_authors.vcp"));
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 18);
}

TEST_CASE("run") {
  auto r = cli("run --schema " + c("books_schema.txt") + " --data " + c("books_data.txt") +
               " --script " + c("nest_authors.vcp"));
  CHECK(r.code == 0);
  CHECK(r.out == corpus("nested_books_data.txt"));
  r = cli("run --schema " + c("product_schema.txt") + " --data " +
          scratch("rs.txt", "<S:{<D:4,C:3>},R:{<A:1,B:2>,<B:2,A:1>}>") + " --script " +
          c("product.vcp"));
  CHECK(r.out == "{<A:1,B:2,C:3,D:4>}\n");
  r = cli("run --schema " + c("books_schema.txt") + " --data " + scratch("nc.txt", "<books:{}>") +
          " --script " + c("nest_authors.vcp"));
  CHECK(r.code == 3);
  r = cli("run --schema " + scratch("s.txt", "<A:{dom}>") + " --data " +
          scratch("d.txt", "<A:{2,1,2}>") + " --script " + scratch("e.vcp", "# nothing\n"));
  CHECK(r.out == "<A:{1,2}>\n");
}

TEST_CASE("compile, decompile and eval") {
  std::string schema = c("books_schema.txt"), data = c("books_data.txt");
  auto compiled = cli("compile --schema " + schema + " --script " + c("nest_authors.vcp"));
  CHECK(compiled.code == 0);
  auto r = cli("eval --schema " + schema + " --data " + data + " --expr " +
               scratch("e1.ma", compiled.out));
  CHECK(r.out == corpus("nested_books_data.txt"));
  r = cli("decompile --schema " + scratch("dom.txt", "dom") + " --expr " + scratch("sing.ma", "sing"));
  CHECK(r.out == "insset .\n");
  r = cli("eval --schema " + schema + " --data " + data + " --expr " + scratch("id.ma", "id"));
  CHECK(r.out == corpus("books_data.txt"));
  r = cli("eval --schema " + schema + " --data " + data + " --expr " + scratch("bad.ma", "flatten"));
  CHECK(r.code == 2);
  r = cli("eval --schema " + schema + " --data " + data + " --expr " + scratch("junk.ma", "map("));
  CHECK(r.code == 1);
  r = cli("decompile --schema " + schema + " --expr " + c("nest_authors.ma") + " --out " +
          scratch("out.vcp", ""));
  CHECK(r.code == 0);
  r = cli("run --schema " + schema + " --data " + data + " --script " +
          (std::filesystem::temp_directory_path() / "vcp_cli_test_out.vcp").string());
  CHECK(r.out == corpus("nested_books_data.txt"));
}

TEST_CASE("dash reads stdin") {
  auto r = cli("check --schema - --script " + c("nest_authors.vcp") + " < " + c("books_schema.txt"));
  CHECK(r.out == corpus("nested_books_schema.txt"));
}

TEST_CASE("run matches compile then eval byte for byte") {
  struct Entry {
    std::string schema, script, data;
  };
  std::vector<Entry> entries = {
      {c("books_schema.txt"), c("nest_authors.vcp"), c("books_data.txt")},
      {c("product_schema.txt"), c("product.vcp"),
       scratch("p.txt", "<R:{<A:1,B:2>,<A:\"a\",B:2>},S:{<C:1,D:1>,<C:\"x\",D:0>}>")},
      {c("difference_schema.txt"), c("difference.vcp"),
       scratch("d2.txt", "<R:{<A:1>,<A:2>,<A:3>},S:{<A:3>,<A:4>}>")},
      {c("nest_schema.txt"), c("nest.vcp"), scratch("n.txt", "<R:{<A:1,B:2>,<A:1,B:3>,<A:2,B:2>}>")},
  };
  for (const auto& e : entries) {
    auto run = cli("run --schema " + e.schema + " --data " + e.data + " --script " + e.script);
    auto comp = cli("compile --schema " + e.schema + " --script " + e.script);
    auto eval = cli("eval --schema " + e.schema + " --data " + e.data + " --expr " +
                    scratch("rt.ma", comp.out));
    INFO(e.script);
    CHECK(run.code == 0);
    CHECK(run.out == eval.out);
  }
}

TEST_CASE("usage errors") {
  CHECK(cli("").code != 0);
  CHECK(cli("run --schema " + c("books_schema.txt")).code != 0);
  CHECK(cli("check --schema /does/not/exist --script " + c("nest_authors.vcp")).code == 1);
}

}
