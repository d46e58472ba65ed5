#include <doctest.h>

#include <thread>

#include "support/corpus.h"
#include "vcp/http_api.h"
#include "vcp/script_text.h"
#include "vcp/session.h"
#include "vcp/text.h"

using namespace vcp;
using namespace vcp::testing;
using nlohmann::json;

namespace {

std::vector<VcpOp> ops(std::string_view text) { return parse_script(text).ops; }

std::string books_session(SessionStore& store, std::size_t limit = 50) {
  return store.create(parse_type(corpus("books_schema.txt")), parse_value(corpus("books_data.txt")),
                      limit);
}

/// A server on an ephemeral port, stopped on destruction.
struct TestServer {
  SessionStore store;
  httplib::Server server;
  int port = 0;
  std::thread thread;

  TestServer() {
    mount_api(server, store);
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~TestServer() {
    server.stop();
    thread.join();
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port); }
};

json body(const httplib::Result& r) {
  REQUIRE(r);
  return json::parse(r->body);
}

}  // namespace

TEST_SUITE("session") {

TEST_CASE("apply, undo and replay") {
  SessionStore store;
  std::string id = books_session(store);
  Snapshot s0 = store.current(id);
  CHECK(print_type(s0.schema) == corpus_line("books_schema.txt"));

  auto steps = parse_script(corpus("nest_authors.vcp")).ops;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    Snapshot s = store.apply(id, {steps[i]});
    if (i != 5) continue;
    // After the selection every book keeps only its own authors.
    for (const auto& book : s.data.at("books").members())
      for (const auto& author : book.at("authors").members())
        CHECK(deep_equal(author.at("isbn"), author.at("isbn2")));
  }
  Snapshot done = store.current(id);
  CHECK(print_value(done.data) == corpus_line("nested_books_data.txt"));
  CHECK(print_script(store.script(id)) == print_script(parse_script(corpus("nest_authors.vcp"))));

  ScriptResult replay = run_script(s0.schema, s0.data, store.script(id));
  CHECK(replay.type == done.schema);
  CHECK(deep_equal(replay.value, done.data));
  CHECK(deep_equal(eval(store.compiled(id), s0.data), done.data));

  for (int i = 0; i < 9; ++i) store.undo(id);
  CHECK(store.current(id).schema == s0.schema);
  CHECK(deep_equal(store.current(id).data, s0.data));
  CHECK_THROWS_AS(store.undo(id), EmptyHistory);
  CHECK(store.compiled(id) == MaExpr::id());
}

TEST_CASE("failed and dry-run operations leave the session unchanged") {
  SessionStore store;
  std::string id = books_session(store);
  CHECK_THROWS_AS(store.apply(id, ops("elimtuple .")), ConditionViolated);
  CHECK(store.script(id).ops.empty());
  Snapshot preview = store.apply(id, ops("copy authors -> books/*"), true);
  CHECK(preview.schema.find("books")->element().find("authors"));
  CHECK(store.script(id).ops.empty());
  CHECK(store.current(id).schema == parse_type(corpus("books_schema.txt")));
  // A multi-op step is all-or-nothing.
  CHECK_THROWS(store.apply(id, ops("delete books\ndelete books")));
  CHECK(store.script(id).ops.empty());
}

TEST_CASE("a move is one undoable step") {
  SessionStore store;
  std::string id = store.create(parse_type("<A:dom,B:<>>"), parse_value("<A:1,B:<>>"));
  store.apply(id, ops("move A -> B"));
  CHECK(print_value(store.current(id).data) == "<B:<A:1>>");
  store.undo(id);
  CHECK(print_value(store.current(id).data) == "<A:1,B:<>>");
}

TEST_CASE("creation checks conformance") {
  SessionStore store;
  CHECK_THROWS_AS(store.create(parse_type("<A:dom>"), parse_value("<A:{}>")), NonconformingData);
  std::string id = store.create(parse_type("<>"), parse_value("<>"));
  CHECK(print_type(store.current(id).schema) == "<>");
  CHECK_THROWS_AS(store.current("nope"), UnknownSession);
}

TEST_CASE("idle sessions expire") {
  SessionStore store(std::chrono::minutes(5));
  std::string a = books_session(store);
  std::string b = books_session(store);
  CHECK(store.size() == 2);
  CHECK(store.expire(SessionStore::Clock::now() + std::chrono::minutes(1)) == 0);
  CHECK(store.expire(SessionStore::Clock::now() + std::chrono::minutes(6)) == 2);
  CHECK_THROWS_AS(store.current(a), UnknownSession);
}

TEST_CASE("sessions are independent under concurrent use") {
  SessionStore store;
  std::vector<std::string> ids;
  for (int i = 0; i < 4; ++i) ids.push_back(books_session(store));
  auto script = parse_script(corpus("nest_authors.vcp")).ops;
  std::vector<std::thread> workers;
  for (const auto& id : ids)
    workers.emplace_back([&store, &script, id] {
      for (int round = 0; round < 5; ++round) {
        for (const auto& o : script) store.apply(id, {o});
        for (std::size_t k = 0; k < script.size(); ++k) store.undo(id);
      }
      for (const auto& o : script) store.apply(id, {o});
    });
  for (auto& w : workers) w.join();
  for (const auto& id : ids)
    CHECK(print_value(store.current(id).data) == corpus_line("nested_books_data.txt"));
}

TEST_CASE("op JSON encoding") {
  auto o = ops_from_json(json::parse(R"({"kind":"copy","src":"authors","dest":"books/*"})"));
  REQUIRE(o.size() == 1);
  CHECK(print_op(o[0]) == "copy authors -> books/*");
  CHECK(ops_from_json(json::parse(R"({"kind":"move","src":"S/*","dest":"A"})")).size() == 2);
  CHECK(print_op(ops_from_json(json::parse(R"({"kind":"newconst","node":".","attr":"E","const":[]})"))[0]) ==
        "newconst . E {}");
  CHECK(print_op(ops_from_json(json::parse(R"({"kind":"newconst","node":".","attr":"U","const":{}})"))[0]) ==
        "newconst . U <>");
  CHECK(print_op(ops_from_json(json::parse(R"({"kind":"newconst","node":".","attr":"S","const":"{}"})"))[0]) ==
        "newconst . S \"{}\"");
  for (const auto& line : parse_script(
           "newconst a/*/b x 7\ninstuple . A\ninsset *\nrename a/b c\nelimset */*\n"
           "elimtuple .\ndelete a\ncopy a -> b\ncopy a/* -> b\nselect x A B")
                              .ops) {
    auto back = ops_from_json(op_to_json(line));
    REQUIRE(back.size() == 1);
    CHECK(back[0] == line);
  }
  CHECK_THROWS_AS(ops_from_json(json::parse(R"({"kind":"explode"})")), std::invalid_argument);
  CHECK_THROWS_AS(ops_from_json(json::parse(R"({"kind":"delete"})")), std::invalid_argument);
  CHECK_THROWS_AS(ops_from_json(json::parse(R"({"kind":"rename","edge":"a","attr":"*"})")),
                  std::invalid_argument);
}

TEST_CASE("preview truncation") {
  json j = value_to_json(parse_value("<A:{1,2,3},B:\"x\">"), 2);
  CHECK(j["fields"]["A"]["members"].size() == 2);
  CHECK(j["fields"]["A"]["size"] == 3);
  CHECK(j["fields"]["A"]["truncated"] == true);
  CHECK(j["fields"]["B"] == "x");
  CHECK(type_to_json(parse_type("<A:{_}>"))["attrs"][0]["type"]["kind"] == "emptyset");
}

TEST_CASE("HTTP API") {
  TestServer ts;
  httplib::Client c = ts.client();
  json create = {{"schema", corpus("books_schema.txt")}, {"data", corpus("books_data.txt")},
                 {"previewLimit", 1}};
  auto r = c.Post("/sessions", create.dump(), "application/json");
  REQUIRE(r);
  CHECK(r->status == 201);
  std::string id = body(r)["id"];
  std::string base = "/sessions/" + id;

  json schema = body(c.Get(base + "/schema"));
  CHECK(schema["schemaText"] == corpus_line("books_schema.txt"));
  CHECK(schema["schema"]["kind"] == "tuple");

  json step1 = {{"op", {{"kind", "copy"}, {"src", "authors"}, {"dest", "books/*"}}}};
  r = c.Post(base + "/ops?validate=true", step1.dump(), "application/json");
  CHECK(r->status == 200);
  CHECK(body(r)["valid"] == true);
  CHECK(c.Get(base + "/script")->body.empty());

  r = c.Post(base + "/ops", step1.dump(), "application/json");
  CHECK(r->status == 200);
  CHECK(body(r)["schemaText"] ==
        "<authors:{<isbn:dom,name:dom>},books:{<authors:{<isbn:dom,name:dom>},isbn:dom,"
        "title:dom,year:dom>}>");
  CHECK(body(r)["truncated"] == true);

  json bad = {{"op", {{"kind", "elimtuple"}, {"node", "."}}}};
  r = c.Post(base + "/ops", bad.dump(), "application/json");
  CHECK(r->status == 409);
  CHECK(body(r)["code"] == "ConditionViolated");
  CHECK(body(r)["reason"] == "ArityNotOne");
  CHECK(body(r)["path"] == ".");
  r = c.Post(base + "/ops?validate=true", bad.dump(), "application/json");
  CHECK(r->status == 409);

  auto lines = parse_script(corpus("nest_authors.vcp")).ops;
  for (std::size_t i = 1; i < 5; ++i) {
    r = c.Post(base + "/ops", json{{"op", op_to_json(lines[i])}}.dump(), "application/json");
    CHECK(r->status == 200);
  }
  // After steps 1-5 the selection keeps, per book, the authors with the same isbn.
  r = c.Post(base + "/ops", json{{"op", op_to_json(lines[5])}}.dump(), "application/json");
  REQUIRE(r->status == 200);
  for (std::size_t i = 6; i < lines.size(); ++i)
    c.Post(base + "/ops", json{{"op", op_to_json(lines[i])}}.dump(), "application/json");
  CHECK(c.Get(base + "/script")->body == print_script(parse_script(corpus("nest_authors.vcp"))));

  std::string compiled = c.Get(base + "/compiled")->body;
  CHECK(print_value(eval(parse_ma(compiled), parse_value(corpus("books_data.txt")))) ==
        corpus_line("nested_books_data.txt"));

  json preview = body(c.Get(base + "/preview"));
  CHECK(preview["preview"]["fields"]["books"]["size"] == 2);
  CHECK(preview["truncated"] == true);

  r = c.Post(base + "/undo", "", "application/json");
  CHECK(r->status == 200);
  CHECK(body(r)["schemaText"] == "<books:{<authors:{<name:dom>},isbn:dom,title:dom>}>");

  CHECK(c.Get("/sessions/0123/schema")->status == 404);
  CHECK(body(c.Get("/sessions/0123/schema"))["code"] == "UnknownSession");
  CHECK(c.Get("/nowhere")->status == 404);

  r = c.Post("/sessions", json{{"schema", "<A:dom>"}, {"data", "<A:{}>"}}.dump(), "application/json");
  CHECK(r->status == 400);
  CHECK(body(r)["code"] == "NonconformingData");
  r = c.Post("/sessions", json{{"schema", "<A:"}, {"data", "<>"}}.dump(), "application/json");
  CHECK(r->status == 400);
  CHECK(body(r)["code"] == "ParseError");
  r = c.Post("/sessions", "not json", "application/json");
  CHECK(r->status == 400);

  r = c.Post("/sessions", json{{"schema", "<>"}, {"data", "<>"}}.dump(), "application/json");
  std::string trivial = body(r)["id"];
  r = c.Post("/sessions/" + trivial + "/undo", "", "application/json");
  CHECK(r->status == 409);
  CHECK(body(r)["code"] == "EmptyHistory");
  CHECK(c.Get("/sessions/" + trivial + "/compiled")->body == "id\n");
}

}
