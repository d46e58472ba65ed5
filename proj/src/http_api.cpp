#include "vcp/http_api.h"

#include <functional>

#include "vcp/script_text.h"
#include "vcp/text.h"

namespace vcp {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const std::string& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end() || !it->is_string())
    throw std::invalid_argument(std::string("op field '") + name + "' must be a string");
  return it->get_ref<const std::string&>();
}

Path path_field(const json& j, const char* name) {
  try {
    return Path::parse(field(j, name));
  } catch (const ParseError& e) {
    throw std::invalid_argument(std::string("op field '") + name + "': " + e.what());
  }
}

std::string label_field(const json& j, const char* name) {
  const std::string& s = field(j, name);
  if (!is_valid_label(s) || s == "*")
    throw std::invalid_argument(std::string("op field '") + name + "' is not an attribute label");
  return s;
}

Const const_from_json(const json& j) {
  if (j.is_number_integer()) return Atom{j.get<std::int64_t>()};
  if (j.is_string()) return Atom{j.get<std::string>()};
  if (j.is_array() && j.empty()) return EmptySetConst{};
  if (j.is_object() && j.empty()) return UnitTupleConst{};
  throw std::invalid_argument("op field 'const' must be an integer, a string, [] or {}");
}

json const_to_json(const Const& c) {
  return std::visit(overloaded{[](const Atom& a) {
                                 return std::visit([](const auto& x) { return json(x); }, a);
                               },
                               [](const EmptySetConst&) { return json::array(); },
                               [](const UnitTupleConst&) { return json::object(); }},
                    c);
}

bool any_truncated(const json& j) {
  if (!j.is_object()) return false;
  if (j.value("truncated", false)) return true;
  if (auto it = j.find("members"); it != j.end())
    for (const auto& m : *it)
      if (any_truncated(m)) return true;
  if (auto it = j.find("fields"); it != j.end())
    for (const auto& [_, f] : it->items())
      if (any_truncated(f)) return true;
  return false;
}

json snapshot_json(const Snapshot& s, std::size_t limit) {
  json preview = value_to_json(s.data, limit);
  bool truncated = any_truncated(preview);
  return {{"schema", type_to_json(s.schema)},
          {"schemaText", print_type(s.schema)},
          {"preview", std::move(preview)},
          {"truncated", truncated}};
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code,
                const std::string& message, json reason = nullptr, json path = nullptr) {
  send_json(res, status,
            {{"code", code}, {"reason", reason}, {"path", path}, {"message", message}});
}

using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

/// Maps engine exceptions to the error body and status contract.
Handler guarded(Handler h) {
  return [h = std::move(h)](const httplib::Request& req, httplib::Response& res) {
    try {
      h(req, res);
    } catch (const UnknownSession& e) {
      send_error(res, 404, "UnknownSession", e.what());
    } catch (const EmptyHistory& e) {
      send_error(res, 409, "EmptyHistory", e.what());
    } catch (const ConditionViolated& e) {
      send_error(res, 409, "ConditionViolated", e.what(), reason_code(e.reason()), e.path());
    } catch (const NoSuchPath& e) {
      send_error(res, 409, "NoSuchPath", e.what(), nullptr, e.path());
    } catch (const ParseError& e) {
      send_error(res, 400, "ParseError", e.what());
    } catch (const NonconformingData& e) {
      send_error(res, 400, "NonconformingData", e.what());
    } catch (const json::exception& e) {
      send_error(res, 400, "BadRequest", e.what());
    } catch (const std::invalid_argument& e) {
      send_error(res, 400, "BadRequest", e.what());
    }
  };
}

}  // namespace

std::vector<VcpOp> ops_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("op must be a JSON object");
  const std::string& kind = field(j, "kind");
  // Multi-field ops read into locals first: g++ 11 leaks finished members when
  // a later initializer of an aggregate throws.
  if (kind == "newconst") {
    Path node = path_field(j, "node");
    std::string attr = label_field(j, "attr");
    Const c = const_from_json(j.at("const"));
    return {op::NewConst{std::move(node), std::move(attr), std::move(c)}};
  }
  if (kind == "instuple") {
    Path node = path_field(j, "node");
    std::string attr = label_field(j, "attr");
    return {op::InsertTuple{std::move(node), std::move(attr)}};
  }
  if (kind == "insset") return {op::InsertSet{path_field(j, "node")}};
  if (kind == "rename") {
    Path edge = path_field(j, "edge");
    std::string attr = label_field(j, "attr");
    return {op::Rename{std::move(edge), std::move(attr)}};
  }
  if (kind == "elimset") return {op::EliminateSet{path_field(j, "node")}};
  if (kind == "elimtuple") return {op::EliminateTuple{path_field(j, "node")}};
  if (kind == "delete") return {op::Delete{path_field(j, "edge")}};
  if (kind == "copy") return {make_copy(path_field(j, "src"), path_field(j, "dest"))};
  if (kind == "move") {
    VcpScript s;
    s.move(path_field(j, "src"), path_field(j, "dest"));
    return s.ops;
  }
  if (kind == "select") {
    Path node = path_field(j, "node");
    std::string a = label_field(j, "a");
    std::string b = label_field(j, "b");
    return {op::Select{std::move(node), std::move(a), std::move(b)}};
  }
  throw std::invalid_argument("unknown op kind '" + kind + "'");
}

json op_to_json(const VcpOp& o) {
  return std::visit(
      overloaded{
          [](const op::NewConst& x) -> json {
            return {{"kind", "newconst"}, {"node", x.node.to_string()}, {"attr", x.attr},
                    {"const", const_to_json(x.value)}};
          },
          [](const op::InsertTuple& x) -> json {
            return {{"kind", "instuple"}, {"node", x.node.to_string()}, {"attr", x.attr}};
          },
          [](const op::InsertSet& x) -> json {
            return {{"kind", "insset"}, {"node", x.node.to_string()}};
          },
          [](const op::Rename& x) -> json {
            return {{"kind", "rename"}, {"edge", x.edge.to_string()}, {"attr", x.attr}};
          },
          [](const op::EliminateSet& x) -> json {
            return {{"kind", "elimset"}, {"node", x.node.to_string()}};
          },
          [](const op::EliminateTuple& x) -> json {
            return {{"kind", "elimtuple"}, {"node", x.node.to_string()}};
          },
          [](const op::Delete& x) -> json {
            return {{"kind", "delete"}, {"edge", x.edge.to_string()}};
          },
          [](const op::CopyTuple& x) -> json {
            return {{"kind", "copy"}, {"src", x.src.to_string()}, {"dest", x.dest.to_string()}};
          },
          [](const op::CopySet& x) -> json {
            return {{"kind", "copy"}, {"src", x.src.to_string()}, {"dest", x.dest.to_string()}};
          },
          [](const op::Select& x) -> json {
            return {{"kind", "select"}, {"node", x.node.to_string()}, {"a", x.a}, {"b", x.b}};
          },
      },
      o);
}

json type_to_json(const ValueType& t) {
  switch (t.kind()) {
    case ValueType::Kind::Dom:
      return {{"kind", "dom"}};
    case ValueType::Kind::BottomSet:
      return {{"kind", "emptyset"}};
    case ValueType::Kind::Set:
      return {{"kind", "set"}, {"element", type_to_json(t.element())}};
    case ValueType::Kind::Tuple: {
      json attrs = json::array();
      for (const auto& [name, sub] : t.attrs())
        attrs.push_back({{"name", name}, {"type", type_to_json(sub)}});
      return {{"kind", "tuple"}, {"attrs", std::move(attrs)}};
    }
  }
  return nullptr;
}

json value_to_json(const Value& v, std::size_t limit) {
  switch (v.kind()) {
    case Value::Kind::Atom:
      return std::visit([](const auto& x) { return json(x); }, v.as_atom());
    case Value::Kind::Set: {
      json members = json::array();
      auto all = v.members();
      for (std::size_t i = 0; i < all.size() && i < limit; ++i)
        members.push_back(value_to_json(all[i], limit));
      return {{"kind", "set"},
              {"size", all.size()},
              {"members", std::move(members)},
              {"truncated", all.size() > limit}};
    }
    case Value::Kind::Tuple: {
      json fields = json::object();
      for (const auto& [name, sub] : v.fields()) fields[name] = value_to_json(sub, limit);
      return {{"kind", "tuple"}, {"fields", std::move(fields)}};
    }
  }
  return nullptr;
}

void mount_api(httplib::Server& server, SessionStore& store) {
  const std::string id = "/sessions/([0-9a-f]+)";

  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty())
      send_error(res, res.status, res.status == 404 ? "NotFound" : "HttpError",
                 httplib::status_message(res.status));
  });

  server.Post("/sessions", guarded([&store](const httplib::Request& req, httplib::Response& res) {
    json body = json::parse(req.body);
    ValueType schema = parse_type(body.at("schema").get<std::string>());
    Value data = parse_value(body.at("data").get<std::string>());
    std::size_t limit = SessionStore::kDefaultPreviewLimit;
    if (auto it = body.find("previewLimit"); it != body.end()) {
      if (!it->is_number_unsigned() || it->get<std::size_t>() == 0)
        throw std::invalid_argument("previewLimit must be a positive integer");
      limit = it->get<std::size_t>();
    }
    std::string sid = store.create(std::move(schema), std::move(data), limit);
    send_json(res, 201, {{"id", sid}});
  }));

  server.Get(id + "/schema", guarded([&store](const httplib::Request& req, httplib::Response& res) {
    Snapshot s = store.current(req.matches[1]);
    send_json(res, 200, {{"schema", type_to_json(s.schema)}, {"schemaText", print_type(s.schema)}});
  }));

  server.Get(id + "/preview", guarded([&store](const httplib::Request& req, httplib::Response& res) {
    std::string sid = req.matches[1];
    std::size_t limit = store.preview_limit(sid);
    send_json(res, 200, snapshot_json(store.current(sid), limit));
  }));

  server.Post(id + "/ops", guarded([&store](const httplib::Request& req, httplib::Response& res) {
    std::string sid = req.matches[1];
    std::size_t limit = store.preview_limit(sid);
    json body = json::parse(req.body);
    std::vector<VcpOp> ops = ops_from_json(body.contains("op") ? body.at("op") : body);
    bool dry_run = req.get_param_value("validate") == "true";
    json out = snapshot_json(store.apply(sid, ops, dry_run), limit);
    if (dry_run) out["valid"] = true;
    send_json(res, 200, out);
  }));

  server.Post(id + "/undo", guarded([&store](const httplib::Request& req, httplib::Response& res) {
    std::string sid = req.matches[1];
    std::size_t limit = store.preview_limit(sid);
    send_json(res, 200, snapshot_json(store.undo(sid), limit));
  }));

  server.Get(id + "/script", guarded([&store](const httplib::Request& req, httplib::Response& res) {
    res.set_content(print_script(store.script(req.matches[1])), "text/plain");
  }));

  server.Get(id + "/compiled", guarded([&store](const httplib::Request& req, httplib::Response& res) {
    res.set_content(print_ma(store.compiled(req.matches[1])) + "\n", "text/plain");
  }));
}

}  // namespace vcp
