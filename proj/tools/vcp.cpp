// Batch driver: check, run, compile, decompile, eval.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "vcp/errors.h"
#include "vcp/monad.h"
#include "vcp/ops.h"
#include "vcp/script_text.h"
#include "vcp/text.h"
#include "vcp/to_monad.h"
#include "vcp/to_script.h"

namespace {

enum Exit { kOk = 0, kParse = 1, kInvalid = 2, kNonconforming = 3 };

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Nonconforming : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Args {
  std::string schema, data, script, expr, out;
  bool trace = false;
};

std::string slurp(const std::string& path, const char* what) {
  if (path.empty()) throw Usage(std::string("--") + what + " is required");
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

vcp::ValueType load_schema(const Args& a) { return vcp::parse_type(slurp(a.schema, "schema")); }

vcp::Value load_data(const Args& a, const vcp::ValueType& t) {
  vcp::Value v = vcp::parse_value(slurp(a.data, "data"));
  if (!vcp::conforms(v, t))
    throw Nonconforming("data " + vcp::print_value(v) + " does not conform to " +
                        vcp::print_type(t));
  return v;
}

std::string check(const Args& a) {
  vcp::ValueType t = load_schema(a);
  vcp::VcpScript s = vcp::parse_script(slurp(a.script, "script"));
  if (!a.trace) return vcp::print_type(vcp::check_script(t, s)) + "\n";
  std::string out;
  for (std::size_t i = 0; i < s.ops.size(); ++i) {
    try {
      t = vcp::validate_and_apply_schema(t, s.ops[i]);
    } catch (vcp::Error& e) {
      e.set_op_index(i);
      throw;
    }
    out += vcp::print_op(s.ops[i]) + "\n  " + vcp::print_type(t) + "\n";
  }
  return out;
}

std::string run(const Args& a) {
  vcp::ValueType t = load_schema(a);
  vcp::Value v = load_data(a, t);
  vcp::VcpScript s = vcp::parse_script(slurp(a.script, "script"));
  return vcp::print_value(vcp::run_script(t, v, s).value) + "\n";
}

std::string compile(const Args& a) {
  vcp::ValueType t = load_schema(a);
  vcp::VcpScript s = vcp::parse_script(slurp(a.script, "script"));
  return vcp::print_ma(vcp::compile_script(t, s)) + "\n";
}

std::string decompile(const Args& a) {
  vcp::ValueType t = load_schema(a);
  vcp::MaExpr e = vcp::parse_ma(slurp(a.expr, "expr"));
  return vcp::print_script(vcp::translate(e, t));
}

std::string eval(const Args& a) {
  vcp::ValueType t = load_schema(a);
  vcp::Value v = load_data(a, t);
  vcp::MaExpr e = vcp::parse_ma(slurp(a.expr, "expr"));
  vcp::typecheck(e, t);
  return vcp::print_value(vcp::eval(e, v)) + "\n";
}

int emit(const Args& a, const std::string& text) {
  if (a.out.empty() || a.out == "-") {
    std::cout << text;
    return kOk;
  }
  std::ofstream out(a.out, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << a.out << "\n";
    return kParse;
  }
  return kOk;
}

int fail(const std::string& kind, const vcp::Error& e, int code) {
  std::cerr << "error: " << kind;
  if (e.op_index()) std::cerr << " at op " << *e.op_index() + 1;
  std::cerr << ": " << e.what() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schema-tree copy-paste queries over complex values"};
  app.require_subcommand(1);
  Args a;

  struct Command {
    const char* name;
    const char* help;
    std::string (*fn)(const Args&);
    bool data, script, expr;
  };
  const Command commands[] = {
      {"check", "Validate a script and print the resulting schema", check, false, true, false},
      {"run", "Run a script on data and print the result", run, true, true, false},
      {"compile", "Compile a script to a monad-algebra expression", compile, false, true, false},
      {"decompile", "Translate a monad-algebra expression to a script", decompile, false, false,
       true},
      {"eval", "Evaluate a monad-algebra expression on data", eval, true, false, true},
  };
  std::string (*chosen)(const Args&) = nullptr;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--schema", a.schema, "Input schema file ('-' for stdin)")->required();
    if (c.data) sub->add_option("--data", a.data, "Input data file")->required();
    if (c.script) sub->add_option("--script", a.script, "Script file")->required();
    if (c.expr) sub->add_option("--expr", a.expr, "Expression file")->required();
    if (c.fn == check) sub->add_flag("--trace", a.trace, "Print the schema after every op");
    sub->add_option("--out", a.out, "Output file ('-' for stdout)");
    sub->callback([&chosen, fn = c.fn] { chosen = fn; });
  }
  CLI11_PARSE(app, argc, argv);

  try {
    return emit(a, chosen(a));
  } catch (const vcp::ParseError& e) {
    return fail("parse error", e, kParse);
  } catch (const vcp::ConditionViolated& e) {
    return fail("condition violated", e, kInvalid);
  } catch (const vcp::NoSuchPath& e) {
    return fail("invalid path", e, kInvalid);
  } catch (const vcp::TypeError& e) {
    return fail("type error", e, kInvalid);
  } catch (const Nonconforming& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNonconforming;
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }
}
