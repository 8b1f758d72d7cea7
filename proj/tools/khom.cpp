// khom: command-line front end for the workbench.
#include <CLI11.hpp>

#include <cctype>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "khom/catalog.hpp"
#include "khom/columns.hpp"
#include "khom/error.hpp"
#include "khom/suites.hpp"

using namespace khom;

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool is_catalog_ref(const std::string& ref) {
  const std::string base = ends_with(ref, "^op") ? ref.substr(0, ref.size() - 3) : ref;
  for (const auto& n : catalog_names())
    if (n == base) return true;
  return false;
}

std::string opposite_ref(const std::string& ref) {
  return ends_with(ref, "^op") ? ref.substr(0, ref.size() - 3) : ref + "^op";
}

FieldSpec field_of(const std::string& ref) {
  if (is_catalog_ref(ref)) return FieldSpec::rationals();
  return resolve_algebra_description(ref).field;
}

template <class K>
AlgPtr<K> algebra_for(const std::string& ref) {
  if (is_catalog_ref(ref)) return catalog_algebra<K>(ref);
  return load_algebra<K>(resolve_algebra_description(ref));
}

template <class F>
int with_field(const FieldSpec& f, F&& fn) {
  if (f.kind == FieldSpec::Kind::prime) {
    PrimeScope scope(f.p);
    return fn.template operator()<ModP>();
  }
  return fn.template operator()<Rational>();
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty())
    std::cout << text;
  else
    write_text_file(out, text);
}

// Algebra reference of a JSON input: --algebra wins over the file's own field.
std::string algebra_ref(const std::string& given, const json& j, const std::string& what) {
  if (!given.empty()) return given;
  if (j.is_object() && j.contains("algebra") && j["algebra"].is_string()) return j["algebra"].get<std::string>();
  throw InputError(what + " names no algebra; pass --algebra");
}

// ---- object expressions ----------------------------------------------------

struct Expr {
  std::string head;  // identifier or integer literal
  bool number = false;
  std::vector<Expr> args;
  bool call = false;
};

class ExprParser {
 public:
  explicit ExprParser(std::string s) : s_(std::move(s)) {}

  Expr parse() {
    auto e = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("object expression '" + s_ + "': " + what + " at offset " + std::to_string(pos_));
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    skip();
    Expr e;
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+' || std::isdigit(static_cast<unsigned char>(s_[pos_])))) {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      e.head = s_.substr(start, pos_ - start);
      if (e.head == "-" || e.head == "+") fail("expected a number");
      e.number = true;
      return e;
    }
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (pos_ == start) fail("expected a name");
    e.head = s_.substr(start, pos_ - start);
    if (eat('(')) {
      e.call = true;
      if (!eat(')')) {
        do e.args.push_back(expr());
        while (eat(','));
        if (!eat(')')) fail("expected ')'");
      }
    }
    return e;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

template <class K>
struct Value {
  std::optional<Module<K>> module;
  std::optional<Complex<K>> complex;

  Complex<K> as_complex() const { return complex ? *complex : Complex<K>::stalk(*module, 0); }
};

template <class K>
class Evaluator {
 public:
  Evaluator(const Battery<K>& b, std::uint64_t seed) : b_(b), seed_(seed) {}

  Value<K> eval(const Expr& e) const {
    if (e.number) throw InputError("number '" + e.head + "' where an object was expected");
    if (!e.call) return atom(e.head);
    const auto& f = e.head;
    auto arity = [&](std::size_t n) {
      if (e.args.size() != n)
        throw InputError(f + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
    };
    auto mod = [&](std::size_t k) {
      auto v = eval(e.args[k]);
      if (!v.module) throw InputError(f + " needs a module argument");
      return *v.module;
    };
    auto cx = [&](std::size_t k) { return eval(e.args[k]).as_complex(); };
    auto integer = [&](std::size_t k) {
      if (!e.args[k].number) throw InputError(f + " needs an integer in position " + std::to_string(k + 1));
      return std::stoi(e.args[k].head);
    };
    Value<K> v;
    if (f == "tau") {
      arity(1);
      v.module = tau(mod(0));
    } else if (f == "tau_minus") {
      arity(1);
      v.module = tau_minus(mod(0));
    } else if (f == "tr") {
      arity(1);
      v.module = transpose(mod(0));
    } else if (f == "D") {
      arity(1);
      auto a = eval(e.args[0]);
      if (a.module)
        v.module = dual_D(*a.module);
      else
        v.complex = dual_D(*a.complex);
    } else if (f == "lambda") {
      arity(1);
      v.complex = lambda(mod(0));
    } else if (f == "lambda_prime") {
      arity(1);
      v.complex = lambda_prime(mod(0));
    } else if (f == "stalk") {
      arity(2);
      v.complex = Complex<K>::stalk(mod(0), integer(1));
    } else if (f == "shift") {
      arity(2);
      v.complex = shift(cx(0), integer(1));
    } else if (f == "serre_u") {
      arity(1);
      v.complex = serre_U(cx(0));
    } else if (f == "serre_s") {
      arity(1);
      v.complex = serre_S(cx(0), seed_);
    } else if (f == "phi") {
      arity(1);
      v.complex = phi(cx(0));
    } else if (f == "minimize") {
      arity(1);
      v.complex = minimize(cx(0), seed_).complex;
    } else if (f == "i_rho") {
      arity(1);
      v.complex = i_rho(cx(0));
    } else if (f == "quotient_model") {
      arity(2);
      const auto& s = e.args[1].head;
      if (e.args[1].call || (s != "prj" && s != "inj")) throw InputError("quotient_model side must be prj or inj");
      v.complex = quotient_model(cx(0), s == "prj" ? Side::prj : Side::inj);
    } else {
      throw InputError("unknown function '" + f + "'");
    }
    return v;
  }

 private:
  Value<K> atom(const std::string& name) const {
    Value<K> v;
    for (const auto& m : b_.modules)
      if (m.name == name) {
        v.module = m.module;
        return v;
      }
    if (name.size() >= 2 && (name[0] == 'S' || name[0] == 'P' || name[0] == 'I')) {
      const auto& q = b_.alg->quiver();
      for (int i = 0; i < q.num_vertices(); ++i)
        if (q.vertices[i] == name.substr(1)) {
          v.module = name[0] == 'S' ? simple<K>(b_.alg, i) : name[0] == 'P' ? projective<K>(b_.alg, i) : injective<K>(b_.alg, i);
          return v;
        }
    }
    throw InputError("unknown object '" + name + "' over " + b_.name);
  }

  const Battery<K>& b_;
  std::uint64_t seed_;
};

// A path to an existing .json file is read as a complex; anything else is an expression.
template <class K>
Complex<K> object(const std::string& text, const Battery<K>& b, std::uint64_t seed) {
  if (ends_with(text, ".json") && std::filesystem::exists(text)) {
    auto j = read_json_file(text);
    const auto ref = j.contains("algebra") && j["algebra"].is_string() ? j["algebra"].get<std::string>() : b.name;
    return complex_from_json<K>(j, algebra_for<K>(ref));
  }
  return Evaluator<K>(b, seed).eval(ExprParser(text).parse()).as_complex();
}

std::string dims_label(const auto& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    const auto& t = x.term(n);
    os << (n == x.lo() ? "" : " ") << n << ":(";
    for (std::size_t i = 0; i < t.dims().size(); ++i) os << (i ? "," : "") << t.dims()[i];
    os << ")";
  }
  return os.str();
}

std::string ar_dot(const std::string& name, const ARTriangle<Rational>& t) {
  std::ostringstream os;
  const auto q = [](const std::string& s) { return "\"" + s + "\""; };
  const std::string z = name, sz = "serre_s(" + name + ")", sm = "shift(" + sz + ",-1)", y = "Y";
  os << "digraph ar {\n";
  os << "  " << q(sm) << " [label=" << q(sm + "\\n" + dims_label(shift(t.sz, -1))) << "];\n";
  os << "  " << q(y) << " [label=" << q("cone(w)[-1]\\n" + dims_label(t.y)) << "];\n";
  os << "  " << q(z) << " [label=" << q(z + "\\n" + dims_label(t.z)) << "];\n";
  os << "  " << q(sz) << " [label=" << q(sz + "\\n" + dims_label(t.sz)) << "];\n";
  os << "  " << q(sm) << " -> " << q(y) << ";\n";
  os << "  " << q(y) << " -> " << q(z) << " [label=\"g\"];\n";
  os << "  " << q(z) << " -> " << q(sz) << " [label=\"w\"];\n";
  os << "}\n";
  return os.str();
}

int fail_with(const char* kind, const std::string& message, int code) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homotopy category workbench: duality, Serre functor and AR triangles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string algebra, module_file, complex_file, out, x_text, y_text, object_text, suite, name;
  std::uint64_t seed = 1;
  int trials = 50;
  std::uint32_t prime = 0;
  bool dot = false;
  std::string fixture_dir = default_fixture_dir();

  auto* check = app.add_subcommand("check", "validate an algebra and print dim and gldim");
  check->add_option("algebra", algebra, "algebra JSON or catalog name")->required();

  std::vector<CLI::App*> module_cmds;
  for (const char* c : {"tau", "tr", "dual"}) {
    auto* s = app.add_subcommand(c, std::string(c) + " of a module");
    s->add_option("-m,--module", module_file, "module JSON")->required();
    s->add_option("--algebra", algebra, "overrides the algebra named in the file");
    s->add_option("-o,--out", out, "output file (stdout if absent)");
    module_cmds.push_back(s);
  }
  std::vector<CLI::App*> complex_cmds;
  for (const char* c : {"resolve", "phi", "serre-u", "serre-s"}) {
    auto* s = app.add_subcommand(c, std::string(c) + " of a complex");
    s->add_option("-c,--complex", complex_file, "complex JSON")->required();
    s->add_option("--algebra", algebra, "overrides the algebra named in the file");
    s->add_option("-o,--out", out, "output file (stdout if absent)");
    s->add_option("--seed", seed);
    complex_cmds.push_back(s);
  }
  auto* hom = app.add_subcommand("hom", "print dim Hom_K(X, Y)");
  hom->add_option("-x", x_text, "object expression or complex JSON")->required();
  hom->add_option("-y", y_text, "object expression or complex JSON")->required();
  hom->add_option("--algebra", algebra)->default_val("a2");
  hom->add_option("--seed", seed);

  auto* ar = app.add_subcommand("ar", "Auslander-Reiten triangle ending in an object");
  ar->add_option("--object", object_text, "object expression")->required();
  ar->add_option("--algebra", algebra)->default_val("a2");
  ar->add_option("--seed", seed);
  ar->add_flag("--dot", dot, "print a DOT fragment instead of JSON");
  ar->add_option("-o,--out", out);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite)->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--algebra", algebra)->required();
  verify->add_option("--seed", seed)->required();
  verify->add_option("--trials", trials);
  verify->add_option("--prime", prime, "run over F_p instead of the algebra's field");
  verify->add_option("--out", out);

  auto* catalog = app.add_subcommand("catalog", "bundled algebras");
  catalog->require_subcommand(1);
  catalog->add_subcommand("list");
  auto* emit_cmd = catalog->add_subcommand("emit");
  emit_cmd->add_option("name", name)->required();
  emit_cmd->add_option("-o,--out", out);

  auto* fixtures = app.add_subcommand("fixtures", "knitting fixtures");
  fixtures->require_subcommand(1);
  auto* regen = fixtures->add_subcommand("regen");
  regen->add_option("name", name)->required();
  regen->add_option("--dir", fixture_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail_with("usage", e.what(), 2);
  }

  try {
    if (check->parsed()) {
      return with_field(field_of(algebra), [&]<class K>() {
        auto alg = algebra_for<K>(algebra);
        std::cout << "dim=" << alg->dim() << " gldim=" << global_dimension(alg) << "\n";
        return 0;
      });
    }
    for (auto* s : module_cmds) {
      if (!s->parsed()) continue;
      auto j = read_json_file(module_file);
      const auto ref = algebra_ref(algebra, j, module_file);
      return with_field(field_of(ref), [&]<class K>() {
        auto m = module_from_json<K>(j, algebra_for<K>(ref));
        const std::string c = s->get_name();
        if (c == "tau") {
          emit(out, to_json(tau(m), ref).dump(2) + "\n");
        } else if (c == "tr") {
          emit(out, to_json(transpose(m), opposite_ref(ref)).dump(2) + "\n");
        } else {
          emit(out, to_json(dual_D(m), opposite_ref(ref)).dump(2) + "\n");
        }
        return 0;
      });
    }
    for (auto* s : complex_cmds) {
      if (!s->parsed()) continue;
      auto j = read_json_file(complex_file);
      const auto ref = algebra_ref(algebra, j, complex_file);
      return with_field(field_of(ref), [&]<class K>() {
        auto x = complex_from_json<K>(j, algebra_for<K>(ref));
        const std::string c = s->get_name();
        json r;
        if (c == "resolve")
          r = to_json(proj_resolve_complex(x).complex, ref);
        else if (c == "phi")
          r = to_json(phi(x), opposite_ref(ref));
        else if (c == "serre-u")
          r = to_json(serre_U(x), ref);
        else
          r = to_json(serre_S(x, seed), ref);
        emit(out, r.dump(2) + "\n");
        return 0;
      });
    }
    if (hom->parsed()) {
      return with_field(field_of(algebra), [&]<class K>() {
        auto b = make_battery<K>(algebra, algebra_for<K>(algebra));
        std::cout << hom_K_dim(object(x_text, b, seed), object(y_text, b, seed)) << "\n";
        return 0;
      });
    }
    if (ar->parsed()) {
      if (field_of(algebra).kind != FieldSpec::Kind::rationals) throw InputError("ar needs an algebra over the rationals");
      auto b = make_battery<Rational>(algebra, algebra_for<Rational>(algebra));
      auto z = object(object_text, b, seed);
      std::vector<Probe<Rational>> probes;
      for (const auto& m : b.modules) {
        auto l = lambda(m.module);
        for (int s = -2; s <= 2; ++s) probes.push_back({"shift(lambda(" + m.name + ")," + std::to_string(s) + ")", shift(l, s)});
      }
      auto t = ar_triangle(z, probes, seed);
      if (dot) {
        emit(out, ar_dot(object_text, t));
      } else {
        json r;
        r["object"] = object_text;
        r["algebra"] = algebra;
        r["z"] = to_json(t.z, algebra);
        r["serre_s"] = to_json(t.sz, algebra);
        r["y"] = to_json(t.y, algebra);
        r["w"] = to_json(t.w);
        r["g"] = to_json(t.g);
        r["annihilator_dim"] = t.annihilator_dim;
        r["w_nonzero"] = t.w_nonzero;
        r["ends_indecomposable"] = t.ends_indecomposable;
        r["probes"] = json::array();
        for (const auto& p : t.probes)
          r["probes"].push_back({{"name", p.name},
                                 {"hom_dim", p.hom_dim},
                                 {"nonretractions", p.nonretract},
                                 {"factoring", p.factoring},
                                 {"pass", p.pass}});
        r["pass"] = t.pass();
        emit(out, r.dump(2) + "\n");
      }
      return t.pass() ? 0 : 1;
    }
    if (verify->parsed()) {
      auto r = verify_suite(suite, algebra, seed, trials, prime);
      const auto text = r.to_json().dump(2) + "\n";
      if (out.empty()) {
        std::cout << text;
      } else {
        write_text_file(out, text);
        std::size_t passed = 0;
        for (const auto& c : r.cases) passed += c.pass ? 1 : 0;
        std::cout << suite << " " << algebra << ": " << passed << "/" << r.cases.size() << " cases pass\n";
      }
      return r.pass() ? 0 : 1;
    }
    if (catalog->parsed()) {
      if (emit_cmd->parsed()) {
        emit(out, to_json(catalog_description(name)).dump(2) + "\n");
      } else {
        for (const auto& n : catalog_names()) std::cout << n << "\n";
      }
      return 0;
    }
    if (regen->parsed()) {
      if (!is_catalog_ref(name) || ends_with(name, "^op")) throw InputError("'" + name + "' is not a bundled algebra");
      std::filesystem::create_directories(fixture_dir);
      const auto path = fixture_path(name, fixture_dir);
      write_text_file(path, fixture_text(knit(name)));
      std::cout << path << "\n";
      return 0;
    }
  } catch (const Error& e) {
    return fail_with(e.kind(), e.what(), 2);
  } catch (const json::exception& e) {
    return fail_with("parse", e.what(), 2);
  } catch (const std::exception& e) {
    return fail_with("internal", e.what(), 2);
  }
  return 0;
}
