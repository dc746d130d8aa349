#include <cctype>

#include "manyone/term.hpp"

namespace manyone {

namespace {

class Parser {
 public:
  Parser(const std::string& text, const AtomEnv& atoms, const TermEnv* env)
      : s_(text), atoms_(atoms), env_(env) {}

  Obj object_only() {
    Obj o = object();
    finish();
    return o;
  }

  Term term_only() {
    Term t = composite();
    finish();
    return t;
  }

 private:
  const std::string& s_;
  const AtomEnv& atoms_;
  const TermEnv* env_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool accept_word(const std::string& w) {
    ws();
    if (s_.compare(pos_, w.size(), w) != 0) return false;
    pos_ += w.size();
    return true;
  }

  void finish() {
    ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
  }

  std::string identifier() {
    ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
      ++pos_;
    if (pos_ == start) fail("identifier expected");
    return s_.substr(start, pos_ - start);
  }

  // obj := sum; sum := product ('+' product)*; product := primary ('*' primary)*
  Obj object() {
    Obj acc = object_product();
    while (accept('+')) acc = coprod(acc, object_product());
    return acc;
  }

  Obj object_product() {
    Obj acc = object_primary();
    while (accept('*')) acc = prod(acc, object_primary());
    return acc;
  }

  Obj object_primary() {
    if (accept('(')) {
      Obj o = object();
      expect(')');
      return o;
    }
    std::size_t at = (ws(), pos_);
    std::string name = identifier();
    Obj atom = atoms_.find(name);
    if (!atom) throw ParseError("unknown atom '" + name + "'", at);
    return atom;
  }

  std::vector<Obj> object_args(std::size_t n, bool allow_inv, bool& inverse) {
    std::vector<Obj> objs;
    for (std::size_t i = 0; i < n; ++i) {
      if (i) expect(',');
      objs.push_back(object());
    }
    inverse = false;
    if (allow_inv && accept(';')) {
      if (!accept_word("inv")) fail("expected 'inv'");
      inverse = true;
    }
    expect(']');
    return objs;
  }

  // term := sum ('.' term)?   ('.' is right-associative and binds loosest)
  Term composite() {
    Term head = sum();
    if (accept('.')) return t_comp(head, composite());
    return head;
  }

  Term sum() {
    Term acc = product();
    while (accept('+')) acc = t_coprod(acc, product());
    return acc;
  }

  Term product() {
    Term acc = primary();
    while (accept('*')) acc = t_prod(acc, primary());
    return acc;
  }

  Term primary() {
    ws();
    if (accept('(')) {
      Term t = composite();
      expect(')');
      return t;
    }
    std::size_t at = pos_;
    if (accept_word("gen:")) {
      std::string name = identifier();
      if (env_ && !env_->generators.contains(name))
        throw ParseError("unknown generator '" + name + "'", at);
      return t_gen(name);
    }
    if (accept_word("prob:")) {
      std::string name = identifier();
      if (!env_ || !env_->problems.contains(name))
        throw ParseError("unknown problem '" + name + "'", at);
      return t_prob(name, env_->problems.at(name));
    }
    if (accept_word("dom(")) {
      Term t = composite();
      expect(')');
      return t_dom(t);
    }
    std::string word = identifier();
    expect('[');
    bool inv = false;
    if (word == "id") return t_id(object_args(1, false, inv)[0]);
    if (word == "delta") return t_diag(object_args(1, false, inv)[0]);
    if (word == "nabla") return t_codiag(object_args(1, false, inv)[0]);
    if (word == "pi1" || word == "pi2" || word == "in1" || word == "in2" || word == "comm") {
      auto o = object_args(2, false, inv);
      if (word == "pi1") return t_proj1(o[0], o[1]);
      if (word == "pi2") return t_proj2(o[0], o[1]);
      if (word == "in1") return t_inj1(o[0], o[1]);
      if (word == "in2") return t_inj2(o[0], o[1]);
      return t_comm(o[0], o[1]);
    }
    if (word == "assoc" || word == "distr") {
      auto o = object_args(3, true, inv);
      return word == "assoc" ? t_assoc(o[0], o[1], o[2], inv) : t_distr(o[0], o[1], o[2], inv);
    }
    if (word == "const") {
      Obj a = object();
      if (!accept_word("->")) fail("expected '->'");
      Obj b = object();
      std::optional<Element> value;
      if (accept(':')) {
        try {
          value = parse_element_at(s_, pos_);
        } catch (const ParseError&) {
          throw;
        } catch (const Error& e) {
          fail(e.what());
        }
      }
      expect(']');
      return t_const(a, b, value);
    }
    throw ParseError("unknown term constructor '" + word + "'", at);
  }
};

}  // namespace

Obj parse_object(const std::string& text, const AtomEnv& atoms) {
  return Parser(text, atoms, nullptr).object_only();
}

Term parse_term(const std::string& text, const TermEnv& env) {
  return Parser(text, env.atoms, &env).term_only();
}

}  // namespace manyone
