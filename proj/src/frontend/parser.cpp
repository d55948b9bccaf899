#include "jitbp/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "jitbp/errors.hpp"

namespace jitbp {
namespace {

enum class Tok : std::uint8_t {
  Ident,
  Number,
  Semi,
  Comma,
  Colon,
  Assign,  // :=
  LParen,
  RParen,
  LBrace,
  RBrace,
  Not,
  And,
  Or,
  Xor,
  Eq,
  Neq,
  Star,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

const std::set<std::string, std::less<>> kKeywords = {
    "decl", "init", "void", "begin", "end", "skip", "goto", "assume", "assert", "constrain",
    "start_thread", "end_thread", "atomic", "wait", "signal", "broadcast", "return"};

class Lexer {
 public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          advance();
        t.kind = Tok::Ident;
        t.text = std::string(text_.substr(start, pos_ - start));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          advance();
        t.kind = Tok::Number;
        t.text = std::string(text_.substr(start, pos_ - start));
      } else {
        t.kind = punct(c, t);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  Tok punct(char c, Token& t) {
    auto two = [&](char next) { return pos_ + 1 < text_.size() && text_[pos_ + 1] == next; };
    auto take = [&](std::size_t n, Tok k) {
      t.text = std::string(text_.substr(pos_, n));
      for (std::size_t i = 0; i < n; ++i) advance();
      return k;
    };
    switch (c) {
      case ';': return take(1, Tok::Semi);
      case ',': return take(1, Tok::Comma);
      case ':': return two('=') ? take(2, Tok::Assign) : take(1, Tok::Colon);
      case '(': return take(1, Tok::LParen);
      case ')': return take(1, Tok::RParen);
      case '{': return take(1, Tok::LBrace);
      case '}': return take(1, Tok::RBrace);
      case '!': return two('=') ? take(2, Tok::Neq) : take(1, Tok::Not);
      case '&': return two('&') ? take(2, Tok::And) : take(1, Tok::And);
      case '|': return two('|') ? take(2, Tok::Or) : take(1, Tok::Or);
      case '^': return take(1, Tok::Xor);
      case '*': return take(1, Tok::Star);
      case '=':
        if (two('=')) return take(2, Tok::Eq);
        break;
      default:
        break;
    }
    throw ParseError({file_, line_, col_}, std::string("unexpected character '") + c + "'");
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string file, DirectionMode mode)
      : toks_(std::move(toks)), file_(std::move(file)), mode_(mode) {}

  BoolProgram run() {
    std::optional<std::size_t> init_at;
    while (is_kw("decl") || is_kw("init")) {
      if (is_kw("decl")) {
        next();
        for (const Token& t : varlist()) declare(t, globals_, "global");
        expect(Tok::Semi, "';'");
      } else {
        if (init_at) fail(peek(), "duplicate init clause");
        next();
        init_at = cur_;
        while (peek().kind != Tok::Semi && peek().kind != Tok::End) next();
        expect(Tok::Semi, "';'");
      }
    }
    while (peek().kind != Tok::End) function();
    if (functions_.empty()) fail(peek(), "program has no function");
    resolve_labels();

    std::optional<Expr> init;
    if (init_at) {
      std::size_t resume = cur_;
      cur_ = *init_at;
      scope_all_ = true;
      choices_ = 0;
      init = expr();
      if (choices_ != 0) fail(toks_[*init_at], "'*' is not allowed in the init clause");
      if (peek().kind != Tok::Semi) fail(peek(), "expected ';' after init expression");
      cur_ = resume;
    }
    return BoolProgram(globals_, local_order_, std::move(stmts_), std::move(functions_),
                       std::move(init), mode_);
  }

 private:
  // ---- token helpers ----
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(cur_ + k, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (cur_ < toks_.size() - 1) ++cur_;
    return t;
  }
  bool is_kw(std::string_view kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError({file_, t.line, t.column}, msg);
  }
  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind)
      fail(peek(), std::string("expected ") + what + ", found " + describe(peek()));
    return next();
  }
  void expect_kw(std::string_view kw) {
    if (!is_kw(kw)) fail(peek(), "expected '" + std::string(kw) + "', found " + describe(peek()));
    next();
  }
  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'";
  }
  const Token& ident(const char* what) {
    if (peek().kind != Tok::Ident) fail(peek(), std::string("expected ") + what);
    if (kKeywords.count(peek().text)) fail(peek(), "keyword '" + peek().text + "' used as " + what);
    return next();
  }

  // ---- declarations ----
  std::vector<Token> varlist() {
    std::vector<Token> out{ident("variable name")};
    while (peek().kind == Tok::Comma) {
      next();
      out.push_back(ident("variable name"));
    }
    return out;
  }

  void declare(const Token& t, std::vector<std::string>& list, const char* what) {
    if (std::find(globals_.begin(), globals_.end(), t.text) != globals_.end() ||
        local_names_.count(t.text))
      fail(t, std::string("duplicate declaration of ") + what + " '" + t.text + "'");
    list.push_back(t.text);
  }

  void declare_local(const Token& t) {
    declare(t, local_order_, "local");
    auto idx = static_cast<std::uint32_t>(local_order_.size() - 1);
    local_names_[t.text] = idx;
    fn_locals_.push_back(idx);
  }

  // ---- functions and statements ----
  void function() {
    expect_kw("void");
    const Token& name = ident("function name");
    for (const Function& f : functions_)
      if (f.name == name.text) fail(name, "duplicate function '" + name.text + "'");
    fn_locals_.clear();
    expect(Tok::LParen, "'('");
    if (peek().kind != Tok::RParen)
      for (const Token& t : varlist()) declare_local(t);
    expect(Tok::RParen, "')'");
    expect_kw("begin");
    while (is_kw("decl")) {
      next();
      for (const Token& t : varlist()) declare_local(t);
      expect(Tok::Semi, "';'");
    }
    Function fn;
    fn.name = name.text;
    fn.first = static_cast<Pc>(stmts_.size() + 1);
    while (!is_kw("end")) {
      if (peek().kind == Tok::End) fail(peek(), "missing 'end' of function '" + fn.name + "'");
      labeled_statement();
    }
    next();
    if (stmts_.size() + 1 == fn.first) fail(name, "function '" + fn.name + "' has no statements");
    fn.last = static_cast<Pc>(stmts_.size());
    fn.locals = fn_locals_;
    const Stmt& last = stmts_.back();
    switch (last.kind()) {
      case StmtKind::StartThread:
      case StmtKind::Wait:
      case StmtKind::Signal:
      case StmtKind::Broadcast:
        fail(stmt_tokens_.back(), std::string("'") + to_string(last.kind()) +
                                      "' cannot be the last statement of a function");
      default:
        break;
    }
    functions_.push_back(std::move(fn));
  }

  void labeled_statement() {
    const Pc pc = static_cast<Pc>(stmts_.size() + 1);
    while ((peek().kind == Tok::Number || peek().kind == Tok::Ident) &&
           peek(1).kind == Tok::Colon) {
      const Token& t = next();
      next();
      if (t.kind == Tok::Number) {
        if (t.text != std::to_string(pc))
          fail(t, "label " + t.text + " does not match statement position " + std::to_string(pc));
      } else {
        if (kKeywords.count(t.text)) fail(t, "keyword '" + t.text + "' used as label");
        if (!symbols_.emplace(t.text, pc).second) fail(t, "duplicate label '" + t.text + "'");
      }
    }
    stmt_tokens_.push_back(peek());
    choices_ = 0;
    Stmt s = statement(false);
    expect(Tok::Semi, "';'");
    stmts_.push_back(std::move(s));
  }

  Stmt statement(bool in_atomic) {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail(t, "expected a statement, found " + describe(t));
    const std::string& w = t.text;
    auto nonseq = [&](const char* kw) {
      if (in_atomic) fail(t, std::string("'") + kw + "' is not allowed inside atomic");
    };
    if (w == "skip") {
      next();
      return {SkipStmt{}};
    }
    if (w == "goto") {
      next();
      std::vector<Token> refs{label_token()};
      while (peek().kind == Tok::Comma) {
        next();
        refs.push_back(label_token());
      }
      return make_goto(std::move(refs));
    }
    if (w == "assume" || w == "assert") {
      next();
      expect(Tok::LParen, "'('");
      Expr e = expr();
      expect(Tok::RParen, "')'");
      if (w == "assume") return {AssumeStmt{std::move(e)}};
      return {AssertStmt{std::move(e)}};
    }
    if (w == "start_thread") {
      nonseq("start_thread");
      next();
      if (is_kw("goto")) next();
      return make_start(label_token());
    }
    if (w == "end_thread") {
      nonseq("end_thread");
      next();
      return {EndThreadStmt{}};
    }
    if (w == "wait" || w == "signal" || w == "broadcast") {
      nonseq(w.c_str());
      next();
      if (w == "wait") return {WaitStmt{}};
      if (w == "signal") return {SignalStmt{}};
      return {BroadcastStmt{}};
    }
    if (w == "atomic") {
      if (in_atomic) fail(t, "nested atomic blocks are not allowed");
      next();
      expect(Tok::LBrace, "'{'");
      AtomicStmt a;
      while (peek().kind != Tok::RBrace) {
        std::uint32_t outer = choices_;
        choices_ = 0;
        a.body.push_back(statement(true));
        choices_ = outer;
        expect(Tok::Semi, "';'");
      }
      if (a.body.empty()) fail(t, "empty atomic block");
      next();
      return {std::move(a)};
    }
    if (w == "return") fail(t, "function returns are not supported");
    if (kKeywords.count(w)) fail(t, "unexpected '" + w + "'");
    if (peek(1).kind == Tok::LParen) fail(t, "function calls are not supported ('" + w + "')");
    return assignment();
  }

  Stmt assignment() {
    AssignStmt a;
    std::vector<Token> targets = varlist();
    for (const Token& t : targets) {
      Atom atom = resolve(t);
      if (std::find(a.targets.begin(), a.targets.end(), atom) != a.targets.end())
        fail(t, "variable '" + t.text + "' assigned twice");
      a.targets.push_back(atom);
    }
    const Token& op = expect(Tok::Assign, "':='");
    a.values.push_back(expr());
    while (peek().kind == Tok::Comma) {
      next();
      a.values.push_back(expr());
    }
    if (a.values.size() != a.targets.size())
      fail(op, "parallel assignment has " + std::to_string(a.targets.size()) + " targets but " +
                   std::to_string(a.values.size()) + " values");
    if (is_kw("constrain")) {
      next();
      a.constrain = expr();
    }
    return {std::move(a)};
  }

  Token label_token() {
    if (peek().kind != Tok::Number && peek().kind != Tok::Ident) fail(peek(), "expected a label");
    return next();
  }

  // Goto and start_thread labels are resolved once every label is known.
  // Fixups are recorded in textual order, which is also the order in which
  // patch() walks the statements (atomic bodies included).
  Stmt make_goto(std::vector<Token> refs) {
    GotoStmt g;
    g.targets.assign(refs.size(), 0);
    fixups_.push_back(std::move(refs));
    return {std::move(g)};
  }

  Stmt make_start(Token label) {
    fixups_.push_back({std::move(label)});
    return {StartThreadStmt{}};
  }

  Pc resolve_label(const Token& t) const {
    std::uint64_t pc = 0;
    if (t.kind == Tok::Number) {
      if (t.text.size() > 9) fail(t, "undefined label " + t.text);
      pc = std::stoull(t.text);
    } else {
      auto it = symbols_.find(t.text);
      if (it == symbols_.end()) fail(t, "undefined label '" + t.text + "'");
      pc = it->second;
    }
    if (pc < 1 || pc > stmts_.size()) fail(t, "undefined label " + t.text);
    return static_cast<Pc>(pc);
  }

  void resolve_labels() {
    std::size_t next_fix = 0;
    for (Stmt& s : stmts_) patch(s, next_fix);
  }

  void patch(Stmt& s, std::size_t& next_fix) {
    if (s.kind() == StmtKind::Goto) {
      auto& g = std::get<GotoStmt>(s.node);
      g.targets.clear();
      for (const Token& t : fixups_.at(next_fix++)) g.targets.push_back(resolve_label(t));
    } else if (s.kind() == StmtKind::StartThread) {
      std::get<StartThreadStmt>(s.node).target = resolve_label(fixups_.at(next_fix++).front());
    } else if (s.kind() == StmtKind::Atomic) {
      for (Stmt& b : std::get<AtomicStmt>(s.node).body) patch(b, next_fix);
    }
  }

  // ---- expressions ----
  Atom resolve(const Token& t) const {
    auto g = std::find(globals_.begin(), globals_.end(), t.text);
    if (g != globals_.end())
      return {AtomKind::Global, static_cast<std::uint32_t>(g - globals_.begin())};
    auto it = local_names_.find(t.text);
    if (it != local_names_.end() &&
        (scope_all_ ||
         std::find(fn_locals_.begin(), fn_locals_.end(), it->second) != fn_locals_.end()))
      return {AtomKind::Local, it->second};
    fail(t, "undeclared variable '" + t.text + "'");
  }

  Expr expr() {
    Expr e = xor_expr();
    while (peek().kind == Tok::Or) {
      next();
      e = Expr::binary(Op::Or, std::move(e), xor_expr());
    }
    return e;
  }
  Expr xor_expr() {
    Expr e = and_expr();
    while (peek().kind == Tok::Xor) {
      next();
      e = Expr::binary(Op::Xor, std::move(e), and_expr());
    }
    return e;
  }
  Expr and_expr() {
    Expr e = eq_expr();
    while (peek().kind == Tok::And) {
      next();
      e = Expr::binary(Op::And, std::move(e), eq_expr());
    }
    return e;
  }
  Expr eq_expr() {
    Expr e = unary();
    if (peek().kind == Tok::Eq || peek().kind == Tok::Neq) {
      bool neq = next().kind == Tok::Neq;
      e = Expr::binary(Op::Eq, std::move(e), unary());
      if (neq) e = Expr::negate(std::move(e));
    }
    return e;
  }
  Expr unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not:
        next();
        return Expr::negate(unary());
      case Tok::LParen: {
        next();
        Expr e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Star:
        next();
        if (choices_ >= 64) fail(t, "too many '*' in one statement");
        return Expr::choice(choices_++);
      case Tok::Number:
        if (t.text != "0" && t.text != "1") fail(t, "only the constants 0 and 1 are allowed");
        next();
        return Expr::constant(t.text == "1");
      case Tok::Ident:
        if (kKeywords.count(t.text)) fail(t, "unexpected '" + t.text + "' in expression");
        if (peek(1).kind == Tok::LParen)
          fail(t, "function calls are not supported ('" + t.text + "')");
        return Expr::var(resolve(next()));
      default:
        fail(t, "expected an expression, found " + describe(t));
    }
  }

  std::vector<Token> toks_;
  std::size_t cur_ = 0;
  std::string file_;
  DirectionMode mode_;

  std::vector<std::string> globals_;
  std::vector<std::string> local_order_;
  std::map<std::string, std::uint32_t, std::less<>> local_names_;
  std::vector<std::uint32_t> fn_locals_;
  bool scope_all_ = false;
  std::uint32_t choices_ = 0;

  std::vector<Stmt> stmts_;
  std::vector<Token> stmt_tokens_;
  std::vector<Function> functions_;
  std::map<std::string, Pc, std::less<>> symbols_;
  std::vector<std::vector<Token>> fixups_;
};

}  // namespace

BoolProgram parse(std::string_view text, DirectionMode mode, const std::string& file) {
  return Parser(Lexer(text, file).run(), file, mode).run();
}

BoolProgram parse(std::istream& in, DirectionMode mode, const std::string& file) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), mode, file);
}

BoolProgram parse_file(const std::string& path, DirectionMode mode) {
  std::ifstream in(path);
  if (!in) throw ParseError({path, 0, 0}, "cannot open file");
  return parse(in, mode, path);
}

}  // namespace jitbp

namespace jitbp {
namespace {

void print_stmt(const Stmt& s, const BoolProgram& p, std::string& out) {
  auto ex = [&](const Expr& e) { return to_string(e, p.globals(), p.locals()); };
  switch (s.kind()) {
    case StmtKind::Skip:
      out += "skip";
      break;
    case StmtKind::Goto: {
      out += "goto ";
      const auto& g = s.as<GotoStmt>();
      for (std::size_t i = 0; i < g.targets.size(); ++i)
        out += (i ? ", " : "") + std::to_string(g.targets[i]);
      break;
    }
    case StmtKind::Assume:
      out += "assume(" + ex(s.as<AssumeStmt>().cond) + ")";
      break;
    case StmtKind::Assert:
      out += "assert(" + ex(s.as<AssertStmt>().cond) + ")";
      break;
    case StmtKind::Assign: {
      const auto& a = s.as<AssignStmt>();
      for (std::size_t i = 0; i < a.targets.size(); ++i) {
        if (i) out += ", ";
        out += ex(Expr::var(a.targets[i]));
      }
      out += " := ";
      for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (i) out += ", ";
        out += ex(a.values[i]);
      }
      if (a.constrain) out += " constrain " + ex(*a.constrain);
      break;
    }
    case StmtKind::StartThread:
      out += "start_thread " + std::to_string(s.as<StartThreadStmt>().target);
      break;
    case StmtKind::Atomic:
      out += "atomic {";
      for (const Stmt& b : s.as<AtomicStmt>().body) {
        out += ' ';
        print_stmt(b, p, out);
        out += ';';
      }
      out += " }";
      break;
    default:
      out += to_string(s.kind());
  }
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
  return out;
}

}  // namespace

std::string print(const BoolProgram& p) {
  std::string out;
  if (!p.globals().empty()) out += "decl " + join(p.globals()) + ";\n";
  if (p.init()) out += "init " + to_string(*p.init(), p.globals(), p.locals()) + ";\n";
  for (const Function& f : p.functions()) {
    out += "\nvoid " + f.name + "() begin\n";
    if (!f.locals.empty()) {
      std::vector<std::string> names;
      for (std::uint32_t i : f.locals) names.push_back(p.locals()[i]);
      out += "  decl " + join(names) + ";\n";
    }
    for (Pc pc = f.first; pc <= f.last; ++pc) {
      out += "  " + std::to_string(pc) + ": ";
      print_stmt(p.stmt(pc), p, out);
      out += ";\n";
    }
    out += "end\n";
  }
  return out;
}

}  // namespace jitbp
