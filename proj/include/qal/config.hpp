#pragma once
// Restricted key=value configuration DSL with exact rational literals.
//
// Grammar (line oriented, '#' starts a comment):
//   file    := { line }
//   line    := key '=' value
//   value   := rational | string | call | list | range
//   rational:= ['-'] digits [ '/' digits ]
//   call    := ident '(' [ ident '=' value { ',' ident '=' value } ] ')'
//   list    := '[' [ value { ',' value } ] ']'
//   range   := rational '..' rational          (integer endpoints)
//
// Parsing produces a flat map of typed values; command handlers consume keys
// through ConfigView, which rejects unknown keys and reports positioned
// diagnostics for both syntax and semantic errors.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qal/ecseq.hpp"
#include "qal/elseq.hpp"
#include "qal/scalar.hpp"
#include "qal/seqmodel.hpp"
#include "qal/states.hpp"

namespace qal {

struct ConfigError : std::runtime_error {
  int line = 0, col = 0;
  ConfigError(int ln, int cl, const std::string& msg)
      : std::runtime_error("config:" + std::to_string(ln) + ":" +
                           std::to_string(cl) + ": " + msg),
        line(ln), col(cl) {}
};

struct ConfigValue;

struct CallValue {
  std::string name;
  std::map<std::string, std::shared_ptr<ConfigValue>> args;
  int line = 0, col = 0;
};

struct RangeValue {
  long lo = 0, hi = 0;
};

struct ConfigValue {
  std::variant<Rat, std::string, CallValue, std::vector<ConfigValue>, RangeValue>
      data;
  int line = 0, col = 0;

  bool is_rational() const { return std::holds_alternative<Rat>(data); }
  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_call() const { return std::holds_alternative<CallValue>(data); }
  bool is_list() const {
    return std::holds_alternative<std::vector<ConfigValue>>(data);
  }
  bool is_range() const { return std::holds_alternative<RangeValue>(data); }

  const Rat& rational() const {
    if (!is_rational()) throw ConfigError(line, col, "expected a rational value");
    return std::get<Rat>(data);
  }
  long integer() const {
    const Rat& r = rational();
    if (boost::multiprecision::denominator(r) != 1)
      throw ConfigError(line, col, "expected an integer value");
    return static_cast<long>(boost::multiprecision::numerator(r));
  }
  double number() const { return static_cast<double>(rational()); }
  const std::string& str() const {
    if (!is_string()) throw ConfigError(line, col, "expected an identifier");
    return std::get<std::string>(data);
  }
  const CallValue& call() const {
    if (!is_call()) throw ConfigError(line, col, "expected a call expression");
    return std::get<CallValue>(data);
  }
  const std::vector<ConfigValue>& list() const {
    if (!is_list()) throw ConfigError(line, col, "expected a list");
    return std::get<std::vector<ConfigValue>>(data);
  }
  RangeValue range() const {
    if (is_range()) return std::get<RangeValue>(data);
    throw ConfigError(line, col, "expected a range a..b");
  }
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace detail {

class ConfigParser {
 public:
  explicit ConfigParser(const std::string& text) : text_(text) {}

  std::map<std::string, ConfigValue> parse() {
    std::map<std::string, ConfigValue> out;
    while (pos_ < text_.size()) {
      skip_ws_and_comments();
      if (pos_ >= text_.size()) break;
      int ln = line_, cl = col_;
      std::string key = ident();
      skip_spaces();
      expect('=');
      skip_spaces();
      ConfigValue v = value();
      skip_spaces();
      if (pos_ < text_.size() && text_[pos_] != '\n' && text_[pos_] != '#')
        fail("unexpected trailing characters after value");
      if (out.count(key))
        throw ConfigError(ln, cl, "duplicate key '" + key + "'");
      out.emplace(std::move(key), std::move(v));
    }
    return out;
  }

 private:
  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(line_, col_, msg);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') { ++line_; col_ = 1; } else ++col_;
    return c;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  void skip_spaces() {
    while (pos_ < text_.size() && (peek() == ' ' || peek() == '\t')) advance();
  }

  void skip_ws_and_comments() {
    for (;;) {
      while (pos_ < text_.size() &&
             (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r'))
        advance();
      if (peek() == '#') {
        while (pos_ < text_.size() && peek() != '\n') advance();
        continue;
      }
      break;
    }
  }

  /// Inside brackets/parens, newlines act as ordinary whitespace.
  void skip_inner_ws() {
    for (;;) {
      while (pos_ < text_.size() &&
             (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r'))
        advance();
      if (peek() == '#') {
        while (pos_ < text_.size() && peek() != '\n') advance();
        continue;
      }
      break;
    }
  }

  static bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool ident_char(char c) {
    return ident_start(c) || (c >= '0' && c <= '9') || c == '-';
  }

  std::string ident() {
    if (!ident_start(peek())) fail("expected an identifier");
    std::string s;
    while (pos_ < text_.size() && ident_char(peek())) s.push_back(advance());
    return s;
  }

  Rat rational_literal() {
    std::string s;
    if (peek() == '-') s.push_back(advance());
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected a number");
    while (std::isdigit(static_cast<unsigned char>(peek()))) s.push_back(advance());
    if (peek() == '/' && pos_ + 1 < text_.size() &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      s.push_back(advance());
      while (std::isdigit(static_cast<unsigned char>(peek())))
        s.push_back(advance());
    }
    try {
      return parse_rational(s);
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }

  ConfigValue value() {
    ConfigValue v;
    v.line = line_;
    v.col = col_;
    char c = peek();
    if (c == '[') {
      advance();
      std::vector<ConfigValue> items;
      skip_inner_ws();
      if (peek() != ']') {
        for (;;) {
          items.push_back(value());
          skip_inner_ws();
          if (peek() == ',') { advance(); skip_inner_ws(); continue; }
          break;
        }
      }
      expect(']');
      v.data = std::move(items);
      return v;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      Rat r = rational_literal();
      if (peek() == '.' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '.') {
        advance(); advance();
        Rat hi = rational_literal();
        if (boost::multiprecision::denominator(r) != 1 ||
            boost::multiprecision::denominator(hi) != 1)
          fail("range endpoints must be integers");
        RangeValue rg{static_cast<long>(boost::multiprecision::numerator(r)),
                      static_cast<long>(boost::multiprecision::numerator(hi))};
        if (rg.hi < rg.lo) fail("range upper endpoint below lower endpoint");
        v.data = rg;
        return v;
      }
      v.data = std::move(r);
      return v;
    }
    if (ident_start(c)) {
      std::string name = ident();
      skip_spaces();
      if (peek() == '(') {
        advance();
        CallValue call;
        call.name = std::move(name);
        call.line = v.line;
        call.col = v.col;
        skip_inner_ws();
        if (peek() != ')') {
          for (;;) {
            int aln = line_, acl = col_;
            std::string arg = ident();
            skip_inner_ws();
            expect('=');
            skip_inner_ws();
            auto av = std::make_shared<ConfigValue>(value());
            if (call.args.count(arg))
              throw ConfigError(aln, acl, "duplicate argument '" + arg + "'");
            call.args.emplace(std::move(arg), std::move(av));
            skip_inner_ws();
            if (peek() == ',') { advance(); skip_inner_ws(); continue; }
            break;
          }
        }
        expect(')');
        v.data = std::move(call);
        return v;
      }
      v.data = std::move(name);
      return v;
    }
    fail("expected a value");
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Typed access with unknown-key rejection
// ---------------------------------------------------------------------------

class ConfigView {
 public:
  explicit ConfigView(std::map<std::string, ConfigValue> values)
      : values_(std::move(values)) {}

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  const ConfigValue& get(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end())
      throw ConfigError(0, 0, "missing required key '" + key + "'");
    used_.insert(key);
    return it->second;
  }

  const ConfigValue* get_opt(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return nullptr;
    used_.insert(key);
    return &it->second;
  }

  long integer_or(const std::string& key, long fallback) {
    const ConfigValue* v = get_opt(key);
    return v ? v->integer() : fallback;
  }

  double number_or(const std::string& key, double fallback) {
    const ConfigValue* v = get_opt(key);
    return v ? v->number() : fallback;
  }

  std::string str_or(const std::string& key, const std::string& fallback) {
    const ConfigValue* v = get_opt(key);
    return v ? v->str() : fallback;
  }

  /// Throws on any key never consumed by the command handler.
  void reject_unknown() const {
    for (const auto& [k, v] : values_)
      if (!used_.count(k))
        throw ConfigError(v.line, v.col, "unknown key '" + k + "'");
  }

 private:
  std::map<std::string, ConfigValue> values_;
  std::set<std::string> used_;
};

inline ConfigView parse_config(const std::string& text) {
  return ConfigView(detail::ConfigParser(text).parse());
}

// ---------------------------------------------------------------------------
// Domain builders
// ---------------------------------------------------------------------------

namespace detail {

inline const ConfigValue& call_arg(const CallValue& c, const std::string& name) {
  auto it = c.args.find(name);
  if (it == c.args.end())
    throw ConfigError(c.line, c.col,
                      c.name + "(...) is missing argument '" + name + "'");
  return *it->second;
}

inline const ConfigValue* call_arg_opt(const CallValue& c,
                                       const std::string& name) {
  auto it = c.args.find(name);
  return it == c.args.end() ? nullptr : it->second.get();
}

inline void reject_extra_args(const CallValue& c,
                              std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : c.args) {
    bool ok = false;
    for (const char* a : allowed)
      if (k == a) { ok = true; break; }
    if (!ok)
      throw ConfigError(v->line, v->col,
                        c.name + "(...) has unknown argument '" + k + "'");
  }
}

}  // namespace detail

/// Eventually linear sequence from a call expression.  Supported forms:
///   linear(slope_left=.., slope_right=.., anchor=..)
///   constant(value=..)
///   identity()                     -- beta(k) = k
///   abs_plus(c=..)                 -- beta(k) = |k| + c
inline ELSeq make_elseq(const ConfigValue& v) {
  const CallValue& c = v.call();
  using detail::call_arg;
  if (c.name == "linear") {
    detail::reject_extra_args(c, {"slope_left", "slope_right", "anchor"});
    return ELSeq::linear(Scalar(call_arg(c, "slope_left").rational()),
                         Scalar(call_arg(c, "slope_right").rational()),
                         Scalar(call_arg(c, "anchor").rational()));
  }
  if (c.name == "constant") {
    detail::reject_extra_args(c, {"value"});
    return ELSeq::constant(Scalar(call_arg(c, "value").rational()));
  }
  if (c.name == "identity") {
    detail::reject_extra_args(c, {});
    return ELSeq::identity();
  }
  if (c.name == "abs_plus") {
    detail::reject_extra_args(c, {"c"});
    Scalar cc(call_arg(c, "c").rational());
    return ELSeq::linear(Scalar(Rat(-1)), Scalar(Rat(1)), cc);
  }
  throw ConfigError(c.line, c.col, "unknown sequence constructor '" + c.name +
                                       "' (expected linear/constant/identity/"
                                       "abs_plus)");
}

/// Coefficient model: exact eventually-linear data or a double tail model.
///   tail(slope_left=.., slope_right=.., offset=.. [, perturb=.., amplitude=..])
///   any make_elseq form (exact)
///   scaled(base=<form>, factor=..)              -- pointwise factor
inline SeqModel make_seqmodel(const ConfigValue& v) {
  const CallValue& c = v.call();
  using detail::call_arg;
  if (c.name == "tail") {
    detail::reject_extra_args(c,
                              {"slope_left", "slope_right", "offset", "perturb",
                               "amplitude"});
    Perturbation p;
    if (const ConfigValue* pk = detail::call_arg_opt(c, "perturb")) {
      const std::string& kind = pk->str();
      if (kind == "none") p.kind = PerturbKind::none;
      else if (kind == "constant") p.kind = PerturbKind::constant;
      else if (kind == "decaying") p.kind = PerturbKind::decaying;
      else if (kind == "log_damped") p.kind = PerturbKind::log_damped;
      else throw ConfigError(pk->line, pk->col, "unknown perturbation kind");
      p.amplitude = call_arg(c, "amplitude").number();
    }
    return SeqModel::tail(call_arg(c, "slope_left").number(),
                          call_arg(c, "slope_right").number(),
                          call_arg(c, "offset").number(), p);
  }
  if (c.name == "scaled") {
    detail::reject_extra_args(c, {"base", "factor"});
    SeqModel base = make_seqmodel(call_arg(c, "base"));
    Rat f = call_arg(c, "factor").rational();
    double fd = static_cast<double>(f);
    return base.side_scaled(fd, fd, f, f);
  }
  return SeqModel::exact(make_elseq(v));
}

/// Weight family:
///   geometric(q=..)
///   finite(at=.., values=[..])
///   window_geometric(at=.., values=[..], q=..)
inline WeightSpec make_weights(const ConfigValue& v) {
  const CallValue& c = v.call();
  using detail::call_arg;
  auto values_of = [&](const ConfigValue& lv) {
    std::vector<Rat> out;
    for (const auto& item : lv.list()) out.push_back(item.rational());
    return out;
  };
  if (c.name == "geometric") {
    detail::reject_extra_args(c, {"q"});
    Rat q = call_arg(c, "q").rational();
    if (!(q > 0 && q < 1))
      throw ConfigError(c.line, c.col, "geometric weights need q in (0,1)");
    return WeightSpec::geometric(q);
  }
  if (c.name == "finite") {
    detail::reject_extra_args(c, {"at", "values"});
    return WeightSpec::finite(call_arg(c, "at").integer(),
                              values_of(call_arg(c, "values")));
  }
  if (c.name == "window_geometric") {
    detail::reject_extra_args(c, {"at", "values", "q"});
    Rat q = call_arg(c, "q").rational();
    if (!(q > 0 && q < 1))
      throw ConfigError(c.line, c.col, "window_geometric weights need q in (0,1)");
    return WeightSpec::window_geometric(call_arg(c, "at").integer(),
                                        values_of(call_arg(c, "values")), q);
  }
  throw ConfigError(c.line, c.col, "unknown weight constructor '" + c.name +
                                       "' (expected geometric/finite/"
                                       "window_geometric)");
}

/// Shift parameter r; must lie strictly inside (0,1).
inline Rat make_r(const ConfigValue& v) {
  Rat r = v.rational();
  if (!(r > 0 && r < 1))
    throw ConfigError(v.line, v.col, "r must lie in (0,1)");
  return r;
}

/// Integer range helper: accepts `a..b` or a single integer.
inline std::pair<long, long> make_int_range(const ConfigValue& v) {
  if (v.is_range()) {
    RangeValue r = v.range();
    return {r.lo, r.hi};
  }
  long n = v.integer();
  return {n, n};
}

/// List of integers: `[a, b, c]`, a single integer, or a range.
inline std::vector<long> make_int_list(const ConfigValue& v) {
  std::vector<long> out;
  if (v.is_list()) {
    for (const auto& item : v.list()) out.push_back(item.integer());
    return out;
  }
  auto [lo, hi] = make_int_range(v);
  for (long k = lo; k <= hi; ++k) out.push_back(k);
  return out;
}

/// List of rationals.
inline std::vector<Rat> make_rat_list(const ConfigValue& v) {
  std::vector<Rat> out;
  if (v.is_list()) {
    for (const auto& item : v.list()) out.push_back(item.rational());
  } else {
    out.push_back(v.rational());
  }
  return out;
}

}  // namespace qal
