#include "momlab/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <vector>

#include "momlab/errors.hpp"
#include "momlab/format.hpp"

namespace momlab {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(line == 0 ? "config: " + message
                                   : "config:" + std::to_string(line) + ":" +
                                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

struct Arg;

struct Expr {
  enum class Kind { Number, Word, Sign, Call };
  Kind kind = Kind::Word;
  double number = 0.0;
  std::string name;  // word, call name, or "+" / "-"
  std::vector<Arg> args;
  std::size_t column = 0;
};

struct Arg {
  std::string key;  // empty for positional arguments
  std::size_t key_column = 0;
  Expr value;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

class ExprParser {
 public:
  ExprParser(std::string_view text, std::size_t line, std::size_t first_column)
      : text_(text), line_(line), col0_(first_column) {}

  Expr parse_single() {
    Expr e = parse_expr();
    expect_end();
    return e;
  }

  std::vector<Expr> parse_list() {
    std::vector<Expr> items{parse_expr()};
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) return items;
      if (text_[pos_] != ',') fail(pos_, "expected ',' between list items");
      ++pos_;
      items.push_back(parse_expr());
    }
  }

 private:
  [[noreturn]] void fail(std::size_t pos, const std::string& message) const {
    throw ParseError(line_, col0_ + pos, message);
  }

  void skip_ws() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  void expect_end() {
    skip_ws();
    if (pos_ < text_.size()) fail(pos_, "unexpected trailing text");
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  bool number_ahead() const {
    if (pos_ >= text_.size()) return false;
    auto digitish = [&](std::size_t p) {
      return p < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[p])) || text_[p] == '.');
    };
    const char c = text_[pos_];
    if (digitish(pos_)) return true;
    return (c == '+' || c == '-') && digitish(pos_ + 1);
  }

  Expr parse_expr() {
    skip_ws();
    if (pos_ >= text_.size()) fail(pos_, "expected a value");
    Expr e;
    e.column = col0_ + pos_;
    const char c = text_[pos_];
    if (number_ahead()) {
      std::size_t start = pos_;
      if (c == '+') ++start;
      const char* first = text_.data() + start;
      const char* last = text_.data() + text_.size();
      auto [ptr, ec] = std::from_chars(first, last, e.number);
      if (ec != std::errc() || !std::isfinite(e.number)) fail(pos_, "malformed number");
      pos_ = static_cast<std::size_t>(ptr - text_.data());
      e.kind = Expr::Kind::Number;
      return e;
    }
    if (c == '+' || c == '-') {
      ++pos_;
      e.kind = Expr::Kind::Sign;
      e.name = std::string(1, c);
      return e;
    }
    if (!is_ident_start(c)) fail(pos_, std::string("unexpected character '") + c + "'");
    e.name = identifier();
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '(') {
      e.kind = Expr::Kind::Word;
      return e;
    }
    e.kind = Expr::Kind::Call;
    ++pos_;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ')') {
      ++pos_;
      return e;
    }
    for (;;) {
      Arg arg;
      skip_ws();
      const std::size_t save = pos_;
      if (pos_ < text_.size() && is_ident_start(text_[pos_])) {
        std::string key = identifier();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          arg.key = std::move(key);
          arg.key_column = col0_ + save;
          ++pos_;
        } else {
          pos_ = save;
        }
      }
      arg.value = parse_expr();
      e.args.push_back(std::move(arg));
      skip_ws();
      if (pos_ >= text_.size()) fail(pos_, "missing ')'");
      if (text_[pos_] == ')') {
        ++pos_;
        return e;
      }
      if (text_[pos_] != ',') fail(pos_, "expected ',' or ')'");
      ++pos_;
    }
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t col0_;
  std::size_t pos_ = 0;
};

// Interpretation of parsed expressions against the value grammars.
class Interp {
 public:
  explicit Interp(std::size_t line) : line_(line) {}

  [[noreturn]] void fail(const Expr& e, const std::string& message) const {
    throw ParseError(line_, e.column, message);
  }

  double number(const Expr& e, const char* what) const {
    if (e.kind != Expr::Kind::Number) fail(e, std::string("expected a number for ") + what);
    return e.number;
  }

  void positional(const Expr& e, std::size_t lo, std::size_t hi) const {
    for (const auto& a : e.args)
      if (!a.key.empty())
        throw ParseError(line_, a.key_column, "'" + e.name + "' takes positional arguments");
    if (e.args.size() < lo || e.args.size() > hi) {
      fail(e, "'" + e.name + "' takes " +
                  (lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi)) +
                  " argument(s)");
    }
  }

  void bare(const Expr& e) const {
    if (e.kind == Expr::Kind::Call && !e.args.empty()) fail(e, "'" + e.name + "' takes no arguments");
  }

  // keyword arguments restricted to `allowed`, each at most once
  void keywords(const Expr& e, std::initializer_list<const char*> allowed) const {
    std::set<std::string> seen;
    for (const auto& a : e.args) {
      if (a.key.empty()) fail(a.value, "'" + e.name + "' takes key=value arguments");
      bool ok = false;
      for (const char* k : allowed) ok = ok || a.key == k;
      if (!ok) throw ParseError(line_, a.key_column, "unknown argument '" + a.key + "'");
      if (!seen.insert(a.key).second)
        throw ParseError(line_, a.key_column, "duplicate argument '" + a.key + "'");
    }
  }

  const Expr* keyword(const Expr& e, const char* key) const {
    for (const auto& a : e.args)
      if (a.key == key) return &a.value;
    return nullptr;
  }

  DistributionSpec distribution(const Expr& e) const {
    if (e.kind != Expr::Kind::Word && e.kind != Expr::Kind::Call) fail(e, "expected a distribution");
    auto arg = [&](std::size_t i, double fallback) {
      return i < e.args.size() ? number(e.args[i].value, e.name.c_str()) : fallback;
    };
    try {
      if (e.name == "gaussian" || e.name == "normal") {
        positional(e, 0, 2);
        return DistributionSpec::gaussian(arg(0, 0.0), arg(1, 1.0));
      }
      if (e.name == "t") {
        positional(e, 1, 1);
        return DistributionSpec::student_t(arg(0, 0.0));
      }
      if (e.name == "gpd") {
        positional(e, 1, 3);
        return DistributionSpec::gpd(arg(0, 0.0), arg(1, 1.0), arg(2, 0.0));
      }
      if (e.name == "halfnormal") {
        bare(e);
        return DistributionSpec::half_normal();
      }
      if (e.name == "negexp") {
        positional(e, 0, 1);
        return DistributionSpec::negative_exponential(arg(0, 1.0));
      }
      if (e.name == "point") {
        positional(e, 1, 1);
        return DistributionSpec::point_mass(arg(0, 0.0));
      }
    } catch (const ParameterError& err) {
      fail(e, err.what());
    }
    fail(e, "unknown distribution '" + e.name +
                "' (expected gaussian, t, gpd, halfnormal, negexp or point)");
  }

  AttackKind attack(const Expr& e) const {
    if (e.kind != Expr::Kind::Word && e.kind != Expr::Kind::Call) fail(e, "expected an attack");
    if (e.name == "identity") {
      bare(e);
      return Identity{};
    }
    if (e.name == "largest_replacement") {
      bare(e);
      return LargestReplacement{};
    }
    if (e.name == "arbitrary_large") {
      positional(e, 0, 2);
      ArbitraryLarge a;
      if (!e.args.empty()) {
        a.magnitude = number(e.args[0].value, "the magnitude");
        if (!(a.magnitude > 0.0)) fail(e.args[0].value, "magnitude must be positive");
      }
      if (e.args.size() > 1) {
        const Expr& s = e.args[1].value;
        if (s.kind != Expr::Kind::Sign) fail(s, "expected '+' or '-'");
        a.sign = s.name == "-" ? -1 : +1;
      }
      return a;
    }
    fail(e, "unknown attack '" + e.name +
                "' (expected identity, largest_replacement or arbitrary_large)");
  }

  BlockRule rule(const Expr& e) const {
    if (e.kind != Expr::Kind::Word && e.kind != Expr::Kind::Call) fail(e, "expected a block rule");
    auto arg = [&](std::size_t i, double fallback) {
      return i < e.args.size() ? number(e.args[i].value, e.name.c_str()) : fallback;
    };
    if (e.name == "heavy_tail") {
      positional(e, 0, 1);
      const HeavyTail r{arg(0, 3.0)};
      if (!(r.gamma > 2.0)) fail(e, "heavy_tail needs γ > 2");
      return r;
    }
    if (e.name == "power") {
      positional(e, 0, 2);
      const PowerLaw r{arg(0, 4.0), arg(1, 2.0 / 3.0)};
      if (!(r.xi > 0.0)) fail(e, "power needs ξ > 0");
      if (!(r.exponent > 0.0 && r.exponent <= 1.0)) fail(e, "power needs an exponent in (0,1]");
      return r;
    }
    if (e.name == "fraction") {
      positional(e, 0, 1);
      const Fraction r{arg(0, 0.2)};
      if (!(r.beta > 0.0 && r.beta <= 1.0)) fail(e, "fraction needs β in (0,1]");
      return r;
    }
    fail(e, "unknown block rule '" + e.name + "' (expected heavy_tail, power or fraction)");
  }

  EstimatorSpec estimator(const Expr& e) const {
    if (e.kind != Expr::Kind::Word && e.kind != Expr::Kind::Call) fail(e, "expected an estimator");
    if (e.name == "mom") {
      keywords(e, {"rule", "partition"});
      MedianOfMeans mom;
      if (const Expr* r = keyword(e, "rule")) mom.rule = rule(*r);
      if (const Expr* p = keyword(e, "partition")) {
        if (p->kind == Expr::Kind::Word && p->name == "sequential")
          mom.partition = Partition::Sequential;
        else if (p->kind == Expr::Kind::Word && p->name == "shuffled")
          mom.partition = Partition::Shuffled;
        else
          fail(*p, "partition must be 'sequential' or 'shuffled'");
      }
      return mom;
    }
    if (e.name == "trimmed") {
      keywords(e, {"eps"});
      TrimmedMean t;
      if (const Expr* v = keyword(e, "eps")) {
        if (!(v->kind == Expr::Kind::Word && v->name == "auto")) {
          t.epsilon = number(*v, "eps");
          if (!(*t.epsilon >= 0.0 && *t.epsilon < 0.5)) fail(*v, "eps must lie in [0, 1/2)");
        }
      }
      return t;
    }
    if (e.name == "catoni") {
      keywords(e, {"scale", "delta"});
      Catoni c;
      if (const Expr* v = keyword(e, "scale")) {
        if (!(v->kind == Expr::Kind::Word && v->name == "oracle")) {
          c.scale_guess = number(*v, "scale");
          if (!(*c.scale_guess > 0.0)) fail(*v, "scale must be positive");
        }
      }
      if (const Expr* v = keyword(e, "delta")) {
        c.delta = number(*v, "delta");
        if (!(c.delta > 0.0 && c.delta < 1.0)) fail(*v, "delta must lie in (0,1)");
      }
      return c;
    }
    if (e.name == "mean") {
      bare(e);
      return SampleMean{};
    }
    if (e.name == "median") {
      bare(e);
      return SampleMedian{};
    }
    fail(e, "unknown estimator '" + e.name + "' (expected mom, trimmed, catoni, mean or median)");
  }

 private:
  std::size_t line_;
};

std::size_t first_non_space(std::string_view s, std::size_t from = 0) {
  while (from < s.size() && is_space(s[from])) ++from;
  return from;
}

std::size_t end_non_space(std::string_view s) {
  std::size_t end = s.size();
  while (end > 0 && is_space(s[end - 1])) --end;
  return end;
}

std::uint64_t parse_unsigned(std::string_view text, std::size_t line, std::size_t column,
                             const char* key, bool allow_float) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc() && ptr == text.data() + text.size()) return v;
  if (allow_float) {
    double d = 0.0;
    auto [p2, e2] = std::from_chars(text.data(), text.data() + text.size(), d);
    if (e2 == std::errc() && p2 == text.data() + text.size() && d >= 0.0 && d < 1.8e19 &&
        d == std::floor(d))
      return static_cast<std::uint64_t>(d);
  }
  throw ParseError(line, column, std::string("expected a nonnegative integer for '") + key + "'");
}

template <class F>
auto parse_value_text(std::string_view text, F&& interpret) {
  const std::size_t a = first_non_space(text);
  const std::size_t b = std::max(a, end_non_space(text));
  ExprParser parser(text.substr(a, b - a), 1, a + 1);
  const Expr e = parser.parse_single();
  return interpret(Interp(1), e);
}

}  // namespace

DistributionSpec parse_distribution(std::string_view text) {
  return parse_value_text(text, [](const Interp& in, const Expr& e) { return in.distribution(e); });
}
EstimatorSpec parse_estimator(std::string_view text) {
  return parse_value_text(text, [](const Interp& in, const Expr& e) { return in.estimator(e); });
}
AttackKind parse_attack(std::string_view text) {
  return parse_value_text(text, [](const Interp& in, const Expr& e) { return in.attack(e); });
}
BlockRule parse_block_rule(std::string_view text) {
  return parse_value_text(text, [](const Interp& in, const Expr& e) { return in.rule(e); });
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  cfg.plan.estimators.clear();
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view line = text.substr(start, stop - start);
    start = stop + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::size_t first = first_non_space(line);
    if (first >= line.size()) {
      if (stop == text.size()) break;
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, first + 1, "expected 'key = value'");
    const std::string key(line.substr(first, end_non_space(line.substr(0, eq)) - first));
    const std::size_t key_col = first + 1;
    if (key.empty()) throw ParseError(line_no, key_col, "missing key before '='");
    const std::size_t v0 = first_non_space(line, eq + 1);
    const std::size_t v1 = std::max(v0, end_non_space(line));
    const std::string_view value = line.substr(v0, v1 - v0);
    const std::size_t val_col = v0 + 1;
    if (value.empty()) throw ParseError(line_no, eq + 2, "missing value for '" + key + "'");

    static const std::set<std::string> known = {"label", "dist",  "estimator", "attack", "alpha",
                                                "n",     "delta", "n_rep",     "seed",   "out",
                                                "threads", "scale", "svg"};
    if (!known.count(key)) throw ParseError(line_no, key_col, "unknown key '" + key + "'");
    if (key != "estimator" && !seen.insert(key).second)
      throw ParseError(line_no, key_col, "duplicate key '" + key + "'");
    seen.insert(key);

    const Interp in(line_no);
    auto single = [&] { return ExprParser(value, line_no, val_col).parse_single(); };
    auto real = [&](const char* what) {
      const Expr e = single();
      return in.number(e, what);
    };

    if (key == "label" || key == "out") {
      (key == "label" ? cfg.plan.label : cfg.out) = std::string(value);
    } else if (key == "dist") {
      cfg.plan.dist = in.distribution(single());
    } else if (key == "estimator") {
      cfg.plan.estimators.push_back(in.estimator(single()));
    } else if (key == "attack") {
      cfg.plan.attack = in.attack(single());
    } else if (key == "alpha") {
      const auto items = ExprParser(value, line_no, val_col).parse_list();
      cfg.plan.alpha_grid.clear();
      if (items.size() == 1 && items[0].kind == Expr::Kind::Call && items[0].name == "logspace") {
        const Expr& call = items[0];
        in.positional(call, 3, 3);
        const double lo = in.number(call.args[0].value, "logspace");
        const double hi = in.number(call.args[1].value, "logspace");
        const double count = in.number(call.args[2].value, "logspace");
        if (!(count >= 1.0 && count == std::floor(count) && count <= 10000.0))
          in.fail(call.args[2].value, "logspace count must be a positive integer");
        try {
          cfg.plan.alpha_grid = log_grid(lo, hi, static_cast<std::size_t>(count));
        } catch (const ParameterError& err) {
          in.fail(call, err.what());
        }
      } else {
        for (const auto& item : items) {
          const double a = in.number(item, "alpha");
          if (!(a >= 0.0)) in.fail(item, "alpha must be nonnegative");
          if (!cfg.plan.alpha_grid.empty() && !(a > cfg.plan.alpha_grid.back()))
            in.fail(item, "alpha values must be strictly increasing");
          cfg.plan.alpha_grid.push_back(a);
        }
      }
    } else if (key == "n" || key == "n_rep" || key == "threads") {
      const auto v = parse_unsigned(value, line_no, val_col, key.c_str(), true);
      if (v < 1) throw ParseError(line_no, val_col, "'" + key + "' must be at least 1");
      if (key == "n") cfg.plan.n = v;
      if (key == "n_rep") cfg.plan.n_rep = v;
      if (key == "threads") {
        if (v > 4096) throw ParseError(line_no, val_col, "'threads' is too large");
        cfg.threads = static_cast<unsigned>(v);
      }
    } else if (key == "seed") {
      cfg.plan.master_seed = parse_unsigned(value, line_no, val_col, "seed", false);
    } else if (key == "delta") {
      cfg.plan.delta = real("delta");
      if (!(cfg.plan.delta > 0.0 && cfg.plan.delta < 1.0))
        throw ParseError(line_no, val_col, "delta must lie in (0,1)");
    } else if (key == "scale") {
      cfg.scale = real("scale");
      if (!(cfg.scale > 0.0 && cfg.scale <= 1.0))
        throw ParseError(line_no, val_col, "scale must lie in (0, 1]");
    } else if (key == "svg") {
      if (value == "true") {
        cfg.svg = true;
      } else if (value == "false") {
        cfg.svg = false;
      } else {
        throw ParseError(line_no, val_col, "svg must be 'true' or 'false'");
      }
    }
    if (stop == text.size()) break;
  }
  for (const char* required : {"dist", "estimator", "alpha"})
    if (!seen.count(required)) throw ParseError(0, 0, std::string("missing required key '") + required + "'");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string dump_config(const RunConfig& config) {
  const ExperimentPlan& p = config.plan;
  std::ostringstream os;
  os << "label = " << p.label << '\n';
  os << "dist = " << p.dist.to_string() << '\n';
  for (const auto& e : p.estimators) os << "estimator = " << to_string(e) << '\n';
  os << "attack = " << to_string(p.attack) << '\n';
  os << "alpha = ";
  for (std::size_t i = 0; i < p.alpha_grid.size(); ++i)
    os << (i ? ", " : "") << format_double(p.alpha_grid[i]);
  os << '\n';
  os << "n = " << p.n << '\n';
  os << "delta = " << format_double(p.delta) << '\n';
  os << "n_rep = " << p.n_rep << '\n';
  os << "seed = " << p.master_seed << '\n';
  os << "out = " << config.out << '\n';
  os << "threads = " << config.threads << '\n';
  os << "scale = " << format_double(config.scale) << '\n';
  os << "svg = " << (config.svg ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace momlab
