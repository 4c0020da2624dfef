// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#include "feqc/dsl.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace feqc::dsl {

std::string Diagnostic::format(std::string_view file) const {
  std::ostringstream os;
  os << file << ':' << line << ':' << column << ": error[" << code << "]: " << message;
  return os.str();
}

namespace {

struct Token {
  std::string text;
  int column;
};

// Splits a line into tokens. Parenthesized groups stay together with
// inner whitespace removed; '=', '==' and ':' are standalone tokens.
std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const int column = static_cast<int>(i) + 1;
    if (c == '(') {
      std::string text;
      while (i < line.size() && line[i] != ')' && line[i] != '#') {
        if (!std::isspace(static_cast<unsigned char>(line[i]))) text += line[i];
        ++i;
      }
      if (i < line.size() && line[i] == ')') text += line[i++];
      out.push_back({text, column});
    } else if (c == '=' || c == ':') {
      const bool twice = c == '=' && i + 1 < line.size() && line[i + 1] == '=';
      out.push_back({twice ? "==" : std::string(1, c), column});
      i += twice ? 2 : 1;
    } else {
      std::string text;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
             line[i] != '=' && line[i] != ':' && line[i] != '#' && line[i] != '(') {
        text += line[i++];
      }
      out.push_back({text, column});
    }
  }
  return out;
}

std::optional<long> to_int(std::string_view s) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<Complex> to_complex(std::string_view s) {
  if (s.size() < 5 || s.front() != '(' || s.back() != ')') return std::nullopt;
  s = s.substr(1, s.size() - 2);
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  auto re = to_double(s.substr(0, comma));
  auto im = to_double(s.substr(comma + 1));
  if (!re || !im) return std::nullopt;
  return Complex(*re, *im);
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

const std::set<std::string, std::less<>> kGateKeywords = {"bs", "pbs", "swap", "rot"};

class Parser {
 public:
  ParseResult run(std::string_view source) {
    // Pre-scan for labels so a use-before-definition can be told apart
    // from a label that never exists.
    std::size_t start = 0;
    for (int line_no = 1; start <= source.size(); ++line_no) {
      auto end = source.find('\n', start);
      if (end == std::string_view::npos) end = source.size();
      lines_.push_back(tokenize(source.substr(start, end - start)));
      start = end + 1;
    }
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      const auto& t = lines_[i];
      if (t.size() >= 2 && t[1].text == "=" && is_identifier(t[0].text)) {
        all_labels_.emplace(t[0].text, static_cast<int>(i) + 1);
      }
    }
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      line_ = static_cast<int>(i) + 1;
      if (!lines_[i].empty()) statement(lines_[i]);
    }
    if (!arms_seen_ && !missing_arms_reported_) {
      error(1, 1, kMissingArms, "missing 'arms <N>' header");
    }
    ParseResult result;
    result.diagnostics = std::move(diagnostics_);
    if (result.diagnostics.empty()) result.circuit = std::move(circuit_);
    return result;
  }

 private:
  void error(int line, int column, std::string_view code, std::string message) {
    diagnostics_.push_back({line, column, std::string(code), std::move(message)});
  }
  void error(const Token& t, std::string_view code, std::string message) {
    error(line_, t.column, code, std::move(message));
  }

  bool arity(const std::vector<Token>& t, std::size_t expected, std::string_view usage) {
    if (t.size() == expected) return true;
    const Token& at = t.size() > expected ? t[expected] : t.back();
    error(at, kArity, "expected '" + std::string(usage) + "'");
    return false;
  }

  std::optional<int> arm(const Token& t) {
    auto v = to_int(t.text);
    if (!v) {
      error(t, kBadNumber, "expected an arm number, got '" + t.text + "'");
      return std::nullopt;
    }
    if (arms_seen_ && (*v < 1 || *v > circuit_.arm_count)) {
      error(t, kArmOutOfRange,
            "arm " + t.text + " out of range 1.." + std::to_string(circuit_.arm_count));
      return std::nullopt;
    }
    if (*v < 1) {
      error(t, kArmOutOfRange, "arm numbers start at 1");
      return std::nullopt;
    }
    return static_cast<int>(*v);
  }

  std::optional<std::pair<int, int>> arm_pair(const Token& a, const Token& b) {
    auto i = arm(a);
    auto j = arm(b);
    if (!i || !j) return std::nullopt;
    if (*i == *j) {
      error(b, kDuplicateArm, "arm " + b.text + " used twice");
      return std::nullopt;
    }
    return std::pair{*i, *j};
  }

  bool require_arms(const Token& t) {
    if (arms_seen_) return true;
    if (!missing_arms_reported_) {
      error(t, kMissingArms, "'arms <N>' must come before any other statement");
      missing_arms_reported_ = true;
    }
    return false;
  }

  void mark_prepared(const Token& t, int a) {
    if (!prepared_.insert(a).second) {
      error(t, kAlreadyPrepared, "arm " + std::to_string(a) + " is already prepared");
    }
  }

  std::optional<Gate> gate(std::span<const Token> t) {
    const std::string& kw = t[0].text;
    std::vector<Token> v(t.begin(), t.end());
    if (kw == "rot") {
      if (!arity(v, 3, "rot <arm> x|y|z|h")) return std::nullopt;
      auto a = arm(t[1]);
      static const std::map<std::string, RotationAxis, std::less<>> axes = {
          {"x", RotationAxis::x}, {"y", RotationAxis::y}, {"z", RotationAxis::z},
          {"h", RotationAxis::h}};
      auto it = axes.find(t[2].text);
      if (it == axes.end()) {
        error(t[2], kBadValue, "rotation must be x, y, z or h");
        return std::nullopt;
      }
      if (!a) return std::nullopt;
      return Gate::rot(*a, it->second);
    }
    if (!arity(v, 3, kw + " <i> <j>")) return std::nullopt;
    auto arms = arm_pair(t[1], t[2]);
    if (!arms) return std::nullopt;
    if (kw == "bs") return Gate::bs(arms->first, arms->second);
    if (kw == "pbs") return Gate::pbs(arms->first, arms->second);
    return Gate::swap(arms->first, arms->second);
  }

  void statement(const std::vector<Token>& t) {
    const std::string& kw = t[0].text;
    if (t.size() >= 2 && t[1].text == "=") return measurement(t);
    if (kw == "arms") return arms(t);
    if (kw == "electron") return electron(t);
    if (kw == "bell") return bell(t);
    if (kw == "if") return conditional(t);
    if (kGateKeywords.contains(kw)) {
      if (!require_arms(t[0])) return;
      if (auto g = gate(t)) circuit_.instructions.push_back(std::move(*g));
      return;
    }
    error(t[0], kUnknownKeyword, "unknown keyword '" + kw + "'");
  }

  void arms(const std::vector<Token>& t) {
    if (arms_seen_) {
      error(t[0], kArmsRedefined, "arm count already declared");
      return;
    }
    if (!arity(t, 2, "arms <N>")) return;
    auto n = to_int(t[1].text);
    if (!n) {
      error(t[1], kBadNumber, "expected an integer arm count");
      return;
    }
    if (*n < 1 || *n > kMaxArms) {
      error(t[1], kBadValue, "arm count must be in 1.." + std::to_string(kMaxArms));
      return;
    }
    arms_seen_ = true;
    circuit_.arm_count = static_cast<int>(*n);
  }

  void electron(const std::vector<Token>& t) {
    if (!require_arms(t[0])) return;
    if (t.size() != 3 && t.size() != 4) {
      arity(t, 3, "electron <arm> up|down|plus  or  electron <arm> (re,im) (re,im)");
      return;
    }
    auto a = arm(t[1]);
    PrepElectron e;
    if (t.size() == 3) {
      const auto& s = t[2].text;
      if (s == "up") {
        e.alpha = 1.0, e.beta = 0.0;
      } else if (s == "down") {
        e.alpha = 0.0, e.beta = 1.0;
      } else if (s == "plus") {
        e.alpha = 1.0, e.beta = 1.0;
      } else if (!s.empty() && s[0] == '(') {
        error(t[2], kArity, "a spinor needs two complex components");
        return;
      } else {
        error(t[2], kBadValue, "spin must be up, down or plus");
        return;
      }
    } else {
      auto alpha = to_complex(t[2].text);
      auto beta = to_complex(t[3].text);
      if (!alpha) error(t[2], kBadNumber, "malformed complex literal '" + t[2].text + "'");
      if (!beta) error(t[3], kBadNumber, "malformed complex literal '" + t[3].text + "'");
      if (!alpha || !beta) return;
      if (std::norm(*alpha) + std::norm(*beta) == 0.0) {
        error(t[2], kBadValue, "spinor must be nonzero");
        return;
      }
      e.alpha = *alpha;
      e.beta = *beta;
    }
    if (!a) return;
    e.arm = *a;
    mark_prepared(t[1], e.arm);
    circuit_.instructions.push_back(e);
  }

  void bell(const std::vector<Token>& t) {
    if (!require_arms(t[0])) return;
    if (!arity(t, 4, "bell <k> <arm_a> <arm_b>")) return;
    auto k = to_int(t[1].text);
    if (!k) {
      error(t[1], kBadNumber, "expected Bell index 0..3");
      return;
    }
    if (*k < 0 || *k > 3) {
      error(t[1], kBadValue, "Bell index must be 0..3");
      return;
    }
    auto arms = arm_pair(t[2], t[3]);
    if (!arms) return;
    mark_prepared(t[2], arms->first);
    mark_prepared(t[3], arms->second);
    circuit_.instructions.push_back(PrepBell{static_cast<int>(*k), arms->first, arms->second});
  }

  void measurement(const std::vector<Token>& t) {
    if (!require_arms(t[0])) return;
    const std::string& label = t[0].text;
    if (!is_identifier(label)) {
      error(t[0], kSyntax, "'" + label + "' is not a valid label");
      return;
    }
    if (t.size() < 3) {
      error(t[1], kArity, "expected '<label> = charge|parity|spin|occ <arm>'");
      return;
    }
    static const std::map<std::string, MeasureKind, std::less<>> kinds = {
        {"charge", MeasureKind::charge},
        {"parity", MeasureKind::parity},
        {"spin", MeasureKind::spin},
        {"occ", MeasureKind::occupation}};
    auto it = kinds.find(t[2].text);
    if (it == kinds.end()) {
      error(t[2], kUnknownKeyword, "unknown measurement '" + t[2].text + "'");
      return;
    }
    const bool occ = it->second == MeasureKind::occupation;
    if (!arity(t, occ ? 5 : 4, occ ? "<label> = occ <arm> up|down" : "<label> = <kind> <arm>")) {
      return;
    }
    Measure m{label, it->second, 1, Spin::up};
    if (occ) {
      if (t[4].text == "down") {
        m.spin = Spin::down;
      } else if (t[4].text != "up") {
        error(t[4], kBadValue, "spin must be up or down");
        return;
      }
    }
    const bool redefined = defined_.contains(label);
    if (redefined) error(t[0], kLabelRedefined, "label '" + label + "' already defined");
    defined_.emplace(label, it->second);
    auto a = arm(t[3]);
    if (!a || redefined) return;
    m.arm = *a;
    circuit_.instructions.push_back(std::move(m));
  }

  void conditional(const std::vector<Token>& t) {
    if (!require_arms(t[0])) return;
    if (t.size() < 6 || t[2].text != "==" || t[4].text != ":") {
      const Token& at = t.size() < 3 ? t.back() : (t[2].text != "==" ? t[2] : (t.size() > 4 ? t[4] : t.back()));
      error(at, kSyntax, "expected 'if <label> == <int> : <gate>'");
      return;
    }
    const std::string& label = t[1].text;
    auto value = to_int(t[3].text);
    if (!value) {
      error(t[3], kBadNumber, "expected an integer outcome");
      return;
    }
    if (!kGateKeywords.contains(t[5].text)) {
      error(t[5], kUnknownKeyword, "conditional body must be a gate, got '" + t[5].text + "'");
      return;
    }
    auto g = gate(std::span(t).subspan(5));
    auto it = defined_.find(label);
    if (it == defined_.end()) {
      auto later = all_labels_.find(label);
      if (later != all_labels_.end() && later->second > line_) {
        error(t[1], kForwardReference,
              "label '" + label + "' is defined later, on line " + std::to_string(later->second));
      } else {
        error(t[1], kUndefinedLabel, "undefined label '" + label + "'");
      }
      return;
    }
    if (*value < 0 || *value > max_outcome(it->second)) {
      error(t[3], kBadValue, "outcome " + t[3].text + " is impossible for '" + label + "'");
      return;
    }
    if (!g) return;
    circuit_.instructions.push_back(Conditional{label, static_cast<int>(*value), std::move(*g)});
  }

  std::vector<std::vector<Token>> lines_;
  std::map<std::string, int, std::less<>> all_labels_;
  std::map<std::string, MeasureKind, std::less<>> defined_;
  std::set<int> prepared_;
  std::vector<Diagnostic> diagnostics_;
  Circuit circuit_;
  int line_ = 0;
  bool arms_seen_ = false;
  bool missing_arms_reported_ = false;
};

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string complex_literal(Complex c) {
  return "(" + number(c.real()) + "," + number(c.imag()) + ")";
}

std::string gate_text(const Gate& g) {
  const auto pair = [&](const char* kw) {
    return std::string(kw) + " " + std::to_string(g.arm_i) + " " + std::to_string(g.arm_j);
  };
  switch (g.kind) {
    case GateKind::beam_splitter: return pair("bs");
    case GateKind::polarizing_beam_splitter: return pair("pbs");
    case GateKind::swap: return pair("swap");
    case GateKind::rotation: {
      static const char* names[] = {"x", "y", "z", "h"};
      return "rot " + std::to_string(g.arm_i) + " " + names[static_cast<int>(g.axis)];
    }
    case GateKind::custom: break;
  }
  throw std::invalid_argument("custom gates have no textual form");
}

}  // namespace

ParseResult parse(std::string_view source) { return Parser{}.run(source); }

std::string print(const Circuit& circuit) {
  std::ostringstream os;
  os << "arms " << circuit.arm_count << '\n';
  for (const auto& ins : circuit.instructions) {
    if (const auto* e = std::get_if<PrepElectron>(&ins)) {
      os << "electron " << e->arm << ' ';
      if (e->alpha == Complex(1.0) && e->beta == Complex(0.0)) {
        os << "up";
      } else if (e->alpha == Complex(0.0) && e->beta == Complex(1.0)) {
        os << "down";
      } else if (e->alpha == Complex(1.0) && e->beta == Complex(1.0)) {
        os << "plus";
      } else {
        os << complex_literal(e->alpha) << ' ' << complex_literal(e->beta);
      }
    } else if (const auto* b = std::get_if<PrepBell>(&ins)) {
      os << "bell " << b->k << ' ' << b->arm_a << ' ' << b->arm_b;
    } else if (const auto* g = std::get_if<Gate>(&ins)) {
      os << gate_text(*g);
    } else if (const auto* m = std::get_if<Measure>(&ins)) {
      static const char* kinds[] = {"charge", "parity", "spin", "occ"};
      os << m->label << " = " << kinds[static_cast<int>(m->kind)] << ' ' << m->arm;
      if (m->kind == MeasureKind::occupation) os << (m->spin == Spin::up ? " up" : " down");
    } else if (const auto* c = std::get_if<Conditional>(&ins)) {
      os << "if " << c->label << " == " << c->value << " : " << gate_text(c->gate);
    }
    os << '\n';
  }
  return os.str();
}

std::optional<std::pair<Complex, Complex>> parse_spinor(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  const auto split = compact.find("),(");
  if (split == std::string::npos) return std::nullopt;
  auto alpha = to_complex(std::string_view(compact).substr(0, split + 1));
  auto beta = to_complex(std::string_view(compact).substr(split + 2));
  if (!alpha || !beta) return std::nullopt;
  return std::pair{*alpha, *beta};
}

}  // namespace feqc::dsl
