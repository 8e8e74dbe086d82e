#pragma once

// Text format for surgery diagrams.
//
//   # comment
//   diagram hopf {
//     component A { tb = -1; rot = 0; }
//     component B { front = "U1 U1 X2 X2 C1 C1"; index = 2; orient = forward; }
//     lk(A, B) = 1;
//     contact_surgery A = -1;
//     contact_surgery B = 1/0;          # inf: no surgery
//   }
//   round_diagram fig3 {
//     component A { tb = -1; rot = 0; }
//     ...
//     joint_pair (A, B) { r1 = 0, 0; r2 = -1; layer = invariant; }
//     round1 (A, B) { r1 = 0, 0; layer = nonrotative(2); twisting = 0; }
//     round2 B { r2 = 5/2; joint_with = 0; }
//   }
//
// A joint_pair puts its round 2-surgery on the second member.  Round 2
// entries are kept with the joint ones first (by round1 index), then the
// standalone ones in file order.  The same data also round-trips through
// JSON: {"diagrams": [...]}.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "crsurg/core.hpp"
#include "crsurg/error.hpp"
#include "crsurg/front.hpp"
#include "crsurg/slope.hpp"

namespace crsurg {

enum class DiagramKind { Contact, Round };

struct NamedDiagram {
  std::string name;
  DiagramKind kind = DiagramKind::Contact;
  ContactSurgeryDiagram contact;  // kind == Contact
  RoundSurgeryDiagram round;      // kind == Round
  SourcePos pos;                  // not part of equality

  const std::vector<LegendrianComponent>& components() const {
    return kind == DiagramKind::Contact ? contact.components : round.components;
  }
  const LinkingData& linking() const { return kind == DiagramKind::Contact ? contact.linking : round.linking; }

  bool operator==(const NamedDiagram& o) const {
    return name == o.name && kind == o.kind && contact == o.contact && round == o.round;
  }
};

struct DiagramFile {
  std::vector<NamedDiagram> diagrams;

  /// The diagram called `name`, or the only diagram when name is empty.
  const NamedDiagram& select(const std::string& name = {}) const {
    if (name.empty()) {
      if (diagrams.size() != 1)
        throw Error(ErrorKind::InvalidParameter,
                    "file holds " + std::to_string(diagrams.size()) + " diagrams; choose one with --diagram");
      return diagrams.front();
    }
    for (const auto& d : diagrams)
      if (d.name == name) return d;
    throw Error(ErrorKind::InvalidParameter, "no diagram named '" + name + "'");
  }

  bool operator==(const DiagramFile&) const = default;
};

// ---------------------------------------------------------------------------
// Lexer.

namespace dsl {

struct Token {
  enum class Kind { Ident, Int, String, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  SourcePos pos;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&] {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    Token t;
    t.pos = {line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Token::Kind::Ident;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        t.text += src[i];
        advance();
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Token::Kind::Int;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        t.text += src[i];
        advance();
      }
      if (i < src.size() && (std::isalpha(static_cast<unsigned char>(src[i])) || src[i] == '_'))
        throw Error(ErrorKind::SyntaxError, "malformed number", {line, col});
    } else if (c == '"') {
      t.kind = Token::Kind::String;
      advance();
      for (;;) {
        if (i >= src.size() || src[i] == '\n') throw Error(ErrorKind::SyntaxError, "unterminated string", t.pos);
        if (src[i] == '"') {
          advance();
          break;
        }
        if (src[i] == '\\') {
          advance();
          if (i >= src.size()) throw Error(ErrorKind::SyntaxError, "unterminated string", t.pos);
          if (src[i] != '"' && src[i] != '\\')
            throw Error(ErrorKind::SyntaxError, "unknown escape in string", {line, col});
        }
        t.text += src[i];
        advance();
      }
    } else if (std::string_view("{}();,=/-+").find(c) != std::string_view::npos) {
      t.kind = Token::Kind::Punct;
      t.text = c;
      advance();
    } else {
      throw Error(ErrorKind::SyntaxError, std::string("unexpected character '") + c + "'", {line, col});
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = {line, col};
  out.push_back(end);
  return out;
}

inline std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// ---------------------------------------------------------------------------
// Parser.

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  DiagramFile parse_file() {
    DiagramFile f;
    std::set<std::string> names;
    while (peek().kind != Token::Kind::End) {
      const Token kw = expect_ident();
      DiagramKind kind;
      if (kw.text == "diagram")
        kind = DiagramKind::Contact;
      else if (kw.text == "round_diagram")
        kind = DiagramKind::Round;
      else
        throw Error(ErrorKind::SyntaxError, "expected 'diagram' or 'round_diagram', found '" + kw.text + "'", kw.pos);
      const Token name = expect_ident();
      if (!names.insert(name.text).second)
        throw Error(ErrorKind::SemanticError, "duplicate diagram name '" + name.text + "'", name.pos);
      f.diagrams.push_back(parse_body(kind, name.text, kw.pos));
    }
    return f;
  }

 private:
  struct PendingComponent {
    LegendrianComponent comp;
    std::optional<std::int64_t> tb, rot;
    std::optional<std::string> word;
    std::optional<std::int64_t> index;
    std::optional<Orientation> orient;
    SourcePos pos;
  };

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Token::Kind::End: return "end of input";
      case Token::Kind::String: return "string";
      default: return "'" + t.text + "'";
    }
  }

  [[noreturn]] void fail(const std::string& what, const Token& at) const {
    throw Error(ErrorKind::SyntaxError, what + ", found " + describe(at), at.pos);
  }

  Token expect_ident() {
    if (peek().kind != Token::Kind::Ident) fail("expected an identifier", peek());
    return next();
  }
  void expect_punct(char c) {
    if (peek().kind != Token::Kind::Punct || peek().text[0] != c) fail(std::string("expected '") + c + "'", peek());
    next();
  }
  bool accept_punct(char c) {
    if (peek().kind == Token::Kind::Punct && peek().text[0] == c) {
      next();
      return true;
    }
    return false;
  }
  void expect_keyword(const char* kw) {
    if (peek().kind != Token::Kind::Ident || peek().text != kw) fail(std::string("expected '") + kw + "'", peek());
    next();
  }

  std::int64_t parse_int() {
    const Token start = peek();
    bool neg = false;
    if (accept_punct('-'))
      neg = true;
    else
      accept_punct('+');
    if (peek().kind != Token::Kind::Int) fail("expected an integer", peek());
    const Token t = next();
    std::int64_t v = 0;
    for (char c : t.text)
      if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, c - '0', &v))
        throw Error(ErrorKind::SyntaxError, "integer out of range", start.pos);
    return neg ? -v : v;
  }

  SlopeQ parse_slope() {
    const Token start = peek();
    std::string text;
    if (accept_punct('-'))
      text = "-";
    else
      accept_punct('+');
    if (peek().kind == Token::Kind::Ident && peek().text == "inf") {
      next();
      return SlopeQ::infinity();
    }
    if (peek().kind != Token::Kind::Int) fail("expected a slope p/q, an integer or inf", peek());
    text += next().text;
    if (accept_punct('/')) {
      if (peek().kind != Token::Kind::Int) fail("expected a positive denominator", peek());
      text += "/" + next().text;
    }
    auto s = SlopeQ::parse(text);
    if (!s) throw Error(ErrorKind::SyntaxError, "invalid slope '" + text + "'", start.pos);
    return *s;
  }

  std::pair<std::string, std::string> parse_pair() {
    expect_punct('(');
    const std::string a = expect_ident().text;
    expect_punct(',');
    const std::string b = expect_ident().text;
    expect_punct(')');
    return {a, b};
  }

  TightLayerSpec parse_layer() {
    const Token t = expect_ident();
    if (t.text == "invariant") return TightLayerSpec::invariant();
    auto arg = [&] {
      expect_punct('(');
      const std::int64_t v = parse_int();
      expect_punct(')');
      return v;
    };
    if (t.text == "nonrotative") return TightLayerSpec::nonrotative(arg());
    if (t.text == "rotative_plus") return TightLayerSpec::rotative_plus(arg());
    if (t.text == "rotative_minus") return TightLayerSpec::rotative_minus(arg());
    throw Error(ErrorKind::SyntaxError,
                "unknown layer '" + t.text + "' (expected invariant, nonrotative(h), rotative_plus(m) or rotative_minus(m))",
                t.pos);
  }

  PendingComponent parse_component() {
    PendingComponent pc;
    const Token label = expect_ident();
    pc.comp.label = label.text;
    pc.pos = label.pos;
    expect_punct('{');
    std::set<std::string> seen;
    while (!accept_punct('}')) {
      const Token key = expect_ident();
      if (!seen.insert(key.text).second)
        throw Error(ErrorKind::SemanticError, "field '" + key.text + "' given twice", key.pos);
      expect_punct('=');
      if (key.text == "tb") {
        pc.tb = parse_int();
      } else if (key.text == "rot") {
        pc.rot = parse_int();
      } else if (key.text == "note") {
        if (peek().kind != Token::Kind::String) fail("expected a string", peek());
        pc.comp.note = next().text;
      } else if (key.text == "front") {
        if (peek().kind != Token::Kind::String) fail("expected a quoted front word", peek());
        const Token w = next();
        try {
          pc.word = front::print_front_word(front::parse_front_word(w.text));
        } catch (const Error& e) {
          throw Error(e.kind(), "front word: " + std::string(e.what()),
                      {w.pos.line, w.pos.column + 1 + std::max(0, e.pos().column - 1)});
        }
      } else if (key.text == "index") {
        pc.index = parse_int();
      } else if (key.text == "orient") {
        const Token o = expect_ident();
        if (o.text == "forward")
          pc.orient = Orientation::Forward;
        else if (o.text == "reverse")
          pc.orient = Orientation::Reverse;
        else
          throw Error(ErrorKind::SyntaxError, "orient must be forward or reverse", o.pos);
      } else {
        throw Error(ErrorKind::SyntaxError, "unknown component field '" + key.text + "'", key.pos);
      }
      expect_punct(';');
    }
    if (!pc.word && (pc.index || pc.orient))
      throw Error(ErrorKind::SemanticError, "index/orient given without a front", pc.pos);
    if (!pc.word && (!pc.tb || !pc.rot))
      throw Error(ErrorKind::SemanticError, "component '" + pc.comp.label + "' needs tb and rot, or a front", pc.pos);
    return pc;
  }

  struct RoundBlock {
    std::optional<std::pair<std::int64_t, std::int64_t>> r1;
    std::optional<SlopeQ> r2;
    std::optional<TightLayerSpec> layer;
    std::optional<std::int64_t> twisting;
    std::optional<std::int64_t> joint_with;
  };

  RoundBlock parse_round_block(bool allow_r1, bool allow_r2, bool allow_layer, bool allow_joint) {
    RoundBlock b;
    expect_punct('{');
    std::set<std::string> seen;
    while (!accept_punct('}')) {
      const Token key = expect_ident();
      if (!seen.insert(key.text).second)
        throw Error(ErrorKind::SemanticError, "field '" + key.text + "' given twice", key.pos);
      expect_punct('=');
      if (key.text == "r1" && allow_r1) {
        const std::int64_t x = parse_int();
        expect_punct(',');
        b.r1 = std::make_pair(x, parse_int());
      } else if (key.text == "r2" && allow_r2) {
        b.r2 = parse_slope();
      } else if (key.text == "layer" && allow_layer) {
        b.layer = parse_layer();
      } else if (key.text == "twisting" && allow_layer) {
        b.twisting = parse_int();
      } else if (key.text == "joint_with" && allow_joint) {
        b.joint_with = parse_int();
      } else {
        throw Error(ErrorKind::SyntaxError, "unexpected field '" + key.text + "' here", key.pos);
      }
      expect_punct(';');
    }
    return b;
  }

  static TightLayerSpec finish_layer(const RoundBlock& b) {
    TightLayerSpec layer = b.layer.value_or(TightLayerSpec::invariant());
    if (b.twisting) layer.twisting = *b.twisting;
    return layer;
  }

  NamedDiagram parse_body(DiagramKind kind, const std::string& name, SourcePos at) {
    NamedDiagram nd;
    nd.name = name;
    nd.kind = kind;
    nd.pos = at;
    std::vector<PendingComponent> comps;
    std::map<std::string, SourcePos> where;
    struct LkStmt {
      std::string a, b;
      std::int64_t v;
      SourcePos pos;
    };
    std::vector<LkStmt> lks;
    std::map<std::string, std::pair<SlopeQ, SourcePos>> surgeries;
    struct R2Pending {
      Round2Spec spec;
      SourcePos pos;
    };
    std::vector<std::pair<Round1Spec, SourcePos>> round1;
    std::vector<R2Pending> round2;

    auto check_label = [&](const std::string& l, SourcePos p) {
      if (!where.count(l)) throw Error(ErrorKind::SemanticError, "unknown component '" + l + "'", p);
    };

    expect_punct('{');
    while (!accept_punct('}')) {
      const Token kw = expect_ident();
      if (kw.text == "component") {
        PendingComponent pc = parse_component();
        if (where.count(pc.comp.label))
          throw Error(ErrorKind::SemanticError, "duplicate component '" + pc.comp.label + "'", pc.pos);
        where[pc.comp.label] = pc.pos;
        comps.push_back(std::move(pc));
      } else if (kw.text == "lk") {
        auto [a, b] = parse_pair();
        expect_punct('=');
        const std::int64_t v = parse_int();
        expect_punct(';');
        if (a == b) throw Error(ErrorKind::SemanticError, "self-linking lk(" + a + ", " + a + ") is not allowed", kw.pos);
        check_label(a, kw.pos);
        check_label(b, kw.pos);
        for (const auto& l : lks)
          if ((l.a == a && l.b == b) || (l.a == b && l.b == a))
            throw Error(ErrorKind::SemanticError, "lk(" + a + ", " + b + ") given twice", kw.pos);
        lks.push_back({a, b, v, kw.pos});
      } else if (kw.text == "contact_surgery") {
        const Token l = expect_ident();
        expect_punct('=');
        const SlopeQ s = parse_slope();
        expect_punct(';');
        check_label(l.text, l.pos);
        if (surgeries.count(l.text))
          throw Error(ErrorKind::SemanticError, "contact_surgery on '" + l.text + "' given twice", l.pos);
        surgeries.emplace(l.text, std::make_pair(s, kw.pos));
      } else if (kind == DiagramKind::Round && (kw.text == "joint_pair" || kw.text == "round1")) {
        const bool joint = kw.text == "joint_pair";
        auto pair = parse_pair();
        check_label(pair.first, kw.pos);
        check_label(pair.second, kw.pos);
        RoundBlock b = parse_round_block(true, joint, true, false);
        if (!b.r1) throw Error(ErrorKind::SemanticError, kw.text + " needs r1 = <int>, <int>", kw.pos);
        if (joint && !b.r2) throw Error(ErrorKind::SemanticError, "joint_pair needs r2", kw.pos);
        const std::size_t idx = round1.size();
        round1.push_back({{pair, b.r1->first, b.r1->second, finish_layer(b)}, kw.pos});
        if (joint) round2.push_back({{pair.second, *b.r2, idx}, kw.pos});
      } else if (kind == DiagramKind::Round && kw.text == "round2") {
        const Token l = expect_ident();
        check_label(l.text, l.pos);
        RoundBlock b = parse_round_block(false, true, false, true);
        if (!b.r2) throw Error(ErrorKind::SemanticError, "round2 needs r2", kw.pos);
        std::optional<std::size_t> jw;
        if (b.joint_with) {
          if (*b.joint_with < 0) throw Error(ErrorKind::SemanticError, "joint_with must be a round1 index", kw.pos);
          jw = static_cast<std::size_t>(*b.joint_with);
        }
        round2.push_back({{l.text, *b.r2, jw}, kw.pos});
      } else {
        throw Error(ErrorKind::SyntaxError,
                    "unknown statement '" + kw.text + "'" +
                        (kind == DiagramKind::Contact ? " in a contact diagram" : " in a round diagram"),
                    kw.pos);
      }
    }

    // Components, with front-derived invariants.
    LinkingData linking;
    std::vector<LegendrianComponent> final_comps;
    std::map<std::string, std::vector<std::size_t>> by_word;  // word -> indices into comps
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (comps[i].word) by_word[*comps[i].word].push_back(i);
    std::map<std::pair<std::string, std::string>, std::pair<std::int64_t, SourcePos>> derived_lk;
    std::vector<std::optional<std::pair<std::int64_t, std::int64_t>>> derived(comps.size());
    for (const auto& [word, members] : by_word) {
      const front::FrontWord w = front::parse_front_word(word);
      const front::FrontTrace trace = [&] {
        try {
          return front::trace_components(w);
        } catch (const Error& e) {
          throw Error(e.kind(), "front of '" + comps[members.front()].comp.label + "': " + e.what(),
                      comps[members.front()].pos);
        }
      }();
      front::OrientedFront of{w, std::vector<Orientation>(static_cast<std::size_t>(trace.num_components),
                                                           Orientation::Forward)};
      std::map<std::int64_t, std::size_t> used;
      for (std::size_t i : members) {
        const std::int64_t idx = comps[i].index.value_or(1);
        if (idx < 1 || idx > trace.num_components)
          throw Error(ErrorKind::SemanticError,
                      "front of '" + comps[i].comp.label + "' has " + std::to_string(trace.num_components) +
                          " component(s), index " + std::to_string(idx) + " is out of range",
                      comps[i].pos);
        if (used.count(idx))
          throw Error(ErrorKind::SemanticError,
                      "components '" + comps[used[idx]].comp.label + "' and '" + comps[i].comp.label +
                          "' bind the same front component",
                      comps[i].pos);
        used[idx] = i;
        of.orientation[static_cast<std::size_t>(idx - 1)] = comps[i].orient.value_or(Orientation::Forward);
      }
      const front::FrontInvariants inv = front::classical_invariants(of);
      for (std::size_t i : members) {
        const auto idx = static_cast<std::size_t>(comps[i].index.value_or(1) - 1);
        derived[i] = std::make_pair(inv.components[idx].tb, inv.components[idx].rot);
        for (std::size_t j : members) {
          if (comps[j].comp.label <= comps[i].comp.label) continue;
          const auto jdx = static_cast<std::size_t>(comps[j].index.value_or(1) - 1);
          derived_lk[{comps[i].comp.label, comps[j].comp.label}] = {inv.lk[idx][jdx], comps[j].pos};
        }
      }
    }
    for (std::size_t i = 0; i < comps.size(); ++i) {
      auto& pc = comps[i];
      LegendrianComponent c = pc.comp;
      if (derived[i]) {
        const auto [tb, rot] = *derived[i];
        if (pc.tb && *pc.tb != tb)
          throw Error(ErrorKind::SemanticError,
                      "component '" + c.label + "': declared tb " + std::to_string(*pc.tb) + " but the front gives " +
                          std::to_string(tb),
                      pc.pos);
        if (pc.rot && *pc.rot != rot)
          throw Error(ErrorKind::SemanticError,
                      "component '" + c.label + "': declared rot " + std::to_string(*pc.rot) + " but the front gives " +
                          std::to_string(rot),
                      pc.pos);
        c.tb = tb;
        c.rot = rot;
        c.front = FrontBinding{*pc.word, static_cast<int>(pc.index.value_or(1)), pc.orient.value_or(Orientation::Forward)};
      } else {
        c.tb = *pc.tb;
        c.rot = *pc.rot;
      }
      final_comps.push_back(std::move(c));
    }
    for (const auto& l : lks) {
      auto key = l.a < l.b ? std::make_pair(l.a, l.b) : std::make_pair(l.b, l.a);
      auto it = derived_lk.find(key);
      if (it != derived_lk.end() && it->second.first != l.v)
        throw Error(ErrorKind::SemanticError,
                    "lk(" + l.a + ", " + l.b + ") declared " + std::to_string(l.v) + " but the front gives " +
                        std::to_string(it->second.first),
                    l.pos);
      linking.set(l.a, l.b, l.v);
    }
    for (const auto& [key, v] : derived_lk) linking.set(key.first, key.second, v.first);

    if (kind == DiagramKind::Contact) {
      nd.contact.components = std::move(final_comps);
      nd.contact.linking = std::move(linking);
      for (const auto& [l, s] : surgeries) nd.contact.coefficients.emplace(l, s.first);
      for (const auto& c : nd.contact.components)
        if (!surgeries.count(c.label))
          throw Error(ErrorKind::SemanticError, "component '" + c.label + "' has no contact_surgery coefficient",
                      where[c.label]);
      if (auto v = validate_diagram(nd.contact); !v.empty())
        throw Error(ErrorKind::SemanticError, std::string(to_string(v.front().kind)) + ": " + v.front().detail, at);
    } else {
      nd.round.components = std::move(final_comps);
      nd.round.linking = std::move(linking);
      for (const auto& [l, s] : surgeries) nd.round.contact_dehn.emplace(l, s.first);
      for (auto& [r1, p] : round1) nd.round.round1.push_back(r1);
      // Joint round2 entries ordered by round1 index, then standalone ones.
      std::stable_sort(round2.begin(), round2.end(), [](const R2Pending& x, const R2Pending& y) {
        const auto kx = x.spec.joint_with ? *x.spec.joint_with : SIZE_MAX;
        const auto ky = y.spec.joint_with ? *y.spec.joint_with : SIZE_MAX;
        return kx < ky;
      });
      for (auto& r : round2) nd.round.round2.push_back(r.spec);
      if (auto v = validate_diagram(nd.round); !v.empty())
        throw Error(ErrorKind::SemanticError, std::string(to_string(v.front().kind)) + ": " + v.front().detail, at);
    }
    return nd;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace dsl

inline DiagramFile parse_diagram_text(std::string_view src) { return dsl::Parser(src).parse_file(); }

// ---------------------------------------------------------------------------
// Canonical text printer.

namespace detail {

inline std::string layer_text(const TightLayerSpec& l) {
  switch (l.variant) {
    case TightLayerSpec::Variant::InvariantStd: return "invariant";
    case TightLayerSpec::Variant::NonRotative: return "nonrotative(" + std::to_string(l.value) + ")";
    case TightLayerSpec::Variant::RotativePlus: return "rotative_plus(" + std::to_string(l.value) + ")";
    case TightLayerSpec::Variant::RotativeMinus: return "rotative_minus(" + std::to_string(l.value) + ")";
  }
  return "invariant";
}

inline std::int64_t default_twisting(const TightLayerSpec& l) {
  return l.variant == TightLayerSpec::Variant::RotativePlus || l.variant == TightLayerSpec::Variant::RotativeMinus ? 1 : 0;
}

inline void print_components(std::string& s, const std::vector<LegendrianComponent>& comps, const LinkingData& lk) {
  for (const auto& c : comps) {
    s += "  component " + c.label + " { tb = " + std::to_string(c.tb) + "; rot = " + std::to_string(c.rot) + ";";
    if (c.front) {
      s += " front = " + dsl::quote(c.front->word) + ";";
      if (c.front->index != 1) s += " index = " + std::to_string(c.front->index) + ";";
      s += std::string(" orient = ") + (c.front->orient == Orientation::Forward ? "forward" : "reverse") + ";";
    }
    if (!c.note.empty()) s += " note = " + dsl::quote(c.note) + ";";
    s += " }\n";
  }
  for (const auto& [key, v] : lk.entries())
    s += "  lk(" + key.first + ", " + key.second + ") = " + std::to_string(v) + ";\n";
}

}  // namespace detail

inline std::string print_diagram(const NamedDiagram& d) {
  std::string s = (d.kind == DiagramKind::Contact ? "diagram " : "round_diagram ") + d.name + " {\n";
  detail::print_components(s, d.components(), d.linking());
  if (d.kind == DiagramKind::Contact) {
    for (const auto& c : d.contact.components) {
      auto it = d.contact.coefficients.find(c.label);
      if (it != d.contact.coefficients.end()) s += "  contact_surgery " + c.label + " = " + it->second.str() + ";\n";
    }
  } else {
    const auto& rd = d.round;
    for (const auto& [l, c] : rd.contact_dehn) s += "  contact_surgery " + l + " = " + c.str() + ";\n";
    std::vector<bool> printed(rd.round2.size(), false);
    for (std::size_t i = 0; i < rd.round1.size(); ++i) {
      const auto& r1 = rd.round1[i];
      auto partner = joint_partner(rd, i);
      const bool as_joint = partner && rd.round2[*partner].knot == r1.pair.second;
      s += std::string("  ") + (as_joint ? "joint_pair" : "round1") + " (" + r1.pair.first + ", " + r1.pair.second +
           ") { r1 = " + std::to_string(r1.coeff_a) + ", " + std::to_string(r1.coeff_b) + ";";
      if (as_joint) {
        s += " r2 = " + rd.round2[*partner].coeff.str() + ";";
        printed[*partner] = true;
      }
      s += " layer = " + detail::layer_text(r1.layer) + ";";
      if (r1.layer.twisting != detail::default_twisting(r1.layer))
        s += " twisting = " + std::to_string(r1.layer.twisting) + ";";
      s += " }\n";
    }
    for (std::size_t j = 0; j < rd.round2.size(); ++j) {
      if (printed[j]) continue;
      const auto& r2 = rd.round2[j];
      s += "  round2 " + r2.knot + " { r2 = " + r2.coeff.str() + ";";
      if (r2.joint_with) s += " joint_with = " + std::to_string(*r2.joint_with) + ";";
      s += " }\n";
    }
  }
  return s + "}\n";
}

inline std::string print_diagram_file(const DiagramFile& f) {
  std::string s;
  for (std::size_t i = 0; i < f.diagrams.size(); ++i) {
    if (i) s += "\n";
    s += print_diagram(f.diagrams[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// JSON.

using Json = nlohmann::json;

namespace detail {

inline std::string_view layer_variant_name(TightLayerSpec::Variant v) {
  switch (v) {
    case TightLayerSpec::Variant::InvariantStd: return "invariant";
    case TightLayerSpec::Variant::NonRotative: return "nonrotative";
    case TightLayerSpec::Variant::RotativePlus: return "rotative_plus";
    case TightLayerSpec::Variant::RotativeMinus: return "rotative_minus";
  }
  return "invariant";
}

inline Json components_json(const std::vector<LegendrianComponent>& comps) {
  Json arr = Json::array();
  for (const auto& c : comps) {
    Json j{{"label", c.label}, {"tb", c.tb}, {"rot", c.rot}};
    if (!c.note.empty()) j["note"] = c.note;
    if (c.front)
      j["front"] = {{"word", c.front->word},
                    {"index", c.front->index},
                    {"orient", c.front->orient == Orientation::Forward ? "forward" : "reverse"}};
    arr.push_back(std::move(j));
  }
  return arr;
}

inline Json linking_json(const LinkingData& lk) {
  Json arr = Json::array();
  for (const auto& [key, v] : lk.entries()) arr.push_back({{"a", key.first}, {"b", key.second}, {"lk", v}});
  return arr;
}

inline Json coefficient_map_json(const std::map<std::string, SlopeQ>& m) {
  Json o = Json::object();
  for (const auto& [l, s] : m) o[l] = s.str();
  return o;
}

}  // namespace detail

inline Json layer_to_json(const TightLayerSpec& l) {
  return {{"variant", detail::layer_variant_name(l.variant)}, {"value", l.value}, {"twisting", l.twisting}};
}

inline Json diagram_to_json(const ContactSurgeryDiagram& d, const std::string& name) {
  return {{"name", name},
          {"kind", "contact"},
          {"components", detail::components_json(d.components)},
          {"linking", detail::linking_json(d.linking)},
          {"coefficients", detail::coefficient_map_json(d.coefficients)}};
}

inline Json diagram_to_json(const RoundSurgeryDiagram& d, const std::string& name) {
  Json r1 = Json::array();
  for (const auto& r : d.round1)
    r1.push_back({{"pair", {r.pair.first, r.pair.second}}, {"r1", {r.coeff_a, r.coeff_b}}, {"layer", layer_to_json(r.layer)}});
  Json r2 = Json::array();
  for (const auto& r : d.round2) {
    Json j{{"knot", r.knot}, {"r2", r.coeff.str()}};
    j["joint_with"] = r.joint_with ? Json(*r.joint_with) : Json(nullptr);
    r2.push_back(std::move(j));
  }
  return {{"name", name},
          {"kind", "round"},
          {"components", detail::components_json(d.components)},
          {"linking", detail::linking_json(d.linking)},
          {"round1", std::move(r1)},
          {"round2", std::move(r2)},
          {"contact_dehn", detail::coefficient_map_json(d.contact_dehn)}};
}

inline Json diagram_to_json(const NamedDiagram& d) {
  return d.kind == DiagramKind::Contact ? diagram_to_json(d.contact, d.name) : diagram_to_json(d.round, d.name);
}

inline Json file_to_json(const DiagramFile& f) {
  Json arr = Json::array();
  for (const auto& d : f.diagrams) arr.push_back(diagram_to_json(d));
  return {{"diagrams", std::move(arr)}};
}

namespace detail {

[[noreturn]] inline void json_fail(const std::string& what) { throw Error(ErrorKind::SyntaxError, "json: " + what); }

inline const Json& field(const Json& o, const char* key) {
  if (!o.is_object() || !o.contains(key)) json_fail(std::string("missing field '") + key + "'");
  return o.at(key);
}

inline std::int64_t int_field(const Json& o, const char* key) {
  const Json& v = field(o, key);
  if (!v.is_number_integer()) json_fail(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

inline std::string string_field(const Json& o, const char* key) {
  const Json& v = field(o, key);
  if (!v.is_string()) json_fail(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

inline SlopeQ slope_value(const Json& v) {
  if (!v.is_string()) json_fail("slopes are written as strings");
  auto s = SlopeQ::parse(v.get<std::string>());
  if (!s) json_fail("invalid slope '" + v.get<std::string>() + "'");
  return *s;
}

inline void only_keys(const Json& o, std::initializer_list<const char*> keys) {
  if (!o.is_object()) json_fail("expected an object");
  for (const auto& [k, v] : o.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; })) json_fail("unknown field '" + k + "'");
}

inline std::vector<LegendrianComponent> components_from_json(const Json& arr) {
  if (!arr.is_array()) json_fail("components must be an array");
  std::vector<LegendrianComponent> out;
  for (const auto& j : arr) {
    only_keys(j, {"label", "tb", "rot", "note", "front"});
    LegendrianComponent c;
    c.label = string_field(j, "label");
    c.tb = int_field(j, "tb");
    c.rot = int_field(j, "rot");
    if (j.contains("note")) c.note = string_field(j, "note");
    if (j.contains("front")) {
      const Json& f = j.at("front");
      only_keys(f, {"word", "index", "orient"});
      FrontBinding b;
      b.word = front::print_front_word(front::parse_front_word(string_field(f, "word")));
      b.index = static_cast<int>(int_field(f, "index"));
      const std::string o = string_field(f, "orient");
      if (o != "forward" && o != "reverse") json_fail("orient must be forward or reverse");
      b.orient = o == "forward" ? Orientation::Forward : Orientation::Reverse;
      c.front = b;
    }
    out.push_back(std::move(c));
  }
  return out;
}

inline LinkingData linking_from_json(const Json& arr) {
  if (!arr.is_array()) json_fail("linking must be an array");
  LinkingData lk;
  for (const auto& j : arr) {
    only_keys(j, {"a", "b", "lk"});
    lk.set(string_field(j, "a"), string_field(j, "b"), int_field(j, "lk"));
  }
  return lk;
}

inline std::map<std::string, SlopeQ> coefficients_from_json(const Json& o) {
  if (!o.is_object()) json_fail("coefficient map must be an object");
  std::map<std::string, SlopeQ> out;
  for (const auto& [k, v] : o.items()) out.emplace(k, slope_value(v));
  return out;
}

inline TightLayerSpec layer_from_json(const Json& j) {
  only_keys(j, {"variant", "value", "twisting"});
  const std::string v = string_field(j, "variant");
  TightLayerSpec l;
  if (v == "invariant")
    l.variant = TightLayerSpec::Variant::InvariantStd;
  else if (v == "nonrotative")
    l.variant = TightLayerSpec::Variant::NonRotative;
  else if (v == "rotative_plus")
    l.variant = TightLayerSpec::Variant::RotativePlus;
  else if (v == "rotative_minus")
    l.variant = TightLayerSpec::Variant::RotativeMinus;
  else
    json_fail("unknown layer variant '" + v + "'");
  l.value = int_field(j, "value");
  l.twisting = int_field(j, "twisting");
  return l;
}

}  // namespace detail

/// Reads the JSON written by file_to_json.  Extra top-level keys (such as a
/// conversion plan) are ignored so command outputs can be chained.
inline DiagramFile file_from_json(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, std::string("json: ") + e.what());
  }
  DiagramFile f;
  const Json& arr = detail::field(root, "diagrams");
  if (!arr.is_array()) detail::json_fail("diagrams must be an array");
  std::set<std::string> names;
  for (const auto& j : arr) {
    NamedDiagram nd;
    nd.name = detail::string_field(j, "name");
    if (!names.insert(nd.name).second) throw Error(ErrorKind::SemanticError, "duplicate diagram name '" + nd.name + "'");
    const std::string kind = detail::string_field(j, "kind");
    if (kind == "contact") {
      detail::only_keys(j, {"name", "kind", "components", "linking", "coefficients"});
      nd.kind = DiagramKind::Contact;
      nd.contact.components = detail::components_from_json(detail::field(j, "components"));
      nd.contact.linking = detail::linking_from_json(detail::field(j, "linking"));
      nd.contact.coefficients = detail::coefficients_from_json(detail::field(j, "coefficients"));
      if (auto v = validate_diagram(nd.contact); !v.empty())
        throw Error(ErrorKind::SemanticError, std::string(to_string(v.front().kind)) + ": " + v.front().detail);
    } else if (kind == "round") {
      detail::only_keys(j, {"name", "kind", "components", "linking", "round1", "round2", "contact_dehn"});
      nd.kind = DiagramKind::Round;
      auto& rd = nd.round;
      rd.components = detail::components_from_json(detail::field(j, "components"));
      rd.linking = detail::linking_from_json(detail::field(j, "linking"));
      rd.contact_dehn = detail::coefficients_from_json(detail::field(j, "contact_dehn"));
      const Json& r1 = detail::field(j, "round1");
      const Json& r2 = detail::field(j, "round2");
      if (!r1.is_array() || !r2.is_array()) detail::json_fail("round1 and round2 must be arrays");
      for (const auto& x : r1) {
        detail::only_keys(x, {"pair", "r1", "layer"});
        const Json& p = detail::field(x, "pair");
        const Json& c = detail::field(x, "r1");
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
          detail::json_fail("pair must be two labels");
        if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer())
          detail::json_fail("r1 must be two integers");
        rd.round1.push_back({{p[0].get<std::string>(), p[1].get<std::string>()},
                             c[0].get<std::int64_t>(),
                             c[1].get<std::int64_t>(),
                             detail::layer_from_json(detail::field(x, "layer"))});
      }
      for (const auto& x : r2) {
        detail::only_keys(x, {"knot", "r2", "joint_with"});
        Round2Spec s{detail::string_field(x, "knot"), detail::slope_value(detail::field(x, "r2")), std::nullopt};
        if (x.contains("joint_with") && !x.at("joint_with").is_null()) {
          const Json& jw = x.at("joint_with");
          if (!jw.is_number_unsigned()) detail::json_fail("joint_with must be a non-negative integer");
          s.joint_with = jw.get<std::size_t>();
        }
        rd.round2.push_back(std::move(s));
      }
      std::stable_sort(rd.round2.begin(), rd.round2.end(), [](const Round2Spec& x, const Round2Spec& y) {
        return (x.joint_with ? *x.joint_with : SIZE_MAX) < (y.joint_with ? *y.joint_with : SIZE_MAX);
      });
      if (auto v = validate_diagram(rd); !v.empty())
        throw Error(ErrorKind::SemanticError, std::string(to_string(v.front().kind)) + ": " + v.front().detail);
    } else {
      detail::json_fail("kind must be contact or round");
    }
    f.diagrams.push_back(std::move(nd));
  }
  return f;
}

/// Text or JSON, decided by the first non-blank character.
inline DiagramFile read_diagram_file(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return file_from_json(text);
    break;
  }
  return parse_diagram_text(text);
}

}  // namespace crsurg
