#include "logician/saoke.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>

namespace logician::saoke {

namespace {

constexpr std::array<std::string_view, kKeywordCount> kSurfaces = {
    "ISA", "DESC", "LOC", "BIRTH", "DEATH", "=", "(", ")", "$",
    "[",   "]",    "|",   "X",     "Y",     "Z", "P", "<BOS>", "<EOS>"};

}  // namespace

std::string_view keyword_surface(Keyword k) { return kSurfaces.at(static_cast<size_t>(k)); }

std::optional<Keyword> keyword_from(std::string_view token) {
  for (size_t i = 0; i < kSurfaces.size(); ++i)
    if (kSurfaces[i] == token) return static_cast<Keyword>(i);
  return std::nullopt;
}

Keyword keyword_at(int index) {
  if (index < 0 || index >= kKeywordCount) throw std::out_of_range("keyword index");
  return static_cast<Keyword>(index);
}

Element Element::words(std::vector<std::string> tokens) {
  Element e;
  e.pieces.reserve(tokens.size());
  for (auto& t : tokens) e.pieces.emplace_back(std::move(t));
  return e;
}

bool Element::has_compact() const {
  return std::any_of(pieces.begin(), pieces.end(),
                     [](const Piece& p) { return std::holds_alternative<CompactGroup>(p); });
}

std::vector<std::string> Element::tokens() const {
  std::vector<std::string> out;
  for (const auto& piece : pieces) {
    if (const auto* tok = std::get_if<std::string>(&piece)) {
      out.push_back(*tok);
    } else {
      const auto& group = std::get<CompactGroup>(piece);
      out.emplace_back(keyword_surface(Keyword::AltOpen));
      for (size_t a = 0; a < group.alternatives.size(); ++a) {
        if (a > 0) out.emplace_back(keyword_surface(Keyword::AltSep));
        out.insert(out.end(), group.alternatives[a].begin(), group.alternatives[a].end());
      }
      out.emplace_back(keyword_surface(Keyword::AltClose));
    }
  }
  return out;
}

Fact::Fact(Element subject, Element predicate, std::vector<Element> objects) {
  elements.reserve(2 + objects.size());
  elements.push_back(std::move(subject));
  elements.push_back(std::move(predicate));
  for (auto& o : objects) elements.push_back(std::move(o));
}

// ---------------------------------------------------------------------------
// Parsing

std::string_view parse_error_kind_name(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::UnbalancedDelimiter: return "UnbalancedDelimiter";
    case ParseErrorKind::EmptyElement: return "EmptyElement";
    case ParseErrorKind::StrayToken: return "StrayToken";
  }
  return "?";
}

ParseError::ParseError(ParseErrorKind kind, size_t index)
    : std::runtime_error(std::string(parse_error_kind_name(kind)) + " at token " +
                         std::to_string(index)),
      kind_(kind),
      index_(index) {}

namespace {

// One-pass state machine over the token stream. Parses the single fact that
// starts at `pos` (which must point at "("); returns the index one past the
// closing ")".
size_t parse_one_fact(std::span<const std::string> toks, size_t pos, Fact* out) {
  size_t i = pos + 1;  // caller checked toks[pos] == "("
  Fact fact;
  Element elem;
  bool in_compact = false;
  CompactGroup group;
  std::vector<std::string> alt;

  auto close_element = [&](size_t at) {
    if (elem.empty()) throw ParseError(ParseErrorKind::EmptyElement, at);
    fact.elements.push_back(std::move(elem));
    elem = Element{};
  };

  for (; i < toks.size(); ++i) {
    const std::string& t = toks[i];
    const auto kw = keyword_from(t);
    const bool structural = kw && is_structural(*kw);
    if (in_compact) {
      if (!structural) {
        alt.push_back(t);
        continue;
      }
      switch (*kw) {
        case Keyword::AltSep:
          if (alt.empty()) throw ParseError(ParseErrorKind::EmptyElement, i);
          group.alternatives.push_back(std::move(alt));
          alt.clear();
          break;
        case Keyword::AltClose:
          if (alt.empty()) throw ParseError(ParseErrorKind::EmptyElement, i);
          group.alternatives.push_back(std::move(alt));
          alt.clear();
          if (group.alternatives.size() < 2) throw ParseError(ParseErrorKind::EmptyElement, i);
          elem.pieces.emplace_back(std::move(group));
          group = CompactGroup{};
          in_compact = false;
          break;
        default:  // "(", ")", "$", "[" inside a compact
          throw ParseError(ParseErrorKind::UnbalancedDelimiter, i);
      }
      continue;
    }
    if (!structural) {
      elem.pieces.emplace_back(t);
      continue;
    }
    switch (*kw) {
      case Keyword::FactOpen:
        throw ParseError(ParseErrorKind::UnbalancedDelimiter, i);
      case Keyword::FactClose:
        close_element(i);
        // Grammar requires subject plus at least one further element.
        if (fact.elements.size() < 2) throw ParseError(ParseErrorKind::EmptyElement, i);
        *out = std::move(fact);
        return i + 1;
      case Keyword::ElemSep:
        close_element(i);
        break;
      case Keyword::AltOpen:
        in_compact = true;
        break;
      default:  // "]" or "|" with no open compact
        throw ParseError(ParseErrorKind::UnbalancedDelimiter, i);
    }
  }
  throw ParseError(ParseErrorKind::UnbalancedDelimiter, toks.size());
}

}  // namespace

FactSequence parse_fact_sequence(std::span<const std::string> tokens) {
  FactSequence seq;
  size_t i = 0;
  while (i < tokens.size()) {
    if (keyword_from(tokens[i]) != Keyword::FactOpen)
      throw ParseError(ParseErrorKind::StrayToken, i);
    Fact fact;
    i = parse_one_fact(tokens, i, &fact);
    seq.facts.push_back(std::move(fact));
  }
  return seq;
}

std::vector<std::string> split_tokens(std::string_view text) {
  std::vector<std::string> toks;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) toks.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return toks;
}

FactSequence parse_fact_sequence(std::string_view text) {
  const auto toks = split_tokens(text);
  return parse_fact_sequence(std::span<const std::string>(toks));
}

std::vector<RecoveredFact> parse_with_recovery(std::span<const std::string> tokens) {
  std::vector<RecoveredFact> out;
  size_t i = 0;
  while (i < tokens.size()) {
    if (keyword_from(tokens[i]) != Keyword::FactOpen) {
      ++i;
      continue;
    }
    try {
      RecoveredFact rec;
      rec.begin = i;
      rec.end = parse_one_fact(tokens, i, &rec.fact);
      out.push_back(std::move(rec));
      i = out.back().end;
    } catch (const ParseError& e) {
      // Resynchronize on the next "(" at or after the failure point.
      size_t next = std::max(e.index(), i + 1);
      while (next < tokens.size() && keyword_from(tokens[next]) != Keyword::FactOpen) ++next;
      i = next;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

std::vector<std::string> serialize(const Fact& fact) {
  std::vector<std::string> out;
  out.emplace_back(keyword_surface(Keyword::FactOpen));
  for (size_t e = 0; e < fact.elements.size(); ++e) {
    if (e > 0) out.emplace_back(keyword_surface(Keyword::ElemSep));
    const auto toks = fact.elements[e].tokens();
    out.insert(out.end(), toks.begin(), toks.end());
  }
  out.emplace_back(keyword_surface(Keyword::FactClose));
  return out;
}

std::vector<std::string> serialize(const FactSequence& seq) {
  std::vector<std::string> out;
  for (const auto& f : seq.facts) {
    const auto toks = serialize(f);
    out.insert(out.end(), toks.begin(), toks.end());
  }
  return out;
}

std::string to_text(const FactSequence& seq) {
  const auto toks = serialize(seq);
  std::string out;
  for (size_t i = 0; i < toks.size(); ++i) {
    if (i > 0) out += ' ';
    out += toks[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation

std::string_view violation_kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::Arity: return "Arity";
    case ViolationKind::PlaceholderMisuse: return "PlaceholderMisuse";
    case ViolationKind::EmptyElement: return "EmptyElement";
    case ViolationKind::SentinelInFact: return "SentinelInFact";
    case ViolationKind::MalformedCompact: return "MalformedCompact";
  }
  return "?";
}

namespace {

void check_token(const std::string& tok, size_t elem_idx, bool in_predicate,
                 std::vector<Violation>* out) {
  if (tok.empty()) {
    out->push_back({ViolationKind::EmptyElement, "empty token in element " + std::to_string(elem_idx)});
    return;
  }
  const auto kw = keyword_from(tok);
  if (!kw) return;
  if (is_sentinel(*kw)) {
    out->push_back({ViolationKind::SentinelInFact, tok + " in element " + std::to_string(elem_idx)});
    return;
  }
  if ((*kw == Keyword::X || *kw == Keyword::Y || *kw == Keyword::Z) && !in_predicate) {
    out->push_back({ViolationKind::PlaceholderMisuse,
                    tok + " outside the predicate (element " + std::to_string(elem_idx) + ")"});
  }
  // P handled at the element level: it must stand alone as the predicate.
}

}  // namespace

std::vector<Violation> validate(const Fact& fact) {
  std::vector<Violation> out;
  if (fact.arity() < 2)
    out.push_back({ViolationKind::Arity, "arity " + std::to_string(fact.arity()) + " < 2"});

  std::set<std::string> predicate_placeholders;
  for (size_t e = 0; e < fact.elements.size(); ++e) {
    const Element& elem = fact.elements[e];
    const bool in_predicate = (e == 1);
    if (elem.empty()) {
      out.push_back({ViolationKind::EmptyElement, "element " + std::to_string(e) + " is empty"});
      continue;
    }
    const bool p_alone = in_predicate && elem.pieces.size() == 1 &&
                         std::holds_alternative<std::string>(elem.pieces[0]) &&
                         std::get<std::string>(elem.pieces[0]) == keyword_surface(Keyword::P);
    for (const auto& piece : elem.pieces) {
      if (const auto* tok = std::get_if<std::string>(&piece)) {
        check_token(*tok, e, in_predicate, &out);
        if (const auto kw = keyword_from(*tok)) {
          if (*kw == Keyword::P && !p_alone)
            out.push_back({ViolationKind::PlaceholderMisuse,
                           "P must stand alone as the predicate (element " + std::to_string(e) + ")"});
          if (in_predicate && (*kw == Keyword::X || *kw == Keyword::Y || *kw == Keyword::Z))
            predicate_placeholders.insert(*tok);
        }
      } else {
        const auto& group = std::get<CompactGroup>(piece);
        if (group.alternatives.size() < 2)
          out.push_back({ViolationKind::MalformedCompact,
                         "compact in element " + std::to_string(e) + " has fewer than 2 alternatives"});
        for (const auto& alt : group.alternatives) {
          if (alt.empty()) {
            out.push_back({ViolationKind::MalformedCompact,
                           "empty alternative in element " + std::to_string(e)});
            continue;
          }
          for (const auto& tok : alt) {
            check_token(tok, e, in_predicate, &out);
            if (const auto kw = keyword_from(tok)) {
              if (*kw == Keyword::P)
                out.push_back({ViolationKind::PlaceholderMisuse,
                               "P inside a compact (element " + std::to_string(e) + ")"});
              if (in_predicate && (*kw == Keyword::X || *kw == Keyword::Y || *kw == Keyword::Z))
                predicate_placeholders.insert(tok);
            }
          }
        }
      }
    }
  }
  const size_t n_objects = fact.arity() > 2 ? fact.elements.size() - 2 : 0;
  if (predicate_placeholders.size() > n_objects)
    out.push_back({ViolationKind::PlaceholderMisuse,
                   std::to_string(predicate_placeholders.size()) +
                       " distinct placeholders but only " + std::to_string(n_objects) + " objects"});
  return out;
}

// ---------------------------------------------------------------------------
// Expansion

std::vector<Fact> expand_compact(const Fact& fact) {
  // Locate the compact groups in (element, piece) order.
  struct Slot {
    size_t elem, piece;
    size_t count;
  };
  std::vector<Slot> slots;
  for (size_t e = 0; e < fact.elements.size(); ++e)
    for (size_t p = 0; p < fact.elements[e].pieces.size(); ++p)
      if (const auto* g = std::get_if<CompactGroup>(&fact.elements[e].pieces[p]))
        slots.push_back({e, p, g->alternatives.size()});
  if (slots.empty()) return {fact};

  size_t total = 1;
  for (const auto& s : slots) total *= s.count;

  std::vector<Fact> out;
  out.reserve(total);
  for (size_t combo = 0; combo < total; ++combo) {
    // Row-major: the first group varies slowest.
    std::vector<size_t> choice(slots.size());
    size_t rem = combo;
    for (size_t k = slots.size(); k-- > 0;) {
      choice[k] = rem % slots[k].count;
      rem /= slots[k].count;
    }
    Fact expanded;
    expanded.elements.reserve(fact.elements.size());
    size_t slot_idx = 0;
    for (size_t e = 0; e < fact.elements.size(); ++e) {
      Element elem;
      for (size_t p = 0; p < fact.elements[e].pieces.size(); ++p) {
        const auto& piece = fact.elements[e].pieces[p];
        if (const auto* tok = std::get_if<std::string>(&piece)) {
          elem.pieces.emplace_back(*tok);
        } else {
          const auto& g = std::get<CompactGroup>(piece);
          const auto& alt = g.alternatives[choice[slot_idx++]];
          for (const auto& t : alt) elem.pieces.emplace_back(t);
        }
      }
      expanded.elements.push_back(std::move(elem));
    }
    out.push_back(std::move(expanded));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classification

std::string_view fact_type_name(FactType t) {
  switch (t) {
    case FactType::Relation: return "Relation";
    case FactType::Attribute: return "Attribute";
    case FactType::Description: return "Description";
    case FactType::Concept: return "Concept";
    case FactType::Unknown: return "Unknown";
  }
  return "?";
}

FactType classify_fact(const Fact& fact) {
  if (fact.arity() < 2) return FactType::Relation;
  const Element& pred = fact.predicate();
  if (pred.pieces.size() != 1) return FactType::Relation;
  const auto* tok = std::get_if<std::string>(&pred.pieces[0]);
  if (!tok) return FactType::Relation;
  const auto kw = keyword_from(*tok);
  if (!kw) return FactType::Relation;
  switch (*kw) {
    case Keyword::Isa:
    case Keyword::Equals:
      return FactType::Concept;
    case Keyword::Desc:
      return FactType::Description;
    case Keyword::P:
      return FactType::Unknown;
    case Keyword::Birth:
    case Keyword::Death:
    case Keyword::Loc:
      return FactType::Attribute;
    default:
      return FactType::Relation;
  }
}

}  // namespace logician::saoke
