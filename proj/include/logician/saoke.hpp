#pragma once

// SAOKE fact representation: n-ary (subject, predicate, object...) tuples over
// source-sentence tokens plus a small symbolic keyword set. The serialized
// token form is
//
//   FACT    := "(" ELEM ("$" ELEM)+ ")"
//   ELEM    := (token | COMPACT)+
//   COMPACT := "[" token+ ("|" token+)+ "]"
//
// with facts abutting as ")(" and no separator between them. Tokens are the
// parse unit; multi-word elements are token lists.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace logician::saoke {

// ---------------------------------------------------------------------------
// Keywords

enum class Keyword : int {
  Isa,
  Desc,
  Loc,
  Birth,
  Death,
  Equals,
  FactOpen,
  FactClose,
  ElemSep,   // "$"
  AltOpen,   // "["
  AltClose,  // "]"
  AltSep,    // "|"
  X,
  Y,
  Z,
  P,
  Bos,  // artifact sentinel: decoder start token, never inside a fact
  Eos,  // artifact sentinel: decoder stop token, never inside a fact
};

inline constexpr int kPaperKeywordCount = 16;
inline constexpr int kKeywordCount = 18;

std::string_view keyword_surface(Keyword k);
std::optional<Keyword> keyword_from(std::string_view token);
inline int keyword_index(Keyword k) { return static_cast<int>(k); }
Keyword keyword_at(int index);

inline bool is_sentinel(Keyword k) { return k == Keyword::Bos || k == Keyword::Eos; }
// Structural delimiters of the serialized form; these cannot occur as element
// tokens, only as fact/compact punctuation.
inline bool is_structural(Keyword k) {
  switch (k) {
    case Keyword::FactOpen:
    case Keyword::FactClose:
    case Keyword::ElemSep:
    case Keyword::AltOpen:
    case Keyword::AltClose:
    case Keyword::AltSep:
      return true;
    default:
      return false;
  }
}
inline bool is_placeholder(Keyword k) {
  return k == Keyword::X || k == Keyword::Y || k == Keyword::Z || k == Keyword::P;
}

// ---------------------------------------------------------------------------
// Facts

// A compact expression "[ a | b | ... ]": alternatives sharing the rest of the
// fact. Alternatives are token lists; nesting is not representable.
struct CompactGroup {
  std::vector<std::vector<std::string>> alternatives;
  bool operator==(const CompactGroup&) const = default;
};

// One element of a fact: an ordered run of single tokens and compact groups.
struct Element {
  using Piece = std::variant<std::string, CompactGroup>;
  std::vector<Piece> pieces;

  Element() = default;
  // Plain element from word tokens.
  static Element words(std::vector<std::string> tokens);

  bool empty() const { return pieces.empty(); }
  bool has_compact() const;
  // Serialized token run, with compact groups rendered as "[ a | b ]".
  std::vector<std::string> tokens() const;

  bool operator==(const Element&) const = default;
};

// elements[0] is the subject, elements[1] the predicate, the rest objects.
// Arity-deficient facts are representable (validate() reports them).
struct Fact {
  std::vector<Element> elements;

  Fact() = default;
  Fact(Element subject, Element predicate, std::vector<Element> objects);

  int arity() const { return static_cast<int>(elements.size()); }
  const Element& subject() const { return elements.at(0); }
  const Element& predicate() const { return elements.at(1); }
  std::span<const Element> objects() const {
    return elements.size() > 2 ? std::span<const Element>(elements).subspan(2)
                               : std::span<const Element>{};
  }

  bool operator==(const Fact&) const = default;
};

struct FactSequence {
  std::vector<Fact> facts;
  bool operator==(const FactSequence&) const = default;
};

// ---------------------------------------------------------------------------
// Parsing and serialization

enum class ParseErrorKind {
  // Unclosed "(" or "[" at end of input, nested "(" or "[", or a structural
  // delimiter inside the wrong scope ("$" inside a compact, "|" or "]"
  // outside one).
  UnbalancedDelimiter,
  // An element or alternative that would be empty where one is required:
  // adjacent "$", "( $", "$ )", "( )", a fact closed with fewer than two
  // elements, or a compact with fewer than two alternatives.
  EmptyElement,
  // Any token outside a fact other than "(".
  StrayToken,
};

std::string_view parse_error_kind_name(ParseErrorKind k);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, size_t index);
  ParseErrorKind kind() const { return kind_; }
  // Index of the offending token; equals the token count for end-of-input
  // errors.
  size_t index() const { return index_; }

 private:
  ParseErrorKind kind_;
  size_t index_;
};

// Strict parse of a whole token stream. Throws ParseError on the first
// violation. The empty stream parses to an empty sequence.
FactSequence parse_fact_sequence(std::span<const std::string> tokens);
// Convenience: splits on ASCII whitespace first.
FactSequence parse_fact_sequence(std::string_view text);

std::vector<std::string> serialize(const Fact& fact);
std::vector<std::string> serialize(const FactSequence& seq);
// Canonical text form: tokens joined by single spaces.
std::string to_text(const FactSequence& seq);

std::vector<std::string> split_tokens(std::string_view text);

// Lenient parse for decoder output: parses facts where possible and skips
// malformed regions by resynchronizing on the next "(" at or after the
// failure point. Never throws. Spans are [begin, end) token indices covering
// each recovered fact including its delimiters.
struct RecoveredFact {
  Fact fact;
  size_t begin = 0;
  size_t end = 0;
};
std::vector<RecoveredFact> parse_with_recovery(std::span<const std::string> tokens);

// ---------------------------------------------------------------------------
// Validation, expansion, classification

enum class ViolationKind {
  Arity,              // arity < 2
  PlaceholderMisuse,  // X/Y/Z outside the predicate, P not alone as predicate,
                      // or more distinct placeholders than objects
  EmptyElement,       // empty element or empty token
  SentinelInFact,     // BOS/EOS surface used as an element token
  MalformedCompact,   // fewer than two alternatives, or an empty alternative
};

std::string_view violation_kind_name(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

// Structural checks only; returns an empty list for a well-formed fact.
std::vector<Violation> validate(const Fact& fact);

// Cartesian expansion of compact groups, row-major in (element, piece) order;
// a fact with no compact groups expands to a singleton list of itself.
std::vector<Fact> expand_compact(const Fact& fact);

enum class FactType { Relation, Attribute, Description, Concept, Unknown };
std::string_view fact_type_name(FactType t);

// Symbolic-predicate taxonomy: ISA/"=" -> Concept, DESC -> Description,
// P -> Unknown, BIRTH/DEATH/LOC -> Attribute, anything else -> Relation.
// Free-text attribute predicates are indistinguishable syntactically and fall
// under Relation.
FactType classify_fact(const Fact& fact);

}  // namespace logician::saoke
