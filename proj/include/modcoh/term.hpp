#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "modcoh/residue.hpp"

// Syntax trees over the generators {tau, sigma, id} closed under the
// interleaving star, composition and inverse, with a parser and printer for
// the concrete grammar:
//
//   term := comp
//   comp := star { "." star }          left-associative
//   star := inv [ "*" inv ]            binary only; chains must parenthesize
//   inv  := atom { "^-1" }
//   atom := "tau" | "sigma" | "id" | "(" term ")"
//
// The star is not associative as a function, so "a * b * c" is rejected
// rather than silently grouped.

namespace modcoh {

enum class Gen { Tau, Sigma, Id };

class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
 public:
  struct Generator {
    Gen g;
  };
  struct Star {
    TermPtr left, right;
  };
  struct Compose {
    TermPtr after, before;  // before acts first
  };
  struct Inverse {
    TermPtr of;
  };
  using Node = std::variant<Generator, Star, Compose, Inverse>;

  explicit Term(Node n) : node(std::move(n)) {}
  Node node;

  static TermPtr gen(Gen g);
  static TermPtr star(TermPtr left, TermPtr right);
  static TermPtr compose(TermPtr after, TermPtr before);
  static TermPtr inverse(TermPtr of);

  static TermPtr tau() { return gen(Gen::Tau); }
  static TermPtr sigma() { return gen(Gen::Sigma); }
  static TermPtr id() { return gen(Gen::Id); }
};

bool same_term(const TermPtr& a, const TermPtr& b);

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position(position) {}
  std::size_t position;
};

TermPtr parse_term(std::string_view text);

// Emits text such that parse_term(to_string(t)) is structurally t. Stars are
// always parenthesized.
std::string to_string(const TermPtr& t);

// Interprets the term in the residue engine; the result is canonical.
ModularBijection eval(const TermPtr& t);

// Deterministic pseudo-random term of constructor depth <= max_depth.
// Weights: 40% generator, 25% star, 25% compose, 10% inverse.
TermPtr random_term(unsigned max_depth, std::uint64_t seed);

}  // namespace modcoh
