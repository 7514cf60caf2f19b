#include "modcoh/term.hpp"

#include <cctype>
#include <random>
#include <sstream>

namespace modcoh {

TermPtr Term::gen(Gen g) { return std::make_shared<Term>(Node{Generator{g}}); }

TermPtr Term::star(TermPtr left, TermPtr right) {
  return std::make_shared<Term>(Node{Star{std::move(left), std::move(right)}});
}

TermPtr Term::compose(TermPtr after, TermPtr before) {
  return std::make_shared<Term>(
      Node{Compose{std::move(after), std::move(before)}});
}

TermPtr Term::inverse(TermPtr of) {
  return std::make_shared<Term>(Node{Inverse{std::move(of)}});
}

bool same_term(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  if (const auto* g = std::get_if<Term::Generator>(&a->node))
    return g->g == std::get<Term::Generator>(b->node).g;
  if (const auto* s = std::get_if<Term::Star>(&a->node)) {
    const auto& t = std::get<Term::Star>(b->node);
    return same_term(s->left, t.left) && same_term(s->right, t.right);
  }
  if (const auto* c = std::get_if<Term::Compose>(&a->node)) {
    const auto& d = std::get<Term::Compose>(b->node);
    return same_term(c->after, d.after) && same_term(c->before, d.before);
  }
  return same_term(std::get<Term::Inverse>(a->node).of,
                   std::get<Term::Inverse>(b->node).of);
}

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos == text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  TermPtr parse_comp() {
    TermPtr t = parse_star();
    while (eat('.')) {
      TermPtr rhs = parse_star();
      // "a . b" applies b first, so earlier factors compose after later ones.
      t = Term::compose(std::move(t), std::move(rhs));
    }
    return t;
  }

  TermPtr parse_star() {
    TermPtr t = parse_inv();
    if (eat('*')) {
      TermPtr rhs = parse_inv();
      skip_ws();
      if (pos < text.size() && text[pos] == '*')
        throw ParseError("ambiguous star chain; parenthesize", pos);
      t = Term::star(std::move(t), std::move(rhs));
    }
    return t;
  }

  TermPtr parse_inv() {
    TermPtr t = parse_atom();
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        if (text.substr(pos, 3) == "^-1") {
          pos += 3;
          t = Term::inverse(std::move(t));
          continue;
        }
        throw ParseError("expected \"^-1\"", pos);
      }
      break;
    }
    return t;
  }

  TermPtr parse_atom() {
    skip_ws();
    if (pos == text.size()) throw ParseError("unexpected end of input", pos);
    if (eat('(')) {
      TermPtr t = parse_comp();
      if (!eat(')')) throw ParseError("expected \")\"", pos);
      return t;
    }
    std::size_t start = pos;
    while (pos < text.size() &&
           std::isalpha(static_cast<unsigned char>(text[pos])))
      ++pos;
    std::string_view word = text.substr(start, pos - start);
    if (word == "tau") return Term::tau();
    if (word == "sigma") return Term::sigma();
    if (word == "id") return Term::id();
    if (word.empty())
      throw ParseError(std::string("unexpected character \"") + text[pos] +
                           "\"",
                       pos);
    throw ParseError("unknown name \"" + std::string(word) + "\"", start);
  }
};

enum class Prec { Comp, Star, Inv };

void print_into(const TermPtr& t, Prec context, std::ostringstream& os) {
  if (const auto* g = std::get_if<Term::Generator>(&t->node)) {
    switch (g->g) {
      case Gen::Tau: os << "tau"; break;
      case Gen::Sigma: os << "sigma"; break;
      case Gen::Id: os << "id"; break;
    }
    return;
  }
  if (const auto* s = std::get_if<Term::Star>(&t->node)) {
    os << "(";
    print_into(s->left, Prec::Inv, os);
    os << " * ";
    print_into(s->right, Prec::Inv, os);
    os << ")";
    return;
  }
  if (const auto* c = std::get_if<Term::Compose>(&t->node)) {
    bool parens = context != Prec::Comp;
    if (parens) os << "(";
    print_into(c->after, Prec::Comp, os);
    os << " . ";
    // The chain is left-associative, so a right-nested composite needs parens.
    print_into(c->before, Prec::Star, os);
    if (parens) os << ")";
    return;
  }
  const auto& inv = std::get<Term::Inverse>(t->node);
  print_into(inv.of, Prec::Inv, os);
  os << "^-1";
}

}  // namespace

TermPtr parse_term(std::string_view text) {
  Parser p{text};
  TermPtr t = p.parse_comp();
  if (!p.at_end())
    throw ParseError(std::string("unexpected character \"") + p.peek() + "\"",
                     p.pos);
  return t;
}

std::string to_string(const TermPtr& t) {
  std::ostringstream os;
  print_into(t, Prec::Comp, os);
  return os.str();
}

ModularBijection eval(const TermPtr& t) {
  if (const auto* g = std::get_if<Term::Generator>(&t->node)) {
    switch (g->g) {
      case Gen::Tau: return tau();
      case Gen::Sigma: return sigma();
      case Gen::Id: return identity();
    }
  }
  if (const auto* s = std::get_if<Term::Star>(&t->node))
    return interleave(eval(s->left), eval(s->right));
  if (const auto* c = std::get_if<Term::Compose>(&t->node))
    return compose(eval(c->after), eval(c->before));
  return invert(eval(std::get<Term::Inverse>(t->node).of));
}

namespace {

TermPtr random_term_impl(unsigned max_depth, std::mt19937_64& rng) {
  // Draws use plain modulo so identical seeds give identical terms on every
  // platform; std::uniform_int_distribution is implementation-defined.
  if (max_depth == 0 || rng() % 100 < 40) {
    switch (rng() % 3) {
      case 0: return Term::tau();
      case 1: return Term::sigma();
      default: return Term::id();
    }
  }
  std::uint64_t r = rng() % 60;
  if (r < 25) {
    TermPtr l = random_term_impl(max_depth - 1, rng);
    TermPtr rr = random_term_impl(max_depth - 1, rng);
    return Term::star(std::move(l), std::move(rr));
  }
  if (r < 50) {
    TermPtr a = random_term_impl(max_depth - 1, rng);
    TermPtr b = random_term_impl(max_depth - 1, rng);
    return Term::compose(std::move(a), std::move(b));
  }
  return Term::inverse(random_term_impl(max_depth - 1, rng));
}

}  // namespace

TermPtr random_term(unsigned max_depth, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_term_impl(max_depth, rng);
}

}  // namespace modcoh
