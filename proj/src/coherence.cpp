#include "modcoh/coherence.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace modcoh {

PatPtr TreePattern::metavar(int id) {
  auto p = std::make_shared<TreePattern>();
  p->var = id;
  return p;
}

PatPtr TreePattern::node(PatPtr left, PatPtr right) {
  auto p = std::make_shared<TreePattern>();
  p->left = std::move(left);
  p->right = std::move(right);
  return p;
}

bool same_pattern(const PatPtr& a, const PatPtr& b) {
  if (a == b) return true;
  if (a->is_var() || b->is_var()) return a->var == b->var;
  return same_pattern(a->left, b->left) && same_pattern(a->right, b->right);
}

std::string to_string(const PatPtr& p) {
  if (p->is_var()) return "v" + std::to_string(p->var);
  return "(" + to_string(p->left) + " " + to_string(p->right) + ")";
}

namespace {

PatPtr resolve(PatPtr p, const Subst& s) {
  while (p->is_var()) {
    auto it = s.find(p->var);
    if (it == s.end()) return p;
    p = it->second;
  }
  return p;
}

bool occurs(int var, const PatPtr& p, const Subst& s) {
  PatPtr r = resolve(p, s);
  if (r->is_var()) return r->var == var;
  return occurs(var, r->left, s) || occurs(var, r->right, s);
}

std::optional<UnifyFailure> unify_into(const PatPtr& p, const PatPtr& q,
                                       Subst& s) {
  PatPtr a = resolve(p, s);
  PatPtr b = resolve(q, s);
  if (a->is_var() && b->is_var() && a->var == b->var) return std::nullopt;
  if (a->is_var()) {
    if (occurs(a->var, b, s)) return UnifyFailure{a, substitute(b, s)};
    s[a->var] = b;
    return std::nullopt;
  }
  if (b->is_var()) {
    if (occurs(b->var, a, s)) return UnifyFailure{b, substitute(a, s)};
    s[b->var] = a;
    return std::nullopt;
  }
  if (auto fail = unify_into(a->left, b->left, s)) return fail;
  return unify_into(a->right, b->right, s);
}

}  // namespace

UnifyResult unify(const PatPtr& p, const PatPtr& q) {
  return unify_all({{p, q}});
}

UnifyResult unify_all(const std::vector<std::pair<PatPtr, PatPtr>>& goals) {
  Subst s;
  for (const auto& [p, q] : goals)
    if (auto fail = unify_into(p, q, s)) return *fail;
  return s;
}

PatPtr substitute(const PatPtr& p, const Subst& s) {
  PatPtr r = resolve(p, s);
  if (r->is_var()) return r;
  PatPtr l = substitute(r->left, s);
  PatPtr rr = substitute(r->right, s);
  if (l == r->left && rr == r->right) return r;
  return TreePattern::node(std::move(l), std::move(rr));
}

TreePtr instantiate(const PatPtr& p, const TreePtr& value) {
  if (p->is_var()) return value;
  return Tree::node(instantiate(p->left, value), instantiate(p->right, value));
}

namespace {

bool match_into(const PatPtr& p, const TreePtr& t,
                std::map<int, TreePtr>& out) {
  if (p->is_var()) {
    auto [it, inserted] = out.emplace(p->var, t);
    return inserted || same_tree(it->second, t);
  }
  if (t->is_leaf()) return false;
  return match_into(p->left, t->left, out) &&
         match_into(p->right, t->right, out);
}

}  // namespace

std::optional<std::map<int, TreePtr>> match_trees(
    const std::vector<std::pair<PatPtr, TreePtr>>& goals) {
  std::map<int, TreePtr> out;
  for (const auto& [p, t] : goals)
    if (!match_into(p, t, out)) return std::nullopt;
  return out;
}

namespace {

struct Inferencer {
  int next_var = 1;

  PatPtr fresh() { return TreePattern::metavar(next_var++); }

  TypingResult infer(const TermPtr& t) {
    if (const auto* g = std::get_if<Term::Generator>(&t->node)) {
      switch (g->g) {
        case Gen::Tau: {
          PatPtr a = fresh(), b = fresh(), c = fresh();
          return Typing{TreePattern::node(a, TreePattern::node(b, c)),
                        TreePattern::node(TreePattern::node(a, b), c)};
        }
        case Gen::Id: {
          PatPtr a = fresh();
          return Typing{a, a};
        }
        case Gen::Sigma:
          return TypingError{TypingError::Kind::SigmaPresent,
                             "sigma has no associativity lift"};
      }
    }
    if (const auto* s = std::get_if<Term::Star>(&t->node)) {
      TypingResult l = infer(s->left);
      if (auto* e = std::get_if<TypingError>(&l)) return *e;
      TypingResult r = infer(s->right);
      if (auto* e = std::get_if<TypingError>(&r)) return *e;
      const Typing& lt = std::get<Typing>(l);
      const Typing& rt = std::get<Typing>(r);
      return Typing{TreePattern::node(lt.source, rt.source),
                    TreePattern::node(lt.target, rt.target)};
    }
    if (const auto* c = std::get_if<Term::Compose>(&t->node)) {
      TypingResult before = infer(c->before);
      if (auto* e = std::get_if<TypingError>(&before)) return *e;
      TypingResult after = infer(c->after);
      if (auto* e = std::get_if<TypingError>(&after)) return *e;
      const Typing& bt = std::get<Typing>(before);
      const Typing& at = std::get<Typing>(after);
      UnifyResult u = unify(at.source, bt.target);
      if (auto* fail = std::get_if<UnifyFailure>(&u)) {
        return TypingError{TypingError::Kind::UnificationFailure,
                           "cannot join composite: " + to_string(fail->var) +
                               " occurs in " + to_string(fail->pattern)};
      }
      const Subst& s2 = std::get<Subst>(u);
      return Typing{substitute(bt.source, s2), substitute(at.target, s2)};
    }
    TypingResult inner = infer(std::get<Term::Inverse>(t->node).of);
    if (auto* e = std::get_if<TypingError>(&inner)) return *e;
    Typing ty = std::get<Typing>(inner);
    return Typing{ty.target, ty.source};
  }
};

void collect_vars(const PatPtr& p, std::vector<int>& order) {
  if (p->is_var()) {
    if (std::find(order.begin(), order.end(), p->var) == order.end())
      order.push_back(p->var);
    return;
  }
  collect_vars(p->left, order);
  collect_vars(p->right, order);
}

PatPtr renumber(const PatPtr& p, const std::map<int, int>& names) {
  if (p->is_var()) return TreePattern::metavar(names.at(p->var));
  return TreePattern::node(renumber(p->left, names),
                           renumber(p->right, names));
}

// Compacts metavariables to v1, v2, ... in order of first occurrence, so
// reported typings do not depend on how many fresh names inference burned.
Typing tidy(const Typing& t) {
  std::vector<int> order;
  collect_vars(t.source, order);
  collect_vars(t.target, order);
  std::map<int, int> names;
  for (std::size_t i = 0; i < order.size(); ++i)
    names[order[i]] = static_cast<int>(i) + 1;
  return {renumber(t.source, names), renumber(t.target, names)};
}

}  // namespace

TypingResult infer_typing(const TermPtr& t) {
  Inferencer inf;
  TypingResult r = inf.infer(t);
  if (auto* ty = std::get_if<Typing>(&r)) return tidy(*ty);
  return r;
}

std::string to_string(const Typing& typing) {
  return to_string(typing.source) + " ⇒ " + to_string(typing.target);
}

CoherenceResult coherence_equal(const TermPtr& a, const TermPtr& b) {
  // One inferencer keeps the two typings' metavariables disjoint.
  Inferencer inf;
  TypingResult ra = inf.infer(a);
  if (auto* e = std::get_if<TypingError>(&ra))
    return {false, "left term does not lift: " + e->detail};
  TypingResult rb = inf.infer(b);
  if (auto* e = std::get_if<TypingError>(&rb))
    return {false, "right term does not lift: " + e->detail};
  const Typing& ta = std::get<Typing>(ra);
  const Typing& tb = std::get<Typing>(rb);
  UnifyResult u = unify_all({{ta.source, tb.source}, {ta.target, tb.target}});
  if (auto* fail = std::get_if<UnifyFailure>(&u)) {
    return {false, "typings do not unify as a pair: " + to_string(fail->var) +
                       " occurs in " + to_string(fail->pattern)};
  }
  return {true, ""};
}

namespace {

struct Walk {
  std::vector<std::size_t> edges;
  std::vector<std::string> nodes;  // length = edges + 1
};

TermPtr walk_term(const Diagram& d, const Walk& w) {
  if (w.edges.empty()) return Term::id();
  TermPtr t = d.edges[w.edges.front()].term;
  for (std::size_t i = 1; i < w.edges.size(); ++i)
    t = Term::compose(d.edges[w.edges[i]].term, t);
  return t;
}

}  // namespace

DiagramReport verify_diagram(const Diagram& d, std::size_t path_bound) {
  for (const std::string& n : d.nodes) {
    if (n.empty()) throw std::runtime_error("diagram has an empty node name");
    if (std::count(d.nodes.begin(), d.nodes.end(), n) != 1)
      throw std::runtime_error("duplicate diagram node \"" + n + "\"");
  }
  auto known = [&](const std::string& n) {
    return std::find(d.nodes.begin(), d.nodes.end(), n) != d.nodes.end();
  };
  for (const Diagram::Edge& e : d.edges) {
    if (!known(e.from) || !known(e.to))
      throw std::runtime_error("diagram edge " + e.from + " -> " + e.to +
                               " references an unknown node");
  }

  std::size_t bound = path_bound == 0 ? d.edges.size() : path_bound;
  DiagramReport report;

  // All walks from each start node, grouped by end node, in deterministic
  // depth-first order. Revisits are allowed; the length bound terminates.
  for (const std::string& start : d.nodes) {
    std::map<std::string, std::vector<Walk>> by_end;
    std::vector<Walk> stack{{{}, {start}}};
    while (!stack.empty()) {
      Walk w = std::move(stack.back());
      stack.pop_back();
      by_end[w.nodes.back()].push_back(w);
      if (w.edges.size() == bound) {
        if (std::any_of(d.edges.begin(), d.edges.end(),
                        [&](const Diagram::Edge& e) {
                          return e.from == w.nodes.back();
                        }))
          report.truncated = true;
        continue;
      }
      // Push extensions in reverse so lower edge indices pop first.
      for (std::size_t ei = d.edges.size(); ei-- > 0;) {
        if (d.edges[ei].from != w.nodes.back()) continue;
        Walk next = w;
        next.edges.push_back(ei);
        next.nodes.push_back(d.edges[ei].to);
        stack.push_back(std::move(next));
      }
    }
    for (const std::string& end : d.nodes) {
      auto it = by_end.find(end);
      if (it == by_end.end()) continue;
      const std::vector<Walk>& walks = it->second;
      for (std::size_t i = 0; i < walks.size(); ++i) {
        for (std::size_t j = i + 1; j < walks.size(); ++j) {
          TermPtr ta = walk_term(d, walks[i]);
          TermPtr tb = walk_term(d, walks[j]);
          PathPairReport pr;
          pr.from = start;
          pr.to = end;
          pr.path_a = walks[i].nodes;
          pr.path_b = walks[j].nodes;
          pr.term_a = to_string(ta);
          pr.term_b = to_string(tb);
          CoherenceResult c = coherence_equal(ta, tb);
          if (c.yes) {
            pr.status = PathStatus::Coherent;
          } else {
            pr.note = c.reason;
            EqualityResult eq = equal(eval(ta), eval(tb));
            if (eq.equal) {
              pr.status = PathStatus::OracleEqual;
            } else {
              pr.status = PathStatus::NotEqual;
              pr.witness = eq.witness;
              report.commutes = false;
            }
          }
          report.pairs.push_back(std::move(pr));
        }
      }
    }
  }
  return report;
}

}  // namespace modcoh
