#include "modcoh/residue.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace modcoh {

namespace {

[[noreturn]] void breach(const std::string& what) {
  throw std::logic_error("modular bijection invariant breach: " + what);
}

Nat checked_mul(Nat a, Nat b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  if (p > ~Nat{0}) throw std::overflow_error("modulus arithmetic overflow");
  return static_cast<Nat>(p);
}

Nat checked_lcm(Nat a, Nat b) {
  return checked_mul(a / std::gcd(a, b), b);
}

bool branch_order(const Branch& a, const Branch& b) {
  if (a.in.modulus != b.in.modulus) return a.in.modulus < b.in.modulus;
  return a.in.residue < b.in.residue;
}

// Refines every branch so its input modulus becomes exactly M (a common
// multiple of all input moduli). A branch (m, r) -> (m', s) splits into
// M/m branches (M, r + j*m) -> ((M/m)*m', s + j*m').
std::vector<Branch> refine_inputs_to(const ModularBijection& f, Nat M) {
  std::vector<Branch> out;
  for (const Branch& b : f.branches) {
    Nat k = M / b.in.modulus;
    for (Nat j = 0; j < k; ++j) {
      out.push_back({{M, b.in.residue + j * b.in.modulus},
                     {checked_mul(k, b.out.modulus),
                      b.out.residue + j * b.out.modulus}});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Branch& a, const Branch& b) {
              return a.in.residue < b.in.residue;
            });
  return out;
}

Nat input_lcm(const ModularBijection& f) {
  Nat m = 1;
  for (const Branch& b : f.branches) m = checked_lcm(m, b.in.modulus);
  return m;
}

}  // namespace

ModularBijection tau() {
  return {{{{2, 0}, {4, 0}}, {{4, 1}, {4, 2}}, {{4, 3}, {2, 1}}}};
}

ModularBijection sigma() {
  return {{{{2, 0}, {2, 1}}, {{2, 1}, {2, 0}}}};
}

ModularBijection identity() {
  return {{{{1, 0}, {1, 0}}}};
}

Nat apply(const ModularBijection& f, Nat n) {
  for (const Branch& b : f.branches) {
    if (n % b.in.modulus == b.in.residue) {
      Nat q = (n - b.in.residue) / b.in.modulus;
      return checked_mul(b.out.modulus, q) + b.out.residue;
    }
  }
  breach("no branch covers input " + std::to_string(n));
}

ModularBijection compose(const ModularBijection& f,
                         const ModularBijection& g) {
  // Refine each branch of g until its output class has a modulus that is a
  // multiple of every input modulus of f; the refined class then lies inside
  // exactly one input class of f and the two affine maps compose directly.
  Nat M = input_lcm(f);
  ModularBijection result;
  for (const Branch& gb : g.branches) {
    Nat k = M / std::gcd(M, gb.out.modulus);
    Nat refined_out_mod = checked_mul(k, gb.out.modulus);
    for (Nat j = 0; j < k; ++j) {
      CongruenceClass in{checked_mul(k, gb.in.modulus),
                         gb.in.residue + j * gb.in.modulus};
      Nat t = gb.out.residue + j * gb.out.modulus;  // refined output residue
      const Branch* fb = nullptr;
      for (const Branch& cand : f.branches) {
        if (t % cand.in.modulus == cand.in.residue) {
          fb = &cand;
          break;
        }
      }
      if (!fb) breach("composition found an uncovered class");
      Nat stretch = refined_out_mod / fb->in.modulus;
      Nat offset = (t - fb->in.residue) / fb->in.modulus;
      result.branches.push_back(
          {in,
           {checked_mul(fb->out.modulus, stretch),
            checked_mul(fb->out.modulus, offset) + fb->out.residue}});
    }
  }
  return canonicalize(std::move(result));
}

ModularBijection invert(const ModularBijection& f) {
  ModularBijection result;
  result.branches.reserve(f.branches.size());
  for (const Branch& b : f.branches) result.branches.push_back({b.out, b.in});
  return canonicalize(std::move(result));
}

ModularBijection interleave(const ModularBijection& f,
                            const ModularBijection& g) {
  ModularBijection result;
  result.branches.reserve(f.branches.size() + g.branches.size());
  for (const Branch& b : f.branches) {
    result.branches.push_back({{checked_mul(2, b.in.modulus), 2 * b.in.residue},
                               {checked_mul(2, b.out.modulus),
                                2 * b.out.residue}});
  }
  for (const Branch& b : g.branches) {
    result.branches.push_back(
        {{checked_mul(2, b.in.modulus), 2 * b.in.residue + 1},
         {checked_mul(2, b.out.modulus), 2 * b.out.residue + 1}});
  }
  return canonicalize(std::move(result));
}

EqualityResult equal(const ModularBijection& f, const ModularBijection& g) {
  Nat M = checked_lcm(input_lcm(f), input_lcm(g));
  std::vector<Branch> rf = refine_inputs_to(f, M);
  std::vector<Branch> rg = refine_inputs_to(g, M);
  if (rf.size() != M || rg.size() != M)
    breach("refinement does not partition the inputs");
  // On a common class (M, c) the two maps are M*q + c |-> mod*q + res; they
  // agree on the whole class iff both coefficients match. When only the
  // residues differ the least difference in the class is at q = 0 (n = c);
  // when the residues agree but the moduli differ it is at q = 1 (n = M+c).
  std::optional<Nat> residue_witness, modulus_witness;
  for (Nat c = 0; c < M; ++c) {
    const CongruenceClass& a = rf[c].out;
    const CongruenceClass& b = rg[c].out;
    if (a.residue != b.residue) {
      if (!residue_witness) residue_witness = c;
    } else if (a.modulus != b.modulus) {
      if (!modulus_witness) modulus_witness = M + c;
    }
  }
  if (residue_witness) return {false, residue_witness};
  if (modulus_witness) return {false, modulus_witness};
  return {true, std::nullopt};
}

ModularBijection canonicalize(ModularBijection f) {
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < f.branches.size() && !merged; ++i) {
      const Branch& b = f.branches[i];
      if (b.in.modulus % 2 != 0 || b.out.modulus % 2 != 0) continue;
      Nat m = b.in.modulus / 2;
      Nat m2 = b.out.modulus / 2;
      if (b.in.residue >= m || b.out.residue >= m2) continue;
      Branch sibling{{b.in.modulus, b.in.residue + m},
                     {b.out.modulus, b.out.residue + m2}};
      for (std::size_t j = 0; j < f.branches.size(); ++j) {
        if (j != i && f.branches[j] == sibling) {
          f.branches[i] = {{m, b.in.residue}, {m2, b.out.residue}};
          f.branches.erase(f.branches.begin() + static_cast<long>(j));
          merged = true;
          break;
        }
      }
    }
  }
  std::sort(f.branches.begin(), f.branches.end(), branch_order);
  return f;
}

namespace {

std::string offset_suffix(Nat plus, Nat minus) {
  if (plus > 0) return " + " + std::to_string(plus);
  if (minus > 0) return " - " + std::to_string(minus);
  return "";
}

// Renders one branch as a closed form in n, used by pretty().
std::string branch_formula(const Branch& b) {
  Nat m = b.in.modulus, r = b.in.residue;
  Nat m2 = b.out.modulus, s = b.out.residue;
  if (m == m2) {
    // n - r + s
    return s >= r ? "n" + offset_suffix(s - r, 0)
                  : "n" + offset_suffix(0, r - s);
  }
  if (m2 % m == 0) {
    Nat k = m2 / m;  // k*n - k*r + s
    std::string head = std::to_string(k) + "n";
    Nat kr = checked_mul(k, r);
    return s >= kr ? head + offset_suffix(s - kr, 0)
                   : head + offset_suffix(0, kr - s);
  }
  if (m % m2 == 0) {
    Nat k = m / m2;  // (n - r + k*s) / k
    Nat ks = checked_mul(k, s);
    std::string inner = ks >= r ? "n" + offset_suffix(ks - r, 0)
                                : "n" + offset_suffix(0, r - ks);
    if (inner == "n") return "n/" + std::to_string(k);
    return "(" + inner + ")/" + std::to_string(k);
  }
  return std::to_string(m2) + "(n - " + std::to_string(r) + ")/" +
         std::to_string(m) + " + " + std::to_string(s);
}

}  // namespace

std::string pretty(const ModularBijection& f) {
  std::ostringstream os;
  for (const Branch& b : f.branches) {
    os << "n ≡ " << b.in.residue << " (mod " << b.in.modulus
       << ") ⇒ f(n) = " << branch_formula(b) << "\n";
  }
  return os.str();
}

bool is_partition(const std::vector<CongruenceClass>& classes) {
  if (classes.empty()) return false;
  Nat M = 1;
  for (const CongruenceClass& c : classes) {
    if (c.modulus == 0 || c.residue >= c.modulus) return false;
    M = checked_lcm(M, c.modulus);
  }
  // Densities must sum to one...
  Nat covered = 0;
  for (const CongruenceClass& c : classes) covered += M / c.modulus;
  if (covered != M) return false;
  // ...and classes must be pairwise disjoint: (m1,r1) meets (m2,r2) iff
  // r1 == r2 (mod gcd(m1,m2)).
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      Nat g = std::gcd(classes[i].modulus, classes[j].modulus);
      if (classes[i].residue % g == classes[j].residue % g) return false;
    }
  }
  return true;
}

void validate(const ModularBijection& f) {
  std::vector<CongruenceClass> ins, outs;
  ins.reserve(f.branches.size());
  outs.reserve(f.branches.size());
  for (const Branch& b : f.branches) {
    ins.push_back(b.in);
    outs.push_back(b.out);
  }
  if (!is_partition(ins)) breach("input classes do not partition the naturals");
  if (!is_partition(outs))
    breach("output classes do not partition the naturals");
}

}  // namespace modcoh
