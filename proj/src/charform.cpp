#include "semeq/charform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "semeq/errors.hpp"

namespace semeq {

namespace {

BigInt binomial(const BigInt& n, int k) {
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - (i - 1)) / i;
  return r;
}

// Multisets as non-decreasing vectors, enumerated in lexicographic order.
template <typename F>
void for_each_multiset(int len, int d, std::vector<int>& cur, F&& f) {
  if ((int)cur.size() == len) {
    f(cur);
    return;
  }
  int lo = cur.empty() ? 0 : cur.back();
  for (int v = lo; v < d; ++v) {
    cur.push_back(v);
    for_each_multiset(len, d, cur, f);
    cur.pop_back();
  }
}

struct Collision {
  std::vector<int> lhs, rhs;
};

// Returns a collision of e-th power sums among equal-length multisets with
// entries < d and length < ell, or nullopt if the power-sum map is injective.
// powtab[v] must hold v^e. Each processed multiset charges one budget unit.
std::optional<Collision> find_collision(int ell, int d,
                                        const std::vector<BigInt>& powtab,
                                        std::uint64_t& spent,
                                        std::uint64_t max_spend) {
  for (int len = 1; len < ell; ++len) {
    std::map<BigInt, std::vector<int>> seen;
    std::optional<Collision> hit;
    std::vector<int> cur;
    for_each_multiset(len, d, cur, [&](const std::vector<int>& ms) {
      if (hit) return;
      if (++spent > max_spend) throw BudgetError("nat_exponent: comparison budget exhausted");
      BigInt sum = 0;
      for (int v : ms) sum += powtab[v];
      auto [it, fresh] = seen.emplace(std::move(sum), ms);
      if (!fresh) hit = Collision{it->second, ms};
    });
    if (hit) return hit;
  }
  return std::nullopt;
}

// Independent re-verification: sorts all (power sum, multiset) pairs per
// length and scans neighbours instead of hashing into a map.
bool injective_by_sorting(int ell, int d, const std::vector<BigInt>& powtab) {
  for (int len = 1; len < ell; ++len) {
    std::vector<std::pair<BigInt, std::vector<int>>> sums;
    std::vector<int> cur;
    for_each_multiset(len, d, cur,
                      [&](const std::vector<int>& ms) {
                        BigInt sum = 0;
                        for (int v : ms) sum += powtab[v];
                        sums.emplace_back(std::move(sum), ms);
                      });
    std::sort(sums.begin(), sums.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < sums.size(); ++i) {
      if (sums[i].first == sums[i - 1].first) return false;
    }
  }
  return true;
}

std::vector<BigInt> to_bigints(const std::vector<int>& ms) {
  return std::vector<BigInt>(ms.begin(), ms.end());
}

}  // namespace

ExponentCertificate nat_exponent(const BigInt& ell, const BigInt& d,
                                 const ExponentBudget& budget) {
  if (ell < 2 || d < 1) throw Error("nat_exponent: need ell >= 2 and d >= 1");
  if (ell > budget.max_comparisons || d > budget.max_comparisons) {
    throw BudgetError("nat_exponent: bounds exceed the comparison budget");
  }
  int el = (int)ell, dd = (int)d;
  BigInt total = 0;
  for (int len = 1; len < el; ++len) total += binomial(BigInt(dd) + len - 1, len);
  if (total > budget.max_comparisons) {
    throw BudgetError("nat_exponent: " + total.str() +
                      " multisets exceed the comparison budget");
  }

  std::vector<BigInt> powtab(dd);
  for (int v = 0; v < dd; ++v) powtab[v] = v;
  std::uint64_t spent = 0;
  std::optional<Collision> last_fail;
  for (BigInt e = 1; e <= budget.max_e; ++e) {
    auto hit = find_collision(el, dd, powtab, spent, budget.max_comparisons);
    if (!hit) {
      if (!injective_by_sorting(el, dd, powtab)) {
        throw Error("nat_exponent: the two verification passes disagree");
      }
      ExponentCertificate cert;
      cert.e = e;
      cert.method = "exhaustive";
      if (last_fail) {
        cert.weaker_lhs = to_bigints(last_fail->lhs);
        cert.weaker_rhs = to_bigints(last_fail->rhs);
      }
      return cert;
    }
    last_fail = hit;
    for (int v = 0; v < dd; ++v) powtab[v] *= v;
  }
  throw BudgetError("nat_exponent: no exponent up to " + budget.max_e.str() +
                    " passed the injectivity check");
}

BigInt dominance_exponent(const BigInt& ell, const BigInt& d) {
  if (ell < 2 || d < 1) throw Error("dominance_exponent: need ell >= 2 and d >= 1");
  // Entries below 2 make power sums count occurrences of 1, and singleton
  // multisets are always separated, so e = 1 suffices.
  if (d <= 2 || ell == 2) return 1;
  BigInt t = 1;
  while ((BigInt(1) << (unsigned)t) <= ell - 1) ++t;  // 2^t > ell - 1
  BigInt bound = (d - 2) * t;
  if (bound > (BigInt(1) << 62)) {
    throw BudgetError("dominance_exponent: the certified exponent for d with " +
                      std::to_string(approx_digits(d)) +
                      " digits is beyond the representable budget");
  }
  // Pin down the minimal inequality-satisfying e when the exact powers stay
  // manageable; otherwise the binomial bound itself is the certificate.
  if (bound * msb(d) > (BigInt(1) << 24)) return bound;
  double est = std::log((double)(ell - 1)) /
               std::log1p(1.0 / (double)(d - 2));
  BigInt lo = (BigInt)(long long)est - 4;
  if (lo < 1) lo = 1;
  BigInt lhs = ipow(d - 1, lo), rhs = (ell - 1) * ipow(d - 2, lo);
  for (BigInt e = lo; e <= bound; ++e) {
    if (lhs > rhs) return e;
    lhs *= d - 1;
    rhs *= d - 2;
  }
  return bound;
}

NatSchedule nat_schedule(const BigInt& c1, const BigInt& c2, int k, int m,
                         const ExponentBudget& budget) {
  if (c1 < 1 || c2 < 1 || k < 0 || m < 0) {
    throw Error("nat_schedule: c1, c2 must be positive and k, m non-negative");
  }
  NatSchedule s;
  s.c1 = c1;
  s.c2 = c2;
  s.k = k;
  s.ell = c2 > 4 ? c2 : BigInt(4);
  for (int i = 0; i <= m; ++i) {
    if (i > 0) {
      // d_i = c2 * d_{i-1}^e_{i-1} must stay representable before it is
      // computed; the exponent alone can dwarf any memory budget.
      BigInt bits = s.e[i - 1] * (BigInt)(msb(s.d[i - 1]) + 1) + msb(c2) + 1;
      if (bits > (BigInt(1) << 23)) {
        throw BudgetError("nat_schedule: level " + std::to_string(i) +
                          "'s value bound would need about " + bits.str() +
                          " bits, beyond the representable budget");
      }
    }
    BigInt di = i == 0 ? ipow(c1, k + 1) : c2 * ipow(s.d[i - 1], s.e[i - 1]);
    s.d.push_back(di);
    try {
      ExponentCertificate cert = nat_exponent(s.ell, di, budget);
      s.e.push_back(cert.e);
      s.certificate.push_back(cert.method);
    } catch (const BudgetError&) {
      try {
        s.e.push_back(dominance_exponent(s.ell, di));
        s.certificate.push_back("dominance");
      } catch (const BudgetError& inner) {
        throw BudgetError("nat_schedule: level " + std::to_string(i) +
                          " has no exponent within budget (" + inner.what() + ")");
      }
    }
  }
  return s;
}

std::vector<Formula> literal_enumeration(const Vocabulary& vocab, int nvars) {
  std::vector<Formula> out;
  if (nvars == 0) return out;  // arities are >= 1, no tuples exist
  for (std::size_t rel = 0; rel < vocab.rels.size(); ++rel) {
    int ar = vocab.rels[rel].second;
    for (bool negated : {false, true}) {
      std::vector<int> tuple(ar, 0);
      while (true) {
        std::vector<std::string> args;
        for (int t : tuple) args.push_back("x" + std::to_string(t + 1));
        out.push_back(negated ? f_neg(vocab.rels[rel].first, args)
                              : f_pos(vocab.rels[rel].first, args));
        int pos = ar - 1;
        while (pos >= 0 && tuple[pos] == nvars - 1) tuple[pos--] = 0;
        if (pos < 0) break;
        ++tuple[pos];
      }
    }
  }
  return out;
}

namespace {

std::string var_name(int i) { return "x" + std::to_string(i); }

Formula theta_level(const NatSchedule& s, const Vocabulary& vocab, int nv, int j) {
  if (j == 0) {
    std::vector<Formula> disjuncts;
    BigInt mult = 1;
    for (const Formula& lit : literal_enumeration(vocab, nv)) {
      disjuncts.push_back(f_rep_or(lit, mult));
      mult *= s.c1;
    }
    return f_or(std::move(disjuncts));
  }
  std::string fresh = var_name(nv + 1);
  std::vector<Formula> guarded;
  for (int i = 1; i <= nv; ++i) guarded.push_back(f_neq(fresh, var_name(i)));
  guarded.push_back(theta_level(s, vocab, nv + 1, j - 1));
  return f_exists(fresh, f_rep_and(f_and(std::move(guarded)), s.e[j - 1]));
}

void check_schedule(const NatSchedule& s, const Vocabulary& vocab, int n, int m) {
  if (n < 0 || m < 0) throw Error("characteristic formulas need n, m >= 0");
  if ((int)s.e.size() <= m) {
    throw Error("the schedule stops at level " +
                std::to_string((int)s.e.size() - 1) + ", level " +
                std::to_string(m) + " was requested");
  }
  int lits = (int)literal_enumeration(vocab, n + m).size();
  if (s.k < lits) {
    throw Error("the schedule was built for " + std::to_string(s.k) +
                " literals but the innermost level enumerates " +
                std::to_string(lits));
  }
}

}  // namespace

Formula nat_theta(const NatSchedule& s, const Vocabulary& vocab, int n, int m) {
  check_schedule(s, vocab, n, m);
  return theta_level(s, vocab, n, m);
}

Formula nat_chi(const NatSchedule& s, const Vocabulary& vocab, int n, int m) {
  check_schedule(s, vocab, n, m);
  if (m == 0) return theta_level(s, vocab, n, 0);
  std::string fresh = var_name(n + 1);
  Formula count = f_rep_and(f_exists(fresh, f_eq(fresh, fresh)), s.e[m]);
  Formula theta = f_rep_and(theta_level(s, vocab, n, m), s.e[m]);
  // Evaluates to |A|^e + |A|^e + theta^e: a power sum of a length-3 multiset
  // with entries below d[m], so equality across interpretations forces the
  // triples to agree up to permutation, and the duplicated entry untangles
  // any non-identity permutation.
  return f_or({count, count, theta});
}

namespace {

// Shared skeleton of the one-sided characteristic formulas. keep(v) decides
// which literals the level-0 conjunction includes.
template <typename Keep>
Formula one_sided_chi(const Interpretation& pi, const std::vector<int>& abar,
                      int m, Keep&& keep) {
  for (int a : abar) {
    if (a < 0 || a >= pi.size()) throw Error("tuple element out of range");
  }
  std::map<std::pair<std::vector<int>, int>, Formula> memo;
  auto rec = [&](auto&& self, const std::vector<int>& tup, int j) -> Formula {
    auto key = std::make_pair(tup, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    int n = (int)tup.size();
    Formula out;
    if (j == 0) {
      std::vector<Formula> conj;
      for (int i = 0; i < n; ++i) {
        for (int l = i; l < n; ++l) {
          conj.push_back(tup[i] == tup[l] ? f_eq(var_name(i + 1), var_name(l + 1))
                                          : f_neq(var_name(i + 1), var_name(l + 1)));
        }
      }
      const Vocabulary& vocab = pi.vocab();
      for (std::size_t rel = 0; rel < vocab.rels.size(); ++rel) {
        int ar = vocab.rels[rel].second;
        for (bool negated : {false, true}) {
          std::vector<int> vars(ar, 0);
          while (n > 0) {
            std::vector<std::string> args;
            std::vector<int> elems;
            for (int v : vars) {
              args.push_back(var_name(v + 1));
              elems.push_back(tup[v]);
            }
            if (keep(pi.literal((int)rel, negated, elems))) {
              conj.push_back(negated ? f_neg(vocab.rels[rel].first, args)
                                     : f_pos(vocab.rels[rel].first, args));
            }
            int pos = ar - 1;
            while (pos >= 0 && vars[pos] == n - 1) vars[pos--] = 0;
            if (pos < 0) break;
            ++vars[pos];
          }
        }
      }
      out = f_and(std::move(conj));
    } else {
      std::string fresh = var_name(n + 1);
      std::vector<Formula> parts, branches;
      for (int a = 0; a < pi.size(); ++a) {
        std::vector<int> ext = tup;
        ext.push_back(a);
        Formula sub = self(self, ext, j - 1);
        parts.push_back(f_exists(fresh, sub));
        branches.push_back(sub);
      }
      parts.push_back(f_forall(fresh, f_or(std::move(branches))));
      out = f_and(std::move(parts));
    }
    memo.emplace(std::move(key), out);
    return out;
  };
  return rec(rec, abar, m);
}

}  // namespace

Formula boolean_one_sided_chi(const Interpretation& pi,
                              const std::vector<int>& abar, int m) {
  if (pi.semiring()->family != Family::Boolean) {
    throw FamilyMismatch("boolean_one_sided_chi: interpretation is not Boolean");
  }
  Value one = sr_one(pi.semiring());
  return one_sided_chi(pi, abar, m, [&](const Value& v) { return v == one; });
}

Formula lattice_chi_s(const Interpretation& pi, const std::vector<int>& abar,
                      int m, const Value& s) {
  make_h_s(pi.semiring(), s);  // validates the lattice and s
  const SemiringPtr& S = pi.semiring();
  return one_sided_chi(pi, abar, m,
                       [&](const Value& v) { return sr_add(S, v, s) == v; });
}

Formula lattice_chi_P(const Interpretation& pi, const std::vector<int>& abar,
                      int m, const PrimeIdeal& P) {
  make_h_P(pi.semiring(), P);  // validates the lattice and P
  return one_sided_chi(pi, abar, m, [&](const Value& v) {
    return std::find(P.members.begin(), P.members.end(), v) == P.members.end();
  });
}

}  // namespace semeq
