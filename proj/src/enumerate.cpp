#include <algorithm>
#include <functional>
#include <limits>

#include "occam/domain.hpp"

namespace occam {

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max()
                                                           : a + b;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

void validate(const ConceptClassDescriptor& desc) {
  DomainSpec spec(desc.n);
  if (desc.s_max == 0) throw std::invalid_argument("size budget must be positive");
  if (desc.width_max == 0) throw std::invalid_argument("term width bound must be positive");
}

}  // namespace

std::vector<Term> enumerate_terms(unsigned n, unsigned width_max) {
  std::vector<Term> terms;
  const unsigned top = std::min(width_max, n);
  std::vector<std::uint8_t> vars;
  // Variable subsets via recursion, then every polarity pattern.
  std::function<void(unsigned, unsigned)> choose = [&](unsigned start, unsigned remaining) {
    if (remaining == 0) {
      const std::uint32_t patterns = std::uint32_t{1} << vars.size();
      for (std::uint32_t p = 0; p < patterns; ++p) {
        std::vector<Literal> literals;
        for (std::size_t i = 0; i < vars.size(); ++i) {
          literals.push_back(Literal{vars[i], ((p >> (vars.size() - 1 - i)) & 1U) == 0});
        }
        terms.emplace_back(std::move(literals));
      }
      return;
    }
    for (unsigned v = start; v + remaining <= n; ++v) {
      vars.push_back(static_cast<std::uint8_t>(v));
      choose(v + 1, remaining - 1);
      vars.pop_back();
    }
  };
  for (unsigned w = 1; w <= top; ++w) choose(0, w);
  std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    if (a.width() != b.width()) return a.width() < b.width();
    return a < b;
  });
  return terms;
}

std::uint64_t count_concepts(const ConceptClassDescriptor& desc) {
  validate(desc);
  const std::uint64_t budget = desc.s_max - 1;
  // rules_by_cost[c] = number of (term, label) choices costing c.
  std::vector<std::uint64_t> rules_by_cost(desc.width_max + 2, 0);
  std::uint64_t binom = 1;
  for (unsigned w = 1; w <= std::min(desc.width_max, desc.n); ++w) {
    binom = binom * (desc.n - w + 1) / w;
    rules_by_cost[w + 1] = saturating_mul(saturating_mul(binom, std::uint64_t{1} << w), 2);
  }
  // Budgets beyond what any list over these terms can use behave identically,
  // but s_max may be huge; cap the table at a length where counts saturate.
  const std::uint64_t table_len = std::min<std::uint64_t>(budget, 4096) + 1;
  std::vector<std::uint64_t> lists(table_len, 1);
  for (std::uint64_t b = 1; b < table_len; ++b) {
    std::uint64_t total = 1;
    for (std::uint64_t c = 2; c < rules_by_cost.size() && c <= b; ++c) {
      total = saturating_add(total, saturating_mul(rules_by_cost[c], lists[b - c]));
    }
    lists[b] = total;
  }
  const std::uint64_t per_default =
      budget < table_len ? lists[budget] : std::numeric_limits<std::uint64_t>::max();
  return saturating_mul(per_default, 2);
}

std::vector<DecisionList> enumerate_concepts(const ConceptClassDescriptor& desc,
                                             std::uint64_t cap) {
  const std::uint64_t total = count_concepts(desc);
  if (total > cap) {
    throw CapExceeded("class C_{n=" + std::to_string(desc.n) + ",s=" + std::to_string(desc.s_max) +
                      ",w=" + std::to_string(desc.width_max) + "} has " + std::to_string(total) +
                      " lists, above the enumeration cap " + std::to_string(cap));
  }
  const std::vector<Term> terms = enumerate_terms(desc.n, desc.width_max);
  std::vector<DecisionList> out;
  out.reserve(total);
  std::vector<Rule> prefix;
  for (bool default_label : {false, true}) {
    std::function<void(std::uint64_t)> extend = [&](std::uint64_t budget) {
      out.emplace_back(desc.n, prefix, default_label);
      for (const Term& term : terms) {
        const std::uint64_t cost = term.width() + 1;
        if (cost > budget) break;  // terms are ordered by width
        for (bool label : {false, true}) {
          prefix.push_back(Rule{term, label});
          extend(budget - cost);
          prefix.pop_back();
        }
      }
    };
    extend(desc.s_max - 1);
  }
  return out;
}

}  // namespace occam
