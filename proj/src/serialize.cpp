#include "occam/serialize.hpp"

namespace occam {

nlohmann::json to_json(const DecisionList& c) {
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& rule : c.rules()) {
    nlohmann::json term = nlohmann::json::array();
    for (const Literal lit : rule.term.literals()) {
      term.push_back({static_cast<int>(lit.var), lit.positive ? 1 : 0});
    }
    rules.push_back({{"term", std::move(term)}, {"label", rule.label ? 1 : 0}});
  }
  return {{"n", c.n()}, {"rules", std::move(rules)}, {"default", c.default_label() ? 1 : 0}};
}

DecisionList decision_list_from_json(const nlohmann::json& j) {
  const auto n = j.at("n").get<unsigned>();
  std::vector<Rule> rules;
  for (const auto& r : j.at("rules")) {
    std::vector<Literal> literals;
    for (const auto& lit : r.at("term")) {
      const auto var = lit.at(0).get<int>();
      const auto polarity = lit.at(1).get<int>();
      if (var < 0 || var > 255 || (polarity != 0 && polarity != 1)) {
        throw std::invalid_argument("malformed literal " + lit.dump());
      }
      literals.push_back(Literal{static_cast<std::uint8_t>(var), polarity == 1});
    }
    rules.push_back(Rule{Term(std::move(literals)), r.at("label").get<int>() != 0});
  }
  return DecisionList(n, std::move(rules), j.at("default").get<int>() != 0);
}

nlohmann::json to_json(const LabeledSample& sample) {
  const DomainSpec spec(sample.n);
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [x, label] : sample.pairs) pairs.push_back({spec.format(x), label ? 1 : 0});
  return {{"n", sample.n}, {"pairs", std::move(pairs)}};
}

LabeledSample sample_from_json(const nlohmann::json& j) {
  LabeledSample sample{j.at("n").get<unsigned>(), {}};
  const DomainSpec spec(sample.n);
  for (const auto& p : j.at("pairs")) {
    sample.pairs.push_back({spec.parse(p.at(0).get<std::string>()), p.at(1).get<int>() != 0});
  }
  return sample;
}

}  // namespace occam
