#pragma once

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "indoamr/conllu.hpp"
#include "indoamr/error.hpp"
#include "indoamr/text.hpp"

namespace indoamr {

struct DepPair {
  Token parent;
  Token child;
  std::string deprel;
  bool is_root_pair = false;

  friend bool operator==(const DepPair&, const DepPair&) = default;
};

/// One (parent, child) pair per non-root token, ordered by child index.
inline std::vector<DepPair> extract_pairs(const AnnotatedSentence& s) {
  std::vector<DepPair> pairs;
  for (const auto& t : s.tokens) {
    if (t.head == 0) continue;
    const Token& parent = s.token(t.head);
    pairs.push_back({parent, t, t.deprel, parent.head == 0});
  }
  return pairs;
}

enum class FilterRule : std::size_t { determiner, preposition, subordinate_conjunction };

inline constexpr std::array<FilterRule, 3> kFilterRules = {FilterRule::determiner, FilterRule::preposition,
                                                          FilterRule::subordinate_conjunction};

inline std::string_view rule_key(FilterRule r) {
  switch (r) {
    case FilterRule::determiner: return "determiner";
    case FilterRule::preposition: return "preposition";
    case FilterRule::subordinate_conjunction: return "subordinate_conjunction";
  }
  return "";
}

inline std::string_view rule_short_name(FilterRule r) {
  switch (r) {
    case FilterRule::determiner: return "det";
    case FilterRule::preposition: return "prep";
    case FilterRule::subordinate_conjunction: return "sconj";
  }
  return "";
}

struct RuleSpec {
  bool enabled = false;
  std::set<std::string> upos;
  std::set<std::string> words;  // lowercase forms
};

/// Pair-filtering configuration. A token matches an enabled rule when its
/// UPOS is in the rule's tag set or its lowercase form is in the word list;
/// a pair is dropped when either of its tokens matches.
class FilterRuleSet {
 public:
  // All rules disabled, default tag sets and word lists loaded.
  FilterRuleSet() {
    spec(FilterRule::determiner) = {false, {"DET"}, {"yang"}};
    spec(FilterRule::preposition) = {false, {"ADP"}, {"di", "ke", "dari"}};
    spec(FilterRule::subordinate_conjunction) = {false, {"SCONJ"}, {"dengan"}};
  }

  static FilterRuleSet none() { return {}; }

  static FilterRuleSet all() {
    FilterRuleSet r;
    for (auto rule : kFilterRules) r.enable(rule);
    return r;
  }

  /// Comma-separated short names, e.g. "det,prep,sconj"; "none" or "" for
  /// the empty combination.
  static FilterRuleSet from_names(std::string_view names) {
    FilterRuleSet r;
    const std::string trimmed = trim(names);
    if (trimmed.empty() || trimmed == "none") return r;
    for (const auto& raw : split(trimmed, ',')) {
      const std::string name = trim(raw);
      bool found = false;
      for (auto rule : kFilterRules) {
        if (name == rule_short_name(rule) || name == rule_key(rule)) {
          r.enable(rule);
          found = true;
        }
      }
      if (!found) throw ConfigError("unknown filter rule '" + name + "' (expected det, prep, sconj)");
    }
    return r;
  }

  /// {"preposition": {"enabled": true, "upos": [...], "words": [...]}, ...}
  /// Rules or fields absent from the document keep their current values.
  static FilterRuleSet from_json(const nlohmann::json& doc, FilterRuleSet base = {}) {
    if (!doc.is_object()) throw ConfigError("rule configuration must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
      bool found = false;
      for (auto rule : kFilterRules) {
        if (key != rule_key(rule)) continue;
        found = true;
        auto& s = base.spec(rule);
        try {
          if (value.contains("enabled")) s.enabled = value.at("enabled").get<bool>();
          if (value.contains("upos")) s.upos = value.at("upos").get<std::set<std::string>>();
          if (value.contains("words")) {
            s.words.clear();
            for (const auto& w : value.at("words")) s.words.insert(to_lower(w.get<std::string>()));
          }
        } catch (const nlohmann::json::exception& e) {
          throw ConfigError("rule '" + key + "': " + e.what());
        }
      }
      if (!found) throw ConfigError("unknown filter rule '" + key + "'");
    }
    return base;
  }

  nlohmann::json to_json() const {
    nlohmann::json doc = nlohmann::json::object();
    for (auto rule : kFilterRules) {
      const auto& s = spec(rule);
      doc[std::string(rule_key(rule))] = {{"enabled", s.enabled}, {"upos", s.upos}, {"words", s.words}};
    }
    return doc;
  }

  void enable(FilterRule r, bool on = true) { spec(r).enabled = on; }
  bool enabled(FilterRule r) const { return spec(r).enabled; }

  RuleSpec& spec(FilterRule r) { return specs_[static_cast<std::size_t>(r)]; }
  const RuleSpec& spec(FilterRule r) const { return specs_[static_cast<std::size_t>(r)]; }

  bool matches(const Token& t) const {
    for (const auto& s : specs_) {
      if (!s.enabled) continue;
      if (s.upos.count(t.upos) || s.words.count(to_lower(t.form))) return true;
    }
    return false;
  }

  // "det,prep,sconj" style name of the enabled combination.
  std::string name() const {
    std::string out;
    for (auto rule : kFilterRules) {
      if (!enabled(rule)) continue;
      if (!out.empty()) out += ',';
      out += rule_short_name(rule);
    }
    return out.empty() ? "none" : out;
  }

 private:
  std::array<RuleSpec, 3> specs_;
};

inline std::vector<DepPair> apply_filter(const std::vector<DepPair>& pairs, const FilterRuleSet& rules) {
  std::vector<DepPair> kept;
  kept.reserve(pairs.size());
  for (const auto& p : pairs)
    if (!rules.matches(p.parent) && !rules.matches(p.child)) kept.push_back(p);
  return kept;
}

/// The eight enable/disable combinations in ablation-table order:
/// none, det, prep, sconj, det+prep, det+sconj, prep+sconj, all. Word lists
/// and tag sets are taken from `base`.
inline std::vector<FilterRuleSet> rule_combinations(const FilterRuleSet& base = {}) {
  static constexpr std::array<std::array<bool, 3>, 8> table = {{{false, false, false},
                                                               {true, false, false},
                                                               {false, true, false},
                                                               {false, false, true},
                                                               {true, true, false},
                                                               {true, false, true},
                                                               {false, true, true},
                                                               {true, true, true}}};
  std::vector<FilterRuleSet> out;
  for (const auto& row : table) {
    FilterRuleSet r = base;
    for (std::size_t i = 0; i < 3; ++i) r.enable(kFilterRules[i], row[i]);
    out.push_back(r);
  }
  return out;
}

}  // namespace indoamr
