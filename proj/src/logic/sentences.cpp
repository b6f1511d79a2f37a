#include <map>
#include <stdexcept>

#include "pcsl/logic.hpp"
#include "pcsl_generated/sentences.hpp"

namespace pcsl::logic {

namespace {

const std::map<std::string, std::string>& table() {
  static const std::map<std::string, std::string> t = [] {
    std::map<std::string, std::string> m;
    for (const auto& e : embedded::kSentences) m.emplace(std::string(e.name), std::string(e.text));
    return m;
  }();
  return t;
}

}  // namespace

const std::vector<std::string>& sentence_names() {
  static const std::vector<std::string> names = {"AC1", "AC2", "AC3", "AC4", "EC1", "EC2", "EC3",
                                                 "EC4", "EC5", "PHI1", "PHI2", "PHI3", "PHI4", "PHI5"};
  return names;
}

const std::vector<std::string>& axiom_names() {
  static const std::vector<std::string> names(sentence_names().begin(), sentence_names().begin() + 9);
  return names;
}

const std::string& sentence_text(const std::string& name) {
  const auto& t = table();
  auto it = t.find(name);
  if (it == t.end()) throw std::out_of_range("unknown sentence '" + name + "'");
  return it->second;
}

Sentence axiom(const std::string& name) { return parse(sentence_text(name)); }

}  // namespace pcsl::logic
