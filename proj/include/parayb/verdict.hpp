#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace parayb {

// A named instance of a relation that failed. Field values are carrier
// indices; parameters are reported as the carrier element they stand for.
struct Counterexample {
  std::string relation;
  std::vector<std::pair<std::string, std::uint64_t>> at;
  std::string detail;

  std::optional<std::uint64_t> get(const std::string& key) const {
    for (const auto& [k, v] : at)
      if (k == key) return v;
    return std::nullopt;
  }
};

struct Verdict {
  std::string check;
  bool ok = true;
  std::optional<Counterexample> counterexample;

  explicit operator bool() const { return ok; }

  static Verdict pass(std::string name) { return {std::move(name), true, std::nullopt}; }
  static Verdict fail(std::string name, Counterexample c) {
    return {std::move(name), false, std::move(c)};
  }
};

// Conjunction of several verdicts; keeps the first failure.
inline Verdict all_of(std::string name, const std::vector<Verdict>& parts) {
  for (const auto& v : parts)
    if (!v.ok) return {std::move(name), false, v.counterexample};
  return Verdict::pass(std::move(name));
}

}  // namespace parayb
