#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace kop {

// Truth assignment for primitive propositions, tabulated per point.
// Points are indexed run-major: index = run * (horizon + 1) + time.
// Totality (every table covers every point) is enforced by System.
class Interpretation {
public:
  Interpretation() = default;

  void declare(std::string name, std::vector<bool> table);

  bool declared(const std::string& name) const;
  // Throws input_error on undeclared names.
  const std::vector<bool>& table(const std::string& name) const;
  bool holds(const std::string& name, int point_index) const;

  const std::vector<std::string>& props() const { return names_; }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::vector<bool>> tables_;
};

} // namespace kop
