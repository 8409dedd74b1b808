#pragma once

#include <initializer_list>
#include <set>
#include <string>
#include <string_view>

namespace ibac {

enum class Scheme { bitvec, expsum, primeprod };

const char* to_string(Scheme scheme);
Scheme parse_scheme(std::string_view text);

/// A set of label names: one level plus compartments/projects for objects,
/// or the downward-closed form for subjects. Ordered by name.
class LabelSet {
 public:
  using const_iterator = std::set<std::string>::const_iterator;

  LabelSet() = default;
  LabelSet(std::initializer_list<std::string> names) : names_(names) {}
  explicit LabelSet(std::set<std::string> names) : names_(std::move(names)) {}

  /// Parses a comma-separated list; whitespace around names is ignored.
  static LabelSet parse(std::string_view text);

  bool contains(std::string_view name) const { return names_.find(std::string(name)) != names_.end(); }
  bool insert(std::string name) { return names_.insert(std::move(name)).second; }
  bool erase(const std::string& name) { return names_.erase(name) > 0; }
  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }

  bool includes(const LabelSet& other) const;
  LabelSet united(const LabelSet& other) const;

  const_iterator begin() const { return names_.begin(); }
  const_iterator end() const { return names_.end(); }
  const std::set<std::string>& names() const { return names_; }

  /// Comma-joined, name order.
  std::string str() const;

  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  std::set<std::string> names_;
};

}  // namespace ibac
