#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sparsemaps/bigint.hpp"
#include "sparsemaps/enumerate.hpp"

namespace sparsemaps {

enum class Provenance { ClosedForm, Oracle, MonteCarlo };
std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& text);

struct DefectKey {
  std::uint64_t faces;
  std::uint64_t genus;
  std::uint64_t defect;
  auto operator<=>(const DefectKey&) const = default;
};

// Exact count, or a Monte Carlo estimate of log #T_d with the standard error
// of that log (approximately the relative standard error of the count).
struct DefectEntry {
  Provenance provenance;
  std::optional<BigInt> exact;
  double log_estimate = 0.0;
  double log_stderr = 0.0;

  bool is_exact() const { return exact.has_value(); }
  double log() const;
  EnumValue value() const;
};

class DefectTable {
 public:
  // Keeps the entry with the stronger provenance (ClosedForm over Oracle
  // over MonteCarlo).
  void set(DefectKey key, DefectEntry entry);
  const DefectEntry* find(std::uint64_t f, std::uint64_t g, std::uint64_t d) const;
  const std::map<DefectKey, DefectEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Adds the trivalent closed forms for (f, g) when one exists.
  void add_closed_form(std::uint64_t f, std::uint64_t g);

  // Defects d <= 2s-5 whose weight Phi_n(3s-d-6) is nonzero but which have no
  // entry (or no exact entry when require_exact is set).
  std::vector<std::uint64_t> missing(std::uint64_t n, std::uint64_t f, std::uint64_t g, bool require_exact) const;

  std::string to_json() const;
  static DefectTable from_json(const std::string& text);
  // A directory path resolves to <dir>/defects.json.
  void save(const std::string& path) const;
  static DefectTable load(const std::string& path);

 private:
  std::map<DefectKey, DefectEntry> entries_;
};

// Defects with nonzero weight: d in [0, 2s-5] with 1 <= 3s-d-6 <= n.
std::vector<std::uint64_t> relevant_defects(std::uint64_t n, std::uint64_t s);

}  // namespace sparsemaps
