#include "sparsemaps/defect_table.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace sparsemaps {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::ClosedForm:
      return "ClosedForm";
    case Provenance::Oracle:
      return "Oracle";
    case Provenance::MonteCarlo:
      return "MonteCarlo";
  }
  return "?";
}

Provenance provenance_from_string(const std::string& text) {
  if (text == "ClosedForm") return Provenance::ClosedForm;
  if (text == "Oracle") return Provenance::Oracle;
  if (text == "MonteCarlo") return Provenance::MonteCarlo;
  throw EnumError(EnumError::Kind::ParseError, "unknown provenance '" + text + "'");
}

double DefectEntry::log() const { return exact ? log_big(*exact) : log_estimate; }

EnumValue DefectEntry::value() const {
  return exact ? EnumValue::exact(*exact) : EnumValue::logspace(log_estimate, log_stderr);
}

std::vector<std::uint64_t> relevant_defects(std::uint64_t n, std::uint64_t s) {
  std::vector<std::uint64_t> out;
  if (s < 3) return out;
  for (std::uint64_t d = 0; d <= 2 * s - 5; ++d) {
    std::uint64_t k = 3 * s - d - 6;
    if (k >= 1 && k <= n) out.push_back(d);
  }
  return out;
}

void DefectTable::set(DefectKey key, DefectEntry entry) {
  auto it = entries_.find(key);
  if (it != entries_.end() && static_cast<int>(it->second.provenance) < static_cast<int>(entry.provenance)) return;
  entries_[key] = std::move(entry);
}

const DefectEntry* DefectTable::find(std::uint64_t f, std::uint64_t g, std::uint64_t d) const {
  auto it = entries_.find(DefectKey{f, g, d});
  return it == entries_.end() ? nullptr : &it->second;
}

void DefectTable::add_closed_form(std::uint64_t f, std::uint64_t g) {
  if (g == 0 && f >= 3)
    set({f, g, 0}, DefectEntry{Provenance::ClosedForm, t0_planar_count(f).value(), 0.0, 0.0});
  else if (f == 1 && g >= 1)
    set({f, g, 0}, DefectEntry{Provenance::ClosedForm, t0_unicellular_count(g).value(), 0.0, 0.0});
}

std::vector<std::uint64_t> DefectTable::missing(std::uint64_t n, std::uint64_t f, std::uint64_t g,
                                                bool require_exact) const {
  std::vector<std::uint64_t> out;
  for (auto d : relevant_defects(n, f + 2 * g)) {
    const DefectEntry* e = find(f, g, d);
    if (!e || (require_exact && !e->is_exact())) out.push_back(d);
  }
  return out;
}

std::string DefectTable::to_json() const {
  nlohmann::json doc;
  doc["entries"] = nlohmann::json::array();
  for (const auto& [key, e] : entries_) {
    nlohmann::json j;
    j["f"] = key.faces;
    j["g"] = key.genus;
    j["d"] = key.defect;
    if (e.exact) {
      j["value"] = e.exact->str();
    } else {
      j["log_estimate"] = e.log_estimate;
      j["log_stderr"] = e.log_stderr;
    }
    j["provenance"] = to_string(e.provenance);
    doc["entries"].push_back(j);
  }
  return doc.dump(1);
}

DefectTable DefectTable::from_json(const std::string& text) {
  DefectTable table;
  try {
    auto doc = nlohmann::json::parse(text);
    for (const auto& j : doc.at("entries")) {
      DefectKey key{j.at("f").get<std::uint64_t>(), j.at("g").get<std::uint64_t>(), j.at("d").get<std::uint64_t>()};
      DefectEntry e{provenance_from_string(j.at("provenance").get<std::string>()), std::nullopt, 0.0, 0.0};
      if (j.contains("value")) {
        e.exact = BigInt(j.at("value").get<std::string>());
      } else {
        e.log_estimate = j.at("log_estimate").get<double>();
        e.log_stderr = j.at("log_stderr").get<double>();
      }
      if (e.provenance == Provenance::ClosedForm && key.defect != 0)
        throw EnumError(EnumError::Kind::ParseError, "closed-form entries exist only at d = 0");
      if (e.provenance == Provenance::MonteCarlo && e.exact)
        throw EnumError(EnumError::Kind::ParseError, "Monte Carlo entries carry estimates, not exact values");
      table.entries_[key] = std::move(e);
    }
  } catch (const nlohmann::json::exception& ex) {
    throw EnumError(EnumError::Kind::ParseError, std::string("defect table: ") + ex.what());
  } catch (const std::runtime_error& ex) {
    if (dynamic_cast<const EnumError*>(&ex)) throw;
    throw EnumError(EnumError::Kind::ParseError, std::string("defect table: ") + ex.what());
  }
  return table;
}

namespace {

std::filesystem::path table_file(const std::string& path) {
  std::filesystem::path p(path);
  if (std::filesystem::is_directory(p) || (!p.has_extension() && !std::filesystem::exists(p))) return p / "defects.json";
  return p;
}

}  // namespace

void DefectTable::save(const std::string& path) const {
  auto file = table_file(path);
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file);
  if (!out) throw EnumError(EnumError::Kind::ParseError, "cannot write " + file.string());
  out << to_json() << "\n";
}

DefectTable DefectTable::load(const std::string& path) {
  auto file = table_file(path);
  std::ifstream in(file);
  if (!in) throw EnumError(EnumError::Kind::ParseError, "cannot read " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

}  // namespace sparsemaps
