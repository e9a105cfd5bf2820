#include "vkinv/genus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vk {

int genus_schedule(int n) {
  if (n <= 2) return std::max(n, 0);
  int g = 2;
  while (3 * g - 3 < n) ++g;
  return g;
}

namespace {
int distinct_count(const std::vector<int>& arrows) {
  return static_cast<int>(std::set<int>(arrows.begin(), arrows.end()).size());
}
}  // namespace

int genus_bound_from_arrow(const Polynomial& p) {
  int n = 0;
  for (const auto& [m, c] : p.terms()) n = std::max(n, distinct_count(m.arrow));
  return genus_schedule(n);
}

int genus_bound_from_akh(const Polynomial& p) { return genus_bound_from_arrow(p); }

CoefficientRegistry CoefficientRegistry::parse(std::istream& in) {
  CoefficientRegistry r;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, '\t');) cols.push_back(c);
    if (cols.size() < 3) throw std::runtime_error("registry line " + std::to_string(lineno) + ": expected 3 columns");
    RegistryEntry e{cols[0], cols[1], 0, cols.size() > 3 ? cols[3] : ""};
    try {
      e.genus = std::stoi(cols[2]);
    } catch (const std::exception&) {
      throw std::runtime_error("registry line " + std::to_string(lineno) + ": bad genus");
    }
    r.add(std::move(e));
  }
  return r;
}

CoefficientRegistry CoefficientRegistry::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read registry " + path);
  return parse(in);
}

void CoefficientRegistry::add(RegistryEntry e) {
  if (e.genus < 0) throw std::invalid_argument("negative genus for " + e.alias);
  if (ids_.count(e.id)) throw std::invalid_argument("duplicate registry id " + e.id);
  if (!e.alias.empty() && aliases_.count(e.alias)) throw std::invalid_argument("duplicate alias " + e.alias);
  ids_.emplace(e.id, entries_.size());
  if (!e.alias.empty()) aliases_.emplace(e.alias, entries_.size());
  entries_.push_back(std::move(e));
}

const RegistryEntry* CoefficientRegistry::by_id(std::string_view id) const {
  auto it = ids_.find(id);
  return it == ids_.end() ? nullptr : &entries_[it->second];
}

const RegistryEntry* CoefficientRegistry::by_alias(std::string_view alias) const {
  auto it = aliases_.find(alias);
  return it == aliases_.end() ? nullptr : &entries_[it->second];
}

AliasResolver CoefficientRegistry::resolver() const {
  return [this](const std::string& alias) {
    const RegistryEntry* e = by_alias(alias);
    return e ? e->id : alias;
  };
}

std::string product_key(std::vector<std::string> ids) {
  std::sort(ids.begin(), ids.end());
  std::string key;
  for (const auto& id : ids) {
    if (!key.empty()) key += '*';
    key += id;
  }
  return key;
}

ParityBound genus_bound_from_parity(const Polynomial& p, const CoefficientRegistry& r) {
  ParityBound out;
  std::set<std::string> unknown;
  for (const auto& [m, c] : p.terms()) {
    if (m.graphical.empty()) continue;
    int g = 0;
    if (const RegistryEntry* e = m.graphical.size() > 1 ? r.by_id(product_key(m.graphical)) : nullptr) {
      g = e->genus;
    } else {
      for (const auto& id : m.graphical) {
        if (const RegistryEntry* f = r.by_id(id))
          g = std::max(g, f->genus);
        else
          unknown.insert(id);
      }
    }
    out.bound = std::max(out.bound, g);
  }
  out.unknown.assign(unknown.begin(), unknown.end());
  return out;
}

}  // namespace vk
