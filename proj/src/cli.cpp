#include "vkinv/cli.hpp"

#include "vkinv/genus.hpp"
#include "vkinv/homology.hpp"
#include "vkinv/skein.hpp"

#include <omp.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace vk::cli {

using nlohmann::ordered_json;

const std::vector<std::string>& invariant_names() {
  static const std::vector<std::string> names = {
      "bracket", "jones",      "arrow", "parity-bracket", "parity-arrow", "kh",     "akh",       "akh-simple",
      "parity-kh", "parity-akh", "thickness", "width", "genus-bounds", "parity", "filtration", "carrier-genus"};
  return names;
}

bool is_invariant(const std::string& name) {
  for (const auto& n : invariant_names())
    if (n == name) return true;
  return false;
}

std::optional<Coefficients> invariant_context(const std::string& name) {
  if (name == "bracket" || name == "jones" || name == "arrow" || name == "parity-bracket" || name == "parity-arrow")
    return Coefficients::Integer;
  if (name == "kh" || name == "akh" || name == "akh-simple" || name == "parity-kh" || name == "parity-akh")
    return Coefficients::Dimension;
  return std::nullopt;
}

namespace {

std::string parity_word(ParityClass p) { return to_string(p); }

void check_size(const PlanarDiagram& d, int max_crossings) {
  if (static_cast<int>(d.crossing_count()) > max_crossings)
    throw SizeLimitError("diagram has " + std::to_string(d.crossing_count()) + " crossings, limit is " +
                         std::to_string(max_crossings));
}

// Gauss code whose ids the user sees: their own for Gauss input, crossing positions otherwise.
GaussCode user_gauss(const std::string& input, const PlanarDiagram& d) {
  std::size_t p = input.find_first_not_of(" \t\r\n");
  if (p != std::string::npos && input.compare(p, 2, "PD") != 0) return parse_gauss(input);
  return pd_to_gauss(d);
}

}  // namespace

ResultRecord run_compute(const InvariantRequest& req, const CoefficientRegistry* registry) {
  const auto start = std::chrono::steady_clock::now();
  if (!is_invariant(req.invariant)) throw RequestError("unknown invariant '" + req.invariant + "'");
  if (req.options.parity_level < 1) throw RequestError("parity level must be at least 1");
  if (req.options.max_crossings < 0) throw RequestError("crossing limit must be nonnegative");

  const PlanarDiagram d = parse_diagram(req.input);
  check_size(d, req.options.max_crossings);
  CubeOptions co;
  co.max_crossings = req.options.max_crossings;
  const int level = req.options.parity_level;

  ResultRecord r;
  r.input = serialize_pd(d);
  r.invariant = req.invariant;
  const std::string& inv = req.invariant;

  if (inv == "bracket") r.polynomial = normalized_bracket(d);
  else if (inv == "jones") r.polynomial = jones(d);
  else if (inv == "arrow") r.polynomial = normalized_arrow(d);
  else if (inv == "parity-bracket") r.polynomial = parity_bracket(d);
  else if (inv == "parity-arrow") r.polynomial = parity_arrow(d);
  else if (inv == "kh") r.polynomial = kh(d, co);
  else if (inv == "akh") r.polynomial = akh(d, co);
  else if (inv == "akh-simple") r.polynomial = akh_simple(d, co);
  else if (inv == "parity-kh") r.polynomial = parity_kh(d, level, co);
  else if (inv == "parity-akh") r.polynomial = parity_akh(d, level, co);
  else if (inv == "thickness" || inv == "width") {
    auto f = inv == "thickness" ? thickness : width;
    r.scalars["kh"] = f(kh(d, co));
    r.scalars["akh"] = f(akh(d, co));
  } else if (inv == "genus-bounds") {
    static const CoefficientRegistry empty;
    const CoefficientRegistry& reg = registry ? *registry : empty;
    r.scalars["arrow"] = genus_bound_from_arrow(normalized_arrow(d));
    r.scalars["akh"] = genus_bound_from_akh(akh(d, co));
    ParityBound pb = genus_bound_from_parity(parity_bracket(d), reg);
    ParityBound pa = genus_bound_from_parity(parity_arrow(d), reg);
    r.scalars["parity-bracket"] = pb.bound;
    r.scalars["parity-arrow"] = pa.bound;
    r.scalars["carrier"] = carrier_genus(d);
    std::vector<std::string> unknown = pb.unknown;
    unknown.insert(unknown.end(), pa.unknown.begin(), pa.unknown.end());
    std::sort(unknown.begin(), unknown.end());
    unknown.erase(std::unique(unknown.begin(), unknown.end()), unknown.end());
    for (const auto& id : unknown) r.warnings.push_back("unregistered coefficient D{" + id + "} counted as genus 0");
  } else if (inv == "parity") {
    for (const auto& [id, p] : crossing_parity(user_gauss(req.input, d))) r.scalars[std::to_string(id)] = parity_word(p);
  } else if (inv == "filtration") {
    ordered_json steps = ordered_json::array();
    for (const auto& s : filtration(d)) steps.push_back(serialize_pd(s));
    r.scalars["steps"] = steps;
  } else if (inv == "carrier-genus") {
    r.scalars["carrier_genus"] = carrier_genus(d);
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// ---- JSON ------------------------------------------------------------------

ordered_json terms_json(const Polynomial& p) {
  ordered_json out = ordered_json::array();
  for (const auto& [m, c] : p.terms()) {
    ordered_json t;
    t["t"] = m.t;
    t["q"] = m.q;
    t["A"] = m.a;
    t["K"] = m.arrow;
    ordered_json vg = ordered_json::object();
    for (auto [k, n] : m.vg) vg[std::to_string(k)] = n;
    t["vg"] = vg;
    t["D"] = m.graphical;
    // coefficients of the state sums stay far below 2^63 at the supported sizes
    t["coeff"] = static_cast<long long>(c);
    out.push_back(std::move(t));
  }
  return out;
}

Polynomial poly_from_json(const nlohmann::json& terms, Coefficients ctx) {
  Polynomial p(ctx);
  for (const auto& t : terms) {
    Monomial m;
    m.t = t.at("t").get<int>();
    m.q = t.at("q").get<int>();
    m.a = t.at("A").get<int>();
    m.arrow = t.at("K").get<std::vector<int>>();
    for (const auto& [k, n] : t.at("vg").items()) m.add_vg(std::stoi(k), n.get<int>());
    m.graphical = t.at("D").get<std::vector<std::string>>();
    std::sort(m.arrow.begin(), m.arrow.end());
    std::sort(m.graphical.begin(), m.graphical.end());
    p.add_term(m, Integer(t.at("coeff").get<long long>()));
  }
  return p;
}

ordered_json to_json(const ResultRecord& r) {
  ordered_json j;
  j["input"] = r.input;
  j["invariant"] = r.invariant;
  j["terms"] = r.polynomial ? terms_json(*r.polynomial) : ordered_json::array();
  j["scalars"] = r.scalars;
  j["version"] = r.version;
  return j;
}

std::string display_text(const Polynomial& p, const CoefficientRegistry* registry) {
  std::string s = canonical_text(p);
  if (!registry) return s;
  for (const auto& e : registry->entries()) {
    if (e.alias.empty()) continue;
    const std::string from = "D{" + e.id + "}";
    for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + e.alias.size()))
      s.replace(pos, from.size(), e.alias);
  }
  return s;
}

std::string render(const ResultRecord& r, Format f, const CoefficientRegistry* registry) {
  if (f == Format::Json) return to_json(r).dump() + "\n";
  std::ostringstream out;
  if (r.polynomial) out << display_text(*r.polynomial, registry) << "\n";
  for (const auto& [k, v] : r.scalars.items()) {
    if (v.is_array()) {
      for (const auto& x : v) out << k << "\t" << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
    } else {
      out << k << "\t" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
  return out.str();
}

int exit_code_for_current_exception(std::string& message) {
  try {
    throw;
  } catch (const SizeLimitError& e) {
    message = e.what();
    return kSizeLimit;
  } catch (const ParseError& e) {
    message = std::string("parse error: ") + e.what();
    return kParseFailure;
  } catch (const PolyParseError& e) {
    message = std::string("parse error: ") + e.what();
    return kParseFailure;
  } catch (const RequestError& e) {
    message = e.what();
    return kParseFailure;
  } catch (const std::exception& e) {
    message = e.what();
    return kFailure;
  }
}

// ---- cache -----------------------------------------------------------------

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

Cache::Cache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec || !std::filesystem::is_directory(dir_)) {
    warning_ = "cache directory " + dir_.string() + " unusable, caching disabled";
    return;
  }
  // probe writability up front so a read-only store degrades to no cache
  const auto probe = dir_ / (".probe-" + std::to_string(::getpid()));
  std::ofstream f(probe);
  if (!f) {
    warning_ = "cache directory " + dir_.string() + " not writable, caching disabled";
    return;
  }
  f.close();
  std::filesystem::remove(probe, ec);
  enabled_ = true;
}

std::string Cache::key(const std::string& canonical_input, const std::string& invariant, const Options& o,
                       const std::string& registry_digest, Format f, const std::string& version) {
  std::ostringstream k;
  k << version << '\n'
    << canonical_input << '\n'
    << invariant << '\n'
    << "level=" << o.parity_level << ";max=" << o.max_crossings << ";registry=" << registry_digest
    << ";format=" << (f == Format::Json ? "json" : "text");
  return k.str();
}

std::filesystem::path Cache::path_for(const std::string& key) const {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json", static_cast<unsigned long long>(fnv1a(key)));
  return dir_ / name;
}

std::optional<std::string> Cache::get(const std::string& key) const {
  if (!enabled_) return std::nullopt;
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  auto j = nlohmann::json::parse(buf.str(), nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("key") || !j.contains("payload")) return std::nullopt;
  if (!j["key"].is_string() || !j["payload"].is_string() || j["key"].get<std::string>() != key) return std::nullopt;
  return j["payload"].get<std::string>();
}

void Cache::put(const std::string& key, const std::string& payload) {
  if (!enabled_) return;
  const auto target = path_for(key);
  auto tmp = target;
  tmp += ".tmp-" + std::to_string(::getpid()) + "-" + std::to_string(omp_get_thread_num());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    ordered_json j;
    j["key"] = key;
    j["payload"] = payload;
    out << j.dump();
    if (!out) return;
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

std::string registry_digest(const CoefficientRegistry* registry) {
  if (!registry) return "none";
  std::string all;
  for (const auto& e : registry->entries()) all += e.id + '\t' + e.alias + '\t' + std::to_string(e.genus) + '\n';
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(all)));
  return hex;
}

// ---- batch -----------------------------------------------------------------

std::vector<TableRow> read_table(std::istream& in) {
  std::vector<TableRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      rows.push_back({"row" + std::to_string(rows.size() + 1), line});
    } else {
      rows.push_back({line.substr(0, tab), line.substr(tab + 1)});
    }
  }
  return rows;
}

ordered_json BatchSummary::to_json() const {
  ordered_json j;
  j["rows"] = rows;
  j["records"] = records;
  ordered_json f = ordered_json::array();
  for (const auto& x : failures) f.push_back({{"row", x.row}, {"invariant", x.invariant}, {"message", x.message}});
  j["failures"] = f;
  ordered_json g = ordered_json::object();
  for (const auto& [inv, groups] : groups) g[inv] = groups;
  j["groups"] = g;
  ordered_json d = ordered_json::array();
  for (const auto& x : distinguished)
    d.push_back({{"equal", x.weaker}, {"distinguished_by", x.stronger}, {"rows", {x.a, x.b}}});
  j["distinguished"] = d;
  return j;
}

namespace {

struct Cell {
  std::optional<ResultRecord> record;
  std::string line;
  std::string error;
};

bool same_value(const ResultRecord& a, const ResultRecord& b, bool mirror_tolerant) {
  if (a.polynomial && b.polynomial)
    return mirror_tolerant ? equal_up_to_mirror(*a.polynomial, *b.polynomial) : *a.polynomial == *b.polynomial;
  return !a.polynomial && !b.polynomial && a.scalars == b.scalars;
}

}  // namespace

BatchSummary run_batch(const std::vector<TableRow>& rows, const std::vector<std::string>& invariants,
                       const Options& o, const CoefficientRegistry* registry, std::ostream& out, Cache* cache) {
  for (const auto& inv : invariants)
    if (!is_invariant(inv)) throw RequestError("unknown invariant '" + inv + "'");
  const std::string digest = registry_digest(registry);
  const long long n = static_cast<long long>(rows.size() * invariants.size());
  std::vector<Cell> cells(n);

#pragma omp parallel for schedule(dynamic)
  for (long long c = 0; c < n; ++c) {
    const TableRow& row = rows[c / invariants.size()];
    const std::string& inv = invariants[c % invariants.size()];
    Cell& cell = cells[c];
    try {
      InvariantRequest req{row.code, inv, o};
      std::string key;
      if (cache && cache->enabled()) {
        key = Cache::key(serialize_pd(parse_diagram(row.code)), inv, o, digest, Format::Json);
        if (auto hit = cache->get(key)) {
          auto j = nlohmann::json::parse(*hit, nullptr, false);
          if (!j.is_discarded()) {
            ResultRecord r;
            r.input = j.at("input").get<std::string>();
            r.invariant = inv;
            if (auto ctx = invariant_context(inv)) r.polynomial = poly_from_json(j.at("terms"), *ctx);
            r.scalars = j.at("scalars");
            cell.record = std::move(r);
            cell.line = *hit;
          }
        }
      }
      if (!cell.record) {
        cell.record = run_compute(req, registry);
        cell.line = render(*cell.record, Format::Json);
        if (!key.empty()) cache->put(key, cell.line);
      }
    } catch (...) {
      exit_code_for_current_exception(cell.error);
    }
  }

  BatchSummary s;
  s.rows = rows.size();
  for (long long c = 0; c < n; ++c) {
    const TableRow& row = rows[c / invariants.size()];
    const std::string& inv = invariants[c % invariants.size()];
    if (!cells[c].record) {
      s.failures.push_back({row.name, inv, cells[c].error});
      continue;
    }
    auto j = nlohmann::ordered_json::parse(cells[c].line);
    ordered_json line;
    line["name"] = row.name;
    for (auto& [k, v] : j.items()) line[k] = v;
    out << line.dump() << "\n";
    ++s.records;
  }

  auto cell_of = [&](std::size_t r, std::size_t i) -> const std::optional<ResultRecord>& {
    return cells[r * invariants.size() + i].record;
  };
  for (std::size_t i = 0; i < invariants.size(); ++i) {
    std::vector<std::vector<std::string>> groups;
    std::vector<std::size_t> reps;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& rec = cell_of(r, i);
      if (!rec) continue;
      std::size_t g = 0;
      while (g < reps.size() && !same_value(*cell_of(reps[g], i), *rec, o.mirror_tolerant)) ++g;
      if (g == reps.size()) {
        reps.push_back(r);
        groups.emplace_back();
      }
      groups[g].push_back(rows[r].name);
    }
    s.groups.emplace_back(invariants[i], std::move(groups));
  }

  static const std::vector<std::pair<std::string, std::string>> ladder = {
      {"bracket", "arrow"}, {"kh", "akh"}, {"bracket", "parity-bracket"}, {"arrow", "parity-arrow"},
      {"kh", "parity-kh"},  {"akh", "parity-akh"}};
  auto index_of = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < invariants.size(); ++i)
      if (invariants[i] == name) return i;
    return std::nullopt;
  };
  for (const auto& [weak, strong] : ladder) {
    auto wi = index_of(weak), si = index_of(strong);
    if (!wi || !si) continue;
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = a + 1; b < rows.size(); ++b) {
        const auto &wa = cell_of(a, *wi), &wb = cell_of(b, *wi), &sa = cell_of(a, *si), &sb = cell_of(b, *si);
        if (!wa || !wb || !sa || !sb) continue;
        if (same_value(*wa, *wb, o.mirror_tolerant) && !same_value(*sa, *sb, o.mirror_tolerant))
          s.distinguished.push_back({weak, strong, rows[a].name, rows[b].name});
      }
  }
  return s;
}

}  // namespace vk::cli
