// vkinv: invariants of virtual knots from PD or Gauss codes.
//
//   vkinv compute --pd 'PD[...]' --invariant kh
//   vkinv batch --table knots.tsv --invariant kh,akh --out records.jsonl
//   vkinv genus --gauss 'O1-,O2-,U1-,O3+,U2-,U3+'
//   vkinv selftest

#include "vkinv/cli.hpp"
#include "vkinv/homology.hpp"
#include "vkinv/skein.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

using namespace vk;
using namespace vk::cli;

namespace {

struct Common {
  std::string pd, gauss;
  Options options;
  std::string format = "text";
  std::string registry;
  std::string cache_dir;
  bool timing = false;
};

void add_common(CLI::App* cmd, Common& c, bool input) {
  if (input) {
    auto* pd = cmd->add_option("--pd", c.pd, "PD code, e.g. PD[X[1,5,2,4],X[5,4,6,3],Y[6,3,1,2]]");
    auto* g = cmd->add_option("--gauss", c.gauss, "signed Gauss code, e.g. O1-,O2-,U1-,O3+,U2-,U3+");
    pd->excludes(g);
  }
  cmd->add_option("--parity-level", c.options.parity_level, "filtration steps for parity-kh/parity-akh")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--registry", c.registry, "graphical coefficient registry (TSV)");
  cmd->add_option("--cache", c.cache_dir, "result cache directory");
  cmd->add_flag("--mirror-tolerant", c.options.mirror_tolerant, "compare values up to mirror image in summaries");
  cmd->add_option("--max-crossings", c.options.max_crossings, "size limit for state sums and cubes")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--timing", c.timing, "report wall time on stderr");
}

std::unique_ptr<CoefficientRegistry> load_registry(const std::string& path) {
  std::string p = path;
#ifdef VKINV_DEFAULT_REGISTRY
  if (p.empty() && std::filesystem::exists(VKINV_DEFAULT_REGISTRY)) p = VKINV_DEFAULT_REGISTRY;
#endif
  if (p.empty()) return nullptr;
  return std::make_unique<CoefficientRegistry>(CoefficientRegistry::load(p));
}

std::string input_of(const Common& c) {
  if (!c.pd.empty()) return c.pd;
  if (!c.gauss.empty()) return c.gauss;
  throw RequestError("one of --pd or --gauss is required");
}

int compute(const Common& c, const std::string& invariant) {
  auto registry = load_registry(c.registry);
  const Format fmt = c.format == "json" ? Format::Json : Format::Text;
  InvariantRequest req{input_of(c), invariant, c.options};

  std::unique_ptr<Cache> cache;
  std::string key;
  if (!c.cache_dir.empty()) {
    cache = std::make_unique<Cache>(c.cache_dir);
    if (!cache->enabled()) std::cerr << "warning: " << cache->warning() << "\n";
    if (!is_invariant(invariant)) throw RequestError("unknown invariant '" + invariant + "'");
    key = Cache::key(serialize_pd(parse_diagram(req.input)), invariant, c.options, registry_digest(registry.get()), fmt);
    if (auto hit = cache->get(key)) {
      std::cout << *hit;
      if (c.timing) std::cerr << "cache hit\n";
      return kOk;
    }
  }
  ResultRecord r = run_compute(req, registry.get());
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  const std::string out = render(r, fmt, registry.get());
  if (cache) cache->put(key, out);
  std::cout << out;
  if (c.timing) std::cerr << "wall " << r.wall_ms << " ms\n";
  return kOk;
}

int batch(const Common& c, const std::string& table, const std::vector<std::string>& invariants,
          const std::string& out_path) {
  std::ifstream in(table);
  if (!in) {
    std::cerr << "error: cannot read table " << table << "\n";
    return kFailure;
  }
  auto registry = load_registry(c.registry);
  std::unique_ptr<Cache> cache;
  if (!c.cache_dir.empty()) {
    cache = std::make_unique<Cache>(c.cache_dir);
    if (!cache->enabled()) std::cerr << "warning: " << cache->warning() << "\n";
  }
  const auto rows = read_table(in);
  BatchSummary s;
  if (out_path.empty() || out_path == "-") {
    s = run_batch(rows, invariants, c.options, registry.get(), std::cout, cache.get());
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kFailure;
    }
    s = run_batch(rows, invariants, c.options, registry.get(), out, cache.get());
  }
  for (const auto& f : s.failures) std::cerr << "row " << f.row << " (" << f.invariant << "): " << f.message << "\n";
  (out_path.empty() || out_path == "-" ? std::cerr : std::cout) << s.to_json().dump(2) << "\n";
  return kOk;
}

int genus(const Common& c) {
  auto registry = load_registry(c.registry);
  ResultRecord r = run_compute({input_of(c), "genus-bounds", c.options}, registry.get());
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << render(r, c.format == "json" ? Format::Json : Format::Text, registry.get());
  return kOk;
}

// Quick end-to-end check of the installed binary on the smallest fixtures.
int selftest() {
  struct Check {
    const char* name;
    const char* code;
    const char* invariant;
    const char* want;
    Coefficients ctx;
  };
  const Check checks[] = {
      {"unknot kh", "PD[L[1]]", "kh", "q + q^-1", Coefficients::Dimension},
      {"unknot akh", "PD[L[1]]", "akh", "q + q^-1", Coefficients::Dimension},
      {"3.1 kh", "PD[X[1,5,2,4],X[5,4,6,3],Y[6,3,1,2]]", "kh", "q + q^-1", Coefficients::Dimension},
      {"3.1 akh", "O1-,O2-,U1-,O3+,U2-,U3+", "akh",
       "vg(2,1) K[2] q^-3 t^-1 + vg(1,2) K[1] q^-3 + vg(2,-1) K[2] q^-1 t^-1 + vg(1,-2) K[1] q + 2 K[1] q^-1",
       Coefficients::Dimension},
      {"kink bracket", "PD[X[1,1,2,2]]", "bracket", "-A^2 - A^-2", Coefficients::Integer},
  };
  int failed = 0;
  for (const auto& ch : checks) {
    ResultRecord r = run_compute({ch.code, ch.invariant, {}});
    const bool ok = r.polynomial && *r.polynomial == parse_poly(ch.want, ch.ctx);
    std::cout << (ok ? "ok   " : "FAIL ") << ch.name << "\n";
    failed += !ok;
  }
  ResultRecord p = run_compute({"O1-,O2-,U1-,O3+,U2-,U3+", "parity", {}});
  const bool ok = p.scalars.dump() == R"({"1":"odd","2":"even","3":"odd"})";
  std::cout << (ok ? "ok   " : "FAIL ") << "3.1 parity\n";
  failed += !ok;
  return failed ? kFailure : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of virtual knots and links"};
  app.require_subcommand(1);

  Common common;
  std::string invariant;
  auto* comp = app.add_subcommand("compute", "compute one invariant of one diagram");
  add_common(comp, common, true);
  comp->add_option("--invariant", invariant, "one of: bracket jones arrow parity-bracket parity-arrow kh akh "
                                             "akh-simple parity-kh parity-akh thickness width genus-bounds parity "
                                             "filtration carrier-genus")
      ->required();

  std::string table, out;
  std::vector<std::string> invariants;
  auto* bat = app.add_subcommand("batch", "compute invariants for every row of a name<TAB>code table");
  add_common(bat, common, false);
  bat->add_option("--table", table, "input table")->required();
  bat->add_option("--invariant", invariants, "invariants (repeat or comma separated)")->required()->delimiter(',');
  bat->add_option("--out", out, "JSON lines output (default stdout)");

  auto* gen = app.add_subcommand("genus", "genus lower bounds from every applicable invariant");
  add_common(gen, common, true);

  auto* self = app.add_subcommand("selftest", "check the built-in fixtures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParseFailure;
  }

  try {
    if (*comp) return compute(common, invariant);
    if (*bat) return batch(common, table, invariants, out);
    if (*gen) return genus(common);
    if (*self) return selftest();
  } catch (...) {
    std::string msg;
    const int rc = exit_code_for_current_exception(msg);
    std::cerr << "error: " << msg << "\n";
    return rc;
  }
  return kFailure;
}
