#pragma once

// Front end shared by the vkinv executable and its tests: request dispatch,
// JSON records, batch runs over knot tables and the on-disk result cache.

#include "vkinv/algebra.hpp"
#include "vkinv/genus.hpp"
#include "vkinv/knotio.hpp"

#include <json.hpp>

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace vk::cli {

inline constexpr const char* kEngineVersion = "vkinv-1.0.0";

enum ExitCode : int { kOk = 0, kFailure = 1, kParseFailure = 2, kSizeLimit = 3 };

enum class Format { Text, Json };

/// Closed set of names accepted by --invariant.
const std::vector<std::string>& invariant_names();
bool is_invariant(const std::string& name);
/// Context of the polynomial an invariant returns; nullopt for scalar-only ones.
std::optional<Coefficients> invariant_context(const std::string& name);

struct Options {
  int parity_level = 1;
  bool mirror_tolerant = false;
  int max_crossings = 16;
  std::string registry_path;  // only part of the cache key through the registry contents
};

struct InvariantRequest {
  std::string input;  // PD or Gauss text
  std::string invariant;
  Options options;
};

struct ResultRecord {
  std::string input;  // canonical PD
  std::string invariant;
  std::optional<Polynomial> polynomial;
  nlohmann::ordered_json scalars = nlohmann::ordered_json::object();
  std::vector<std::string> warnings;
  std::string version = kEngineVersion;
  double wall_ms = 0;  // never serialized: output must be byte-stable
};

/// Raised for malformed requests (unknown invariant, bad parity level).
class RequestError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws ParseError / RequestError on bad input, SizeLimitError past max_crossings.
ResultRecord run_compute(const InvariantRequest& req, const CoefficientRegistry* registry = nullptr);

nlohmann::ordered_json terms_json(const Polynomial& p);
Polynomial poly_from_json(const nlohmann::json& terms, Coefficients ctx);

nlohmann::ordered_json to_json(const ResultRecord& r);
/// Polynomial text with registry aliases in place of known D{...} ids.
std::string display_text(const Polynomial& p, const CoefficientRegistry* registry);
std::string render(const ResultRecord& r, Format f, const CoefficientRegistry* registry = nullptr);

/// Exit code for the exception currently being handled.
int exit_code_for_current_exception(std::string& message);

// ---- cache -----------------------------------------------------------------

std::uint64_t fnv1a(std::string_view bytes);

/// Content-addressed store of rendered results. Entries are written to a
/// temporary file and renamed into place; unreadable or mismatched entries
/// count as misses and are overwritten.
class Cache {
 public:
  /// Creates the directory if needed; on failure the cache stays disabled
  /// and `warning()` says why.
  explicit Cache(std::filesystem::path dir);

  bool enabled() const { return enabled_; }
  const std::string& warning() const { return warning_; }

  static std::string key(const std::string& canonical_input, const std::string& invariant, const Options& o,
                         const std::string& registry_digest, Format f, const std::string& version = kEngineVersion);

  std::optional<std::string> get(const std::string& key) const;
  void put(const std::string& key, const std::string& payload);
  std::filesystem::path path_for(const std::string& key) const;

 private:
  std::filesystem::path dir_;
  bool enabled_ = false;
  std::string warning_;
};

/// Digest of the registry contents, for cache keys.
std::string registry_digest(const CoefficientRegistry* registry);

// ---- batch -----------------------------------------------------------------

struct TableRow {
  std::string name;
  std::string code;
};

/// `name <TAB> code` lines; blank lines and '#' comments are skipped.
std::vector<TableRow> read_table(std::istream& in);

struct BatchFailure {
  std::string row;
  std::string invariant;
  std::string message;
};

struct BatchSummary {
  std::size_t rows = 0;
  std::size_t records = 0;
  std::vector<BatchFailure> failures;
  /// invariant -> groups of rows with equal values (in first-appearance order)
  std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> groups;
  /// Rows with equal kh but unequal akh, and similar weaker/stronger pairs.
  struct Distinguished {
    std::string weaker, stronger, a, b;
  };
  std::vector<Distinguished> distinguished;

  nlohmann::ordered_json to_json() const;
};

/// One JSON line per row and invariant, in row order. Rows run in parallel.
BatchSummary run_batch(const std::vector<TableRow>& rows, const std::vector<std::string>& invariants,
                       const Options& o, const CoefficientRegistry* registry, std::ostream& out,
                       Cache* cache = nullptr);

}  // namespace vk::cli
