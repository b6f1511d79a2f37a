#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pcsl/algebra.hpp"
#include "pcsl/closure.hpp"
#include "pcsl/json_io.hpp"

namespace pcsl {

inline constexpr std::size_t kDefaultCatalogCap = 8;

enum class Provenance { kEnumerated, kConstructed, kLoaded };

const char* provenance_name(Provenance p);
/// Throws std::invalid_argument on an unknown name.
Provenance provenance_from_name(const std::string& name);

struct CatalogEntry {
  FinPSL algebra;
  /// canonical_form(algebra), raw bytes.
  std::string canonical;
  std::optional<Classification> classification;
  Provenance provenance = Provenance::kConstructed;
};

/// Bad catalog or manifest file. `line` is 1-based, 0 when not tied to a line.
class CatalogError : public std::runtime_error {
public:
  CatalogError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

struct EnumerateOptions {
  std::size_t cap = kDefaultCatalogCap;
  /// Worker count, 0 = hardware concurrency.
  std::size_t jobs = 0;
  bool classify = false;
  ClassifyOptions classify_options;
};

/// All p-semilattices of exactly n elements up to isomorphism, sorted by
/// canonical form. Elements are numbered along a linear extension of the
/// order, so 0 is the bottom and n-1 the top.
std::vector<FinPSL> enumerate_size(std::size_t n, std::size_t jobs = 0);

/// Sizes 1..n_max, sorted by (size, canonical form). Throws SizeCapError when
/// n_max exceeds opts.cap.
std::vector<CatalogEntry> enumerate(std::size_t n_max, const EnumerateOptions& opts = {});

CatalogEntry make_entry(FinPSL p, Provenance prov);
/// Fills in every missing classification, in parallel.
void classify_all(std::vector<CatalogEntry>& entries, std::size_t jobs = 0, const ClassifyOptions& opts = {});

/// Count of entries per size; index 0 unused.
std::vector<std::size_t> count_by_size(const std::vector<CatalogEntry>& entries);

/// {"n", "canonical", "provenance", "algebra", "classification"?}
json entry_to_json(const CatalogEntry& e);
/// Re-validates, recomputes the canonical form and any stored
/// classification; provenance becomes `loaded`. Throws CatalogError.
CatalogEntry entry_from_json(const json& j, std::size_t line = 0);

/// One entry per line. Also writes the manifest next to the file.
void save_catalog(const std::vector<CatalogEntry>& entries, const std::filesystem::path& path);
/// Rejects duplicates and, if a manifest exists, a digest or count mismatch.
std::vector<CatalogEntry> load_catalog(const std::filesystem::path& path);

struct Manifest {
  std::size_t n_max = 0;
  std::size_t count = 0;
  /// "sha256:" + hex digest of the catalog file bytes.
  std::string digest;
};

std::filesystem::path manifest_path(const std::filesystem::path& catalog);
std::string sha256_hex(std::string_view bytes);
json manifest_to_json(const Manifest& m);
Manifest manifest_from_json(const json& j);

}  // namespace pcsl
