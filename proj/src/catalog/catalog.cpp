#include "pcsl/catalog.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_set>

#include "pcsl/construct.hpp"
#include "pcsl/morphisms.hpp"
#include "pcsl/parallel.hpp"

namespace pcsl {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kEnumerated: return "enumerated";
    case Provenance::kConstructed: return "constructed";
    case Provenance::kLoaded: return "loaded";
  }
  return "?";
}

Provenance provenance_from_name(const std::string& name) {
  if (name == "enumerated") return Provenance::kEnumerated;
  if (name == "constructed") return Provenance::kConstructed;
  if (name == "loaded") return Provenance::kLoaded;
  throw std::invalid_argument("unknown provenance '" + name + "'");
}

CatalogError::CatalogError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

// ---- enumeration -------------------------------------------------------------

namespace {

using Mask = std::uint32_t;

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out(n);
  if (n == 1) return {"0"};
  out.front() = "0";
  out.back() = "1";
  for (std::size_t i = 1; i + 1 < n; ++i)
    out[i] = i <= 26 ? std::string(1, static_cast<char>('a' + i - 1)) : "x" + std::to_string(i);
  return out;
}

// below[k] is the set of elements <= k. Elements are added along a linear
// extension, so a new element's down-set only uses smaller indices.

// the tables of the lattice given by `below`, if it has a pseudocomplement
std::optional<FinPSL> to_algebra(const std::vector<Mask>& below) {
  const std::size_t n = below.size();
  std::vector<Elem> meet(n * n), star(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      const Mask common = below[a] & below[b];
      // the greatest common lower bound has exactly the common lower bounds below it
      std::optional<Elem> m;
      for (Mask w = common; w; w &= w - 1) {
        const auto c = static_cast<std::size_t>(__builtin_ctz(w));
        if (below[c] == common) {
          m = static_cast<Elem>(c);
          break;
        }
      }
      if (!m) return std::nullopt;
      meet[a * n + b] = meet[b * n + a] = *m;
    }
  for (std::size_t a = 0; a < n; ++a) {
    Mask disjoint = 0;
    for (std::size_t y = 0; y < n; ++y)
      if (meet[a * n + y] == 0) disjoint |= Mask{1} << y;
    std::optional<Elem> top;
    for (Mask w = disjoint; w; w &= w - 1) {
      const auto y = static_cast<std::size_t>(__builtin_ctz(w));
      if ((below[y] & disjoint) == disjoint) top = static_cast<Elem>(y);
    }
    if (!top) return std::nullopt;
    star[a] = *top;
  }
  return FinPSL(n, 0, std::move(meet), std::move(star), default_labels(n));
}

// down-sets of the first k elements that contain 0
std::vector<Mask> down_sets(const std::vector<Mask>& below, std::size_t k) {
  std::vector<Mask> out;
  for (Mask m = 0; m < (Mask{1} << (k - 1)); ++m) {
    const Mask d = (m << 1) | 1;
    bool closed = true;
    for (Mask w = d; w && closed; w &= w - 1) {
      const auto x = static_cast<std::size_t>(__builtin_ctz(w));
      closed = (below[x] & ~d) == 0;
    }
    if (closed) out.push_back(d);
  }
  return out;
}

template <typename Emit>
void extend(std::vector<Mask>& below, std::size_t n, Emit&& emit) {
  const std::size_t k = below.size();
  if (k + 1 == n) {
    below.push_back((Mask{1} << n) - 1);
    emit(below);
    below.pop_back();
    return;
  }
  for (Mask d : down_sets(below, k)) {
    below.push_back(d | (Mask{1} << k));
    extend(below, n, emit);
    below.pop_back();
  }
}

}  // namespace

std::vector<FinPSL> enumerate_size(std::size_t n, std::size_t jobs) {
  if (n == 0) return {};
  if (n == 1) return {trivial_algebra().with_labels({"0"})};
  if (n > 31) throw SizeCapError(n, 31);

  // tasks: every placement of the first few middle elements
  std::vector<std::vector<Mask>> prefixes{{Mask{1}}};
  const std::size_t depth = std::min<std::size_t>(n - 2, 3);
  for (std::size_t k = 1; k <= depth; ++k) {
    std::vector<std::vector<Mask>> next;
    for (auto& p : prefixes)
      for (Mask d : down_sets(p, k)) {
        auto q = p;
        q.push_back(d | (Mask{1} << k));
        next.push_back(std::move(q));
      }
    prefixes = std::move(next);
  }

  // canonical form -> (task, position in task) of the kept representative
  struct Kept {
    std::size_t task;
    std::size_t pos;
    FinPSL p;
  };
  std::map<std::string, Kept> merged;
  std::mutex mu;
  parallel_for(prefixes.size(), jobs, [&](std::size_t task) {
    std::vector<Mask> below = prefixes[task];
    std::vector<std::pair<std::string, FinPSL>> local;
    std::unordered_set<std::string> seen;
    extend(below, n, [&](const std::vector<Mask>& b) {
      auto p = to_algebra(b);
      if (!p) return;
      std::string c = canonical_form(*p);
      if (seen.insert(c).second) local.emplace_back(std::move(c), std::move(*p));
    });
    std::lock_guard lock(mu);
    for (std::size_t i = 0; i < local.size(); ++i) {
      auto [it, fresh] = merged.try_emplace(local[i].first, Kept{task, i, local[i].second});
      if (!fresh && std::pair(task, i) < std::pair(it->second.task, it->second.pos))
        it->second = Kept{task, i, local[i].second};
    }
  });
  std::vector<FinPSL> out;
  out.reserve(merged.size());
  for (auto& [c, k] : merged) out.push_back(std::move(k.p));
  return out;
}

CatalogEntry make_entry(FinPSL p, Provenance prov) {
  std::string c = canonical_form(p);
  return CatalogEntry{std::move(p), std::move(c), std::nullopt, prov};
}

void classify_all(std::vector<CatalogEntry>& entries, std::size_t jobs, const ClassifyOptions& opts) {
  parallel_for(entries.size(), jobs, [&](std::size_t i) {
    if (!entries[i].classification) entries[i].classification = classify(entries[i].algebra, opts);
  });
}

std::vector<CatalogEntry> enumerate(std::size_t n_max, const EnumerateOptions& opts) {
  if (n_max > opts.cap) throw SizeCapError(n_max, opts.cap);
  std::vector<CatalogEntry> out;
  for (std::size_t n = 1; n <= n_max; ++n)
    for (auto& p : enumerate_size(n, opts.jobs)) out.push_back(make_entry(std::move(p), Provenance::kEnumerated));
  if (opts.classify) classify_all(out, opts.jobs, opts.classify_options);
  return out;
}

std::vector<std::size_t> count_by_size(const std::vector<CatalogEntry>& entries) {
  std::vector<std::size_t> out(1, 0);
  for (const auto& e : entries) {
    if (out.size() <= e.algebra.size()) out.resize(e.algebra.size() + 1, 0);
    ++out[e.algebra.size()];
  }
  return out;
}

// ---- persistence ---------------------------------------------------------------

json entry_to_json(const CatalogEntry& e) {
  json j;
  j["n"] = e.algebra.size();
  j["canonical"] = to_hex(e.canonical);
  j["provenance"] = provenance_name(e.provenance);
  j["algebra"] = algebra_to_json(e.algebra);
  if (e.classification) j["classification"] = classification_to_json(e.algebra, *e.classification);
  return j;
}

CatalogEntry entry_from_json(const json& j, std::size_t line) {
  if (!j.is_object() || !j.contains("algebra") || !j.contains("canonical"))
    throw CatalogError(line, "entry needs 'algebra' and 'canonical'");
  FinPSL p = [&] {
    try {
      return algebra_from_json(j.at("algebra"));
    } catch (const ValidationError& e) {
      throw CatalogError(line, e.what());
    } catch (const FormatError& e) {
      throw CatalogError(line, e.what());
    }
  }();
  CatalogEntry e = make_entry(std::move(p), Provenance::kLoaded);
  std::string stored;
  try {
    stored = from_hex(j.at("canonical").get<std::string>());
  } catch (const std::exception& ex) {
    throw CatalogError(line, std::string("bad canonical form: ") + ex.what());
  }
  if (stored != e.canonical) throw CatalogError(line, "canonical form mismatch");
  if (j.contains("n") && j.at("n") != e.algebra.size()) throw CatalogError(line, "size field mismatch");
  if (j.contains("provenance")) {
    try {
      provenance_from_name(j.at("provenance").get<std::string>());
    } catch (const std::exception& ex) {
      throw CatalogError(line, ex.what());
    }
  }
  if (j.contains("classification")) {
    const json& c = j.at("classification");
    ClassifyOptions opts;
    if (c.contains("axioms") && c.at("axioms").is_object())
      for (const auto& [name, v] : c.at("axioms").items()) opts.axioms.push_back(name);
    opts.theorem1 = c.contains("theorem1");
    try {
      e.classification = classify(e.algebra, opts);
    } catch (const std::exception& ex) {
      throw CatalogError(line, std::string("bad classification: ") + ex.what());
    }
    if (classification_to_json(e.algebra, *e.classification) != c)
      throw CatalogError(line, "stored classification differs from a fresh one");
  }
  return e;
}

std::filesystem::path manifest_path(const std::filesystem::path& catalog) {
  return std::filesystem::path(catalog.string() + ".manifest.json");
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  return to_hex(std::string(reinterpret_cast<const char*>(md), len));
}

json manifest_to_json(const Manifest& m) {
  json j;
  j["n_max"] = m.n_max;
  j["count"] = m.count;
  j["digest"] = m.digest;
  return j;
}

Manifest manifest_from_json(const json& j) {
  try {
    return Manifest{j.at("n_max").get<std::size_t>(), j.at("count").get<std::size_t>(),
                    j.at("digest").get<std::string>()};
  } catch (const json::exception& e) {
    throw CatalogError(0, std::string("bad manifest: ") + e.what());
  }
}

void save_catalog(const std::vector<CatalogEntry>& entries, const std::filesystem::path& path) {
  std::string body;
  std::size_t n_max = 0;
  for (const auto& e : entries) {
    body += entry_to_json(e).dump();
    body += '\n';
    n_max = std::max(n_max, e.algebra.size());
  }
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CatalogError(0, "cannot write " + path.string());
    out << body;
  }
  std::ofstream m(manifest_path(path), std::ios::binary);
  if (!m) throw CatalogError(0, "cannot write " + manifest_path(path).string());
  m << manifest_to_json({n_max, entries.size(), "sha256:" + sha256_hex(body)}).dump(2) << '\n';
}

std::vector<CatalogEntry> load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CatalogError(0, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string body = buf.str();

  std::vector<CatalogEntry> out;
  std::unordered_set<std::string> seen;
  std::istringstream lines(body);
  std::string text;
  for (std::size_t line = 1; std::getline(lines, text); ++line) {
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw CatalogError(line, std::string("malformed JSON: ") + e.what());
    }
    CatalogEntry e = entry_from_json(j, line);
    if (!seen.insert(e.canonical).second) throw CatalogError(line, "duplicate algebra up to isomorphism");
    out.push_back(std::move(e));
  }

  const auto mpath = manifest_path(path);
  if (std::filesystem::exists(mpath)) {
    std::ifstream min(mpath);
    json mj;
    try {
      min >> mj;
    } catch (const json::exception& e) {
      throw CatalogError(0, std::string("malformed manifest: ") + e.what());
    }
    const Manifest m = manifest_from_json(mj);
    if (m.digest != "sha256:" + sha256_hex(body)) throw CatalogError(0, "manifest digest mismatch");
    if (m.count != out.size()) throw CatalogError(0, "manifest count mismatch");
  }
  return out;
}

}  // namespace pcsl
