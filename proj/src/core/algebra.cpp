#include "pcsl/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

namespace pcsl {

SizeCapError::SizeCapError(std::size_t requested, std::size_t cap)
    : std::runtime_error("algebra of size " + std::to_string(requested) +
                         " exceeds size cap " + std::to_string(cap)),
      requested_(requested),
      cap_(cap) {}

const char* law_name(Law law) {
  switch (law) {
    case Law::kShape: return "shape";
    case Law::kIdempotent: return "idempotent";
    case Law::kCommutative: return "commutative";
    case Law::kAssociative: return "associative";
    case Law::kZeroLeast: return "zero-least";
    case Law::kPseudocomplement: return "pseudocomplement";
    case Law::kTopGreatest: return "top-greatest";
  }
  return "?";
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << law_name(v.law) << ": " << v.message;
    if (!v.witness.empty()) {
      os << " [witness";
      for (auto w : v.witness) os << ' ' << w;
      os << ']';
    }
    os << '\n';
  }
  return os.str();
}

ValidationError::ValidationError(ValidationReport report)
    : std::runtime_error("invalid p-semilattice:\n" + report.to_string()),
      report_(std::move(report)) {}

namespace {

struct NestedView {
  const AlgebraTables& t;
  std::size_t n() const { return t.n; }
  long long zero() const { return t.zero; }
  std::size_t rows() const { return t.meet.size(); }
  std::size_t row_len(std::size_t i) const { return t.meet[i].size(); }
  long long meet(std::size_t i, std::size_t j) const { return t.meet[i][j]; }
  std::size_t star_len() const { return t.star.size(); }
  long long star(std::size_t i) const { return t.star[i]; }
  std::size_t label_count() const { return t.labels.size(); }
};

struct FlatView {
  std::size_t size;
  Elem z;
  const std::vector<Elem>& m;
  const std::vector<Elem>& s;
  std::size_t labels;
  std::size_t n() const { return size; }
  long long zero() const { return z; }
  std::size_t rows() const { return m.size() / (size ? size : 1); }
  std::size_t row_len(std::size_t) const { return size; }
  long long meet(std::size_t i, std::size_t j) const { return m[i * size + j]; }
  std::size_t star_len() const { return s.size(); }
  long long star(std::size_t i) const { return s[i]; }
  std::size_t label_count() const { return labels; }
};

template <typename View>
class Checker {
public:
  Checker(const View& t, const ValidateOptions& opts, ValidationReport& out)
      : t_(t), opts_(opts), out_(out) {}

  bool shape() {
    const std::size_t n = t_.n();
    auto bad = [&](std::string msg, std::vector<std::size_t> w = {}) {
      out_.violations.push_back({Law::kShape, std::move(w), std::move(msg)});
    };
    if (n == 0) bad("carrier must be non-empty");
    if (n > 0xFFFF) bad("carrier too large for 16-bit indices");
    if (t_.rows() != n) bad("meet table has " + std::to_string(t_.rows()) + " rows");
    for (std::size_t i = 0; i < t_.rows(); ++i) {
      if (t_.row_len(i) != n) bad("meet row has wrong length", {i});
      for (std::size_t j = 0; j < t_.row_len(i); ++j)
        if (!in_range(t_.meet(i, j))) bad("meet entry out of range", {i, j});
    }
    if (t_.star_len() != n) bad("star table has " + std::to_string(t_.star_len()) + " entries");
    for (std::size_t i = 0; i < t_.star_len(); ++i)
      if (!in_range(t_.star(i))) bad("star entry out of range", {i});
    if (!in_range(t_.zero())) bad("zero out of range");
    if (t_.label_count() != 0 && t_.label_count() != n)
      bad("labels must have one entry per element");
    return out_.ok();
  }

  void laws() {
    const std::size_t n = t_.n();
    const auto z = static_cast<std::size_t>(t_.zero());
    for (std::size_t x = 0; x < n; ++x)
      if (m(x, x) != x) add(Law::kIdempotent, {x}, "x^x != x");
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y)
        if (m(x, y) != m(y, x)) add(Law::kCommutative, {x, y}, "x^y != y^x");
    if (n <= opts_.exhaustive_limit) {
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t w = 0; w < n; ++w) assoc(x, y, w);
    } else {
      std::mt19937_64 rng(0x9E3779B97F4A7C15ull);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (std::size_t k = 0; k < n * n; ++k) assoc(pick(rng), pick(rng), pick(rng));
    }
    for (std::size_t x = 0; x < n; ++x)
      if (m(z, x) != z) add(Law::kZeroLeast, {x}, "0^x != 0");
    for (std::size_t a = 0; a < n; ++a) {
      const auto sa = static_cast<std::size_t>(t_.star(a));
      for (std::size_t x = 0; x < n; ++x) {
        const bool meets_zero = m(x, a) == z;
        const bool below_star = m(x, sa) == x;
        if (meets_zero != below_star)
          add(Law::kPseudocomplement, {x, a},
              meets_zero ? "x^a = 0 but x is not below a*" : "x <= a* but x^a != 0");
      }
    }
    const auto one = static_cast<std::size_t>(t_.star(z));
    for (std::size_t x = 0; x < n; ++x)
      if (m(one, x) != x) add(Law::kTopGreatest, {x}, "0* is not above x");
  }

private:
  bool in_range(long long v) const { return v >= 0 && static_cast<std::size_t>(v) < t_.n(); }
  std::size_t m(std::size_t x, std::size_t y) const {
    return static_cast<std::size_t>(t_.meet(x, y));
  }
  void assoc(std::size_t x, std::size_t y, std::size_t w) {
    if (m(m(x, y), w) != m(x, m(y, w))) add(Law::kAssociative, {x, y, w}, "(x^y)^z != x^(y^z)");
  }
  void add(Law law, std::vector<std::size_t> w, const char* msg) {
    auto& c = counts_[static_cast<int>(law)];
    if (c++ < opts_.max_per_law) out_.violations.push_back({law, std::move(w), msg});
  }

  const View& t_;
  const ValidateOptions& opts_;
  ValidationReport& out_;
  std::size_t counts_[8] = {};
};

template <typename View>
ValidationReport run_checks(const View& view, const ValidateOptions& opts) {
  ValidationReport report;
  Checker<View> checker(view, opts, report);
  if (checker.shape()) checker.laws();
  return report;
}

std::string strip_blanks(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

}  // namespace

ValidationReport validate(const AlgebraTables& tables, const ValidateOptions& opts) {
  return run_checks(NestedView{tables}, opts);
}

FinPSL FinPSL::from_tables(const AlgebraTables& t, const ValidateOptions& opts) {
  auto report = validate(t, opts);
  if (!report.ok()) throw ValidationError(std::move(report));
  FinPSL p;
  p.n_ = t.n;
  p.zero_ = static_cast<Elem>(t.zero);
  p.meet_.resize(t.n * t.n);
  for (std::size_t i = 0; i < t.n; ++i)
    for (std::size_t j = 0; j < t.n; ++j) p.meet_[i * t.n + j] = static_cast<Elem>(t.meet[i][j]);
  p.star_.assign(t.star.begin(), t.star.end());
  p.labels_ = t.labels;
  p.derive();
  return p;
}

FinPSL::FinPSL(std::size_t n, Elem zero, std::vector<Elem> meet, std::vector<Elem> star,
               std::vector<std::string> labels)
    : n_(n), zero_(zero), meet_(std::move(meet)), star_(std::move(star)), labels_(std::move(labels)) {
  if (meet_.size() != n_ * n_ || star_.size() != n_)
    throw ValidationError({{{Law::kShape, {}, "table sizes disagree with n"}}});
  auto report = run_checks(FlatView{n_, zero_, meet_, star_, labels_.size()}, ValidateOptions{});
  if (!report.ok()) throw ValidationError(std::move(report));
  derive();
}

void FinPSL::derive() {
  one_ = star_[zero_];
  skeleton_ = ElementSet(n_);
  dense_ = ElementSet(n_);
  central_ = ElementSet(n_);
  skeleton_list_.clear();
  dense_list_.clear();
  for (std::size_t i = 0; i < n_; ++i) {
    const auto x = static_cast<Elem>(i);
    if (is_skeletal(x)) {
      skeleton_.insert(x);
      skeleton_list_.push_back(x);
    }
    if (is_dense(x)) {
      dense_.insert(x);
      dense_list_.push_back(x);
    }
  }
  for (Elem c : skeleton_list_) {
    const Elem cs = star(c);
    bool central = true;
    for (std::size_t i = 0; i < n_ && central; ++i) {
      const auto x = static_cast<Elem>(i);
      if (leq(c, x) && leq(cs, x) && x != one_) central = false;
    }
    if (central) central_.insert(c);
  }
}

Elem FinPSL::sk_join(Elem a, Elem b) const {
  if (!is_skeletal(a) || !is_skeletal(b))
    throw std::invalid_argument("sk_join: argument is not skeletal");
  return star(meet(star(a), star(b)));
}

std::string FinPSL::label(Elem x) const {
  if (labels_.empty()) return std::to_string(x);
  return labels_[x];
}

std::optional<Elem> FinPSL::find_label(std::string_view text) const {
  const std::string want = strip_blanks(text);
  if (!want.empty() && want[0] == '#') {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(want.substr(1), &used);
      if (used + 1 == want.size() && v < n_) return static_cast<Elem>(v);
    } catch (const std::exception&) {
    }
    return std::nullopt;
  }
  for (std::size_t i = 0; i < n_; ++i)
    if (strip_blanks(label(static_cast<Elem>(i))) == want) return static_cast<Elem>(i);
  return std::nullopt;
}

AlgebraTables FinPSL::tables() const {
  AlgebraTables t;
  t.n = n_;
  t.zero = zero_;
  t.meet.assign(n_, std::vector<long long>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t.meet[i][j] = meet_[i * n_ + j];
  t.star.assign(star_.begin(), star_.end());
  t.labels = labels_;
  return t;
}

FinPSL FinPSL::with_labels(std::vector<std::string> labels) const {
  if (!labels.empty() && labels.size() != n_)
    throw std::invalid_argument("with_labels: need one label per element");
  FinPSL copy = *this;
  copy.labels_ = std::move(labels);
  return copy;
}

}  // namespace pcsl
